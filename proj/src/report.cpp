#include "sternmu/report.hpp"

#include <json.hpp>

namespace sternmu {
namespace {

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (const char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

}  // namespace

void report::write_csv(std::ostream& os) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        os << (i ? "," : "") << csv_cell(columns[i]);
    os << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << csv_cell(row[i]);
        os << "\n";
    }
}

void report::write_json(std::ostream& os) const {
    nlohmann::ordered_json j;
    j["command"] = command;
    nlohmann::ordered_json p = nlohmann::ordered_json::object();
    for (const auto& [k, v] : params) p[k] = v;
    j["params"] = std::move(p);
    j["columns"] = columns;
    j["rows"] = rows;
    if (pass.has_value()) j["pass"] = *pass;
    os << j.dump(2) << "\n";
}

}  // namespace sternmu
