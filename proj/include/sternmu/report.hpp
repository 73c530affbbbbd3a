#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace sternmu {

/// Tabular command result.  Keys keep insertion order and rationals are kept
/// as "p/q" strings, so serialization is deterministic.
struct report {
    std::string command;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::optional<bool> pass;

    void write_csv(std::ostream& os) const;
    void write_json(std::ostream& os) const;
};

}  // namespace sternmu
