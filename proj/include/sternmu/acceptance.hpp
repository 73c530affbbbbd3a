#pragma once

#include <string>
#include <vector>

namespace sternmu::acceptance {

struct criterion_result {
    int id;
    std::string name;
    bool pass;
    std::string detail;
    double seconds;
};

/// Runs the full battery of quantitative checks at their pinned tolerances;
/// one result per criterion, in order.
std::vector<criterion_result> run_all(int threads = 0);

}  // namespace sternmu::acceptance
