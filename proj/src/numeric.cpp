#include "sternmu/numeric.hpp"

#include <cstdio>

namespace sternmu {

std::string rat_str(const bigrat& q) { return q.str(); }

std::string real_str(double v, int sig) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", sig, v);
    return buf;
}

}  // namespace sternmu
