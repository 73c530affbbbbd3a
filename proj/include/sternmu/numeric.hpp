#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace sternmu {

using bigint = boost::multiprecision::cpp_int;
using bigrat = boost::multiprecision::cpp_rational;

inline bigint pow2(unsigned n) { return bigint(1) << n; }

inline bigint pow3(unsigned n) {
    bigint p = 1;
    for (unsigned i = 0; i < n; ++i) p *= 3;
    return p;
}

inline double to_double(const bigrat& q) { return q.template convert_to<double>(); }

/// Exact rational as "p/q" (or "p" for integers); never a float.
std::string rat_str(const bigrat& q);

/// Decimal with a fixed number of significant digits (default 12).
std::string real_str(double v, int sig = 12);

}  // namespace sternmu
