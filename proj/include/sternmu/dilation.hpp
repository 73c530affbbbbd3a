#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "sternmu/numeric.hpp"

namespace sternmu {

/// Dyadic rational num/2^level in [0,1], stored in lowest terms.
class dyadic {
public:
    dyadic() = default;  // 0
    dyadic(bigint num, unsigned level);

    /// Exact binary expansion of a double in [0,1].
    static dyadic from_double(double t);
    /// Accepts "p/q" with q a power of two (also plain "0" / "1").
    static std::optional<dyadic> parse(std::string_view text);

    const bigint& num() const { return num_; }
    unsigned level() const { return level_; }
    bigrat value() const { return bigrat(num_, pow2(level_)); }
    double to_double() const;

    bool operator==(const dyadic&) const = default;

private:
    bigint num_ = 0;
    unsigned level_ = 0;
};

/// The two components of the vector solution of the dilation equation
/// f(t) = (1/3)(S0 f(2t) + S1 f(2t-1)), with f = (0,0) for t <= 0 and
/// f = (1/2,1/2) for t >= 1.  On [0,1]: 0 <= f0 <= f1 <= 1/2.
struct dilation_values {
    bigrat f0, f1;
    bool operator==(const dilation_values&) const = default;
};

/// Exact f(t) at a dyadic point, by the dilation recursion over the binary
/// digits of t.  Memoized for levels <= 20.
dilation_values f_dyadic(const dyadic& t);

struct rat_interval {
    bigrat lo, hi;
    bigrat width() const { return hi - lo; }
};

struct dilation_bracket {
    rat_interval f0, f1;
};

/// Brackets f(t) for real t in [0,1] between the enclosing grid dyadics of a
/// level chosen from the Holder bound; per-coordinate widths <= eps.
dilation_bracket f_real(double t, double eps);

/// Distribution function F(x) = f0(x) + f1(x); computed through both closed
/// forms (the second being 3(f0((1+x)/2) - 1/6)) and checked equal.
bigrat cdf(const dyadic& x);

/// Augmented dilation step (1/3)[[S_b, u_b],[0 0, 3]] with u_0 = (0,0)^T and
/// u_1 = (1/2,1)^T; the bottom-right entry is 1 after scaling.
struct aug_matrix {
    bigrat m[3][3];
    static aug_matrix for_digit(int b);
    aug_matrix operator*(const aug_matrix& o) const;
};

/// mu([2m/2^k, (2m+1)/2^k]) via the augmented matrix product over the binary
/// digits of 2^k + 2m; equals the exact cdf increment and is >= 1/(2*3^k).
bigrat interval_measure(std::uint64_t m, unsigned k);

struct holder_fit {
    double alpha_hat;  // least-squares slope of log2(max dF) against -level
    double c_hat;      // max over all dyadic intervals of dF / (dx)^alpha0
};

/// Exact CDF increments over all dyadic intervals up to max_level (<= 16),
/// fitted against the Holder law dF <= c * dx^{log2(3/tau)}.
holder_fit holder_estimate(int max_level);

/// True iff every dyadic CDF increment at every level <= max_level (<= 14)
/// is strictly positive (exact comparisons).
bool strict_increase_check(int max_level);

}  // namespace sternmu
