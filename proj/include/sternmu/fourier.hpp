#pragma once

#include <cstdint>
#include <vector>

#include "sternmu/numeric.hpp"

namespace sternmu {

/// Truncation control for the infinite product transform.
struct fourier_settings {
    double tail_tol = 1e-10;  // absolute tail budget, in (0, 1e-6]
    int min_depth = 24;       // minimum number of product factors, >= 8

    static fourier_settings make(double tail_tol, int min_depth);
    bool operator==(const fourier_settings&) const = default;
};

/// Level-n approximant: weight s(2^n + m)/3^n at the point m/2^n.  Stored as
/// integer numerators over the implicit denominator 3^n; the numerators sum
/// to exactly 3^n, so the weights sum to exactly 1.
class level_measure {
public:
    explicit level_measure(int level);  // level <= 24 (memory)

    int level() const { return level_; }
    std::size_t size() const { return counts_.size(); }
    std::uint64_t count(std::size_t m) const { return counts_[m]; }
    const std::vector<std::uint64_t>& counts() const { return counts_; }

    bigrat weight(std::size_t m) const;
    /// Mass of the closed interval [0, x].
    bigrat mass_leq(const bigrat& x) const;
    /// Mass of the closed dyadic interval [lo, hi].
    bigrat mass_closed(const bigrat& lo, const bigrat& hi) const;
    /// Weight of the atom at x (0 when x is off the support grid).
    bigrat atom(const bigrat& x) const;

private:
    int level_;
    std::vector<std::uint64_t> counts_;
};

/// (1/3)(1 + 2 cos(2 pi k)): the factor relating the transform at k and 2k.
double dilation_factor(double k);

/// Product of dilation factors at k, 2k, ..., 2^{n-1} k; the ratio between
/// the transform at 2^n k and at k.
double scaling_product(int n, double k);

/// Transform of the level-n approximant: prod_{m=1..n} (1/3)(1+2cos(2 pi k/2^m)).
double mu_hat_level(int n, double k);

/// Independent oracle: direct cosine sum over the signed real-line support
/// {j/2^n : |j| < 2^n} of the level-n convolution, whose weight at j is
/// s(2^n - |j|)/3^n (the torus weights fold two such points together, which
/// only the integer-argument transform cannot see).  Weights come from the
/// sequence recursion, never from the product form.  n <= 20.
double mu_hat_level_direct(int n, double k);

/// Transform of the limit measure, truncated so the certified tail error is
/// below settings.tail_tol.  Symmetric in k by construction.  |k| <= 2^40.
double mu_hat(double k, const fourier_settings& settings = {});

/// Integer arguments reduce to their odd part (the transform is invariant
/// under doubling); values are cached by odd part with LRU eviction.
double mu_hat_int(std::int64_t k, const fourier_settings& settings = {});

/// |mu_hat(2k) - dilation_factor(k) * mu_hat(k)|; at most 4 * tail_tol.
double scaling_residual(double k, const fourier_settings& settings = {});

/// Resets the odd-part cache (capacity in entries).
void mu_hat_cache_reset(std::size_t capacity = std::size_t{1} << 18);

}  // namespace sternmu
