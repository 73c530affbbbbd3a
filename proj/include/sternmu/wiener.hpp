#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sternmu/fourier.hpp"
#include "sternmu/numeric.hpp"

namespace sternmu {

/// Averaged squared coefficients Sigma_N = 2^{-N} sum_{k=0}^{2^N} mu_hat(k)^2
/// for N = 0..n_max (the endpoint k = 2^N is included).
struct wiener_series {
    int n_max = 0;
    std::vector<double> sigma;
    fourier_settings settings;
};

/// Odd arguments are evaluated in fixed-size parallel chunks into a value
/// table; each Sigma_N is then a sequential pairwise sum in ascending k, so
/// results are bit-identical for any worker count.  n_max <= 20.
wiener_series compute_wiener_series(int n_max, const fourier_settings& settings = {},
                                    int threads = 0);

/// Per-N results of Sigma_N < Sigma_{N-1} - (15/64) Sigma_{N-2}, N = 2..n_max.
std::vector<bool> check_sublinear(const wiener_series& series);

struct ratio_scan {
    double ratio;     // max |mu_hat| on [3/5,1] over min |mu_hat| on [0,2/5]
    double max_pos, max_val;
    double min_pos, min_val;
};

/// Uniform grid plus golden-section refinement of the bracketing cells to a
/// 1e-9 bracket; the ratio stays below 1/4.  grid >= 1000.
ratio_scan ratio_bound_check(const fourier_settings& settings = {}, int grid = 10000);

struct appendix_slacks {
    double worst_slack_1;  // max over k of |mu(2k+1)| - |mu(k)+mu(k+1)|/2
    std::int64_t arg_1;
    double worst_slack_2;  // max over k of mu(2k+1)(mu(2k)+mu(2k+2))
    std::int64_t arg_2;
};

/// Sweeps both unproven coefficient inequalities over |k| <= k_max and
/// reports the worst slack of each (positive slack = violation).
appendix_slacks appendix_inequalities(std::int64_t k_max,
                                      const fourier_settings& settings = {});

struct doubling_report {
    std::vector<std::pair<std::int64_t, double>> ratios;  // (N, Sig(4N)/Sig(2N))
    double decay_exponent;  // d in (1/N) Sig(N) ~ N^{-d}, log-log fit
};

/// Sig(N) = sum_{k=-N}^{N} mu_hat(k)^2 doubling ratios at N = 2^j <= n_max/4,
/// each expected <= 3/2, plus the empirical decay exponent of (1/N) Sig(N).
doubling_report appendix_doubling(std::int64_t n_max,
                                  const fourier_settings& settings = {});

/// Moment of the m-th convolution factor: exactly
/// (1/3)(0^r + 2^{-rm} + (-1)^r 2^{-rm}), with 0^0 = 1.
struct jw_moment {
    int r, m;
    bigrat value;
};
std::vector<jw_moment> jw_moments(int r_max, int m_max);

/// Weight of the atom of the level-n_max approximant at x (0 off the support
/// grid); checks the neighbour inequality across the whole grid.  n_max <= 20.
double atom_estimate(const bigrat& x, int n_max);

/// Exact neighbour inequality at approximant level: every interior grid atom
/// is at most the sum of its two neighbours.
bool atom_neighbor_check(int level);

}  // namespace sternmu
