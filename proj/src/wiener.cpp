#include "sternmu/wiener.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "sternmu/parallel.hpp"

namespace sternmu {
namespace {

// Pairwise (cascade) summation: deterministic and accurate for long sums.
double pairwise_sum(std::size_t lo, std::size_t hi,
                    const std::function<double(std::size_t)>& term) {
    if (hi - lo <= 128) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += term(i);
        return s;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(lo, mid, term) + pairwise_sum(mid, hi, term);
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

struct golden_result {
    double pos, val;
};

// Golden-section search for the extremum of f inside [a,b], assumed unimodal
// there (the bracketing grid cell guards against multimodality).
golden_result golden_extremum(double a, double b, const std::function<double(double)>& f,
                              bool maximize, double width = 1e-9) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > width) {
        const bool keep_left = maximize ? (fc > fd) : (fc < fd);
        if (keep_left) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    const double pos = (a + b) / 2;
    return {pos, f(pos)};
}

}  // namespace

wiener_series compute_wiener_series(int n_max, const fourier_settings& settings,
                                    int threads) {
    if (n_max < 0 || n_max > 20)
        throw std::domain_error("compute_wiener_series: n_max must be in [0,20]");

    // values at odd arguments 1, 3, ..., up to 2^n_max
    const std::uint64_t k_top = std::uint64_t{1} << n_max;
    const std::size_t n_odd = static_cast<std::size_t>((k_top + 1) / 2);
    std::vector<double> odd_sq(std::max<std::size_t>(n_odd, 1));
    parallel_chunks(odd_sq.size(), 4096, threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const double v = mu_hat_int(static_cast<std::int64_t>(2 * i + 1), settings);
            odd_sq[i] = v * v;
        }
    });

    const auto sq = [&odd_sq](std::size_t k) {
        if (k == 0) return 1.0;
        while ((k & 1) == 0) k >>= 1;
        return odd_sq[(k - 1) / 2];
    };

    wiener_series out{n_max, {}, settings};
    out.sigma.reserve(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        const std::size_t count = (std::size_t{1} << n) + 1;  // k = 0..2^n inclusive
        out.sigma.push_back(pairwise_sum(0, count, sq) / std::exp2(n));
    }
    return out;
}

std::vector<bool> check_sublinear(const wiener_series& series) {
    if (series.n_max < 2)
        throw std::domain_error("check_sublinear: series needs n_max >= 2");
    std::vector<bool> ok;
    for (int n = 2; n <= series.n_max; ++n)
        ok.push_back(series.sigma[n] <
                     series.sigma[n - 1] - (15.0 / 64.0) * series.sigma[n - 2]);
    return ok;
}

ratio_scan ratio_bound_check(const fourier_settings& settings, int grid) {
    if (grid < 1000) throw std::domain_error("ratio_bound_check: grid must be >= 1000");
    const auto abs_mu = [&settings](double t) { return std::fabs(mu_hat(t, settings)); };

    const auto scan = [&](double a, double b, bool maximize) {
        std::size_t best = 0;
        double best_v = abs_mu(a);
        for (int i = 1; i <= grid; ++i) {
            const double v = abs_mu(a + (b - a) * i / grid);
            if (maximize ? (v > best_v) : (v < best_v)) {
                best_v = v;
                best = i;
            }
        }
        const double cell = (b - a) / grid;
        const double lo = std::max(a, a + best * cell - cell);
        const double hi = std::min(b, a + best * cell + cell);
        return golden_extremum(lo, hi, abs_mu, maximize);
    };

    const golden_result mx = scan(3.0 / 5.0, 1.0, true);
    const golden_result mn = scan(0.0, 2.0 / 5.0, false);
    return {mx.val / mn.val, mx.pos, mx.val, mn.pos, mn.val};
}

appendix_slacks appendix_inequalities(std::int64_t k_max, const fourier_settings& settings) {
    if (k_max < 1 || k_max > 100000)
        throw std::domain_error("appendix_inequalities: k_max must be in [1,1e5]");
    appendix_slacks out{-1.0, 0, -1.0, 0};
    for (std::int64_t k = -k_max; k <= k_max; ++k) {
        const double m2k1 = mu_hat_int(2 * k + 1, settings);
        const double mk = mu_hat_int(k, settings);
        const double mk1 = mu_hat_int(k + 1, settings);
        const double s1 = std::fabs(m2k1) - 0.5 * std::fabs(mk + mk1);
        if (s1 > out.worst_slack_1) {
            out.worst_slack_1 = s1;
            out.arg_1 = k;
        }
        const double s2 =
            m2k1 * (mu_hat_int(2 * k, settings) + mu_hat_int(2 * k + 2, settings));
        if (s2 > out.worst_slack_2) {
            out.worst_slack_2 = s2;
            out.arg_2 = k;
        }
    }
    return out;
}

doubling_report appendix_doubling(std::int64_t n_max, const fourier_settings& settings) {
    if (n_max < 8 || n_max > (std::int64_t{1} << 16))
        throw std::domain_error("appendix_doubling: n_max must be in [8, 2^16]");

    const auto sq = [&settings](std::size_t k) {
        const double v = mu_hat_int(static_cast<std::int64_t>(k), settings);
        return v * v;
    };
    // Sig(N) = 1 + 2 sum_{k=1}^{N} mu_hat(k)^2, evaluated at N = 2^j.
    std::vector<std::int64_t> ns;
    std::vector<double> sig;
    double acc = 0.0;
    std::int64_t prev = 0;
    for (std::int64_t n = 2; n <= n_max; n *= 2) {
        acc += pairwise_sum(prev + 1, n + 1, sq);
        ns.push_back(n);
        sig.push_back(1.0 + 2.0 * acc);
        prev = n;
    }

    doubling_report out{};
    // ratios Sig(4N)/Sig(2N) for N = 2^j <= n_max/4
    for (std::size_t i = 0; i + 1 < ns.size(); ++i)
        out.ratios.emplace_back(ns[i] / 2, sig[i + 1] / sig[i]);

    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        if (ns[i] < 8) continue;
        xs.push_back(std::log2(static_cast<double>(ns[i])));
        ys.push_back(std::log2(sig[i] / static_cast<double>(ns[i])));
    }
    out.decay_exponent = xs.size() >= 2 ? -fit_slope(xs, ys)
                                        : std::numeric_limits<double>::quiet_NaN();
    return out;
}

std::vector<jw_moment> jw_moments(int r_max, int m_max) {
    if (r_max < 0 || r_max > 8) throw std::domain_error("jw_moments: r_max must be in [0,8]");
    if (m_max < 1 || m_max > 32) throw std::domain_error("jw_moments: m_max must be in [1,32]");
    std::vector<jw_moment> table;
    table.reserve(static_cast<std::size_t>(r_max + 1) * m_max);
    for (int r = 0; r <= r_max; ++r)
        for (int m = 1; m <= m_max; ++m) {
            bigrat v;
            if (r == 0) {
                v = 1;  // 0^0 = 1: probability measure
            } else {
                const bigrat p(1, pow2(static_cast<unsigned>(r * m)));
                v = (r % 2 == 0) ? 2 * p / 3 : bigrat(0);
            }
            table.push_back({r, m, v});
        }
    return table;
}

double atom_estimate(const bigrat& x, int n_max) {
    if (n_max < 0 || n_max > 20)
        throw std::domain_error("atom_estimate: n_max must be in [0,20]");
    const level_measure mu(n_max);
    if (!atom_neighbor_check(n_max))
        throw std::logic_error("atom_estimate: neighbour inequality violated");
    return to_double(mu.atom(x));
}

bool atom_neighbor_check(int level) {
    const level_measure mu(level);
    // counts are exact integers, so the 1e-12 slack of the stated inequality
    // is absorbed by an exact comparison
    for (std::size_t m = 1; m + 1 < mu.size(); ++m)
        if (mu.count(m) > mu.count(m - 1) + mu.count(m + 1)) return false;
    return true;
}

}  // namespace sternmu
