// Quantitative exit checks for the whole toolkit, one criterion per entry:
// exact sequence identities, transform anchors and profile geometry, decay of
// the averaged squared coefficients, exactness of the dilation-equation
// solution and interval measures, Holder diagnostics, summatory asymptotics,
// appendix-style inequalities and moments, weak convergence, figure shapes.

#include "sternmu/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "sternmu/dilation.hpp"
#include "sternmu/figures.hpp"
#include "sternmu/fourier.hpp"
#include "sternmu/numeric.hpp"
#include "sternmu/stern.hpp"
#include "sternmu/wiener.hpp"

namespace sternmu::acceptance {
namespace {

struct outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(double v) { return real_str(v, 6); }

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

outcome sequence_equivalence() {
    for (std::uint64_t n = 1; n <= 1000000; ++n)
        if (stern_matrix(n) != stern_recursive(n))
            return {false, "mismatch at n=" + std::to_string(n)};
    return {true, "matrix form == recursion for n in [1,1e6]"};
}

outcome block_sums() {
    for (unsigned n = 0; n <= 18; ++n)
        if (block_sum(n) != pow3(n))
            return {false, "block sum != 3^n at n=" + std::to_string(n)};
    return {true, "block sums equal 3^n exactly for n in [0,18]"};
}

outcome fourier_oracle() {
    double worst = 0.0;
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> real_k(0.0, 8.0);
    std::vector<double> random_ks(64);
    for (auto& k : random_ks) k = real_k(rng);
    for (int n = 0; n <= 12; ++n) {
        const auto gap = [n](double k) {
            return std::fabs(mu_hat_level(n, k) - mu_hat_level_direct(n, k));
        };
        for (int k = -256; k <= 256; ++k) worst = std::max(worst, gap(k));
        for (const double k : random_ks) worst = std::max(worst, gap(k));
    }
    return {worst < 1e-10, "max |product - direct sum| = " + fmt(worst)};
}

outcome anchor_mu1() {
    const double v = mu_hat(1.0);
    const double err = std::fabs(v - (-0.083432));
    return {err <= 5e-7, "mu_hat(1) = " + real_str(v, 9) + ", |err| = " + fmt(err)};
}

outcome anchors_profile() {
    outcome r;
    const double v25 = std::fabs(mu_hat(2.0 / 5.0));
    if (std::fabs(v25 - 0.450342617) > 1e-8) r.pass = false;
    const ratio_scan scan = ratio_bound_check({}, 10000);
    if (std::fabs(scan.max_pos - 0.877996139) > 1e-6) r.pass = false;
    if (std::fabs(scan.max_val - 0.105423890) > 1e-7) r.pass = false;
    if (!(0.25 - scan.ratio >= 0.01)) r.pass = false;
    std::ostringstream d;
    d << "|mu_hat(2/5)|=" << real_str(v25, 10) << " argmax=" << real_str(scan.max_pos, 10)
      << " max=" << real_str(scan.max_val, 10) << " ratio=" << fmt(scan.ratio);
    r.detail = d.str();
    return r;
}

outcome scaling_lemma() {
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double k = -4.0 + 8.0 * i / 9999.0;
        worst = std::max(worst, scaling_residual(k));
    }
    if (worst > 4e-10) return {false, "scaling residual " + fmt(worst) + " > 4e-10"};
    for (std::int64_t k = 1; k <= (std::int64_t{1} << 15); ++k)
        if (mu_hat_int(2 * k) != mu_hat_int(k))
            return {false, "odd-part reduction not bitwise at k=" + std::to_string(k)};
    return {true, "max scaling residual = " + fmt(worst) + "; doubling bitwise to 2^15"};
}

outcome wiener_decay(int threads) {
    const wiener_series series = compute_wiener_series(20, {}, threads);
    const std::vector<bool> sub = check_sublinear(series);
    for (int n = 2; n <= 18; ++n)
        if (!sub[n - 2])
            return {false, "sublinear recursion fails at N=" + std::to_string(n)};
    const double cap = std::max(series.sigma[0], series.sigma[1]);
    for (int n = 2; n <= 20; ++n)
        if (!(series.sigma[n] <= std::pow(7.0 / 8.0, n - 1) * cap))
            return {false, "geometric bound fails at N=" + std::to_string(n)};
    return {true, "Sigma_20 = " + fmt(series.sigma[20]) + "; both decay bounds hold"};
}

outcome dilation_exactness() {
    const dilation_values half = f_dyadic(dyadic(1, 1));
    if (half.f0 != bigrat(1, 6) || half.f1 != bigrat(1, 3))
        return {false, "f(1/2) != (1/6, 1/3)"};
    for (std::uint64_t j = 0; j <= 4096; ++j) {
        const dilation_values f = f_dyadic(dyadic(bigint(j), 12));
        const dilation_values mid = f_dyadic(dyadic(bigint(4096 + j), 13));
        if (f.f0 + f.f1 != 3 * (mid.f0 - bigrat(1, 6)))
            return {false, "midpoint identity fails at j/4096, j=" + std::to_string(j)};
    }
    if (cdf(dyadic(1, 2)) != bigrat(2, 9)) return {false, "F(1/4) != 2/9"};
    if (cdf(dyadic(1, 1)) != bigrat(1, 2)) return {false, "F(1/2) != 1/2"};
    if (cdf(dyadic(3, 2)) != bigrat(7, 9)) return {false, "F(3/4) != 7/9"};
    return {true, "f(1/2), midpoint identity at level 12, and F anchors exact"};
}

outcome interval_measures() {
    for (unsigned k = 1; k <= 10; ++k) {
        const std::uint64_t cells = std::uint64_t{1} << k;
        bigrat partition = 0, prev = 0;
        for (std::uint64_t j = 1; j <= cells; ++j) {
            const bigrat fj = cdf(dyadic(bigint(j), k));
            partition += fj - prev;
            prev = fj;
        }
        if (partition != 1)
            return {false, "level-" + std::to_string(k) + " partition sum != 1"};
        const bigrat floor_bound(bigint(1), 2 * pow3(k));
        for (std::uint64_t m = 0; m < cells / 2; ++m) {
            const bigrat im = interval_measure(m, k);
            const bigrat diff =
                cdf(dyadic(bigint(2 * m + 1), k)) - cdf(dyadic(bigint(2 * m), k));
            if (im != diff)
                return {false, "matrix product != cdf difference at (m,k)=(" +
                                   std::to_string(m) + "," + std::to_string(k) + ")"};
            if (im < floor_bound)
                return {false, "measure below 1/(2*3^k) at (m,k)=(" + std::to_string(m) +
                                   "," + std::to_string(k) + ")"};
        }
    }
    return {true, "augmented products exact and >= 1/(2*3^k); partitions sum to 1"};
}

outcome strict_increase() {
    const bool ok = strict_increase_check(12);
    return {ok, ok ? "every increment up to level 12 strictly positive"
                   : "found a flat step"};
}

outcome holder() {
    const holder_fit h10 = holder_estimate(10);
    const holder_fit h14 = holder_estimate(14);
    const double spread = std::max(h10.c_hat, h14.c_hat) / std::min(h10.c_hat, h14.c_hat);
    const bool ok = h14.alpha_hat >= 0.85 && h14.alpha_hat <= 0.95 && spread <= 1.5;
    return {ok, "alpha_hat = " + fmt(h14.alpha_hat) + ", c_hat = " + fmt(h14.c_hat) +
                    " (level 10/14 spread " + fmt(spread) + ")"};
}

outcome summatory_asymptotics() {
    std::vector<double> xs, ys;
    double worst = 0.0;
    for (int j = 4; j <= 20; ++j) {
        const std::uint64_t p = std::uint64_t{1} << j;
        // offsets include the binary 1010... direction, where the residual
        // actually attains its x^{log2 tau} growth
        for (const std::uint64_t r : {std::uint64_t{0}, std::uint64_t{1}, p / 3, p / 5}) {
            const double x = static_cast<double>(p + r);
            const double exact = summatory(x).convert_to<double>();
            const double q = std::fabs(exact - summatory_asymptotic(x)) / std::pow(x, 0.70);
            worst = std::max(worst, q);
            if (q > 0.0) {
                xs.push_back(std::log2(x));
                ys.push_back(std::log2(q));
            }
        }
    }
    const double slope = fit_slope(xs, ys);
    return {slope <= 0.01, "residual/x^0.70: max = " + fmt(worst) +
                               ", log-log trend slope = " + fmt(slope)};
}

outcome appendix_battery() {
    outcome r;
    std::ostringstream d;
    const appendix_slacks s = appendix_inequalities(4096);
    d << "worst slacks: (i) " << fmt(s.worst_slack_1) << " at k=" << s.arg_1 << ", (ii) "
      << fmt(s.worst_slack_2) << " at k=" << s.arg_2;
    if (s.worst_slack_1 > 1e-9) {
        r.pass = false;
        d << " -- inequality (i) exceeds 1e-9";
    }
    if (s.worst_slack_2 > 1e-9) {
        r.pass = false;
        d << " -- inequality (ii) exceeds 1e-9";
    }
    const doubling_report doubling = appendix_doubling(std::int64_t{1} << 16);
    double worst_ratio = 0.0;
    for (const auto& [n, ratio] : doubling.ratios)
        if (n >= 2) {
            worst_ratio = std::max(worst_ratio, ratio);
            if (!(ratio <= 1.5 + 1e-9)) r.pass = false;
        }
    d << "; max doubling ratio " << fmt(worst_ratio);
    for (const jw_moment& mom : jw_moments(8, 32)) {
        const bool ok =
            (mom.r != 0 || mom.value == 1) && (mom.r != 1 || mom.value == 0) &&
            (mom.r != 2 || mom.value == bigrat(bigint(2), 3 * pow2(2 * mom.m)));
        if (!ok) {
            r.pass = false;
            d << "; moment (r=" << mom.r << ",m=" << mom.m << ") wrong";
        }
    }
    r.detail = d.str();
    return r;
}

outcome weak_convergence() {
    const bigrat target(2, 9);
    bigrat prev_gap = -1;
    bigrat last_gap = 0;
    for (int n = 2; n <= 20; ++n) {
        const level_measure mu(n);
        bigrat gap = mu.mass_leq(bigrat(1, 4)) - target;
        if (gap < 0) gap = -gap;
        if (prev_gap >= 0 && !(gap < prev_gap))
            return {false, "gap not decreasing at n=" + std::to_string(n)};
        prev_gap = gap;
        last_gap = gap;
    }
    const double g = to_double(last_gap);
    return {g < 1e-3, "|mu_n([0,1/4]) - 2/9| decreasing; at n=20: " + fmt(g)};
}

outcome figures() {
    outcome r;
    std::ostringstream d;

    const auto profile = figure_profile(10000);
    std::size_t imin = 0;
    std::size_t ibump = profile.size();  // argmax restricted to kappa >= 0.6
    for (std::size_t i = 0; i < profile.size(); ++i) {
        if (profile[i].abs_mu < profile[imin].abs_mu) imin = i;
        if (profile[i].kappa >= 0.6 &&
            (ibump == profile.size() || profile[i].abs_mu > profile[ibump].abs_mu))
            ibump = i;
    }
    const profile_point dip = profile[imin];
    const profile_point bump = profile[ibump];
    if (!(dip.kappa >= 0.5 && dip.kappa <= 0.8 && dip.abs_mu < 0.01)) r.pass = false;
    if (std::fabs(bump.kappa - 0.877996139) > 1e-3) r.pass = false;
    if (std::fabs(bump.abs_mu - 0.105423890) > 1e-3) r.pass = false;
    for (std::size_t i = 0; i + 1 < profile.size() && profile[i + 1].kappa <= 0.6; ++i)
        if (!(profile[i + 1].abs_mu < profile[i].abs_mu + 1e-12)) r.pass = false;
    d << "profile dip at " << fmt(dip.kappa) << ", bump at " << fmt(bump.kappa);

    const auto dist = figure_cdf(12);
    if (dist.front().f != 0 || dist.back().f != 1) r.pass = false;
    for (std::size_t i = 0; i + 1 < dist.size(); ++i)
        if (!(dist[i + 1].f > dist[i].f)) r.pass = false;

    const auto curves = figure_dilation(12);
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const bool interior = i > 0 && i + 1 < curves.size();
        if (interior ? !(curves[i].f0 < curves[i].f1) : curves[i].f0 != curves[i].f1)
            r.pass = false;
    }
    d << "; F strictly increasing; lower curve below upper curve";
    r.detail = d.str();
    return r;
}

}  // namespace

std::vector<criterion_result> run_all(int threads) {
    struct entry {
        int id;
        const char* name;
        std::function<outcome()> fn;
        double time_limit;  // seconds; 0 = none
    };
    const entry entries[] = {
        {1, "sequence equivalence", sequence_equivalence, 30.0},
        {2, "block sums", block_sums, 10.0},
        {3, "fourier oracle", fourier_oracle, 10.0},
        {4, "anchor mu_hat(1)", anchor_mu1, 0.0},
        {5, "profile anchors and ratio", anchors_profile, 0.0},
        {6, "scaling lemma", scaling_lemma, 0.0},
        {7, "wiener decay", [threads] { return wiener_decay(threads); }, 600.0},
        {8, "dilation exactness", dilation_exactness, 0.0},
        {9, "interval measures", interval_measures, 0.0},
        {10, "strict increase", strict_increase, 0.0},
        {11, "holder estimate", holder, 0.0},
        {12, "summatory asymptotics", summatory_asymptotics, 0.0},
        {13, "appendix battery", appendix_battery, 0.0},
        {14, "weak convergence", weak_convergence, 0.0},
        {15, "figure shapes", figures, 0.0},
    };

    std::vector<criterion_result> results;
    for (const entry& e : entries) {
        const auto t0 = std::chrono::steady_clock::now();
        outcome o;
        try {
            o = e.fn();
        } catch (const std::exception& ex) {
            o = {false, std::string("exception: ") + ex.what()};
        }
        const double sec =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (e.time_limit > 0.0 && sec >= e.time_limit) {
            o.pass = false;
            o.detail += " [over " + fmt(e.time_limit) + "s budget]";
        }
        results.push_back({e.id, e.name, o.pass, o.detail, sec});
    }
    return results;
}

}  // namespace sternmu::acceptance
