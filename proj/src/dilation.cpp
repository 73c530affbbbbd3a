#include "sternmu/dilation.hpp"

#include <cmath>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace sternmu {
namespace {

constexpr int kMemoMaxLevel = 20;

std::shared_mutex f_memo_mu;
std::unordered_map<std::uint64_t, dilation_values> f_memo;

// Levels <= 20 have num <= 2^20, so (level, num) packs into 26 bits.
std::uint64_t memo_key(const dyadic& t) {
    return (std::uint64_t(t.level()) << 21) | t.num().convert_to<std::uint64_t>();
}

double alpha0() {
    static const double a = std::log2(3.0 / ((1.0 + std::sqrt(5.0)) / 2.0));
    return a;
}

}  // namespace

dyadic::dyadic(bigint num, unsigned level) : num_(std::move(num)), level_(level) {
    if (num_ < 0 || num_ > pow2(level_))
        throw std::domain_error("dyadic: value outside [0,1]");
    while (level_ > 0 && (num_ & 1) == 0 && num_ != 0) {
        num_ >>= 1;
        --level_;
    }
    if (num_ == 0) level_ = 0;
}

dyadic dyadic::from_double(double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("dyadic: value outside [0,1]");
    if (t == 0.0) return dyadic();
    int exp = 0;
    const double frac = std::frexp(t, &exp);                 // t = frac * 2^exp
    const auto mant = static_cast<std::uint64_t>(std::ldexp(frac, 53));  // exact
    return dyadic(bigint(mant), static_cast<unsigned>(53 - exp));
}

std::optional<dyadic> dyadic::parse(std::string_view text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string_view::npos) {
            const bigint p{std::string(text)};
            if (p == 0 || p == 1) return dyadic(p, 0);
            return std::nullopt;
        }
        const bigint p{std::string(text.substr(0, slash))};
        const bigint q{std::string(text.substr(slash + 1))};
        if (q <= 0) return std::nullopt;
        // q must be 2^k
        bigint r = q;
        unsigned k = 0;
        while ((r & 1) == 0) {
            r >>= 1;
            ++k;
        }
        if (r != 1) return std::nullopt;
        if (p < 0 || p > q) return std::nullopt;
        return dyadic(p, k);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

double dyadic::to_double() const { return sternmu::to_double(value()); }

dilation_values f_dyadic(const dyadic& t) {
    if (t.num() == 0) return {bigrat(0), bigrat(0)};
    if (t.level() == 0) return {bigrat(1, 2), bigrat(1, 2)};  // t == 1

    const bool cache = t.level() <= kMemoMaxLevel;
    if (cache) {
        std::shared_lock lock(f_memo_mu);
        if (auto it = f_memo.find(memo_key(t)); it != f_memo.end()) return it->second;
    }

    const bigint half = pow2(t.level() - 1);
    dilation_values r;
    if (t.num() < half) {
        // t < 1/2: f(t) = (1/3) S0 f(2t), and f(2t-1) clamps to (0,0).
        const dilation_values g = f_dyadic(dyadic(t.num(), t.level() - 1));
        r = {g.f0 / 3, (g.f0 + g.f1) / 3};
    } else {
        // t >= 1/2: f(2t) clamps to (1/2,1/2), so S0 f(2t) = (1/2,1)^T.
        const dilation_values g = f_dyadic(dyadic(t.num() - half, t.level() - 1));
        r = {(bigrat(1, 2) + g.f0 + g.f1) / 3, (1 + g.f1) / 3};
    }

    if (cache) {
        std::unique_lock lock(f_memo_mu);
        f_memo.emplace(memo_key(t), r);
    }
    return r;
}

dilation_bracket f_real(double t, double eps) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("f_real: t outside [0,1]");
    if (!(eps > 0.0)) throw std::domain_error("f_real: eps must be positive");

    const dyadic exact = dyadic::from_double(t);
    // Holder constant from the exact fit, padded x2; width of a level-L
    // bracket is at most C * 2^{-L*alpha0} per coordinate.
    static const double c_pad = 2.0 * holder_estimate(12).c_hat;
    int level = static_cast<int>(std::ceil(std::log2(c_pad / eps) / alpha0()));
    level = std::max(level, 1);

    const bigrat tol(eps);
    for (;; level += 4) {
        if (static_cast<unsigned>(level) >= exact.level()) {
            const dilation_values v = f_dyadic(exact);
            return {{v.f0, v.f0}, {v.f1, v.f1}};
        }
        const bigint lo_num = exact.num() >> (exact.level() - level);
        const dilation_values lo = f_dyadic(dyadic(lo_num, level));
        const dilation_values hi = f_dyadic(dyadic(lo_num + 1, level));
        dilation_bracket br{{lo.f0, hi.f0}, {lo.f1, hi.f1}};
        if (br.f0.width() <= tol && br.f1.width() <= tol) return br;
    }
}

bigrat cdf(const dyadic& x) {
    const dilation_values v = f_dyadic(x);
    const bigrat direct = v.f0 + v.f1;
    // Second closed form through the midpoint (1+x)/2.
    const dilation_values mid = f_dyadic(dyadic(pow2(x.level()) + x.num(), x.level() + 1));
    const bigrat via_mid = 3 * (mid.f0 - bigrat(1, 6));
    if (direct != via_mid) throw std::logic_error("cdf: closed forms disagree");
    return direct;
}

aug_matrix aug_matrix::for_digit(int b) {
    aug_matrix a{};
    const bigrat third(1, 3);
    if (b == 0) {
        a.m[0][0] = third;
        a.m[1][0] = third;
        a.m[1][1] = third;
    } else {
        a.m[0][0] = third;
        a.m[0][1] = third;
        a.m[1][1] = third;
        a.m[0][2] = bigrat(1, 6);  // u_1 = (1/2, 1)^T, scaled by 1/3
        a.m[1][2] = third;
    }
    a.m[2][2] = 1;
    return a;
}

aug_matrix aug_matrix::operator*(const aug_matrix& o) const {
    aug_matrix r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            bigrat acc = 0;
            for (int k = 0; k < 3; ++k) acc += m[i][k] * o.m[k][j];
            r.m[i][j] = acc;
        }
    return r;
}

bigrat interval_measure(std::uint64_t m, unsigned k) {
    if (k == 0 || k > 63 || (bigint(m) << 1) >= pow2(k))
        throw std::domain_error("interval_measure: requires 2m < 2^k");
    // 2^k + 2m has binary digits 1 b_{k-1} ... b_1 0 with b_i = bit i-1 of m.
    // Apply the scaled augmented matrices right-to-left to the difference
    // vector (f(1/2) - f(0); 0) = (1/6, 1/3, 0)^T.
    bigrat w[3] = {bigrat(1, 6), bigrat(1, 3), bigrat(0)};
    auto apply = [&w](const aug_matrix& a) {
        bigrat r0 = a.m[0][0] * w[0] + a.m[0][1] * w[1] + a.m[0][2] * w[2];
        bigrat r1 = a.m[1][0] * w[0] + a.m[1][1] * w[1] + a.m[1][2] * w[2];
        bigrat r2 = a.m[2][2] * w[2];
        w[0] = std::move(r0);
        w[1] = std::move(r1);
        w[2] = std::move(r2);
    };
    const aug_matrix a0 = aug_matrix::for_digit(0);
    const aug_matrix a1 = aug_matrix::for_digit(1);
    for (unsigned i = 1; i < k; ++i) apply(((m >> (i - 1)) & 1) ? a1 : a0);
    apply(a1);  // leading digit of 2^k + 2m
    return 3 * w[0];
}

holder_fit holder_estimate(int max_level) {
    if (max_level < 1 || max_level > 16)
        throw std::domain_error("holder_estimate: max_level must be in [1,16]");
    double c_hat = 0.0;
    std::vector<double> xs, ys;
    for (int level = 1; level <= max_level; ++level) {
        const std::uint64_t cells = std::uint64_t{1} << level;
        bigrat prev = 0, dmax = 0;
        for (std::uint64_t j = 1; j <= cells; ++j) {
            const bigrat fj = cdf(dyadic(bigint(j), level));
            if (fj - prev > dmax) dmax = fj - prev;
            prev = fj;
        }
        const double d = to_double(dmax);
        xs.push_back(level);
        ys.push_back(std::log2(d));
        c_hat = std::max(c_hat, d / std::pow(std::exp2(-level), alpha0()));
    }
    // Least squares of log2(max dF) against the level; alpha_hat = -slope.
    if (xs.size() == 1) return {-ys[0] / xs[0], c_hat};
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return {-slope, c_hat};
}

bool strict_increase_check(int max_level) {
    if (max_level < 0 || max_level > 14)
        throw std::domain_error("strict_increase_check: max_level must be in [0,14]");
    for (int level = 1; level <= max_level; ++level) {
        const std::uint64_t cells = std::uint64_t{1} << level;
        bigrat prev = 0;
        for (std::uint64_t j = 1; j <= cells; ++j) {
            const bigrat fj = cdf(dyadic(bigint(j), level));
            if (fj <= prev) return false;
            prev = fj;
        }
    }
    return true;
}

}  // namespace sternmu
