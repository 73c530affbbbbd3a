#include "sternmu/fourier.hpp"

#include <cmath>
#include <cstring>
#include <list>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace sternmu {
namespace {

// One product factor. x is reduced mod 1 first; for a double the reduction
// is exact, so the argument of cos carries only the 2*pi rounding.
inline double product_factor(double x) {
    const double f = x - std::floor(x);
    return (1.0 + 2.0 * std::cos(2.0 * std::numbers::pi * f)) / 3.0;
}

// Factors M with index m > M deviate from 1 by at most (2 pi k/2^m)^2 / 3,
// so the absolute tail of the product is below
//   (4 pi^2 k^2 / 9) * 4^{-M} = (4 pi^2 / 9) * ktil^2 * 4^{-B}
// with M = ceil(log2 max(|k|,1)) + B and ktil = |k| / 2^{ceil(...)} <= 1.
int truncation_depth(double k, const fourier_settings& s) {
    const double a = std::fabs(k);
    int lead = 0;
    double ktil = a;
    if (a > 1.0) {
        lead = static_cast<int>(std::ceil(std::log2(a)));
        ktil = a / std::exp2(lead);
    }
    int b = 0;
    double tail = (4.0 * std::numbers::pi * std::numbers::pi / 9.0) * ktil * ktil;
    while (tail > s.tail_tol) {
        tail *= 0.25;
        ++b;
    }
    return std::max(s.min_depth, lead + b);
}

struct cache_key {
    std::uint64_t odd;
    int depth;
    std::uint64_t tol_bits;
    bool operator==(const cache_key&) const = default;
};

struct cache_key_hash {
    std::size_t operator()(const cache_key& k) const {
        std::size_t h = std::hash<std::uint64_t>{}(k.odd);
        h ^= std::hash<int>{}(k.depth) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h ^= std::hash<std::uint64_t>{}(k.tol_bits) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return h;
    }
};

// Sharded LRU keyed by odd part plus settings; shards keep reads concurrent
// while insert-if-absent stays atomic per shard.
class odd_cache {
public:
    static constexpr std::size_t kShards = 16;

    void reset(std::size_t capacity) {
        for (auto& s : shards_) {
            std::lock_guard lock(s.mu);
            s.order.clear();
            s.map.clear();
            s.capacity = std::max<std::size_t>(capacity / kShards, 16);
        }
    }

    bool lookup(const cache_key& key, double& out) {
        shard& s = shard_for(key);
        std::lock_guard lock(s.mu);
        const auto it = s.map.find(key);
        if (it == s.map.end()) return false;
        s.order.splice(s.order.begin(), s.order, it->second);
        out = it->second->second;
        return true;
    }

    void insert(const cache_key& key, double value) {
        shard& s = shard_for(key);
        std::lock_guard lock(s.mu);
        if (s.map.contains(key)) return;
        s.order.emplace_front(key, value);
        s.map.emplace(key, s.order.begin());
        if (s.map.size() > s.capacity) {
            s.map.erase(s.order.back().first);
            s.order.pop_back();
        }
    }

private:
    struct shard {
        std::mutex mu;
        std::list<std::pair<cache_key, double>> order;
        std::unordered_map<cache_key, decltype(order)::iterator, cache_key_hash> map;
        std::size_t capacity = (std::size_t{1} << 18) / kShards;
    };
    shard& shard_for(const cache_key& k) { return shards_[k.odd % kShards]; }
    shard shards_[kShards];
};

odd_cache& cache() {
    static odd_cache c;
    return c;
}

}  // namespace

fourier_settings fourier_settings::make(double tail_tol, int min_depth) {
    if (!(tail_tol > 0.0 && tail_tol <= 1e-6))
        throw std::invalid_argument("fourier_settings: tail_tol must be in (0, 1e-6]");
    if (min_depth < 8)
        throw std::invalid_argument("fourier_settings: min_depth must be >= 8");
    return {tail_tol, min_depth};
}

level_measure::level_measure(int level) : level_(level) {
    if (level < 0 || level > 24)
        throw std::domain_error("level_measure: level must be in [0,24]");
    counts_ = {1};  // level 0: the unit mass at 0
    for (int n = 1; n <= level; ++n) {
        std::vector<std::uint64_t> next(counts_.size() * 2);
        for (std::size_t m = 0; m < counts_.size(); ++m) {
            next[2 * m] = counts_[m];
            // s(2^{n}) = 1 closes the block on the right.
            next[2 * m + 1] = counts_[m] + (m + 1 < counts_.size() ? counts_[m + 1] : 1);
        }
        counts_ = std::move(next);
    }
}

bigrat level_measure::weight(std::size_t m) const {
    return bigrat(bigint(counts_.at(m)), pow3(level_));
}

bigrat level_measure::mass_leq(const bigrat& x) const {
    if (x < 0) return 0;
    // largest m with m/2^n <= x
    bigint top = numerator(x) * pow2(level_) / denominator(x);
    if (top >= bigint(counts_.size())) top = bigint(counts_.size()) - 1;
    bigint sum = 0;
    const auto last = top.convert_to<std::size_t>();
    for (std::size_t m = 0; m <= last; ++m) sum += counts_[m];
    return bigrat(sum, pow3(level_));
}

bigrat level_measure::mass_closed(const bigrat& lo, const bigrat& hi) const {
    if (hi < lo) return 0;
    bigrat total = mass_leq(hi);
    if (lo > 0) {
        // subtract [0, lo) = [0, largest grid point strictly below lo]
        bigint below = numerator(lo) * pow2(level_) / denominator(lo);
        if (bigrat(below, pow2(level_)) == lo) below -= 1;
        if (below >= 0) total -= mass_leq(bigrat(below, pow2(level_)));
    }
    return total;
}

bigrat level_measure::atom(const bigrat& x) const {
    bigint fl = numerator(x) / denominator(x);
    if (x < 0 && bigrat(fl) != x) fl -= 1;
    const bigrat t = x - fl;  // reduce to [0,1)
    const bigint idx = numerator(t) * pow2(level_);
    if (idx % denominator(t) != 0) return 0;  // off the support grid
    const bigint m = idx / denominator(t);
    if (m < 0 || m >= bigint(counts_.size())) return 0;
    return weight(m.convert_to<std::size_t>());
}

double dilation_factor(double k) { return product_factor(k); }

double scaling_product(int n, double k) {
    double p = 1.0;
    double x = k;
    for (int m = 0; m < n; ++m) {
        p *= product_factor(x);
        x *= 2.0;
    }
    return p;
}

double mu_hat_level(int n, double k) {
    double p = 1.0;
    double x = k;
    for (int m = 1; m <= n; ++m) {
        x *= 0.5;  // exact
        p *= product_factor(x);
    }
    return p;
}

double mu_hat_level_direct(int n, double k) {
    if (n < 0 || n > 20) throw std::domain_error("mu_hat_level_direct: n must be in [0,20]");
    const std::size_t top = std::size_t{1} << n;
    // s(1..2^n) straight from the recursion
    std::vector<std::uint64_t> s(top + 1);
    s[1] = 1;
    for (std::size_t i = 2; i <= top; ++i)
        s[i] = (i % 2 == 0) ? s[i / 2] : s[i / 2] + s[i / 2 + 1];

    const double scale = std::exp2(-n);
    // the weights are even in j, so the transform is the cosine sum
    double sum = static_cast<double>(s[top]);  // j = 0
    for (std::size_t j = 1; j < top; ++j) {
        const double x = k * (static_cast<double>(j) * scale);
        const double f = x - std::floor(x);
        sum += 2.0 * static_cast<double>(s[top - j]) *
               std::cos(2.0 * std::numbers::pi * f);
    }
    return sum / std::pow(3.0, n);
}

double mu_hat(double k, const fourier_settings& settings) {
    const double a = std::fabs(k);  // symmetric by construction
    if (a > std::exp2(40)) throw std::domain_error("mu_hat: |k| > 2^40");
    if (a == 0.0) return 1.0;
    return mu_hat_level(truncation_depth(a, settings), a);
}

double mu_hat_int(std::int64_t k, const fourier_settings& settings) {
    std::uint64_t a = k < 0 ? -static_cast<std::uint64_t>(k) : static_cast<std::uint64_t>(k);
    if (a == 0) return 1.0;
    while ((a & 1) == 0) a >>= 1;  // mu_hat(2k) = mu_hat(k) on integers

    std::uint64_t tol_bits;
    static_assert(sizeof(tol_bits) == sizeof(settings.tail_tol));
    std::memcpy(&tol_bits, &settings.tail_tol, sizeof(tol_bits));
    const cache_key key{a, settings.min_depth, tol_bits};

    double v;
    if (cache().lookup(key, v)) return v;
    v = mu_hat(static_cast<double>(a), settings);
    cache().insert(key, v);
    return v;
}

double scaling_residual(double k, const fourier_settings& settings) {
    return std::fabs(mu_hat(2.0 * k, settings) - dilation_factor(k) * mu_hat(k, settings));
}

void mu_hat_cache_reset(std::size_t capacity) { cache().reset(capacity); }

}  // namespace sternmu
