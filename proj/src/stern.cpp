#include "sternmu/stern.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "sternmu/dilation.hpp"
#include "sternmu/linalg.hpp"

namespace sternmu {
namespace {

// s(n) <= Fib(66) < 2^46 for all n < 2^64 (the maximum over a binary block
// of length k is Fib(k+2)), so uint64 holds every value exactly.
constexpr std::uint64_t kUnset = ~std::uint64_t{0};

std::mutex memo_mu;
std::vector<std::uint64_t> memo;  // memo[n] = s(n) or kUnset
std::atomic<std::size_t> memo_cap{std::size_t{1} << 22};

std::uint64_t memo_lookup(std::uint64_t n) {
    std::lock_guard lock(memo_mu);
    return n < memo.size() ? memo[n] : kUnset;
}

void memo_store(std::uint64_t n, std::uint64_t v) {
    const std::size_t cap = memo_cap.load(std::memory_order_relaxed);
    if (n >= cap) return;
    std::lock_guard lock(memo_mu);
    if (n >= memo.size())
        memo.resize(std::min<std::size_t>(cap, std::bit_ceil(n + 1)), kUnset);
    memo[n] = v;
}

std::uint64_t stern_u64(std::uint64_t n) {
    if (n < 2) return n;
    if (const std::uint64_t hit = memo_lookup(n); hit != kUnset) return hit;
    const std::uint64_t h = n >> 1;
    const std::uint64_t v = (n & 1) ? stern_u64(h) + stern_u64(h + 1) : stern_u64(h);
    memo_store(n, v);
    return v;
}

// Forward step for consecutive pairs, an induction consequence of the
// defining recursion: s(n+2) = (2*floor(s(n)/s(n+1)) + 1)*s(n+1) - s(n).
inline void pair_advance(std::uint64_t& a, std::uint64_t& b) {
    const std::uint64_t next = (2 * (a / b) + 1) * b - a;
    a = b;
    b = next;
}

bigint from_u128(unsigned __int128 v) {
    bigint r = static_cast<std::uint64_t>(v >> 64);
    r <<= 64;
    r += static_cast<std::uint64_t>(v);
    return r;
}

}  // namespace

bigint stern_recursive(std::uint64_t n) { return bigint(stern_u64(n)); }

bigint stern_matrix(std::uint64_t n) {
    if (n == 0) throw std::domain_error("stern_matrix: n = 0 has no binary expansion");
    // Fold the digit product onto (0,1)^T from the least significant factor;
    // s(n) is the top-right entry of the product, i.e. the first component.
    std::uint64_t c0 = 0, c1 = 1;
    for (int i = std::bit_width(n) - 1; i >= 0; --i) {
        if ((n >> i) & 1)
            c0 += c1;  // S1 (c0,c1) = (c0+c1, c1)
        else
            c1 += c0;  // S0 (c0,c1) = (c0, c0+c1)
    }
    return bigint(c0);
}

void stern_memo_cap(std::size_t cap) {
    memo_cap.store(cap, std::memory_order_relaxed);
    std::lock_guard lock(memo_mu);
    if (memo.size() > cap) memo.resize(cap);
}

bigint block_sum(unsigned n) {
    if (n > 62) throw std::domain_error("block_sum: block too long to scan");
    // Pair scan across [2^n, 2^{n+1}); s(2^n) = 1, s(2^n + 1) = n + 1.
    std::uint64_t a = 1, b = n + 1;
    unsigned __int128 total = 0;
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) {
        total += a;
        pair_advance(a, b);
    }
    return from_u128(total);
}

bigint summatory(double x) {
    if (!(x >= 1.0)) throw std::domain_error("summatory: requires x >= 1");
    const std::uint64_t last = static_cast<std::uint64_t>(std::floor(x));
    // The sum fits __int128: sum_{n<=x} s(n) < x^{1+log2(3)} < 2^127 for
    // x < 2^53 (double input caps floor(x) there).
    unsigned __int128 total = 1;  // s(0) + s(1)
    std::uint64_t a = 1, b = 1;   // (s(1), s(2))
    for (std::uint64_t n = 2; n <= last; ++n) {
        pair_advance(a, b);
        total += a;
    }
    return from_u128(total);
}

double summatory_asymptotic(double x) {
    if (!(x >= 1.0)) throw std::domain_error("summatory_asymptotic: requires x >= 1");
    const double lg = std::log2(x);
    const double fl = std::floor(lg);
    double t = std::exp2(lg - fl - 1.0);  // 2^{<log2 x> - 1} in [1/2, 1)
    if (t >= 1.0) t = std::nextafter(1.0, 0.0);
    if (t < 0.5) t = 0.5;
    const dilation_values f = f_dyadic(dyadic::from_double(t));
    // 3^{fl+1} is exact in double for x <= 2^32 or so; keep it exact anyway.
    const bigrat lead = bigrat(pow3(static_cast<unsigned>(fl) + 1)) * f.f0;
    return to_double(lead);
}

double jsr_estimate(int max_len) {
    if (max_len < 1 || max_len > 16)
        throw std::domain_error("jsr_estimate: max_len must be in [1,16]");
    const linear_rep rep;
    double best = 0.0;
    // Exhaustive walk over all words; entries stay below tau^{2L} << 2^63.
    std::vector<std::pair<mat2i, int>> stack{{rep.s0, 1}, {rep.s1, 1}};
    while (!stack.empty()) {
        auto [p, len] = stack.back();
        stack.pop_back();
        const double t = static_cast<double>(p.trace());
        // det = 1 for every product of S0, S1; eigenvalues are real.
        const double rho = (t + std::sqrt(t * t - 4.0)) / 2.0;
        best = std::max(best, std::pow(rho, 1.0 / len));
        if (len < max_len) {
            stack.emplace_back(p * rep.s0, len + 1);
            stack.emplace_back(p * rep.s1, len + 1);
        }
    }
    return best;
}

}  // namespace sternmu
