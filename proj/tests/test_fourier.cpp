#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include "sternmu/fourier.hpp"
#include "sternmu/numeric.hpp"

using namespace sternmu;

namespace {

std::uint64_t stern_value_for_test(std::uint64_t n) {
    if (n < 2) return n;
    return (n % 2 == 0) ? stern_value_for_test(n / 2)
                        : stern_value_for_test(n / 2) + stern_value_for_test(n / 2 + 1);
}

}  // namespace

TEST_CASE("settings validation") {
    CHECK_THROWS_AS(fourier_settings::make(0.0, 24), std::invalid_argument);
    CHECK_THROWS_AS(fourier_settings::make(1e-5, 24), std::invalid_argument);
    CHECK_THROWS_AS(fourier_settings::make(1e-10, 4), std::invalid_argument);
    CHECK(fourier_settings::make(1e-10, 24) == fourier_settings{});
}

TEST_CASE("level measure weights") {
    const level_measure m0(0);
    CHECK(m0.size() == 1);
    CHECK(m0.weight(0) == 1);

    const level_measure m1(1);
    CHECK(m1.weight(0) == bigrat(1, 3));
    CHECK(m1.weight(1) == bigrat(2, 3));

    const level_measure m2(2);
    CHECK(m2.weight(0) == bigrat(1, 9));
    CHECK(m2.weight(1) == bigrat(3, 9));
    CHECK(m2.weight(2) == bigrat(2, 9));
    CHECK(m2.weight(3) == bigrat(3, 9));

    for (int n = 0; n <= 12; ++n) {
        const level_measure mu(n);
        bigint total = 0;
        for (std::size_t m = 0; m < mu.size(); ++m) {
            CHECK(mu.count(m) >= 1);  // strictly positive weights
            total += mu.count(m);
        }
        CHECK(total == pow3(n));  // weights sum to exactly 1
    }
    CHECK_THROWS_AS(level_measure(25), std::domain_error);
}

TEST_CASE("level transform on integers") {
    CHECK(mu_hat_level(0, 123.0) == 1.0);
    CHECK(mu_hat_level(1, 3.0) == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
    CHECK(mu_hat_level(1, 7.0) == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
    CHECK(mu_hat_level(1, 4.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("direct-sum oracle agrees with the product form") {
    CHECK(mu_hat_level_direct(0, 17.0) == 1.0);
    CHECK(mu_hat_level_direct(1, 1.0) == doctest::Approx(-1.0 / 3.0).epsilon(1e-13));
    CHECK(std::fabs(mu_hat_level(12, 7.0) - mu_hat_level_direct(12, 7.0)) < 1e-10);

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> real_k(0.0, 8.0);
    for (int n = 0; n <= 10; ++n) {
        for (int k = -64; k <= 64; ++k)
            CHECK(std::fabs(mu_hat_level(n, k) - mu_hat_level_direct(n, k)) < 1e-10);
        for (int i = 0; i < 64; ++i) {
            const double k = real_k(rng);
            CHECK(std::fabs(mu_hat_level(n, k) - mu_hat_level_direct(n, k)) < 1e-10);
        }
    }
}

TEST_CASE("oracle weights match the exact iterated convolution") {
    // Build the n-fold convolution of (1/3)(d_0 + d_{2^-m} + d_{-2^-m}) on
    // the signed grid j/2^n by brute force, in exact rationals.  Its weight
    // at j must be s(2^n - |j|)/3^n, and folding the support mod 1 must give
    // the approximant weights.
    for (int n = 1; n <= 8; ++n) {
        const std::int64_t top = std::int64_t{1} << n;
        std::vector<bigrat> conv(2 * top + 1);  // index j + top
        conv[top] = 1;
        for (int m = 1; m <= n; ++m) {
            const std::int64_t off = std::int64_t{1} << (n - m);
            std::vector<bigrat> next(2 * top + 1);
            for (std::int64_t j = -top; j <= top; ++j) {
                if (conv[j + top] == 0) continue;
                for (const std::int64_t d : {std::int64_t{0}, off, -off})
                    next[j + d + top] += conv[j + top] / 3;
            }
            conv = std::move(next);
        }

        const level_measure mu(n);
        const bigint denom = pow3(n);
        for (std::int64_t j = -top; j <= top; ++j) {
            const std::int64_t a = j < 0 ? -j : j;
            const bigrat expect =
                a >= top ? bigrat(0)
                         : bigrat(stern_value_for_test(top - a), denom);
            CHECK(conv[j + top] == expect);
        }
        for (std::int64_t m = 0; m < top; ++m) {
            bigrat folded = conv[m + top];
            if (m > 0) folded += conv[m - top + top];
            CHECK(folded == mu.weight(static_cast<std::size_t>(m)));
        }
    }
}

TEST_CASE("torus-support cosine sum matches at integer arguments") {
    // Folding the signed support mod 1 is invisible to integer frequencies,
    // so the plain sum over the approximant weights also reproduces the
    // product there (and only there).
    for (int n = 0; n <= 10; ++n) {
        const level_measure mu(n);
        const double denom = std::pow(3.0, n);
        for (int k = -32; k <= 32; ++k) {
            double sum = 0.0;
            for (std::size_t m = 0; m < mu.size(); ++m) {
                const double x = k * (static_cast<double>(m) * std::exp2(-n));
                sum += static_cast<double>(mu.count(m)) *
                       std::cos(2.0 * std::numbers::pi * (x - std::floor(x)));
            }
            CHECK(std::fabs(sum / denom - mu_hat_level(n, k)) < 1e-10);
        }
    }
}

TEST_CASE("limit transform anchors") {
    CHECK(mu_hat(0.0) == 1.0);
    CHECK(std::fabs(mu_hat(1.0) - (-0.083432)) <= 5e-7);
    CHECK(std::fabs(std::fabs(mu_hat(0.4)) - 0.450342617) <= 1e-8);
    CHECK(std::fabs(std::fabs(mu_hat(0.877996139)) - 0.105423890) <= 1e-7);
    CHECK_THROWS_AS(mu_hat(std::exp2(41)), std::domain_error);
}

TEST_CASE("transform is even by construction") {
    for (int i = 0; i <= 100; ++i) {
        const double k = -4.0 + 8.0 * i / 100.0;
        CHECK(mu_hat(k) == mu_hat(-k));  // bitwise
    }
}

TEST_CASE("integer reduction and cache") {
    CHECK(mu_hat_int(0) == 1.0);
    for (int j = 0; j <= 30; ++j)
        CHECK(mu_hat_int(std::int64_t{1} << j) == mu_hat_int(1));
    CHECK(mu_hat_int(12) == mu_hat_int(3));
    for (std::int64_t k = 1; k <= 4096; ++k) {
        CHECK(mu_hat_int(2 * k) == mu_hat_int(k));
        CHECK(mu_hat_int(-k) == mu_hat_int(k));
    }
    mu_hat_cache_reset(64);  // tiny capacity must not change values
    for (std::int64_t k = 1; k <= 512; k += 2)
        CHECK(mu_hat_int(k) == mu_hat(static_cast<double>(k)));  // odd: bitwise
    for (std::int64_t k = 2; k <= 512; k += 2)
        // even arguments reduce to the odd part, whose truncation depth can
        // differ from the direct evaluation; agreement is within the tail
        CHECK(std::fabs(mu_hat_int(k) - mu_hat(static_cast<double>(k))) <= 4e-10);
    mu_hat_cache_reset();
}

TEST_CASE("cache stays consistent under concurrent use") {
    mu_hat_cache_reset();
    std::vector<double> a(2000), b(2000);
    std::thread t1([&] {
        for (int k = 0; k < 2000; ++k) a[k] = mu_hat_int(k);
    });
    std::thread t2([&] {
        for (int k = 1999; k >= 0; --k) b[k] = mu_hat_int(k);
    });
    t1.join();
    t2.join();
    for (int k = 0; k < 2000; ++k) CHECK(a[k] == b[k]);
}

TEST_CASE("scaling relation") {
    CHECK(scaling_residual(0.0) == 0.0);
    CHECK(scaling_residual(0.5) <= 4e-10);
    CHECK(scaling_residual(0.3) <= 4e-10);
    for (int i = 0; i <= 500; ++i)
        CHECK(scaling_residual(-4.0 + 8.0 * i / 500.0) <= 4e-10);
}

TEST_CASE("level transforms refine towards the limit") {
    for (const double k : {0.3, 1.0, 2.5, 7.1}) {
        const double target = mu_hat(k);
        const double e10 = std::fabs(mu_hat_level(10, k) - target);
        const double e15 = std::fabs(mu_hat_level(15, k) - target);
        const double e20 = std::fabs(mu_hat_level(20, k) - target);
        CHECK(e15 <= e10);
        CHECK(e20 <= e15);
        CHECK(e20 < 1e-9);
    }
}

TEST_CASE("scaling product is symmetric around 1/2") {
    for (int n = 1; n <= 8; ++n)
        for (int i = 0; i <= 200; ++i) {
            const double kappa = static_cast<double>(i) / 200.0;
            CHECK(scaling_product(n, kappa) ==
                  doctest::Approx(scaling_product(n, 1.0 - kappa)).epsilon(1e-11));
        }
}

TEST_CASE("doubling-window ratio identity and estimate") {
    for (int n = 1; n <= 10; ++n) {
        const double pow2n = std::exp2(n);
        for (int i = 1; i <= 100; ++i) {
            const double kappa = 0.5 * i / 100.0;  // (0, 1/2]
            const double lhs_num = mu_hat(pow2n * (1.0 - kappa));
            const double lhs_den = mu_hat(pow2n * kappa);
            const double rhs_num = mu_hat(1.0 - kappa);
            const double rhs_den = mu_hat(kappa);
            if (std::fabs(lhs_den) > 1e-9 && std::fabs(rhs_den) > 1e-9)
                // cross-multiplied form of the ratio identity
                CHECK(std::fabs(lhs_num * rhs_den - rhs_num * lhs_den) < 1e-8);
            CHECK(std::fabs(lhs_num) <= std::fabs(lhs_den) + 1e-9);
        }
    }
}

TEST_CASE("interval masses of approximants") {
    const level_measure mu(10);
    CHECK(mu.mass_leq(1) == 1);
    // [0,1/4] and [1/4,1] overlap exactly in the atom at 1/4
    CHECK(mu.mass_leq(bigrat(1, 4)) + mu.mass_closed(bigrat(1, 4), bigrat(1)) ==
          1 + mu.atom(bigrat(1, 4)));
    CHECK(mu.atom(bigrat(1, 3)) == 0);
}
