#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "sternmu/dilation.hpp"
#include "sternmu/fourier.hpp"
#include "sternmu/numeric.hpp"

using namespace sternmu;

TEST_CASE("dyadic normalization and parsing") {
    CHECK(dyadic(2, 4) == dyadic(1, 3));
    CHECK(dyadic(4, 2) == dyadic(1, 0));
    CHECK(dyadic(0, 7) == dyadic());
    CHECK(dyadic::from_double(0.5) == dyadic(1, 1));
    CHECK(dyadic::from_double(0.8125) == dyadic(13, 4));
    CHECK(dyadic::from_double(1.0) == dyadic(1, 0));

    CHECK(dyadic::parse("3/8") == dyadic(3, 3));
    CHECK(dyadic::parse("1") == dyadic(1, 0));
    CHECK(dyadic::parse("0") == dyadic());
    CHECK(!dyadic::parse("1/3").has_value());
    CHECK(!dyadic::parse("2/6").has_value());
    CHECK(!dyadic::parse("5/4").has_value());
    CHECK(!dyadic::parse("x/4").has_value());
    CHECK_THROWS_AS(dyadic(5, 2), std::domain_error);
}

TEST_CASE("dilation solution at pinned points") {
    CHECK(f_dyadic(dyadic()) == dilation_values{0, 0});
    CHECK(f_dyadic(dyadic(1, 0)) == dilation_values{bigrat(1, 2), bigrat(1, 2)});
    CHECK(f_dyadic(dyadic(1, 1)) == dilation_values{bigrat(1, 6), bigrat(1, 3)});
    CHECK(f_dyadic(dyadic(1, 2)) == dilation_values{bigrat(1, 18), bigrat(1, 6)});
    CHECK(f_dyadic(dyadic(3, 2)) == dilation_values{bigrat(1, 3), bigrat(4, 9)});
}

TEST_CASE("grid ordering and monotonicity of both components") {
    dilation_values prev{0, 0};
    for (std::uint64_t j = 0; j <= (1 << 12); ++j) {
        const dilation_values v = f_dyadic(dyadic(bigint(j), 12));
        CHECK(v.f0 >= 0);
        CHECK(v.f0 <= v.f1);
        CHECK(v.f1 <= bigrat(1, 2));
        if (j > 0) {
            CHECK(v.f0 >= prev.f0);
            CHECK(v.f1 >= prev.f1);
        }
        prev = v;
    }
}

TEST_CASE("midpoint identity holds exactly") {
    for (int level = 0; level <= 8; ++level)
        for (std::uint64_t j = 0; j <= (std::uint64_t{1} << level); ++j) {
            const dyadic x(bigint(j), level);
            const dilation_values f = f_dyadic(x);
            const dilation_values mid =
                f_dyadic(dyadic(pow2(level) + bigint(j), level + 1));
            CHECK(f.f0 + f.f1 == 3 * (mid.f0 - bigrat(1, 6)));
        }
}

TEST_CASE("distribution function values") {
    CHECK(cdf(dyadic()) == 0);
    CHECK(cdf(dyadic(1, 0)) == 1);
    CHECK(cdf(dyadic(1, 1)) == bigrat(1, 2));
    CHECK(cdf(dyadic(1, 2)) == bigrat(2, 9));
    CHECK(cdf(dyadic(3, 2)) == bigrat(7, 9));
}

TEST_CASE("reflection symmetry of the distribution function") {
    for (std::uint64_t j = 1; j < (1 << 10); ++j)
        CHECK(cdf(dyadic(bigint(j), 10)) + cdf(dyadic(bigint((1 << 10) - j), 10)) == 1);
}

TEST_CASE("level partitions sum to one exactly") {
    for (int level = 1; level <= 10; ++level) {
        bigrat total = 0, prev = 0;
        for (std::uint64_t j = 1; j <= (std::uint64_t{1} << level); ++j) {
            const bigrat fj = cdf(dyadic(bigint(j), level));
            total += fj - prev;
            prev = fj;
        }
        CHECK(total == 1);
    }
}

TEST_CASE("interval measure from augmented products") {
    CHECK(interval_measure(0, 1) == bigrat(1, 2));
    CHECK(interval_measure(0, 2) == bigrat(2, 9));
    CHECK_THROWS_AS(interval_measure(2, 2), std::domain_error);

    for (unsigned k = 1; k <= 8; ++k) {
        const bigrat floor_bound(bigint(1), 2 * pow3(k));
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << (k - 1)); ++m) {
            const bigrat im = interval_measure(m, k);
            CHECK(im == cdf(dyadic(bigint(2 * m + 1), k)) - cdf(dyadic(bigint(2 * m), k)));
            CHECK(im >= floor_bound);
        }
    }
}

TEST_CASE("augmented matrix entries") {
    const aug_matrix a0 = aug_matrix::for_digit(0);
    CHECK(a0.m[0][2] == 0);
    CHECK(a0.m[1][2] == 0);
    CHECK(a0.m[2][2] == 1);
    const aug_matrix a1 = aug_matrix::for_digit(1);
    CHECK(a1.m[0][2] == bigrat(1, 6));
    CHECK(a1.m[1][2] == bigrat(1, 3));
    CHECK(a1.m[2][2] == 1);
    CHECK(a1.m[2][0] == 0);
    CHECK(a1.m[2][1] == 0);
}

TEST_CASE("holder diagnostics") {
    const holder_fit h1 = holder_estimate(1);
    // at level 1 both increments are 1/2
    CHECK(h1.c_hat == doctest::Approx(0.5 * std::exp2(std::log2(
                          3.0 / ((1.0 + std::sqrt(5.0)) / 2.0)))).epsilon(1e-12));
    const holder_fit h12 = holder_estimate(12);
    CHECK(h12.alpha_hat > 0.85);
    CHECK(h12.alpha_hat < 0.95);
    CHECK(h12.c_hat > 0.0);
    CHECK(std::isfinite(h12.c_hat));
}

TEST_CASE("strict increase of the distribution function") {
    CHECK(strict_increase_check(0));  // vacuous
    CHECK(strict_increase_check(4));
    CHECK(strict_increase_check(10));
}

TEST_CASE("real-argument bracketing") {
    const dilation_bracket exact = f_real(0.5, 1e-6);
    CHECK(exact.f0.lo == bigrat(1, 6));
    CHECK(exact.f0.hi == bigrat(1, 6));
    CHECK(exact.f1.lo == bigrat(1, 3));
    CHECK(exact.f1.hi == bigrat(1, 3));

    const dilation_bracket one = f_real(1.0, 1e-6);
    CHECK(one.f0.lo == bigrat(1, 2));
    CHECK(one.f1.hi == bigrat(1, 2));

    const double third = 1.0 / 3.0;
    const dilation_bracket wide = f_real(third, 1e-4);
    const dilation_bracket tight = f_real(third, 1e-7);
    CHECK(wide.f0.width() <= bigrat(1, 10000));
    CHECK(wide.f1.width() <= bigrat(1, 10000));
    // nested: the tighter bracket sits inside the wider one
    CHECK(wide.f0.lo <= tight.f0.lo);
    CHECK(tight.f0.hi <= wide.f0.hi);
    CHECK(wide.f1.lo <= tight.f1.lo);
    CHECK(tight.f1.hi <= wide.f1.hi);
}

TEST_CASE("random dyadics satisfy the exact identities") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 400; ++trial) {
        const unsigned level = 1 + rng() % 18;
        const bigint num = bigint(rng() % (std::uint64_t{1} << level));
        const dyadic x(num, level);
        const dilation_values f = f_dyadic(x);
        // midpoint identity
        const dilation_values mid = f_dyadic(dyadic(pow2(x.level()) + x.num(), x.level() + 1));
        CHECK(f.f0 + f.f1 == 3 * (mid.f0 - bigrat(1, 6)));
        // reflection symmetry of the distribution function
        const dyadic xr(pow2(x.level()) - x.num(), x.level());
        CHECK(cdf(x) + cdf(xr) == 1);
        // component bounds
        CHECK(f.f0 >= 0);
        CHECK(f.f0 <= f.f1);
        CHECK(f.f1 <= bigrat(1, 2));
    }
}

TEST_CASE("dilation memo is safe under concurrent use") {
    std::vector<dilation_values> a(1 << 10), b(1 << 10);
    std::thread t1([&] {
        for (std::uint64_t j = 0; j < (1 << 10); ++j)
            a[j] = f_dyadic(dyadic(bigint(j), 10));
    });
    std::thread t2([&] {
        for (std::uint64_t j = (1 << 10); j-- > 0;)
            b[j] = f_dyadic(dyadic(bigint(j), 10));
    });
    t1.join();
    t2.join();
    for (std::uint64_t j = 0; j < (1 << 10); ++j) {
        CHECK(a[j] == b[j]);
        CHECK(a[j].f0 + a[j].f1 == cdf(dyadic(bigint(j), 10)));
    }
}

TEST_CASE("approximant masses converge to interval measures") {
    // gap at [0,1/4] shrinks with the level (exact rational comparisons)
    const bigrat target = interval_measure(0, 2);
    bigrat prev_gap = -1;
    for (int n = 2; n <= 12; ++n) {
        const level_measure mu(n);
        bigrat gap = mu.mass_leq(bigrat(1, 4)) - target;
        if (gap < 0) gap = -gap;
        if (prev_gap >= 0) CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    CHECK(prev_gap < bigrat(1, 100));

    // a second window, [1/2, 3/4]
    const bigrat target2 = interval_measure(1, 2);
    const level_measure mu12(12);
    bigrat gap2 = mu12.mass_closed(bigrat(1, 2), bigrat(3, 4)) - target2;
    if (gap2 < 0) gap2 = -gap2;
    CHECK(gap2 < bigrat(1, 100));
}
