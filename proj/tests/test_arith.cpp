#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "rlab/arith.hpp"

using namespace rlab;

namespace {

// Brute-force r3 oracle: ordered signed triples with x^2+y^2+z^2 = n.
std::vector<std::int64_t> r3_oracle(std::int64_t limit) {
    std::vector<std::int64_t> r(static_cast<std::size_t>(limit) + 1, 0);
    const auto k = static_cast<std::int64_t>(std::sqrt(static_cast<double>(limit))) + 1;
    for (std::int64_t x = -k; x <= k; ++x)
        for (std::int64_t y = -k; y <= k; ++y)
            for (std::int64_t z = -k; z <= k; ++z) {
                const std::int64_t n = x * x + y * y + z * z;
                if (n <= limit) r[n]++;
            }
    return r;
}

int mu_oracle(std::int64_t n) {
    int mu = 1;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

}  // namespace

TEST_CASE("build_tables: r3 against brute-force enumeration") {
    const auto t = build_tables(200, 1);
    const auto oracle = r3_oracle(200);
    for (std::int64_t n = 0; n <= 200; ++n) CHECK(t.r3[n] == oracle[n]);
    CHECK(t.r3[0] == 1);
    CHECK(t.r3[1] == 6);
    CHECK(t.r3[2] == 12);
    CHECK(t.r3[3] == 8);
    CHECK(t.r3[7] == 0);
}

TEST_CASE("build_tables: threaded r3 sieve is identical to single-threaded") {
    const auto t1 = build_tables(5000, 1);
    const auto t8 = build_tables(5000, 8);
    CHECK(t1.r3 == t8.r3);
}

TEST_CASE("build_tables: mu against trial division and divisor-sum identity") {
    const std::int64_t limit = 3000;
    const auto t = build_tables(limit, 2);
    CHECK(t.mu[1] == 1);
    CHECK(t.mu[4] == 0);
    CHECK(t.mu[30] == -1);
    for (std::int64_t n = 1; n <= limit; ++n) CHECK(t.mu[n] == mu_oracle(n));

    // sum_{d|n} mu(d) = [n == 1]
    std::vector<std::int64_t> divsum(static_cast<std::size_t>(limit) + 1, 0);
    for (std::int64_t d = 1; d <= limit; ++d)
        for (std::int64_t n = d; n <= limit; n += d) divsum[n] += t.mu[d];
    CHECK(divsum[1] == 1);
    for (std::int64_t n = 2; n <= limit; ++n) CHECK(divsum[n] == 0);
}

TEST_CASE("build_tables: spf divides n and no smaller prime does") {
    const auto t = build_tables(2000, 1);
    for (std::int64_t n = 2; n <= 2000; ++n) {
        const std::int64_t p = t.spf[n];
        CHECK(n % p == 0);
        for (std::int64_t q = 2; q < p; ++q) CHECK(n % q != 0);
    }
}

TEST_CASE("build_tables: rejects bad limits") {
    CHECK_THROWS_AS(build_tables(1), DomainError);
    CHECK_THROWS_AS(build_tables(1'000'000, 1, 1024), ResourceError);
}

TEST_CASE("squarefree_decompose: examples and uniqueness") {
    const auto t = build_tables(100, 1);
    auto d1 = squarefree_decompose(1, t);
    CHECK(d1.s == 1);
    CHECK(d1.m == 1);
    auto d12 = squarefree_decompose(12, t);
    CHECK(d12.s == 2);
    CHECK(d12.m == 3);
    auto d72 = squarefree_decompose(72, t);
    CHECK(d72.s == 6);
    CHECK(d72.m == 2);
    CHECK_THROWS_AS(squarefree_decompose(101, t), RangeError);

    for (std::int64_t n = 1; n <= 100; ++n) {
        const auto d = squarefree_decompose(n, t);
        CHECK(d.s * d.s * d.m == n);
        CHECK(t.mu[d.m] != 0);
        const auto free = squarefree_decompose(n);
        CHECK(free.s == d.s);
        CHECK(free.m == d.m);
    }
}

TEST_CASE("sqrt_combination_is_zero: examples") {
    using SR = SignedRadical;
    const std::array<SR, 3> a{SR{+1, 8}, SR{+1, 2}, SR{-1, 18}};
    CHECK(sqrt_combination_is_zero(a));
    const std::array<SR, 3> b{SR{+1, 2}, SR{+1, 3}, SR{-1, 5}};
    CHECK_FALSE(sqrt_combination_is_zero(b));
    const std::array<SR, 1> c{SR{+1, 2}};
    CHECK_FALSE(sqrt_combination_is_zero(c));
    const std::array<SR, 4> d{SR{+1, 2}, SR{+1, 18}, SR{-1, 8}, SR{-1, 8}};
    CHECK(sqrt_combination_is_zero(d));
}

TEST_CASE("sqrt_combination_is_zero: agrees with floating point on [1,30]^4, no dead zone") {
    const int top = 30;
    std::array<double, top + 1> root{};
    std::array<SquarefreeDecomposition, top + 1> dec{};
    for (int n = 1; n <= top; ++n) {
        root[n] = std::sqrt(static_cast<double>(n));
        dec[n] = squarefree_decompose(n);
    }
    long checked = 0, dead_zone = 0, disagreements = 0;
    for (int n1 = 1; n1 <= top; ++n1)
        for (int n2 = 1; n2 <= top; ++n2)
            for (int n3 = 1; n3 <= top; ++n3)
                for (int n4 = 1; n4 <= top; ++n4)
                    for (int pattern = 0; pattern < 16; ++pattern) {
                        const int s1 = (pattern & 1) ? -1 : 1;
                        const int s2 = (pattern & 2) ? -1 : 1;
                        const int s3 = (pattern & 4) ? -1 : 1;
                        const int s4 = (pattern & 8) ? -1 : 1;
                        // Exact route: group square parts by squarefree part.
                        const std::int64_t ms[4] = {dec[n1].m, dec[n2].m, dec[n3].m, dec[n4].m};
                        const std::int64_t ss[4] = {s1 * dec[n1].s, s2 * dec[n2].s,
                                                    s3 * dec[n3].s, s4 * dec[n4].s};
                        bool exact_zero = true;
                        for (int i = 0; i < 4 && exact_zero; ++i) {
                            std::int64_t group = 0;
                            for (int j = 0; j < 4; ++j)
                                if (ms[j] == ms[i]) group += ss[j];
                            if (group != 0) exact_zero = false;
                        }

                        const double f = s1 * root[n1] + s2 * root[n2] + s3 * root[n3] + s4 * root[n4];
                        const double af = std::abs(f);
                        if (af >= 1e-9 && af < 1e-6) ++dead_zone;
                        if (exact_zero != (af < 1e-9)) ++disagreements;
                        ++checked;
                    }
    CHECK(checked == 16L * 30 * 30 * 30 * 30);
    CHECK(dead_zone == 0);
    CHECK(disagreements == 0);
}

TEST_CASE("sqrt_combination_is_zero: library route matches the inlined test route on samples") {
    using SR = SignedRadical;
    for (int n1 = 1; n1 <= 30; n1 += 3)
        for (int n2 = 1; n2 <= 30; n2 += 4)
            for (int n3 = 1; n3 <= 30; n3 += 5) {
                const std::array<SR, 4> v{SR{+1, n1}, SR{+1, n2}, SR{-1, n3}, SR{-1, n1}};
                const double f = std::sqrt(double(n1)) + std::sqrt(double(n2)) -
                                 std::sqrt(double(n3)) - std::sqrt(double(n1));
                CHECK(sqrt_combination_is_zero(v) == (std::abs(f) < 1e-9));
            }
}

TEST_CASE("v_formula and v_bruteforce: triple oracle") {
    const auto t = build_tables(2000, 1);
    CHECK(v_formula(1, t) == 1);
    CHECK(v_formula(2, t) == 8);
    CHECK(v_formula(3, t) == 99);
    CHECK(v_formula(6, t) == 792);
    CHECK(v_bruteforce(1) == 1);
    CHECK(v_bruteforce(2) == 8);
    CHECK(v_bruteforce(5) == 725);
    CHECK_THROWS_AS(v_formula(4, t), DomainError);
    CHECK_THROWS_AS(v_bruteforce(21), ResourceError);

    for (std::int64_t d = 1; d <= 15; ++d) {
        if (t.mu[d] == 0) continue;
        CHECK(v_formula(d, t) == v_bruteforce(d));
    }
    for (std::int64_t d = 1; d <= 7; d += 2) {
        if (t.mu[d] == 0) continue;
        CHECK(v_formula(2 * d, t) == 8 * v_formula(d, t));
    }
}

TEST_CASE("v growth: v(d) < d^4 prod (1+1/p) for squarefree d <= 1000") {
    const auto t = build_tables(1000, 1);
    // d = 1 is the empty product where both sides are exactly 1.
    for (std::int64_t d = 2; d <= 1000; ++d) {
        if (t.mu[d] == 0) continue;
        double bound = std::pow(static_cast<double>(d), 4.0);
        std::int64_t n = d;
        while (n > 1) {
            const std::int64_t p = t.spf[n];
            n /= p;
            bound *= 1.0 + 1.0 / static_cast<double>(p);
        }
        CHECK(static_cast<double>(v_formula(d, t)) / bound < 1.0);
    }
}

TEST_CASE("gauss_sum_v: matches v_formula for p in {3,5,7}") {
    const auto t = build_tables(10, 1);
    CHECK(std::abs(gauss_sum_v(3) - 99.0) < 1e-9);
    CHECK(std::abs(gauss_sum_v(5) - 725.0) < 1e-9);
    CHECK(std::abs(gauss_sum_v(7) - 2695.0) < 1e-8);
    CHECK_THROWS_AS(gauss_sum_v(4), DomainError);
    CHECK_THROWS_AS(gauss_sum_v(37), ResourceError);
    (void)t;
}

TEST_CASE("gauss_sum_inner: |sum e(a n^2/25)| = 5 for a=1") {
    CHECK(std::abs(std::abs(gauss_sum_inner(1, 5)) - 5.0) < 1e-9);
}

TEST_CASE("euler_product_C0: exact small prefix and 7/pi^2 proximity") {
    const auto t = build_tables(200'000, 2);
    const auto small = euler_product_C0(3, t);
    CHECK(small.value == doctest::Approx((7.0 / 8.0) * (70.0 / 81.0)).epsilon(1e-14));

    const auto c0 = euler_product_C0(200'000, t);
    const double seven_over_pi2 = 7.0 / (std::numbers::pi * std::numbers::pi);
    CHECK(std::abs(c0.value - seven_over_pi2) / seven_over_pi2 < 0.04);

    const auto alt = moebius_v_sum_C0(10'000, t);
    CHECK(std::abs(c0.value - alt.value) <= c0.bound + alt.bound);

    // The variant product is a different number; keep the gap on record.
    const auto disp = euler_product_C0_display(200'000, t);
    CHECK(std::abs(disp.value - c0.value) > 10.0 * (disp.bound + c0.bound));
}

TEST_CASE("zeta3: value, coarse truncation, monotonicity") {
    const auto z = zeta3(1'000'000);
    CHECK(std::abs(z.value - 1.2020569031595942854) < 1e-10);
    CHECK(z.bound <= 1e-10);

    const auto coarse = zeta3(10);
    CHECK(coarse.value > 1.19);
    CHECK(coarse.value < 1.21);

    CHECK(zeta3(20).value >= coarse.value);
    CHECK(zeta3(40).value >= zeta3(20).value);
    CHECK_THROWS_AS(zeta3(5), DomainError);
}
