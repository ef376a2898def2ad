#include "rlab/arith.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "rlab/parallel.hpp"

namespace rlab {

namespace {

std::int64_t isqrt64(std::int64_t n) {
    if (n < 0) return -1;
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_prime_small(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

}  // namespace

ArithTables build_tables(std::int64_t limit, unsigned threads, std::size_t memory_budget_bytes) {
    if (limit < 2) throw DomainError("build_tables: limit must be >= 2");
    // mu (1B) + r3 (4B) + spf (4B) + transient r2 (4B) per entry.
    const std::size_t needed = static_cast<std::size_t>(limit + 1) * 13;
    if (needed > memory_budget_bytes)
        throw ResourceError("build_tables: limit " + std::to_string(limit) +
                            " exceeds the memory budget");

    ArithTables t;
    t.limit = limit;
    t.mu.assign(static_cast<std::size_t>(limit) + 1, 0);
    t.spf.assign(static_cast<std::size_t>(limit) + 1, 0);
    t.mu[1] = 1;
    t.spf[1] = 1;

    // Linear sieve: each composite is crossed once by its smallest prime.
    std::vector<std::int32_t> primes;
    for (std::int64_t i = 2; i <= limit; ++i) {
        if (t.spf[i] == 0) {
            t.spf[i] = static_cast<std::int32_t>(i);
            t.mu[i] = -1;
            primes.push_back(static_cast<std::int32_t>(i));
        }
        for (std::int32_t p : primes) {
            if (p > t.spf[i] || i * p > limit) break;
            t.spf[i * p] = p;
            t.mu[i * p] = (p == t.spf[i]) ? 0 : static_cast<std::int8_t>(-t.mu[i]);
        }
    }

    // r2[n] = ordered representations as two squares, by enumerating the
    // quadrant and applying sign multiplicities.
    const std::int64_t root = isqrt64(limit);
    std::vector<std::int32_t> r2(static_cast<std::size_t>(limit) + 1, 0);
    for (std::int64_t x = 0; x <= root; ++x) {
        const std::int32_t wx = (x == 0) ? 1 : 2;
        const std::int64_t x2 = x * x;
        const std::int64_t ymax = isqrt64(limit - x2);
        for (std::int64_t y = 0; y <= ymax; ++y)
            r2[x2 + y * y] += wx * ((y == 0) ? 1 : 2);
    }

    // r3 = r2 convolved with the square indicator. Output ranges are
    // disjoint per worker, so the partition cannot change any value.
    t.r3.assign(static_cast<std::size_t>(limit) + 1, 0);
    const unsigned nthreads = parallel::effective_threads(threads);
    const std::int64_t chunk = std::max<std::int64_t>(1, (limit + 1 + nthreads - 1) / nthreads);
    const std::size_t nchunks = static_cast<std::size_t>((limit + chunk) / chunk);
    parallel::for_index(nchunks, nthreads, [&](std::size_t ci) {
        const std::int64_t lo = static_cast<std::int64_t>(ci) * chunk;
        const std::int64_t hi = std::min(limit + 1, lo + chunk);
        for (std::int64_t z = 0; z * z < hi; ++z) {
            const std::int32_t wz = (z == 0) ? 1 : 2;
            const std::int64_t z2 = z * z;
            for (std::int64_t n = std::max(lo, z2); n < hi; ++n)
                t.r3[n] += wz * r2[n - z2];
        }
    });
    return t;
}

SquarefreeDecomposition squarefree_decompose(std::int64_t n, const ArithTables& tables) {
    if (n < 1 || n > tables.limit)
        throw RangeError("squarefree_decompose: n out of table range");
    SquarefreeDecomposition d;
    d.n = n;
    while (n > 1) {
        const std::int64_t p = tables.spf[n];
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        for (int i = 0; i < e / 2; ++i) d.s *= p;
        if (e % 2) d.m *= p;
    }
    return d;
}

SquarefreeDecomposition squarefree_decompose(std::int64_t n) {
    if (n < 1) throw DomainError("squarefree_decompose: n must be positive");
    SquarefreeDecomposition d;
    d.n = n;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        for (int i = 0; i < e / 2; ++i) d.s *= p;
        if (e % 2) d.m *= p;
    }
    if (n > 1) d.m *= n;
    return d;
}

bool sqrt_combination_is_zero(std::span<const SignedRadical> terms) {
    // Group by squarefree part; Besicovitch independence reduces the
    // question to integer cancellation inside each group.
    std::map<std::int64_t, std::int64_t> group_sum;
    for (const auto& term : terms) {
        if (term.n < 1) throw DomainError("sqrt_combination_is_zero: n must be positive");
        if (term.sign != 1 && term.sign != -1)
            throw DomainError("sqrt_combination_is_zero: sign must be +1 or -1");
        const auto d = squarefree_decompose(term.n);
        group_sum[d.m] += term.sign * d.s;
    }
    for (const auto& [m, s] : group_sum)
        if (s != 0) return false;
    return true;
}

std::uint64_t v_formula(std::int64_t d, const ArithTables& tables) {
    if (d < 1 || d > tables.limit) throw RangeError("v_formula: d out of table range");
    if (d > 20000) throw ResourceError("v_formula: d too large for 64-bit v(d)");
    if (tables.mu[d] == 0)
        throw DomainError("v_formula: d must be squarefree (formula only proven there)");
    std::uint64_t v = 1;
    std::int64_t n = d;
    while (n > 1) {
        const std::int64_t p = tables.spf[n];
        n /= p;
        if (p == 2) {
            v *= 8;
        } else {
            const std::uint64_t p2 = static_cast<std::uint64_t>(p) * p;
            v *= p2 * (p2 + static_cast<std::uint64_t>(p) - 1);
        }
    }
    return v;
}

std::uint64_t v_bruteforce(std::int64_t d) {
    if (d < 1) throw DomainError("v_bruteforce: d must be positive");
    if (d > 20) throw ResourceError("v_bruteforce: d > 20 (cost grows like d^4)");
    const std::int64_t mod = d * d;
    std::vector<std::uint64_t> q(static_cast<std::size_t>(mod), 0);
    for (std::int64_t x = 0; x < mod; ++x) q[(x * x) % mod]++;
    std::uint64_t count = 0;
    for (std::int64_t a = 0; a < mod; ++a) {
        if (q[a] == 0) continue;
        for (std::int64_t b = 0; b < mod; ++b) {
            if (q[b] == 0) continue;
            const std::int64_t c = ((-(a + b)) % mod + mod) % mod;
            count += q[a] * q[b] * q[c];
        }
    }
    return count;
}

std::complex<double> gauss_sum_inner(std::int64_t a, std::int64_t p) {
    const std::int64_t mod = p * p;
    std::complex<double> s = 0.0;
    for (std::int64_t n = 1; n <= mod; ++n) {
        const std::int64_t e = (a % mod) * ((n * n) % mod) % mod;
        const double ang = 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(mod);
        s += std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return s;
}

double gauss_sum_v(std::int64_t p) {
    if (p < 3 || p % 2 == 0 || !is_prime_small(p))
        throw DomainError("gauss_sum_v: p must be an odd prime");
    if (p > 31) throw ResourceError("gauss_sum_v: p > 31 (cost grows like p^4)");
    const std::int64_t mod = p * p;
    // e(j/p^2) table; inner sums become table lookups.
    std::vector<std::complex<double>> root(static_cast<std::size_t>(mod));
    for (std::int64_t j = 0; j < mod; ++j) {
        const double ang = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(mod);
        root[j] = {std::cos(ang), std::sin(ang)};
    }
    std::complex<double> total = 0.0;
    for (std::int64_t a = 1; a <= mod; ++a) {
        std::complex<double> inner = 0.0;
        for (std::int64_t n = 1; n <= mod; ++n)
            inner += root[(a % mod) * ((n * n) % mod) % mod];
        total += inner * inner * inner;
    }
    total /= static_cast<double>(mod);
    if (std::abs(total.imag()) > 1e-6 * std::abs(total.real()))
        throw AccuracyError("gauss_sum_v: imaginary part exceeds 1e-6 of the result",
                            total.real(), std::abs(total.imag()));
    return total.real();
}

ValueWithBound euler_product_C0(std::int64_t prime_limit, const ArithTables& tables) {
    if (prime_limit < 3) throw DomainError("euler_product_C0: prime_limit must be >= 3");
    if (prime_limit > tables.limit) throw RangeError("euler_product_C0: prime_limit beyond table");
    double prod = 7.0 / 8.0;
    for (std::int64_t p = 3; p <= prime_limit; ++p) {
        if (tables.spf[p] != p) continue;
        const double pd = static_cast<double>(p);
        prod *= 1.0 - (pd * pd + pd - 1.0) / (pd * pd * pd * pd);
    }
    // sum_{p>P} (p^2+p-1)/p^4 < sum_{n>P} 2/n^2 < 2/P and -log(1-x) <= 9x/7
    // for x <= 2/9, so the missing factor is within [exp(-18/(7P)), 1].
    const double tail = prod * 3.0 / static_cast<double>(prime_limit);
    return {prod, tail};
}

ValueWithBound euler_product_C0_display(std::int64_t prime_limit, const ArithTables& tables) {
    if (prime_limit < 3) throw DomainError("euler_product_C0_display: prime_limit must be >= 3");
    if (prime_limit > tables.limit) throw RangeError("euler_product_C0_display: prime_limit beyond table");
    double prod = 7.0 / 8.0;
    for (std::int64_t p = 3; p <= prime_limit; ++p) {
        if (tables.spf[p] != p) continue;
        const double pd = static_cast<double>(p);
        prod *= (1.0 - 1.0 / pd) * (1.0 + 1.0 / pd - 1.0 / (pd * pd));
    }
    const double tail = prod * 3.0 / static_cast<double>(prime_limit);
    return {prod, tail};
}

ValueWithBound moebius_v_sum_C0(std::int64_t d_limit, const ArithTables& tables) {
    if (d_limit < 1) throw DomainError("moebius_v_sum_C0: d_limit must be >= 1");
    if (d_limit > tables.limit) throw RangeError("moebius_v_sum_C0: d_limit beyond table");
    double sum = 0.0;
    for (std::int64_t d = 1; d <= d_limit; ++d) {
        if (tables.mu[d] == 0) continue;
        // v(d)/d^6 as a product of v(p)/p^6 avoids 64-bit overflow.
        double term = 1.0;
        std::int64_t n = d;
        while (n > 1) {
            const std::int64_t p = tables.spf[n];
            n /= p;
            const double pd = static_cast<double>(p);
            if (p == 2)
                term *= 8.0 / 64.0;
            else
                term *= (pd * pd + pd - 1.0) / (pd * pd * pd * pd);
        }
        sum += tables.mu[d] * term;
    }
    // |mu(d) v(d)/d^6| <= (1+log d)/d^2 for squarefree d, and the integral
    // of (1+log t)/t^2 from D gives (2+log D)/D.
    const double D = static_cast<double>(d_limit);
    return {sum, (2.0 + std::log(D)) / D};
}

ValueWithBound zeta3(std::int64_t term_limit) {
    if (term_limit < 10) throw DomainError("zeta3: term_limit must be >= 10");
    double sum = 0.0;
    for (std::int64_t n = term_limit; n >= 1; --n) {
        const double nd = static_cast<double>(n);
        sum += 1.0 / (nd * nd * nd);
    }
    const double L = static_cast<double>(term_limit);
    // Euler-Maclaurin: remaining tail is 1/(2L^2) - 1/(2L^3) + O(L^-4).
    sum += 0.5 / (L * L) - 0.5 / (L * L * L);
    return {sum, 1.0 / (L * L * L)};
}

ConstantsReport make_constants_report(std::int64_t prime_limit, std::int64_t alt_limit,
                                      const ArithTables& tables, double t_psi_integral) {
    ConstantsReport r;
    const auto z3 = zeta3(1'000'000);
    r.zeta3 = z3.value;
    const auto c0 = euler_product_C0(prime_limit, tables);
    r.C0 = c0.value;
    r.C0_tail_bound = c0.bound;
    const auto alt = moebius_v_sum_C0(alt_limit, tables);
    r.C0_alt = alt.value;
    r.C0_alt_tail_bound = alt.bound;
    r.C0_display = euler_product_C0_display(prime_limit, tables).value;
    r.C = r.C0 * t_psi_integral;
    return r;
}

}  // namespace rlab
