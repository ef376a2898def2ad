#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "rlab/errors.hpp"

namespace rlab {

// Sieved tables of mu(n), r3(n) and smallest prime factor, immutable after
// construction and safe to share across threads.
//
//   mu[n]  for 1 <= n <= limit   (index 0 unused)
//   r3[n]  for 0 <= n <= limit   (ordered representations as three squares)
//   spf[n] for 2 <= n <= limit   (spf[1] = 1 sentinel)
struct ArithTables {
    std::int64_t limit = 0;
    std::vector<std::int8_t> mu;
    std::vector<std::int32_t> r3;
    std::vector<std::int32_t> spf;

    bool contains(std::int64_t n) const { return n >= 0 && n <= limit; }
};

// Builds the three tables. r3 is sieved by convolving two-square counts
// with the squares, O(limit^{3/2}) array additions, range-partitioned
// across `threads` with a value-independent partition.
ArithTables build_tables(std::int64_t limit, unsigned threads = 0,
                         std::size_t memory_budget_bytes = std::size_t{2} << 30);

struct SquarefreeDecomposition {
    std::int64_t n = 0;
    std::int64_t s = 1;  // square part, n = s^2 * m
    std::int64_t m = 1;  // squarefree part
};

// Unique decomposition n = s^2 * m with m squarefree. The table-backed
// version requires n <= tables.limit; the free-standing one uses trial
// division and is kept independent so it can serve as an oracle.
SquarefreeDecomposition squarefree_decompose(std::int64_t n, const ArithTables& tables);
SquarefreeDecomposition squarefree_decompose(std::int64_t n);

struct SignedRadical {
    int sign;         // +1 or -1
    std::int64_t n;   // >= 1
};

// Exact decision of sum sign_i * sqrt(n_i) == 0. Terms are grouped by the
// squarefree part of n_i; by Besicovitch's theorem the sum vanishes iff the
// integer sum of square parts vanishes within every group. Pure integer
// arithmetic.
bool sqrt_combination_is_zero(std::span<const SignedRadical> terms);

// v(d) = #{(x,y,z) in [0,d^2)^3 : x^2+y^2+z^2 = 0 mod d^2} for squarefree d,
// by the multiplicative formula v(2)=8, v(p)=p^2(p^2+p-1) for odd primes.
std::uint64_t v_formula(std::int64_t d, const ArithTables& tables);

// Same count by direct residue counting: tabulate q(a) = #{x mod d^2 :
// x^2 = a} and sum q(a)q(b)q(-a-b). O(d^4), so d is capped at 20.
std::uint64_t v_bruteforce(std::int64_t d);

// Numerical evaluation of v(p) through the quadratic Gauss sum identity
// p^2 v(p) = sum_a (sum_n e(a n^2 / p^2))^3. Returns the real part and
// throws if the imaginary part exceeds 1e-6 of it.
double gauss_sum_v(std::int64_t p);

// Innermost Gauss sum sum_{n=1}^{p^2} e(a n^2 / p^2), exposed for the
// classical |sum| = p side check.
std::complex<double> gauss_sum_inner(std::int64_t a, std::int64_t p);

struct ValueWithBound {
    double value = 0.0;
    double bound = 0.0;  // rigorous bound on |true - value|
};

// C0 = (7/8) prod_{2<p<=P} (1 - (p^2+p-1)/p^4), the Euler factor matching
// v(p)/p^6, with a tail bound from sum_{p>P} (p^2+p-1)/p^4 < 2/P.
ValueWithBound euler_product_C0(std::int64_t prime_limit, const ArithTables& tables);

// The variant form (7/8) prod (1-1/p)(1+1/p-1/p^2) seen in print. The two
// products disagree; both are computed so reports can document the gap.
ValueWithBound euler_product_C0_display(std::int64_t prime_limit, const ArithTables& tables);

// Independent route: truncated sum_{d<=D} mu(d) v(d)/d^6 with the tail
// bound (2+log D)/D coming from v(d) < d^4 (1+log d).
ValueWithBound moebius_v_sum_C0(std::int64_t d_limit, const ArithTables& tables);

// zeta(3) by direct summation plus Euler-Maclaurin tail correction;
// the returned bound is 1/limit^3.
ValueWithBound zeta3(std::int64_t term_limit);

struct ConstantsReport {
    double zeta3 = 0.0;
    double C0 = 0.0;
    double C0_tail_bound = 0.0;
    double C0_alt = 0.0;
    double C0_alt_tail_bound = 0.0;
    double C0_display = 0.0;   // variant product, kept for the record
    double C = 0.0;            // C0 * integral of t psi(t) dt
};

ConstantsReport make_constants_report(std::int64_t prime_limit, std::int64_t alt_limit,
                                      const ArithTables& tables, double t_psi_integral);

}  // namespace rlab
