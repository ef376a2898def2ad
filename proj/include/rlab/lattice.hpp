#pragma once

#include <cstdint>
#include <vector>

#include "rlab/arith.hpp"
#include "rlab/resonator.hpp"

namespace rlab {

// Radii are classified through their squares. A radius within relative 1e-9
// of the next integer square is treated as lying exactly on it, so closed
// balls around sqrt(m) always include the sphere points.
std::int64_t radius_sq_floor(double R);
std::int64_t radius_floor(double R);

// #{x in Z^3 : |x| <= R}, origin included.
std::int64_t count_lattice(double R, const ArithTables& tables);

enum class VisibleMethod { direct, moebius };

// Visible (coprime-coordinate) points in the closed ball. `direct`
// enumerates one octant with sign multiplicities and gcd tests; `moebius`
// uses sum_d mu(d) (count_lattice(R/d) - 1). Both must agree exactly.
std::int64_t count_visible(double R, const ArithTables& tables, VisibleMethod method);

// E(t) = lattice count - (4 pi/3) t^3 and E*(t) = visible count - (4 pi /
// (3 zeta(3))) t^3.
double error_term(double t, const ArithTables& tables);
double error_term_star(double t, const ArithTables& tables, double zeta3_value);

// Visible points with |x|^2 exactly m, for 1 <= m <= m_max, by the square
// divisor inversion r3*(m) = sum_{d^2 | m} mu(d) r3(m/d^2).
std::vector<std::int32_t> visible_shell_counts(std::int64_t m_max, const ArithTables& tables);

// N*(t) on [r_lo, r_hi] as exact piecewise data: the base count at r_lo and
// one event per radius sqrt(m) where visible points appear. Jumps are
// right-continuous and strictly positive.
struct ErrorTermSeries {
    double r_lo = 0.0;
    double r_hi = 0.0;
    std::int64_t base_count = 0;
    double zeta3_value = 0.0;                 // +inf disables the cubic term (synthetic series)
    std::vector<std::int64_t> event_normsq;   // increasing
    std::vector<std::int64_t> event_jump;     // > 0
    std::vector<std::int64_t> prefix;         // prefix[k] = jumps of the first k events

    double cubic_coef() const;
    std::int64_t nstar_at(double t) const;
    double estar(double t) const;
    std::size_t events() const { return event_normsq.size(); }
};

ErrorTermSeries build_error_series(double r_lo, double r_hi, const ArithTables& tables);
ErrorTermSeries build_error_series(double r_lo, double r_hi, const ArithTables& tables,
                                   double zeta3_value);

// R_d(N) = (1/v(d)) sum_{0<=m<=N} r3(m d^2).
struct HeckeCount {
    std::int64_t sum = 0;
    double Rd = 0.0;
};
HeckeCount hecke_count_Rd(std::int64_t d, std::int64_t N, const ArithTables& tables,
                          std::uint64_t v);

// Truncated main term of the smoothed Voronoi formula for E(t). The
// prefactor is commonly printed as R/pi with t in [R, 2R]; whether t/pi is
// meant instead is ambiguous, so both variants are exposed and compared.
enum class VoronoiPrefactor { anchor_R, radius_t };

struct VoronoiSpec {
    double R;
    double M;              // R / (log R)^{1/3}
    std::int64_t n_max;    // series cutoff; must be >= M^2 and <= tables.limit
    const MollifierPhi* mollifier;
    VoronoiPrefactor prefactor;

    VoronoiSpec(double R, std::int64_t n_max, const MollifierPhi& mollifier,
                VoronoiPrefactor prefactor = VoronoiPrefactor::anchor_R);
};

double voronoi_E(double t, const VoronoiSpec& spec, const ArithTables& tables);

}  // namespace rlab
