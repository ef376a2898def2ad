#include "rlab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "int_util.hpp"

namespace rlab {

namespace {

using detail::isqrt64;

constexpr double kSnap = 1e-9;

}  // namespace

std::int64_t radius_sq_floor(double R) {
    if (R < 0.0) throw DomainError("radius must be nonnegative");
    const double r2 = R * R;
    auto k = static_cast<std::int64_t>(std::floor(r2));
    if (static_cast<double>(k + 1) - r2 < kSnap * std::max(1.0, r2)) ++k;
    return k;
}

std::int64_t radius_floor(double R) {
    if (R < 0.0) throw DomainError("radius must be nonnegative");
    auto k = static_cast<std::int64_t>(std::floor(R));
    if (static_cast<double>(k + 1) - R < kSnap * std::max(1.0, R)) ++k;
    return k;
}

std::int64_t count_lattice(double R, const ArithTables& tables) {
    const std::int64_t m_max = radius_sq_floor(R);
    if (m_max > tables.limit) throw RangeError("count_lattice: R^2 beyond table limit");
    std::int64_t count = 0;
    for (std::int64_t m = 0; m <= m_max; ++m) count += tables.r3[m];
    return count;
}

std::int64_t count_visible(double R, const ArithTables& tables, VisibleMethod method) {
    const std::int64_t m_max = radius_sq_floor(R);
    if (m_max > tables.limit) throw RangeError("count_visible: R^2 beyond table limit");
    if (method == VisibleMethod::direct) {
        std::int64_t count = 0;
        const std::int64_t xr = isqrt64(m_max);
        for (std::int64_t x = 0; x <= xr; ++x) {
            const std::int64_t rem_x = m_max - x * x;
            const std::int64_t yr = isqrt64(rem_x);
            for (std::int64_t y = 0; y <= yr; ++y) {
                const std::int64_t rem_xy = rem_x - y * y;
                const std::int64_t zr = isqrt64(rem_xy);
                const std::int64_t gxy = std::gcd(x, y);
                for (std::int64_t z = (x == 0 && y == 0) ? 1 : 0; z <= zr; ++z) {
                    if (std::gcd(gxy, z) != 1) continue;
                    const int nonzero = (x > 0) + (y > 0) + (z > 0);
                    count += std::int64_t{1} << nonzero;
                }
            }
        }
        return count;
    }
    // Moebius route over the dilation parameter.
    std::int64_t count = 0;
    const std::int64_t d_max = radius_floor(R);
    for (std::int64_t d = 1; d <= d_max; ++d) {
        if (tables.mu[d] == 0) continue;
        count += tables.mu[d] * (count_lattice(R / static_cast<double>(d), tables) - 1);
    }
    return count;
}

double error_term(double t, const ArithTables& tables) {
    const double main_term = (4.0 * std::numbers::pi / 3.0) * t * t * t;
    return static_cast<double>(count_lattice(t, tables)) - main_term;
}

double error_term_star(double t, const ArithTables& tables, double zeta3_value) {
    const double coef = 4.0 * std::numbers::pi / (3.0 * zeta3_value);
    return static_cast<double>(count_visible(t, tables, VisibleMethod::moebius)) -
           coef * t * t * t;
}

std::vector<std::int32_t> visible_shell_counts(std::int64_t m_max, const ArithTables& tables) {
    if (m_max > tables.limit) throw RangeError("visible_shell_counts: m_max beyond table limit");
    std::vector<std::int32_t> shell(static_cast<std::size_t>(m_max) + 1, 0);
    for (std::int64_t d = 1; d * d <= m_max; ++d) {
        if (tables.mu[d] == 0) continue;
        const std::int64_t d2 = d * d;
        const std::int32_t mu_d = tables.mu[d];
        for (std::int64_t j = 1; j * d2 <= m_max; ++j) shell[j * d2] += mu_d * tables.r3[j];
    }
    return shell;
}

double ErrorTermSeries::cubic_coef() const {
    if (std::isinf(zeta3_value)) return 0.0;
    return 4.0 * std::numbers::pi / (3.0 * zeta3_value);
}

std::int64_t ErrorTermSeries::nstar_at(double t) const {
    const std::int64_t m = radius_sq_floor(t);
    const auto it = std::upper_bound(event_normsq.begin(), event_normsq.end(), m);
    const auto k = static_cast<std::size_t>(it - event_normsq.begin());
    return base_count + prefix[k];
}

double ErrorTermSeries::estar(double t) const {
    return static_cast<double>(nstar_at(t)) - cubic_coef() * t * t * t;
}

ErrorTermSeries build_error_series(double r_lo, double r_hi, const ArithTables& tables,
                                   double zeta3_value) {
    if (!(r_lo < r_hi)) throw DomainError("build_error_series: empty interval");
    const std::int64_t m_lo = radius_sq_floor(r_lo);
    const std::int64_t m_hi = radius_sq_floor(r_hi);
    if (m_hi > tables.limit) throw RangeError("build_error_series: r_hi^2 beyond table limit");

    ErrorTermSeries s;
    s.r_lo = r_lo;
    s.r_hi = r_hi;
    s.zeta3_value = zeta3_value;
    s.base_count = count_visible(r_lo, tables, VisibleMethod::moebius);

    const auto shell = visible_shell_counts(m_hi, tables);
    for (std::int64_t m = m_lo + 1; m <= m_hi; ++m)
        if (shell[m] > 0) {
            s.event_normsq.push_back(m);
            s.event_jump.push_back(shell[m]);
        }
    s.prefix.resize(s.event_jump.size() + 1);
    s.prefix[0] = 0;
    for (std::size_t k = 0; k < s.event_jump.size(); ++k)
        s.prefix[k + 1] = s.prefix[k] + s.event_jump[k];
    return s;
}

ErrorTermSeries build_error_series(double r_lo, double r_hi, const ArithTables& tables) {
    return build_error_series(r_lo, r_hi, tables, zeta3(1'000'000).value);
}

HeckeCount hecke_count_Rd(std::int64_t d, std::int64_t N, const ArithTables& tables,
                          std::uint64_t v) {
    if (d < 1 || N < 0) throw DomainError("hecke_count_Rd: need d >= 1, N >= 0");
    if (N * d * d > tables.limit) throw RangeError("hecke_count_Rd: N d^2 beyond table limit");
    HeckeCount out;
    for (std::int64_t m = 0; m <= N; ++m) out.sum += tables.r3[m * d * d];
    out.Rd = static_cast<double>(out.sum) / static_cast<double>(v);
    return out;
}

VoronoiSpec::VoronoiSpec(double R_in, std::int64_t n_max_in, const MollifierPhi& m,
                         VoronoiPrefactor pref)
    : R(R_in), n_max(n_max_in), mollifier(&m), prefactor(pref) {
    if (!(R > 1.0)) throw DomainError("VoronoiSpec: R must exceed 1");
    M = R / std::cbrt(std::log(R));
    if (static_cast<double>(n_max) < M * M)
        throw DomainError("VoronoiSpec: n_max must cover sqrt(n) <= M");
}

double voronoi_E(double t, const VoronoiSpec& spec, const ArithTables& tables) {
    if (spec.n_max > tables.limit) throw RangeError("voronoi_E: n_max beyond table limit");
    if (t < spec.R * (1.0 - kSnap) || t > 2.0 * spec.R * (1.0 + kSnap))
        throw RangeError("voronoi_E: t outside [R, 2R]");
    double acc = 0.0;
    for (std::int64_t n = 1; n <= spec.n_max; ++n) {
        if (tables.r3[n] == 0) continue;
        const double sqrt_n = std::sqrt(static_cast<double>(n));
        const double hat = spec.mollifier->hat(sqrt_n / spec.M);
        if (std::abs(hat) < 1e-12) continue;
        acc += static_cast<double>(tables.r3[n]) / static_cast<double>(n) * hat *
               std::cos(2.0 * std::numbers::pi * t * sqrt_n);
    }
    const double pref = (spec.prefactor == VoronoiPrefactor::anchor_R) ? spec.R : t;
    return -(pref / std::numbers::pi) * acc;
}

}  // namespace rlab
