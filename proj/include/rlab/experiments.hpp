#pragma once

#include <complex>
#include <span>
#include <vector>

#include "rlab/arith.hpp"
#include "rlab/lattice.hpp"
#include "rlab/quad.hpp"
#include "rlab/resonator.hpp"

namespace rlab {

// ---------------------------------------------------------------------------
// Shorter-resonator correlation I(R) = integral of g_sigma E* dnu and the
// arithmetic double sum M_sigma(R) it converges to.
// ---------------------------------------------------------------------------

struct CorrelationPoint {
    double value = 0.0;
    double error_estimate = 0.0;
};

// dnu must be the unit window scaled by R. max_frequency is declared
// internally as R^{sigma/2} + 3.
CorrelationPoint correlation_I(double R, double sigma, const ArithTables& tables,
                               const WeightMeasure& weight, QuadraturePolicy policy);
CorrelationPoint correlation_I(double R, double sigma, const ErrorTermSeries& series,
                               const WeightMeasure& weight, QuadraturePolicy policy);

// M_sigma(R) = sum_{d<2R} sum_{m<=R^sigma, n=m d^2} mu(d) a_n / (d sqrt(m n))
// with a_n = (r3(n)/sqrt(n)) hat(sqrt(n)/M), M = R/(log R)^{1/3}. Terms with
// |hat| < 1e-14 are skipped; terms with n beyond the table are dropped (their
// weight is negligible at these scales, see README).
double compute_M_sigma(double R, double sigma, const ArithTables& tables,
                       const MollifierPhi& mollifier);

// ---------------------------------------------------------------------------
// Moments.
// ---------------------------------------------------------------------------

CorrelationPoint moment_Estar(double R, double p, const ArithTables& tables,
                              const WeightMeasure& weight, QuadraturePolicy policy);
CorrelationPoint moment_Estar(const ErrorTermSeries& series, double p,
                              const WeightMeasure& weight, QuadraturePolicy policy);

// Largest admissible sigma for the 2k-th moment hypothesis.
double sigma_bound_for_k(int k);

struct GMomentResult {
    double numeric = 0.0;
    double diagonal_prediction = 0.0;
    double error_estimate = 0.0;
};

// numeric = integral of |sum_{n<=cutoff} e(x sqrt n)/sqrt n|^{2k} dnu;
// diagonal_prediction counts the multiset-equal 2k-tuples exactly.
GMomentResult moment_g_sigma(double R, double sigma, int k, const WeightMeasure& weight,
                             QuadraturePolicy policy);

double diagonal_moment_enumeration(std::int64_t cutoff, int k);
double diagonal_moment_formula(std::int64_t cutoff, int k);  // closed form, k <= 2

// ---------------------------------------------------------------------------
// Exact classification of L(n) = sum (sqrt(n_j) - sqrt(n_{j+k})) = 0.
// ---------------------------------------------------------------------------

struct LZeroGroup {
    std::int64_t m = 1;                    // shared squarefree part
    std::vector<std::size_t> first_half;   // 0-based tuple indices
    std::vector<std::size_t> second_half;
    std::int64_t s_sum_first = 0;
    std::int64_t s_sum_second = 0;
};

struct LZeroClassification {
    bool is_zero = false;
    std::vector<LZeroGroup> groups;
};

LZeroClassification classify_L_zero(std::span<const std::int64_t> tuple,
                                    const ArithTables& tables);

// ---------------------------------------------------------------------------
// Spectral-gap oscillation: bound, correlation identity, witness search.
// ---------------------------------------------------------------------------

// B_{n,alpha} = pi^{alpha-1}(1-alpha^2) Lambda / (Lambda^{1-alpha}-(1/5)^{1-alpha});
// at alpha = 1 the limit 2 Lambda / log(5 Lambda).
double gaps_bound(const GapProfile& profile, double alpha);

// Quadrature of S g over [-1/2, 1/2], returned as the recovered half
// amplitude: the kernel isolates the e(nu_n x) component of S, whose
// coefficient is a_n/(2i), so the integral times i equals a_n/2 exactly.
std::complex<double> gaps_correlation(const GapProfile& profile,
                                      const QuadraturePolicy& policy = QuadraturePolicy{});

struct WitnessResult {
    double x = 0.0;
    double margin = 0.0;
    double grid_fraction = 0.0;  // share of grid points beating the bound
};

// Deterministic grid + golden-section search for |S(x)| > (1/4) B |a_n| |x|^alpha.
WitnessResult gaps_witness(const GapProfile& profile, double alpha);

struct FAlphaReport {
    double f_at_one = 0.0;
    double f_at_zero = 0.0;
    double min_gap = 0.0;
    bool strictly_decreasing = false;
};

// f(alpha) = 2^-alpha + 0.3(alpha-1) - (1+alpha)^{-1} (pi/5)^{1-alpha};
// checks f(1) = 0 and strict decrease on a grid.
FAlphaReport f_alpha_monotonicity(int grid_size);

// ---------------------------------------------------------------------------
// Multiplicative convolution G(x) = sum_{n<=x} f(n) F(x/n).
// ---------------------------------------------------------------------------

enum class ArithFunctionKind { moebius, char_mod_3, char_mod_4 };

double arith_function_value(ArithFunctionKind kind, std::int64_t n);

struct MconvInstance {
    int N;
    std::vector<std::complex<double>> a;
    ArithFunctionKind f;
    double K;
    std::vector<double> b;   // b_n = a_n sum_{d|n} f(d), validated real >= 0
    double scriptB = 0.0;

    MconvInstance(int N, std::vector<std::complex<double>> a, ArithFunctionKind f, double K);
};

std::complex<double> mconv_G(double x, const MconvInstance& instance, const TransitionPhi& phi);

struct MconvCorrelation {
    std::complex<double> value{0.0, 0.0};
    double scriptB = 0.0;
    double error_estimate = 0.0;
};

// Quadrature of G g against dmu (wide window scaled by R); requires R >= 4N.
MconvCorrelation mconv_correlation(const MconvInstance& instance, double R,
                                   const WeightMeasure& weight, QuadraturePolicy policy);

struct MconvHypothesisPoint {
    double V = 0.0;
    double triple_sum = 0.0;
    double ratio = 0.0;  // triple_sum / ((6V)^K scriptB)
};

std::vector<MconvHypothesisPoint> mconv_hypothesis(const MconvInstance& instance, double R,
                                                   std::span<const double> V_grid);

// ---------------------------------------------------------------------------
// Hoelder chain for the moment lower bound.
// ---------------------------------------------------------------------------

struct HoelderChainReport {
    int k = 0;
    double q = 0.0;
    double I = 0.0;
    double I_abs_p = 0.0;
    double moment_Estar_p = 0.0;
    double moment_g_q = 0.0;
    double moment_g_2k = 0.0;
    double rhs = 0.0;            // moment_Estar_p * moment_g_q^{p/q}
    double slack = 0.0;          // rhs - |I|^p
    double lyapunov_lhs = 0.0;   // ||g||_q
    double lyapunov_rhs = 0.0;   // ||g||_{2k}
    double combined_error = 0.0;
};

HoelderChainReport hoelder_chain(double R, double p, double sigma, const ArithTables& tables,
                                 const WeightMeasure& weight, QuadraturePolicy policy);

// ---------------------------------------------------------------------------
// Documented fixture instances shared by tests, the acceptance suite and CLI
// defaults.
// ---------------------------------------------------------------------------
namespace fixtures {

GapProfile documented_profile(int index);          // 0, 1, 2
MconvInstance character_instance(int N, double K); // chi mod 4, a == 1

}  // namespace fixtures

}  // namespace rlab
