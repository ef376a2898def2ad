#pragma once

#include <vector>

#include "rlab/experiments.hpp"
#include "rlab/report.hpp"

namespace rlab {

// Named experiment runners: each assembles module results into a serializable
// report whose series is ordered by parameter, independent of scheduling.
// The frozen thresholds baked into the checks come from the recorded oracle
// runs (see README).

ExperimentReport run_constants(std::int64_t prime_limit, std::int64_t alt_limit,
                               const ArithTables& tables);

ExperimentReport run_v_eval(std::int64_t d_max, const ArithTables& tables);

ExperimentReport run_count(const std::vector<double>& radii, const ArithTables& tables);

ExperimentReport run_error_term(double r_lo, double r_hi, const ArithTables& tables,
                                bool with_voronoi, std::int64_t voronoi_n_max,
                                double voronoi_corr_threshold, unsigned threads);

ExperimentReport run_correlate_I(const std::vector<double>& R_ladder, double sigma,
                                 const ArithTables& tables, double R0_negativity,
                                 unsigned threads);

ExperimentReport run_m_sigma(const std::vector<double>& R_ladder, double sigma,
                             const ArithTables& tables, double bracket_lo, double bracket_hi);

ExperimentReport run_moments_estar(const std::vector<double>& R_ladder, double p,
                                   const ArithTables& tables, unsigned threads);

ExperimentReport run_moments_g(const std::vector<double>& R_ladder, double sigma, int k,
                               unsigned threads);

ExperimentReport run_gaps_verify(const GapProfile& profile,
                                 const std::vector<double>& alphas, unsigned threads);

ExperimentReport run_mconv_verify(int N, double K, const std::vector<double>& R_ladder,
                                  const std::vector<double>& V_grid, double terminal_threshold,
                                  unsigned threads);

ExperimentReport run_hoelder(const std::vector<double>& R_ladder, double p, double sigma,
                             const ArithTables& tables, unsigned threads);

ExperimentReport run_diagonal(std::int64_t tuple_limit, std::int64_t cutoff,
                              const ArithTables& tables);

}  // namespace rlab
