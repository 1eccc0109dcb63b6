#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dctrec/lp_model.hpp"

namespace dctrec {

struct SolverSettings {
  double tolerance = 1e-7;  // relative residual / duality-gap threshold
  int max_iterations = 200;
  int threads = 1;  // linear algebra is single-threaded; kept for config echo
};

enum class SolveStatus { Optimal, Infeasible, IterationLimit, NumericalFailure };

const char* solve_status_name(SolveStatus status);

struct SolveStats {
  int iterations = 0;
  double wall_seconds = 0.0;
  std::int64_t matrix_nonzeros = 0;  // constraint matrix, slacks included
  std::int64_t factor_nonzeros = 0;  // Cholesky factor of the normal matrix
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  double duality_gap = 0.0;  // absolute
};

struct Solution {
  std::vector<double> values;  // one per LpProblem variable
  double objective = 0.0;
  SolveStatus status = SolveStatus::NumericalFailure;
  SolveStats stats;
};

/// Solves the LP with a primal-dual interior-point method (Mehrotra
/// predictor-corrector). Normal equations are factored with a sparse
/// Cholesky under minimum-degree ordering. Deterministic for identical
/// inputs and settings.
Solution solve(const LpProblem& problem, const SolverSettings& settings = {});

struct VerificationReport {
  double max_equality_residual = 0.0;
  double max_inequality_violation = 0.0;
  double max_bound_violation = 0.0;
  double objective_recomputed = 0.0;

  double worst() const;
  bool within(double tol) const { return worst() <= tol; }
};

/// Recomputes constraint and bound residuals directly from the triplets,
/// independent of the solver's internal bookkeeping.
VerificationReport verify_solution(const LpProblem& problem,
                                   const Solution& sol);

}  // namespace dctrec
