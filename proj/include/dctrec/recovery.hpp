#pragma once

#include "dctrec/ipm_solver.hpp"
#include "dctrec/lp_model.hpp"

namespace dctrec {

struct RecoverOptions {
  SolverSettings solver;
  bool use_reduced = false;  // presolved formulation; same optimum
};

struct RecoveryReport {
  GrayImage recovered;
  double objective = 0.0;
  int shift_applied = 0;  // integer intensity delta, 0 when DC is known
  SolveStats solver_stats;
  EraseMask mask;
  // LP pixel field after the shift, before rounding; kept for quality
  // accounting of the rounding step.
  std::vector<double> real_pixels;
  // Recovered coefficient values, known entries passed through.
  CoeffGrid coefficients;
};

/// Uniform intensity shift centering the field's extreme-value margins
/// inside [x_min, x_max]. Returns the integer delta applied.
int histogram_shift(std::vector<double>& field, int x_min, int x_max);

/// Round half away from zero, then clamp to [x_min, x_max].
GrayImage round_and_clamp(const std::vector<double>& field, int width,
                          int height, int x_min, int x_max);

/// Full pipeline: assemble the LP from the known coefficients, solve,
/// reconstruct the pixel field from the recovered coefficients, shift the
/// histogram when the DC is among the unknowns, round, clamp. No
/// re-optimization after rounding. Masked entries of original_coeffs are
/// never read.
RecoveryReport recover(const CoeffGrid& original_coeffs, const EraseMask& mask,
                       const BlockLayout& layout, const DctBasis& basis,
                       const RecoverOptions& options = {});

/// Damaged comparison image: masked coefficients set to the midpoints of
/// their valid ranges, then inverse transformed, rounded, clamped.
GrayImage midpoint_reference(const CoeffGrid& original_coeffs,
                             const EraseMask& mask, const BlockLayout& layout,
                             const DctBasis& basis, int x_min = 0,
                             int x_max = 255);

}  // namespace dctrec
