#include "dctrec/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dctrec {

int histogram_shift(std::vector<double>& field, int x_min, int x_max) {
  if (field.empty()) return 0;
  auto [mn_it, mx_it] = std::minmax_element(field.begin(), field.end());
  double left = *mn_it - x_min;
  double right = x_max - *mx_it;
  int delta = static_cast<int>(std::round((right - left) / 2.0));
  if (delta != 0)
    for (auto& v : field) v += delta;
  return delta;
}

GrayImage round_and_clamp(const std::vector<double>& field, int width,
                          int height, int x_min, int x_max) {
  GrayImage img(width, height);
  for (int i = 0; i < height; ++i)
    for (int j = 0; j < width; ++j) {
      double v = std::round(field[static_cast<std::size_t>(i) * width + j]);
      img.set(i, j, static_cast<int>(std::clamp(
                        v, static_cast<double>(x_min),
                        static_cast<double>(x_max))));
    }
  return img;
}

RecoveryReport recover(const CoeffGrid& original_coeffs, const EraseMask& mask,
                       const BlockLayout& layout, const DctBasis& basis,
                       const RecoverOptions& options) {
  if (mask.empty())
    throw Error(ErrorCode::InvalidCount, "nothing to recover: mask is empty");

  const int x_min = 0;
  const int x_max = 255;
  const int u = mask.count();
  const auto& missing = mask.positions();

  LpProblem lp = options.use_reduced
                     ? build_reduced_problem(original_coeffs, mask, layout,
                                             basis, x_min, x_max)
                     : build_problem(original_coeffs, mask, layout, basis,
                                     x_min, x_max);
  Solution sol = solve(lp, options.solver);
  if (sol.status != SolveStatus::Optimal)
    throw Error(ErrorCode::RecoveryFailed,
                std::string("solver returned ") +
                    solve_status_name(sol.status) + " after " +
                    std::to_string(sol.stats.iterations) + " iterations");

  // Coefficient variables sit after the pixel block in the full form and
  // lead in the reduced form; ordering within is block-major either way.
  const int y_base = options.use_reduced ? 0 : lp.num_pixel_vars;
  CoeffGrid filled = original_coeffs;
  for (int by = 0; by < layout.blocks_y; ++by)
    for (int bx = 0; bx < layout.blocks_x; ++bx) {
      const int b = by * layout.blocks_x + bx;
      for (int uu = 0; uu < u; ++uu)
        filled.at(bx, by, missing[uu].k, missing[uu].l) =
            sol.values[y_base + b * u + uu];
    }

  RecoveryReport report{.recovered = GrayImage(),
                        .objective = sol.objective,
                        .shift_applied = 0,
                        .solver_stats = sol.stats,
                        .mask = mask,
                        .real_pixels = inverse_dct(filled, basis),
                        .coefficients = std::move(filled)};

  if (mask.contains_dc())
    report.shift_applied = histogram_shift(report.real_pixels, x_min, x_max);
  report.recovered = round_and_clamp(report.real_pixels, layout.width(),
                                     layout.height(), x_min, x_max);
  return report;
}

GrayImage midpoint_reference(const CoeffGrid& original_coeffs,
                             const EraseMask& mask, const BlockLayout& layout,
                             const DctBasis& basis, int x_min, int x_max) {
  CoeffGrid filled = apply_mask(original_coeffs, mask,
                                FillPolicy::MidpointOfRange, basis, x_min,
                                x_max);
  auto field = inverse_dct(filled, basis);
  return round_and_clamp(field, layout.width(), layout.height(), x_min, x_max);
}

}  // namespace dctrec
