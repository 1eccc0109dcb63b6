#include "dctrec/baseline.hpp"

#include <algorithm>
#include <cmath>

#include "dctrec/lp_model.hpp"
#include "dctrec/recovery.hpp"

namespace dctrec {

namespace {

double pair_sum(const std::vector<double>& field, const BlockLayout& layout,
                bool dc_only) {
  double s = 0.0;
  for (const auto& p : select_pairs(layout, dc_only))
    s += std::abs(field[p.first] - field[p.second]);
  return s;
}

}  // namespace

double boundary_variation(const std::vector<double>& field,
                          const BlockLayout& layout) {
  return pair_sum(field, layout, true);
}

double total_variation(const std::vector<double>& field,
                       const BlockLayout& layout) {
  return pair_sum(field, layout, false);
}

ScanResult scan_align_dc(const CoeffGrid& grid_known, const EraseMask& mask,
                         const BlockLayout& layout, const DctBasis& basis,
                         int x_min, int x_max) {
  if (!mask.dc_only())
    throw Error(ErrorCode::NotDcOnlyMask,
                "scan baseline handles only DC-only erasure");
  if (grid_known.layout != layout || basis.block_size() != layout.block_size)
    throw Error(ErrorCode::DimensionMismatch, "grid/layout/basis disagree");

  const int n = layout.block_size;
  const int w = layout.width();

  // AC-only reconstruction; each block's pixels are dc/N plus this field.
  CoeffGrid ac = grid_known;
  for (int by = 0; by < layout.blocks_y; ++by)
    for (int bx = 0; bx < layout.blocks_x; ++bx)
      ac.at(bx, by, 0, 0) = 0.0;
  std::vector<double> base = inverse_dct(ac, basis);

  ScanResult result;
  result.dc_estimates.assign(layout.block_count(), 0.0);
  result.real_pixels = base;

  std::vector<double> diffs;
  diffs.reserve(2 * n);

  for (int by = 0; by < layout.blocks_y; ++by) {
    for (int bx = 0; bx < layout.blocks_x; ++bx) {
      // Feasible DC interval of this block (Property 2).
      double dmin = base[(by * n) * w + bx * n];
      double dmax = dmin;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double v = base[(by * n + i) * w + bx * n + j];
          dmin = std::min(dmin, v);
          dmax = std::max(dmax, v);
        }
      double lo = n * (x_min - dmin);
      double hi = n * (x_max - dmax);

      double dc;
      if (bx == 0 && by == 0) {
        dc = 0.5 * (lo + hi);
      } else {
        // Boundary differences against fixed neighbors as a function of
        // this block's pixel offset t = dc/N: minimize sum |t - d_i|.
        diffs.clear();
        if (bx > 0) {
          for (int i = 0; i < n; ++i) {
            int row = by * n + i;
            diffs.push_back(result.real_pixels[row * w + bx * n - 1] -
                            base[row * w + bx * n]);
          }
        }
        if (by > 0) {
          for (int j = 0; j < n; ++j) {
            int col = bx * n + j;
            diffs.push_back(result.real_pixels[(by * n - 1) * w + col] -
                            base[(by * n) * w + col]);
          }
        }
        std::sort(diffs.begin(), diffs.end());
        std::size_t half = diffs.size() / 2;
        double t = diffs.size() % 2 == 1
                       ? diffs[half]
                       : 0.5 * (diffs[half - 1] + diffs[half]);
        dc = std::clamp(n * t, lo, hi);
      }

      result.dc_estimates[by * layout.blocks_x + bx] = dc;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          result.real_pixels[(by * n + i) * w + bx * n + j] += dc / n;
    }
  }

  result.image = round_and_clamp(result.real_pixels, w, layout.height(),
                                 x_min, x_max);
  return result;
}

}  // namespace dctrec
