#pragma once

#include "dctrec/dct.hpp"
#include "dctrec/mask.hpp"

namespace dctrec {

struct ScanResult {
  GrayImage image;
  std::vector<double> dc_estimates;  // per block, block-raster order
  std::vector<double> real_pixels;   // before rounding/clamping
};

/// Block-by-block DC alignment baseline. Scans in row-major block order;
/// the first block takes the midpoint of its feasible DC interval, each
/// later block the DC minimizing the sum of absolute boundary differences
/// against its already-fixed left and top neighbors (a median), clipped to
/// the feasible interval. DC-only masks only.
ScanResult scan_align_dc(const CoeffGrid& grid_known, const EraseMask& mask,
                         const BlockLayout& layout, const DctBasis& basis,
                         int x_min = 0, int x_max = 255);

/// Sum of absolute differences over cross-block neighbor pairs of a real
/// pixel field; the quantity the DC-only model minimizes.
double boundary_variation(const std::vector<double>& field,
                          const BlockLayout& layout);

/// Same sum over all 4-adjacent pairs.
double total_variation(const std::vector<double>& field,
                       const BlockLayout& layout);

}  // namespace dctrec
