#pragma once

#include <utility>
#include <vector>

#include "dctrec/image.hpp"

namespace dctrec {

/// Orthogonal N x N block DCT basis. entry(i,j,k,l) maps coefficient (k,l)
/// to pixel (i,j):
///
///   A(i,j,k,l) = C(k) C(l) cos((i+0.5)k*pi/N) cos((j+0.5)l*pi/N)
///
/// with C(0) = sqrt(1/N) and C(k>0) = sqrt(2/N). Pixels are x = A y.
class DctBasis {
 public:
  explicit DctBasis(int block_size);

  int block_size() const { return n_; }

  /// A(i,j,k,l); i,j pixel indices, k,l frequency indices.
  double entry(int i, int j, int k, int l) const {
    return cos1d_[static_cast<std::size_t>(k) * n_ + i] *
           cos1d_[static_cast<std::size_t>(l) * n_ + j];
  }

  /// 1-D factor C(k) cos((i+0.5)k*pi/N); the 2-D basis is its outer product.
  double factor(int k, int i) const {
    return cos1d_[static_cast<std::size_t>(k) * n_ + i];
  }

 private:
  int n_;
  std::vector<double> cos1d_;  // [k*N + i]
};

/// All DCT coefficients of an image, one N x N array per block.
/// Block (bx, by) is stored at index by*blocks_x + bx, entries row-major
/// in (k, l).
struct CoeffGrid {
  BlockLayout layout;
  std::vector<double> coeffs;

  CoeffGrid() = default;
  explicit CoeffGrid(const BlockLayout& l)
      : layout(l),
        coeffs(static_cast<std::size_t>(l.block_count()) * l.block_size *
                   l.block_size,
               0.0) {}

  double at(int bx, int by, int k, int l) const {
    return coeffs[block_offset(bx, by) + k * layout.block_size + l];
  }
  double& at(int bx, int by, int k, int l) {
    return coeffs[block_offset(bx, by) + k * layout.block_size + l];
  }

  std::size_t block_offset(int bx, int by) const {
    return (static_cast<std::size_t>(by) * layout.blocks_x + bx) *
           layout.block_size * layout.block_size;
  }
};

CoeffGrid forward_dct(const GrayImage& img, const BlockLayout& layout,
                      const DctBasis& basis);

/// Unrounded pixel field (row-major, image layout); caller rounds/clamps.
std::vector<double> inverse_dct(const CoeffGrid& grid, const DctBasis& basis);

/// Range of y(k,l) over all pixel blocks with values in [x_min, x_max]:
/// minimize/maximize sum_ij A(i,j,k,l) x(i,j) by assigning each pixel to
/// whichever bound matches the sign of its basis entry.
std::pair<double, double> coefficient_bounds(const DctBasis& basis, int k,
                                             int l, int x_min, int x_max);

}  // namespace dctrec
