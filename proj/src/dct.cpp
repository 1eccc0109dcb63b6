#include "dctrec/dct.hpp"

#include <cmath>

namespace dctrec {

DctBasis::DctBasis(int block_size) : n_(block_size) {
  if (n_ < 2)
    throw Error(ErrorCode::InvalidCount, "block size must be >= 2");
  cos1d_.resize(static_cast<std::size_t>(n_) * n_);
  const double pi = std::acos(-1.0);
  for (int k = 0; k < n_; ++k) {
    double ck = std::sqrt((k == 0 ? 1.0 : 2.0) / n_);
    for (int i = 0; i < n_; ++i)
      cos1d_[static_cast<std::size_t>(k) * n_ + i] =
          ck * std::cos((i + 0.5) * k * pi / n_);
  }
}

CoeffGrid forward_dct(const GrayImage& img, const BlockLayout& layout,
                      const DctBasis& basis) {
  if (layout.width() != img.width() || layout.height() != img.height())
    throw Error(ErrorCode::DimensionMismatch, "layout does not match image");
  if (basis.block_size() != layout.block_size)
    throw Error(ErrorCode::DimensionMismatch, "basis does not match layout");

  const int n = layout.block_size;
  CoeffGrid grid(layout);
  std::vector<double> tmp(static_cast<std::size_t>(n) * n);

  for (int by = 0; by < layout.blocks_y; ++by) {
    for (int bx = 0; bx < layout.blocks_x; ++bx) {
      // y = A^T x, applied separably: rows first, then columns.
      for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) {
          double s = 0.0;
          for (int i = 0; i < n; ++i)
            s += basis.factor(k, i) * img.at(by * n + i, bx * n + j);
          tmp[static_cast<std::size_t>(k) * n + j] = s;
        }
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = 0.0;
          for (int j = 0; j < n; ++j)
            s += basis.factor(l, j) * tmp[static_cast<std::size_t>(k) * n + j];
          grid.at(bx, by, k, l) = s;
        }
    }
  }
  return grid;
}

std::vector<double> inverse_dct(const CoeffGrid& grid, const DctBasis& basis) {
  const BlockLayout& layout = grid.layout;
  if (basis.block_size() != layout.block_size)
    throw Error(ErrorCode::DimensionMismatch, "basis does not match layout");

  const int n = layout.block_size;
  const int width = layout.width();
  std::vector<double> pixels(static_cast<std::size_t>(width) *
                             layout.height());
  std::vector<double> tmp(static_cast<std::size_t>(n) * n);

  for (int by = 0; by < layout.blocks_y; ++by) {
    for (int bx = 0; bx < layout.blocks_x; ++bx) {
      // x = A y, separably.
      for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) {
          double s = 0.0;
          for (int k = 0; k < n; ++k)
            s += basis.factor(k, i) * grid.at(bx, by, k, l);
          tmp[static_cast<std::size_t>(i) * n + l] = s;
        }
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double s = 0.0;
          for (int l = 0; l < n; ++l)
            s += basis.factor(l, j) * tmp[static_cast<std::size_t>(i) * n + l];
          pixels[static_cast<std::size_t>(by * n + i) * width + bx * n + j] = s;
        }
    }
  }
  return pixels;
}

std::pair<double, double> coefficient_bounds(const DctBasis& basis, int k,
                                             int l, int x_min, int x_max) {
  const int n = basis.block_size();
  double lo = 0.0, hi = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double a = basis.entry(i, j, k, l);
      if (a >= 0.0) {
        lo += a * x_min;
        hi += a * x_max;
      } else {
        lo += a * x_max;
        hi += a * x_min;
      }
    }
  return {lo, hi};
}

}  // namespace dctrec
