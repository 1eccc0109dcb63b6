#include "dctrec/mask.hpp"

#include <algorithm>

namespace dctrec {

EraseMask::EraseMask(int block_size, std::vector<FreqPos> positions)
    : block_size_(block_size), positions_(std::move(positions)) {
  if (block_size_ < 2)
    throw Error(ErrorCode::InvalidCount, "block size must be >= 2");
  std::sort(positions_.begin(), positions_.end());
  positions_.erase(std::unique(positions_.begin(), positions_.end()),
                   positions_.end());
  const int n2 = block_size_ * block_size_;
  if (static_cast<int>(positions_.size()) >= n2)
    throw Error(ErrorCode::InvalidCount,
                "mask may not cover all " + std::to_string(n2) +
                    " coefficients");
  for (const auto& p : positions_)
    if (p.k < 0 || p.k >= block_size_ || p.l < 0 || p.l >= block_size_)
      throw Error(ErrorCode::InvalidCount,
                  "frequency position (" + std::to_string(p.k) + "," +
                      std::to_string(p.l) + ") outside block");
  member_.assign(static_cast<std::size_t>(n2), 0);
  for (const auto& p : positions_)
    member_[static_cast<std::size_t>(p.k) * block_size_ + p.l] = 1;
}

std::vector<FreqPos> zigzag_order(int block_size) {
  const int n = block_size;
  std::vector<FreqPos> order;
  order.reserve(static_cast<std::size_t>(n) * n);
  for (int s = 0; s <= 2 * (n - 1); ++s) {
    int k_lo = std::max(0, s - n + 1);
    int k_hi = std::min(s, n - 1);
    if (s % 2 == 0) {
      for (int k = k_hi; k >= k_lo; --k) order.push_back({k, s - k});
    } else {
      for (int k = k_lo; k <= k_hi; ++k) order.push_back({k, s - k});
    }
  }
  return order;
}

EraseMask most_significant_mask(int u, int block_size) {
  const int n2 = block_size * block_size;
  if (u < 1 || u >= n2)
    throw Error(ErrorCode::InvalidCount,
                "U must be in [1, " + std::to_string(n2 - 1) + "], got " +
                    std::to_string(u));
  auto order = zigzag_order(block_size);
  order.resize(static_cast<std::size_t>(u));
  return EraseMask(block_size, std::move(order));
}

CoeffGrid apply_mask(const CoeffGrid& grid, const EraseMask& mask,
                     FillPolicy fill, const DctBasis& basis, int x_min,
                     int x_max) {
  if (mask.block_size() != grid.layout.block_size)
    throw Error(ErrorCode::DimensionMismatch, "mask does not match grid");

  CoeffGrid out = grid;
  for (const auto& p : mask.positions()) {
    double value = 0.0;
    if (fill == FillPolicy::MidpointOfRange) {
      auto [lo, hi] = coefficient_bounds(basis, p.k, p.l, x_min, x_max);
      value = 0.5 * (lo + hi);
    }
    for (int by = 0; by < grid.layout.blocks_y; ++by)
      for (int bx = 0; bx < grid.layout.blocks_x; ++bx)
        out.at(bx, by, p.k, p.l) = value;
  }
  return out;
}

}  // namespace dctrec
