#pragma once

#include <vector>

#include "dctrec/dct.hpp"

namespace dctrec {

struct FreqPos {
  int k = 0;
  int l = 0;
  auto operator<=>(const FreqPos&) const = default;
};

/// Set of frequency positions missing in every block. Never all of them:
/// 0 <= size < N^2.
class EraseMask {
 public:
  EraseMask(int block_size, std::vector<FreqPos> positions);

  int block_size() const { return block_size_; }
  int count() const { return static_cast<int>(positions_.size()); }
  bool empty() const { return positions_.empty(); }
  const std::vector<FreqPos>& positions() const { return positions_; }

  bool contains(int k, int l) const {
    return member_[static_cast<std::size_t>(k) * block_size_ + l] != 0;
  }
  bool dc_only() const {
    return positions_.size() == 1 && positions_[0] == FreqPos{0, 0};
  }
  bool contains_dc() const { return contains(0, 0); }

  bool operator==(const EraseMask&) const = default;

 private:
  int block_size_;
  std::vector<FreqPos> positions_;     // sorted, unique
  std::vector<std::uint8_t> member_;   // N*N lookup
};

/// JPEG zigzag traversal of an N x N block, starting at DC.
std::vector<FreqPos> zigzag_order(int block_size);

/// Mask of the U most significant coefficients (first U zigzag positions).
EraseMask most_significant_mask(int u, int block_size);

enum class FillPolicy { MidpointOfRange, Zero };

/// Replaces masked coefficients by the fill value; all others untouched.
/// Midpoint fill uses the midpoint of coefficient_bounds(k,l).
CoeffGrid apply_mask(const CoeffGrid& grid, const EraseMask& mask,
                     FillPolicy fill, const DctBasis& basis, int x_min,
                     int x_max);

}  // namespace dctrec
