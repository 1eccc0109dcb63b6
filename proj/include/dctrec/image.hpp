#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "dctrec/errors.hpp"

namespace dctrec {

/// 8-bit grayscale image, row-major. Pixel (i, j) = row i, column j,
/// matching the (i, j) block-local indexing used throughout.
class GrayImage {
 public:
  GrayImage() = default;
  GrayImage(int width, int height, int bit_depth = 8);
  GrayImage(int width, int height, std::vector<std::uint8_t> pixels,
            int bit_depth = 8);

  int width() const { return width_; }
  int height() const { return height_; }
  int bit_depth() const { return bit_depth_; }
  int min_value() const { return 0; }
  int max_value() const { return (1 << bit_depth_) - 1; }

  int at(int row, int col) const {
    return pixels_[static_cast<std::size_t>(row) * width_ + col];
  }
  void set(int row, int col, int value) {
    pixels_[static_cast<std::size_t>(row) * width_ + col] =
        static_cast<std::uint8_t>(value);
  }

  const std::vector<std::uint8_t>& pixels() const { return pixels_; }
  std::vector<std::uint8_t>& pixels() { return pixels_; }

  bool operator==(const GrayImage& other) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  int bit_depth_ = 8;
  std::vector<std::uint8_t> pixels_;
};

/// Partition of an image into N x N blocks; dimensions must divide exactly.
struct BlockLayout {
  int block_size = 8;  // N
  int blocks_x = 0;    // width / N
  int blocks_y = 0;    // height / N

  int block_count() const { return blocks_x * blocks_y; }
  int width() const { return blocks_x * block_size; }
  int height() const { return blocks_y * block_size; }

  bool operator==(const BlockLayout&) const = default;
};

GrayImage load_image(const std::filesystem::path& path);
void save_image(const GrayImage& img, const std::filesystem::path& path,
                bool binary = true);

BlockLayout make_layout(const GrayImage& img, int block_size);
BlockLayout make_layout(int width, int height, int block_size);

/// Crops to the largest centered sub-image whose dimensions divide by N.
GrayImage crop_to_multiple(const GrayImage& img, int block_size);

}  // namespace dctrec
