#pragma once

#include <filesystem>

#include "dctrec/dct.hpp"
#include "dctrec/mask.hpp"

namespace dctrec {

/// Known-coefficient sidecar: the actual input of the recovery step.
/// Masked values are structurally absent from the file, so a recovery run
/// cannot read what it is supposed to reconstruct.
struct Sidecar {
  BlockLayout layout;
  int bit_depth = 8;
  EraseMask mask;
  CoeffGrid known;  // masked slots hold 0.0 and carry no information
};

/// Binary layout (little endian):
///   magic "DCRC" | u32 version | u32 block_size | u32 width | u32 height
///   | u32 bit_depth | u32 mask_count | mask_count x (u16 k, u16 l)
///   | per block in raster order, per (k,l) row-major, masked omitted: f64
void save_sidecar(const CoeffGrid& coeffs, const EraseMask& mask,
                  int bit_depth, const std::filesystem::path& path);

Sidecar load_sidecar(const std::filesystem::path& path);

}  // namespace dctrec
