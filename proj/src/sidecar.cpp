#include "dctrec/sidecar.hpp"

#include <bit>
#include <cstring>
#include <fstream>

namespace dctrec {

namespace {

constexpr char kMagic[4] = {'D', 'C', 'R', 'C'};
constexpr std::uint32_t kVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "sidecar writer assumes a little-endian host");

template <typename T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get(std::istream& in, const std::filesystem::path& path) {
  T v;
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!in)
    throw Error(ErrorCode::CorruptFile,
                path.string() + ": truncated sidecar");
  return v;
}

}  // namespace

void save_sidecar(const CoeffGrid& coeffs, const EraseMask& mask,
                  int bit_depth, const std::filesystem::path& path) {
  if (mask.block_size() != coeffs.layout.block_size)
    throw Error(ErrorCode::DimensionMismatch, "mask does not match grid");

  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());

  out.write(kMagic, 4);
  put<std::uint32_t>(out, kVersion);
  put<std::uint32_t>(out, coeffs.layout.block_size);
  put<std::uint32_t>(out, coeffs.layout.width());
  put<std::uint32_t>(out, coeffs.layout.height());
  put<std::uint32_t>(out, bit_depth);
  put<std::uint32_t>(out, mask.count());
  for (const auto& p : mask.positions()) {
    put<std::uint16_t>(out, static_cast<std::uint16_t>(p.k));
    put<std::uint16_t>(out, static_cast<std::uint16_t>(p.l));
  }

  const int n = coeffs.layout.block_size;
  for (int by = 0; by < coeffs.layout.blocks_y; ++by)
    for (int bx = 0; bx < coeffs.layout.blocks_x; ++bx)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          if (!mask.contains(k, l)) put(out, coeffs.at(bx, by, k, l));

  out.flush();
  if (!out)
    throw Error(ErrorCode::IoFailure, "write failed for " + path.string());
}

Sidecar load_sidecar(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());

  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw Error(ErrorCode::CorruptFile,
                path.string() + ": not a coefficient sidecar");
  if (get<std::uint32_t>(in, path) != kVersion)
    throw Error(ErrorCode::UnsupportedFormat,
                path.string() + ": unsupported sidecar version");

  auto block_size = get<std::uint32_t>(in, path);
  auto width = get<std::uint32_t>(in, path);
  auto height = get<std::uint32_t>(in, path);
  auto bit_depth = get<std::uint32_t>(in, path);
  auto mask_count = get<std::uint32_t>(in, path);

  if (block_size < 2 || block_size > 256 || width == 0 || height == 0 ||
      width % block_size != 0 || height % block_size != 0 || bit_depth != 8)
    throw Error(ErrorCode::CorruptFile, path.string() + ": bad header");
  if (mask_count >= block_size * block_size)
    throw Error(ErrorCode::InvalidCount,
                path.string() + ": mask covers every coefficient");

  std::vector<FreqPos> positions;
  positions.reserve(mask_count);
  for (std::uint32_t i = 0; i < mask_count; ++i) {
    int k = get<std::uint16_t>(in, path);
    int l = get<std::uint16_t>(in, path);
    positions.push_back({k, l});
  }

  Sidecar sc{make_layout(static_cast<int>(width), static_cast<int>(height),
                         static_cast<int>(block_size)),
             static_cast<int>(bit_depth),
             EraseMask(static_cast<int>(block_size), std::move(positions)),
             CoeffGrid()};
  if (sc.mask.count() != static_cast<int>(mask_count))
    throw Error(ErrorCode::CorruptFile,
                path.string() + ": duplicate mask entries");
  sc.known = CoeffGrid(sc.layout);

  const int n = sc.layout.block_size;
  for (int by = 0; by < sc.layout.blocks_y; ++by)
    for (int bx = 0; bx < sc.layout.blocks_x; ++bx)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          if (!sc.mask.contains(k, l))
            sc.known.at(bx, by, k, l) = get<double>(in, path);

  char extra;
  if (in.read(&extra, 1))
    throw Error(ErrorCode::CorruptFile,
                path.string() + ": trailing data after coefficients");
  return sc;
}

}  // namespace dctrec
