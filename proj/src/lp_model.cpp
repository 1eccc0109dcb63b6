#include "dctrec/lp_model.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

namespace dctrec {

std::vector<PixelPair> select_pairs(const BlockLayout& layout, bool dc_only) {
  const int w = layout.width();
  const int h = layout.height();
  const int n = layout.block_size;

  std::vector<PixelPair> pairs;
  pairs.reserve(static_cast<std::size_t>(2) * w * h);
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      const std::int32_t p = i * w + j;
      if (j + 1 < w) {
        bool cross = (j / n) != ((j + 1) / n);
        if (!dc_only || cross)
          pairs.push_back({p, p + 1, cross});
      }
      if (i + 1 < h) {
        bool cross = (i / n) != ((i + 1) / n);
        if (!dc_only || cross)
          pairs.push_back({p, p + w, cross});
      }
    }
  }
  return pairs;
}

namespace {

// Reconstruction from known coefficients alone: masked slots are zeroed
// before any read, so withheld values can never leak into the model.
std::vector<double> known_part_field(const CoeffGrid& grid_known,
                                     const EraseMask& mask,
                                     const DctBasis& basis) {
  CoeffGrid zeroed = grid_known;
  for (const auto& p : mask.positions())
    for (int by = 0; by < zeroed.layout.blocks_y; ++by)
      for (int bx = 0; bx < zeroed.layout.blocks_x; ++bx)
        zeroed.at(bx, by, p.k, p.l) = 0.0;
  return inverse_dct(zeroed, basis);
}

void check_model_inputs(const CoeffGrid& grid_known, const EraseMask& mask,
                        const BlockLayout& layout, const DctBasis& basis) {
  if (mask.empty())
    throw Error(ErrorCode::InvalidCount, "erase mask is empty");
  if (mask.block_size() != layout.block_size ||
      basis.block_size() != layout.block_size ||
      grid_known.layout != layout)
    throw Error(ErrorCode::DimensionMismatch,
                "grid/mask/layout/basis block sizes disagree");
}

}  // namespace

LpProblem build_problem(const CoeffGrid& grid_known, const EraseMask& mask,
                        const BlockLayout& layout, const DctBasis& basis,
                        int x_min, int x_max) {
  check_model_inputs(grid_known, mask, layout, basis);

  const int n = layout.block_size;
  const int w = layout.width();
  const int num_pixels = w * layout.height();
  const int num_blocks = layout.block_count();
  const int u = mask.count();
  const auto& missing = mask.positions();

  const auto pairs = select_pairs(layout, mask.dc_only());
  const int num_pairs = static_cast<int>(pairs.size());

  LpProblem lp;
  lp.num_pixel_vars = num_pixels;
  lp.num_coeff_vars = num_blocks * u;
  lp.num_pair_vars = num_pairs;
  lp.num_vars = num_pixels + lp.num_coeff_vars + num_pairs;
  lp.num_rows = num_pixels + 2 * num_pairs;

  const int y_base = num_pixels;
  const int h_base = num_pixels + lp.num_coeff_vars;

  lp.objective.assign(lp.num_vars, 0.0);
  lp.lower.resize(lp.num_vars);
  lp.upper.resize(lp.num_vars);
  lp.roles.resize(lp.num_vars);

  for (int i = 0; i < num_pixels; ++i) {
    lp.lower[i] = x_min;
    lp.upper[i] = x_max;
    lp.roles[i] = VarRole::Pixel;
  }
  for (int uu = 0; uu < u; ++uu) {
    auto [lo, hi] =
        coefficient_bounds(basis, missing[uu].k, missing[uu].l, x_min, x_max);
    for (int b = 0; b < num_blocks; ++b) {
      int col = y_base + b * u + uu;
      lp.lower[col] = lo;
      lp.upper[col] = hi;
      lp.roles[col] = VarRole::Coeff;
    }
  }
  for (int p = 0; p < num_pairs; ++p) {
    int col = h_base + p;
    lp.lower[col] = 0.0;
    lp.upper[col] = x_max - x_min;
    lp.roles[col] = VarRole::PairSlack;
    lp.objective[col] = 1.0;
  }

  lp.senses.resize(lp.num_rows);
  lp.rhs.resize(lp.num_rows);
  lp.row_idx.reserve(static_cast<std::size_t>(num_pixels) * (1 + u) +
                     6 * static_cast<std::size_t>(num_pairs));
  lp.col_idx.reserve(lp.row_idx.capacity());
  lp.values.reserve(lp.row_idx.capacity());

  // Per-pixel equality rows x = A y, known coefficients on the right.
  const auto known = known_part_field(grid_known, mask, basis);
  for (int by = 0; by < layout.blocks_y; ++by) {
    for (int bx = 0; bx < layout.blocks_x; ++bx) {
      const int b = by * layout.blocks_x + bx;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const int pixel = (by * n + i) * w + bx * n + j;
          lp.add_entry(pixel, pixel, 1.0);
          for (int uu = 0; uu < u; ++uu)
            lp.add_entry(pixel, y_base + b * u + uu,
                         -basis.entry(i, j, missing[uu].k, missing[uu].l));
          lp.senses[pixel] = RowSense::EQ;
          lp.rhs[pixel] = known[pixel];
        }
      }
    }
  }

  // Two rows per pair: +/- (x_a - x_b) <= h_p.
  for (int p = 0; p < num_pairs; ++p) {
    const auto& pr = pairs[p];
    const int r0 = num_pixels + 2 * p;
    lp.add_entry(r0, pr.first, 1.0);
    lp.add_entry(r0, pr.second, -1.0);
    lp.add_entry(r0, h_base + p, -1.0);
    lp.senses[r0] = RowSense::LE;
    lp.rhs[r0] = 0.0;

    lp.add_entry(r0 + 1, pr.first, -1.0);
    lp.add_entry(r0 + 1, pr.second, 1.0);
    lp.add_entry(r0 + 1, h_base + p, -1.0);
    lp.senses[r0 + 1] = RowSense::LE;
    lp.rhs[r0 + 1] = 0.0;
  }

  return lp;
}

LpProblem build_reduced_problem(const CoeffGrid& grid_known,
                                const EraseMask& mask,
                                const BlockLayout& layout,
                                const DctBasis& basis, int x_min, int x_max) {
  check_model_inputs(grid_known, mask, layout, basis);

  const int n = layout.block_size;
  const int w = layout.width();
  const int num_pixels = w * layout.height();
  const int num_blocks = layout.block_count();
  const int u = mask.count();
  const auto& missing = mask.positions();
  const bool dc_only = mask.dc_only();

  const auto pairs = select_pairs(layout, dc_only);
  const int num_pairs = static_cast<int>(pairs.size());
  const auto known = known_part_field(grid_known, mask, basis);

  LpProblem lp;
  lp.num_coeff_vars = num_blocks * u;
  lp.num_pair_vars = 2 * num_pairs;  // split t+ / t-
  lp.num_pixel_vars = dc_only ? 0 : num_pixels;
  lp.num_vars = lp.num_coeff_vars + lp.num_pair_vars + lp.num_pixel_vars;
  lp.num_rows = num_pairs + (dc_only ? 0 : num_pixels);

  const int t_base = lp.num_coeff_vars;
  const int w_base = t_base + lp.num_pair_vars;

  lp.objective.assign(lp.num_vars, 0.0);
  lp.lower.resize(lp.num_vars);
  lp.upper.resize(lp.num_vars);
  lp.roles.resize(lp.num_vars);
  lp.senses.assign(lp.num_rows, RowSense::EQ);
  lp.rhs.assign(lp.num_rows, 0.0);

  if (dc_only) {
    // Per-block DC interval implied by pixel bounds and the known AC part
    // (Property 2), intersected with the generic coefficient range.
    auto [glo, ghi] = coefficient_bounds(basis, 0, 0, x_min, x_max);
    for (int by = 0; by < layout.blocks_y; ++by) {
      for (int bx = 0; bx < layout.blocks_x; ++bx) {
        double dmin = known[(by * n) * w + bx * n];
        double dmax = dmin;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            double v = known[(by * n + i) * w + bx * n + j];
            dmin = std::min(dmin, v);
            dmax = std::max(dmax, v);
          }
        const int col = by * layout.blocks_x + bx;
        lp.lower[col] = std::max(glo, n * (x_min - dmin));
        lp.upper[col] = std::min(ghi, n * (x_max - dmax));
        lp.roles[col] = VarRole::Coeff;
      }
    }
  } else {
    for (int uu = 0; uu < u; ++uu) {
      auto [lo, hi] = coefficient_bounds(basis, missing[uu].k, missing[uu].l,
                                         x_min, x_max);
      for (int b = 0; b < num_blocks; ++b) {
        int col = b * u + uu;
        lp.lower[col] = lo;
        lp.upper[col] = hi;
        lp.roles[col] = VarRole::Coeff;
      }
    }
  }

  for (int p = 0; p < num_pairs; ++p) {
    for (int side = 0; side < 2; ++side) {
      int col = t_base + 2 * p + side;
      lp.lower[col] = 0.0;
      lp.upper[col] = x_max - x_min;
      lp.roles[col] = VarRole::PairSlack;
      lp.objective[col] = 1.0;
    }
  }

  // One equality row per pair:  (A y)_a - (A y)_b - t+ + t- = d_b - d_a.
  for (int p = 0; p < num_pairs; ++p) {
    const auto& pr = pairs[p];
    for (int side = 0; side < 2; ++side) {
      const int pixel = side == 0 ? pr.first : pr.second;
      const double sign = side == 0 ? 1.0 : -1.0;
      const int i = pixel / w, j = pixel % w;
      const int b = (i / n) * layout.blocks_x + (j / n);
      if (dc_only) {
        lp.add_entry(p, b, sign / n);
      } else {
        for (int uu = 0; uu < u; ++uu)
          lp.add_entry(p, b * u + uu,
                       sign * basis.entry(i % n, j % n, missing[uu].k,
                                          missing[uu].l));
      }
    }
    lp.add_entry(p, t_base + 2 * p, -1.0);
    lp.add_entry(p, t_base + 2 * p + 1, 1.0);
    lp.rhs[p] = known[pr.second] - known[pr.first];
  }

  if (!dc_only) {
    // Pixel bounds become bounded rows:  (A y)_ij - w_ij = -d_ij,
    // w in [x_min, x_max].
    for (int pixel = 0; pixel < num_pixels; ++pixel) {
      const int col = w_base + pixel;
      lp.lower[col] = x_min;
      lp.upper[col] = x_max;
      lp.roles[col] = VarRole::Pixel;

      const int i = pixel / w, j = pixel % w;
      const int b = (i / n) * layout.blocks_x + (j / n);
      const int row = num_pairs + pixel;
      for (int uu = 0; uu < u; ++uu)
        lp.add_entry(row, b * u + uu,
                     basis.entry(i % n, j % n, missing[uu].k, missing[uu].l));
      lp.add_entry(row, col, -1.0);
      lp.rhs[row] = -known[pixel];
    }
  }

  return lp;
}

void write_lp_format(const LpProblem& lp, std::ostream& out) {
  auto var_name = [&](int col) {
    char prefix = static_cast<char>(lp.roles[col]);
    return std::string(1, prefix) + std::to_string(col);
  };
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };

  out << "Minimize\n obj:";
  bool first = true;
  for (int c = 0; c < lp.num_vars; ++c) {
    if (lp.objective[c] == 0.0) continue;
    out << (first ? " " : " + ") << num(lp.objective[c]) << " "
        << var_name(c);
    first = false;
  }
  if (first) out << " 0 " << var_name(0);
  out << "\nSubject To\n";

  // Group triplets by row; assembly emits them row-ordered already, but do
  // not rely on it.
  std::vector<std::size_t> order(lp.values.size());
  for (std::size_t t = 0; t < order.size(); ++t) order[t] = t;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return lp.row_idx[a] < lp.row_idx[b];
  });

  std::size_t t = 0;
  for (int r = 0; r < lp.num_rows; ++r) {
    out << " c" << r << ":";
    for (; t < order.size() && lp.row_idx[order[t]] == r; ++t) {
      double v = lp.values[order[t]];
      out << (v < 0 ? " - " : " + ") << num(std::abs(v)) << " "
          << var_name(lp.col_idx[order[t]]);
    }
    switch (lp.senses[r]) {
      case RowSense::LE: out << " <= "; break;
      case RowSense::EQ: out << " = "; break;
      case RowSense::GE: out << " >= "; break;
    }
    out << num(lp.rhs[r]) << "\n";
  }

  out << "Bounds\n";
  for (int c = 0; c < lp.num_vars; ++c)
    out << " " << num(lp.lower[c]) << " <= " << var_name(c)
        << " <= " << num(lp.upper[c]) << "\n";
  out << "End\n";
}

}  // namespace dctrec
