#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "dctrec/dct.hpp"
#include "dctrec/mask.hpp"

namespace dctrec {

/// Unordered pair of 4-adjacent pixels, stored as linear row-major indices
/// with first < second.
struct PixelPair {
  std::int32_t first = 0;
  std::int32_t second = 0;
  bool cross_block = false;
};

enum class RowSense : char { LE = 'L', EQ = 'E', GE = 'G' };

enum class VarRole : char {
  Pixel = 'x',      // pixel value x(i,j)
  Coeff = 'y',      // unknown coefficient y(k,l) of some block
  PairSlack = 'h',  // |difference| bound of one neighbor pair
};

/// Sparse LP in triplet form: minimize c^T v subject to row senses and
/// per-variable bounds.
struct LpProblem {
  int num_vars = 0;
  int num_rows = 0;

  std::vector<double> objective;  // dense c
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<VarRole> roles;

  std::vector<std::int32_t> row_idx;
  std::vector<std::int32_t> col_idx;
  std::vector<double> values;
  std::vector<RowSense> senses;
  std::vector<double> rhs;

  // Variable accounting by role.
  int num_pixel_vars = 0;
  int num_coeff_vars = 0;
  int num_pair_vars = 0;

  std::int64_t nonzeros() const {
    return static_cast<std::int64_t>(values.size());
  }
  void add_entry(int row, int col, double value) {
    row_idx.push_back(row);
    col_idx.push_back(col);
    values.push_back(value);
  }
};

/// 4-adjacent pixel pairs of the image. With dc_only, only pairs whose
/// pixels lie in different blocks are kept (the DC value shifts all pixels
/// of a block equally, so within-block pairs carry no information).
std::vector<PixelPair> select_pairs(const BlockLayout& layout, bool dc_only);

/// Assembles the recovery LP:
///   minimize sum_p h_p
///   s.t.  x(i,j) - x(i',j') <= h_p  and  x(i',j') - x(i,j) <= h_p
///         x = A y per block, known y(k,l) folded into the right-hand side
///         x in [x_min, x_max], h in [0, x_max - x_min],
///         unknown y(k,l) in coefficient_bounds(k, l)
/// Masked entries of grid_known are never read. Pair selection is restricted
/// to cross-block pairs exactly when the mask is {(0,0)}.
LpProblem build_problem(const CoeffGrid& grid_known, const EraseMask& mask,
                        const BlockLayout& layout, const DctBasis& basis,
                        int x_min, int x_max);

/// Presolved equivalent of build_problem with pixel variables eliminated
/// through x = A y. Each pair difference becomes an equality row with a
/// split  t+ - t-  carrying the objective; pixel bounds become bounded
/// rows (general case) or tightened per-block DC intervals (DC-only case).
/// Optimal objective matches build_problem's.
LpProblem build_reduced_problem(const CoeffGrid& grid_known,
                                const EraseMask& mask,
                                const BlockLayout& layout,
                                const DctBasis& basis, int x_min, int x_max);

/// Debug dump in CPLEX LP text format for cross-checking with other solvers.
void write_lp_format(const LpProblem& problem, std::ostream& out);

}  // namespace dctrec
