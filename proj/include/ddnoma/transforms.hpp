#pragma once

#include <vector>

#include "ddnoma/common.hpp"
#include "ddnoma/grid.hpp"

namespace ddnoma {

// DFT over the column index of a block: B <- B * F where
// F(r,c) = exp(sign * j*2*pi*r*c/L) / sqrt(L), L = B.cols().
// Radix-2 butterflies on whole columns when L is a power of two, dense
// multiply otherwise.
void dft_across_cols(Eigen::MatrixXcd& block, int sign);

// In-place DFT of a contiguous length-L column, same normalization.
void dft_in_place(Cx* data, int len, int sign);

// Applies the modulation matrix A (and its adjoint) without materializing it.
// Also enumerates the column groups that make right-multiplication by A act
// block-locally: for OTFS group g holds columns {g + M*n}, for OFDM it holds
// columns {g*M .. g*M+M-1}.
class WaveformTransform {
 public:
  explicit WaveformTransform(const GridSpec& grid);

  const GridSpec& grid() const { return grid_; }

  Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const;          // A x
  Eigen::VectorXcd apply_adjoint(const Eigen::VectorXcd& x) const;  // A' x

  int group_count() const;
  int group_size() const;
  // Column indices of group g, in the order the in-group DFT expects.
  std::vector<int> group_columns(int g) const;
  // In-place right-multiplication of a gathered group block by the group's
  // DFT factor: block <- block * W_L.
  void transform_group(Eigen::MatrixXcd& block) const;
  // <col_j(A), block_col> for column j = group_columns(g)[idx] of A, given the
  // gathered block column for that j (rows in group-column order).
  Cx project_onto_a_column(const Eigen::MatrixXcd& block, int g, int idx) const;

  // Dense A for reference checks (small grids).
  Eigen::MatrixXcd dense(int max_dim = 4096) const;

 private:
  GridSpec grid_;
};

}  // namespace ddnoma
