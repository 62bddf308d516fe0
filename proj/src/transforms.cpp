#include "ddnoma/transforms.hpp"

#include <cmath>

namespace ddnoma {

namespace {

bool is_pow2(int v) { return v > 0 && (v & (v - 1)) == 0; }

// Column-index bit-reversal permutation applied to whole columns.
template <typename Swapper>
void bit_reverse(int len, Swapper&& swap_cols) {
  for (int i = 1, j = 0; i < len; ++i) {
    int bit = len >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) swap_cols(i, j);
  }
}

}  // namespace

void dft_in_place(Cx* data, int len, int sign) {
  if (!is_pow2(len)) {
    Eigen::VectorXcd in = Eigen::Map<Eigen::VectorXcd>(data, len);
    Eigen::MatrixXcd w = normalized_idft(len);
    if (sign < 0) w = w.conjugate();
    Eigen::Map<Eigen::VectorXcd>(data, len) = w * in;
    return;
  }
  bit_reverse(len, [&](int i, int j) { std::swap(data[i], data[j]); });
  for (int half = 1; half < len; half *= 2) {
    const Cx wstep = std::polar(1.0, sign * M_PI / half);
    for (int start = 0; start < len; start += 2 * half) {
      Cx w{1.0, 0.0};
      for (int k = 0; k < half; ++k) {
        const Cx u = data[start + k];
        const Cx v = data[start + k + half] * w;
        data[start + k] = u + v;
        data[start + k + half] = u - v;
        w *= wstep;
      }
    }
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(len));
  for (int i = 0; i < len; ++i) data[i] *= scale;
}

void dft_across_cols(Eigen::MatrixXcd& block, int sign) {
  const int len = static_cast<int>(block.cols());
  if (len == 1) return;
  if (!is_pow2(len)) {
    Eigen::MatrixXcd w = normalized_idft(len);
    if (sign < 0) w = w.conjugate();
    block = block * w;
    return;
  }
  bit_reverse(len, [&](int i, int j) { block.col(i).swap(block.col(j)); });
  Eigen::VectorXcd u(block.rows());
  Eigen::VectorXcd v(block.rows());
  for (int half = 1; half < len; half *= 2) {
    const Cx wstep = std::polar(1.0, sign * M_PI / half);
    for (int start = 0; start < len; start += 2 * half) {
      Cx w{1.0, 0.0};
      for (int k = 0; k < half; ++k) {
        u = block.col(start + k);
        v.noalias() = w * block.col(start + k + half);
        block.col(start + k) = u + v;
        block.col(start + k + half) = u - v;
        w *= wstep;
      }
    }
  }
  block *= 1.0 / std::sqrt(static_cast<double>(len));
}

WaveformTransform::WaveformTransform(const GridSpec& grid) : grid_(grid) {
  grid_.validate();
}

int WaveformTransform::group_count() const {
  return grid_.waveform == Waveform::kOtfs ? grid_.delay_bins : grid_.doppler_bins;
}

int WaveformTransform::group_size() const {
  return grid_.waveform == Waveform::kOtfs ? grid_.doppler_bins : grid_.delay_bins;
}

std::vector<int> WaveformTransform::group_columns(int g) const {
  const int m = grid_.delay_bins;
  std::vector<int> cols(group_size());
  if (grid_.waveform == Waveform::kOtfs) {
    for (int n = 0; n < group_size(); ++n) cols[n] = g + m * n;
  } else {
    for (int c = 0; c < group_size(); ++c) cols[c] = g * m + c;
  }
  return cols;
}

void WaveformTransform::transform_group(Eigen::MatrixXcd& block) const {
  dft_across_cols(block, +1);
}

Cx WaveformTransform::project_onto_a_column(const Eigen::MatrixXcd& block, int g,
                                            int idx) const {
  const int m = grid_.delay_bins;
  const int len = group_size();
  const double scale = 1.0 / std::sqrt(static_cast<double>(len));
  Cx acc{0.0, 0.0};
  if (grid_.waveform == Waveform::kOtfs) {
    // col (g, idx) of A lives on rows g + m*n with value exp(j2pi n idx/len)
    for (int n = 0; n < len; ++n) {
      const long long e = (static_cast<long long>(n) * idx) % len;
      const Cx a = std::polar(scale, 2.0 * M_PI * static_cast<double>(e) / len);
      acc += std::conj(a) * block(g + m * n, idx);
    }
  } else {
    for (int r = 0; r < len; ++r) {
      const long long e = (static_cast<long long>(r) * idx) % len;
      const Cx a = std::polar(scale, 2.0 * M_PI * static_cast<double>(e) / len);
      acc += std::conj(a) * block(g * m + r, idx);
    }
  }
  return acc;
}

Eigen::VectorXcd WaveformTransform::apply(const Eigen::VectorXcd& x) const {
  const int m = grid_.delay_bins;
  const int n = grid_.doppler_bins;
  if (x.size() != static_cast<Eigen::Index>(m) * n)
    throw ShapeError("WaveformTransform::apply: length mismatch");
  Eigen::MatrixXcd grid_view = Eigen::Map<const Eigen::MatrixXcd>(x.data(), m, n);
  if (grid_.waveform == Waveform::kOtfs) {
    dft_across_cols(grid_view, +1);  // IDFT over the Doppler axis per delay row
  } else {
    for (int c = 0; c < n; ++c) dft_in_place(grid_view.col(c).data(), m, +1);
  }
  return Eigen::Map<Eigen::VectorXcd>(grid_view.data(), grid_view.size());
}

Eigen::VectorXcd WaveformTransform::apply_adjoint(const Eigen::VectorXcd& x) const {
  const int m = grid_.delay_bins;
  const int n = grid_.doppler_bins;
  if (x.size() != static_cast<Eigen::Index>(m) * n)
    throw ShapeError("WaveformTransform::apply_adjoint: length mismatch");
  Eigen::MatrixXcd grid_view = Eigen::Map<const Eigen::MatrixXcd>(x.data(), m, n);
  if (grid_.waveform == Waveform::kOtfs) {
    dft_across_cols(grid_view, -1);
  } else {
    for (int c = 0; c < n; ++c) dft_in_place(grid_view.col(c).data(), m, -1);
  }
  return Eigen::Map<Eigen::VectorXcd>(grid_view.data(), grid_view.size());
}

Eigen::MatrixXcd WaveformTransform::dense(int max_dim) const {
  return build_modulation_matrix(grid_, max_dim).a;
}

}  // namespace ddnoma
