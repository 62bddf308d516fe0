#pragma once

#include <string>

#include "ddnoma/common.hpp"

namespace ddnoma {

enum class Waveform { kOtfs, kOfdm };

std::string to_string(Waveform w);
Waveform waveform_from_string(const std::string& s);

// Delay-Doppler lattice: M delay bins (subcarriers) x N Doppler bins (symbols).
// Data vectors are delay-major: index = l + M*k for delay l, Doppler k.
struct GridSpec {
  int doppler_bins = 16;                    // N
  int delay_bins = 256;                     // M
  double subcarrier_spacing_hz = 15e3;      // delta-f
  Waveform waveform = Waveform::kOtfs;
  int cp_len = 0;                           // samples

  int frame_size() const { return doppler_bins * delay_bins; }
  double symbol_duration_s() const { return 1.0 / subcarrier_spacing_hz; }
  double bandwidth_hz() const { return delay_bins * subcarrier_spacing_hz; }
  double sample_interval_s() const { return 1.0 / bandwidth_hz(); }
  // Frame duration; the CP-inclusive figure is the over-the-air length.
  double frame_duration_s(bool include_cp = false) const {
    const int samples = frame_size() + (include_cp ? cp_len : 0);
    return samples * sample_interval_s();
  }

  void validate() const;
};

// MN x MN unitary modulation matrix: W_N (x) I_M for OTFS, I_N (x) W_M for
// OFDM, with W_L the L-order normalized IDFT matrix.
struct ModulationMatrix {
  Eigen::MatrixXcd a;
  Waveform waveform = Waveform::kOtfs;
  int doppler_bins = 0;
  int delay_bins = 0;
};

// L-order normalized IDFT matrix, entries exp(+j*2*pi*r*c/L)/sqrt(L).
Eigen::MatrixXcd normalized_idft(int order);

ModulationMatrix build_modulation_matrix(const GridSpec& grid, int max_dim = 4096);

// s = A * sqrt(power) * d
Eigen::VectorXcd modulate(const ModulationMatrix& mod, const Eigen::VectorXcd& d,
                          double power_w);

Eigen::VectorXcd add_cyclic_prefix(const Eigen::VectorXcd& s, int cp_len);
Eigen::VectorXcd remove_cyclic_prefix(const Eigen::VectorXcd& r, int cp_len);

// Column-wise (delay-major) vectorization of an M x N delay-Doppler grid.
Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& dd_grid);
Eigen::MatrixXcd devectorize(const Eigen::VectorXcd& d, int delay_bins, int doppler_bins);

}  // namespace ddnoma
