#pragma once

#include <iosfwd>
#include <vector>

#include "ddnoma/common.hpp"
#include "ddnoma/grid.hpp"

namespace ddnoma {

struct Path {
  Cx gain;
  int delay_bin = 0;    // l_p, non-negative
  int doppler_bin = 0;  // k_p, signed
};

struct PathSet {
  std::vector<Path> paths;
  double max_doppler_hz = 0.0;
  double max_delay_s = 0.0;
};

// nu = v * f_c / c
double max_doppler(double speed_mps, double carrier_freq_hz);

// Extended Vehicular A tapped-delay-line profile (3GPP), unit total power.
struct EvaProfile {
  static const std::vector<double>& tap_delays_s();
  static const std::vector<double>& tap_powers_db();
  static std::vector<double> tap_powers_linear();  // normalized to sum 1
  static double max_delay_s();
};

// CP length covering the EVA excess delay on this grid with one sample margin.
int default_cp_len(const GridSpec& grid, double max_delay_s = EvaProfile::max_delay_s());

// One Rayleigh-faded path per EVA tap; per-path Doppler nu_max*cos(theta),
// theta uniform on [-pi, pi]; delay/Doppler rounded to the nearest bin with
// ties toward zero. Colliding delay bins keep both paths.
PathSet sample_eva_channel(const GridSpec& grid, double speed_mps,
                           double carrier_freq_hz, uint64_t seed);

struct ChannelRealization {
  PathSet path_set;
  SpMat h;  // MN x MN, sum_p h_p * Pi^l_p * Delta^k_p

  Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(h); }
  double frobenius_norm() const;
};

ChannelRealization build_channel_matrix(const GridSpec& grid, const PathSet& paths);

// r = H s + n, n elementwise CN(0, noise_var)
Eigen::VectorXcd apply_channel(const SpMat& h, const Eigen::VectorXcd& s,
                               double noise_var, uint64_t seed);

// Per-path time-domain application (delay shift + phase ramp); matches the
// matrix route to rounding error.
Eigen::VectorXcd apply_channel_paths(const PathSet& paths, const Eigen::VectorXcd& s);

// CSV rows "h_re,h_im,l,k" for replaying identical channels.
void write_path_set_csv(std::ostream& os, const PathSet& ps);
PathSet read_path_set_csv(std::istream& is);

}  // namespace ddnoma
