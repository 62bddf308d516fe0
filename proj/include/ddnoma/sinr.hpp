#pragma once

#include <vector>

#include "ddnoma/equalizer.hpp"
#include "ddnoma/power_alloc.hpp"

namespace ddnoma {

struct SinrReport {
  int user = 0;  // 0-based, users ordered by ascending average SNR
  Eigen::VectorXd pre_sic;   // linear, per symbol
  Eigen::VectorXd post_sic;  // linear, per symbol

  double mean_pre() const { return pre_sic.size() ? pre_sic.mean() : 0.0; }
  double mean_post() const { return post_sic.size() ? post_sic.mean() : 0.0; }
};

// s = A sum_i sqrt(beta_i P) d_i
Eigen::VectorXcd superpose(const std::vector<Eigen::VectorXcd>& data,
                           const PowerSplit& split, const ModulationMatrix& mod);

// r = sum_i H_i s_i + n
Eigen::VectorXcd ul_aggregate(const std::vector<const SpMat*>& channels,
                              const std::vector<Eigen::VectorXcd>& tx,
                              double noise_var, uint64_t seed);

// Downlink per-symbol SINR for `user` from its equalizer scalars.
// Pre-SIC counts every other user as interference; post-SIC only users with
// higher average SNR (index > user). noise_var is that user's sigma_n^2.
SinrReport sinr_dl(const LmmseSymbolStats& stats, const PowerSplit& split,
                   double total_power_w, double noise_var, int user);

// Uplink per-symbol SINR for `user` (0-based, ascending-SNR order).
// powers/avg_snrs must be consistently ordered ascending; interference comes
// from the not-yet-decoded users i' < user via stats.cross_energy[i'].
SinrReport sinr_ul(const LmmseSymbolStats& stats, const std::vector<double>& powers_w,
                   double noise_var, int user);

// Per-user spectral efficiency: the per-symbol Shannon rates averaged over
// the frame, mean_j log2(1 + sinr_j). For OTFS the per-symbol SINRs are
// nearly uniform and this coincides with log2(1 + mean SINR); for OFDM the
// per-subcarrier spread makes the distinction matter.
double symbol_rate_bps_hz(const Eigen::VectorXd& sinr);

// R = sum_i mean_j log2(1 + post_ij)
double dl_sum_rate(const std::vector<SinrReport>& reports);
double ul_sum_rate(const std::vector<SinrReport>& reports);

}  // namespace ddnoma
