#pragma once

#include <optional>
#include <vector>

#include "ddnoma/channel.hpp"
#include "ddnoma/grid.hpp"
#include "ddnoma/ldpc.hpp"
#include "ddnoma/power_alloc.hpp"
#include "ddnoma/qam.hpp"

namespace ddnoma {

enum class Direction { kDownlink, kUplink };

// Coded 2-user NOMA link scenario. Users are ordered by ascending average
// SNR: user 1 is the weak user, user 2 the strong one.
struct LinkConfig {
  GridSpec grid;
  double speed_mps = 500.0 / 3.6;
  double carrier_freq_hz = 5.9e9;
  Direction direction = Direction::kDownlink;
  double snr1_db = 15.0;           // downlink Gamma_1 / uplink Gamma_1^u
  double snr2_db = 25.0;
  PowerSplit split{{0.9, 0.1}, 1.0};  // downlink only
  QamOrder mod1 = QamOrder::kQpsk;
  QamOrder mod2 = QamOrder::kQpsk;
  int frames = 100;
  int ldpc_max_iter = 50;
  bool genie_sic = false;  // subtract true symbols instead of re-mapped decisions
  int threads = 1;         // frame-parallel workers; results independent of count

  void validate() const;
};

struct LinkOutcome {
  double bler1 = 0.0;
  double bler2 = 0.0;
  double throughput_bps_hz = 0.0;
  double goodput_bps_hz = 0.0;
  int frames = 0;
  int codewords_per_frame1 = 0;
  int codewords_per_frame2 = 0;
};

// Average SINR (dB) used for modulation selection, downlink:
// user 1 treats the user-2 signal as Gaussian noise, user 2 is post-SIC.
std::pair<double, double> avg_sinr_dl(double snr1_lin, double snr2_lin, double beta1,
                                      double beta2);
// Uplink: user 2 is decoded first with user 1 as interference, user 1 after SIC.
std::pair<double, double> avg_sinr_ul(double snr1_lin, double snr2_lin);

// Highest-order constellation whose threshold is <= sinr_db; kNone below the
// lowest threshold. OTFS thresholds 9.5/15/23.5 dB, OFDM 10.8/18/26 dB.
QamOrder select_modulation(double sinr_db, Waveform waveform);

// Throughput = sum_i R*K_i, goodput = sum_i R*K_i*(1 - Pe_i), in bps/Hz.
double throughput(double code_rate, const std::vector<int>& bits_per_symbol);
double goodput(double code_rate, const std::vector<int>& bits_per_symbol,
               const std::vector<double>& bler);

LinkOutcome run_dl_link(const LinkConfig& config, uint64_t seed);
LinkOutcome run_ul_link(const LinkConfig& config, uint64_t seed);

}  // namespace ddnoma
