#pragma once

#include <string>
#include <vector>

#include "ddnoma/grid.hpp"
#include "ddnoma/link.hpp"
#include "ddnoma/power_alloc.hpp"

namespace ddnoma {

// Monte-Carlo sweep over channel drops for the spectral-efficiency tables.
struct ScenarioConfig {
  GridSpec grid;  // waveform field ignored; `waveforms` drives the sweep
  std::vector<Waveform> waveforms{Waveform::kOtfs, Waveform::kOfdm};
  Direction direction = Direction::kDownlink;
  double speed_mps = 500.0 / 3.6;
  double carrier_freq_hz = 5.9e9;
  double snr1_db = 15.0;
  double snr2_db = 25.0;
  std::vector<PaScheme> schemes{PaScheme::kOma, PaScheme::kFixed,
                                PaScheme::kFtpaAvgSnr, PaScheme::kFtpaChannelNorm,
                                PaScheme::kWsrmAvgSnr, PaScheme::kWsrmInst};
  std::vector<double> fixed_fractions{0.7, 0.3};
  WsrmWeights wsrm_weights{};
  int drops = 100;
  uint64_t seed = 1;
  int threads = 0;  // 0 = pick from hardware

  void validate() const;
};

struct SeSample {
  int drop = 0;
  Waveform waveform = Waveform::kOtfs;
  PaScheme scheme = PaScheme::kOma;
  double rate1 = 0.0;
  double rate2 = 0.0;
  double sum_rate = 0.0;
};

struct SeSummary {
  double mean = 0.0;
  double outage5 = 0.0;  // empirical 5th percentile
  int count = 0;
};

// One sample per (drop, waveform, scheme), ordered by drop, then by the
// config's waveform and scheme order. Identical output for any thread count.
std::vector<SeSample> run_system_mc(const ScenarioConfig& config);

// mean + linearly interpolated 5th percentile of the sum rates.
SeSummary summarize(const std::vector<double>& sum_rates);

std::vector<double> sum_rates_of(const std::vector<SeSample>& samples,
                                 Waveform waveform, PaScheme scheme);

}  // namespace ddnoma
