#include "ddnoma/system.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "ddnoma/equalizer.hpp"
#include "ddnoma/rng.hpp"
#include "ddnoma/sinr.hpp"
#include "ddnoma/transforms.hpp"

namespace ddnoma {

namespace {

double db_to_lin(double db) { return std::pow(10.0, db / 10.0); }

double mean_of(const Eigen::VectorXd& v) { return v.size() ? v.mean() : 0.0; }

struct UserDropData {
  ChannelRealization channel;
  LmmseSymbolStats stats;  // scale-free downlink stats (or uplink per role)
};

// Downlink per-symbol post-SIC rates for a 2-user split, from scale-free
// per-user stats. total power = 1, sigma_i^2 = 1/Gamma_i.
std::pair<double, double> dl_pair_rates(const LmmseSymbolStats& st1,
                                        const LmmseSymbolStats& st2,
                                        const PowerSplit& split, double snr1,
                                        double snr2) {
  const std::vector<SinrReport> reports = {
      sinr_dl(st1, split, 1.0, 1.0 / snr1, 0),
      sinr_dl(st2, split, 1.0, 1.0 / snr2, 1),
  };
  return {symbol_rate_bps_hz(reports[0].post_sic),
          symbol_rate_bps_hz(reports[1].post_sic)};
}

InstSinrScalars averaged_scalars(const LmmseSymbolStats& st1,
                                 const LmmseSymbolStats& st2, double snr1,
                                 double snr2) {
  InstSinrScalars s;
  const Eigen::VectorXd d1 = st1.desired_gain.cwiseAbs2();
  const Eigen::VectorXd d2 = st2.desired_gain.cwiseAbs2();
  s.g1_desired = mean_of(d1);
  s.g1_isi = mean_of(Eigen::VectorXd(st1.row_energy - d1));
  s.g1_noma = mean_of(st1.row_energy);
  s.p1_noise = mean_of(st1.noise_energy) / snr1;
  s.g2_desired = mean_of(d2);
  s.g2_isi = mean_of(Eigen::VectorXd(st2.row_energy - d2));
  s.p2_noise = mean_of(st2.noise_energy) / snr2;
  return s;
}

}  // namespace

void ScenarioConfig::validate() const {
  grid.validate();
  if (drops < 1) throw ConfigError("ScenarioConfig: drops must be >= 1");
  if (waveforms.empty()) throw ConfigError("ScenarioConfig: no waveforms");
  if (schemes.empty()) throw ConfigError("ScenarioConfig: no schemes");
  if (!(snr1_db < snr2_db))
    throw ConfigError("ScenarioConfig: users must be ordered with snr1 < snr2");
  if (std::find(schemes.begin(), schemes.end(), PaScheme::kFixed) != schemes.end())
    fpa(fixed_fractions);  // validates ordering/normalization
}

std::vector<SeSample> run_system_mc(const ScenarioConfig& config) {
  config.validate();
  const double snr1 = db_to_lin(config.snr1_db);
  const double snr2 = db_to_lin(config.snr2_db);

  GridSpec grid = config.grid;
  grid.cp_len = default_cp_len(grid);

  const int per_drop =
      static_cast<int>(config.waveforms.size()) * static_cast<int>(config.schemes.size());
  std::vector<SeSample> samples(static_cast<size_t>(config.drops) * per_drop);

  auto run_drop = [&](int drop) {
    const uint64_t drop_seed = derive_seed(config.seed, drop);
    const PathSet paths1 =
        sample_eva_channel(grid, config.speed_mps, config.carrier_freq_hz,
                           derive_seed(drop_seed, 1));
    const PathSet paths2 =
        sample_eva_channel(grid, config.speed_mps, config.carrier_freq_hz,
                           derive_seed(drop_seed, 2));
    const ChannelRealization ch1 = build_channel_matrix(grid, paths1);
    const ChannelRealization ch2 = build_channel_matrix(grid, paths2);
    const double norm1 = ch1.frobenius_norm();
    const double norm2 = ch2.frobenius_norm();

    size_t out = static_cast<size_t>(drop) * per_drop;
    for (const Waveform wf : config.waveforms) {
      GridSpec wgrid = grid;
      wgrid.waveform = wf;
      const WaveformTransform tf(wgrid);

      const bool uplink = config.direction == Direction::kUplink;
      const bool need_st2 =
          !uplink || std::find(config.schemes.begin(), config.schemes.end(),
                               PaScheme::kOma) != config.schemes.end();

      LmmseSymbolStats st1, st2, st2u;
      {
        const LmmseSolver s1(gram_single(ch1.h, 1.0, 1.0 / snr1), ch1.h);
        st1 = s1.symbol_stats(tf);
      }
      if (need_st2) {
        const LmmseSolver s2(gram_single(ch2.h, 1.0, 1.0 / snr2), ch2.h);
        st2 = s2.symbol_stats(tf);
      }
      if (uplink) {
        const LmmseSolver s2w(
            gram_weighted({&ch2.h, &ch1.h}, {1.0, snr1 / snr2}, 1.0 / snr2), ch2.h);
        st2u = s2w.symbol_stats(tf, {&ch1.h});
      }

      for (const PaScheme scheme : config.schemes) {
        SeSample s;
        s.drop = drop;
        s.waveform = wf;
        s.scheme = scheme;

        if (uplink) {
          // Uplink has no transmit split; every scheme except OMA reports the
          // same MMSE-SIC sum rate.
          const std::vector<double> powers = {snr1, snr2};
          const SinrReport rep1 = sinr_ul(st1, powers, 1.0, 0);
          const SinrReport rep2 = sinr_ul(st2u, powers, 1.0, 1);
          if (scheme == PaScheme::kOma) {
            const SinrReport solo2 = sinr_ul(st2, {snr2}, 1.0, 0);
            s.rate1 = 0.5 * symbol_rate_bps_hz(rep1.post_sic);
            s.rate2 = 0.5 * symbol_rate_bps_hz(solo2.post_sic);
          } else {
            s.rate1 = symbol_rate_bps_hz(rep1.post_sic);
            s.rate2 = symbol_rate_bps_hz(rep2.post_sic);
          }
          s.sum_rate = s.rate1 + s.rate2;
        } else if (scheme == PaScheme::kOma) {
          // Orthogonal time sharing: each user gets half the frame at full
          // power, so the sum SE is the average of the single-user rates.
          const PowerSplit solo1{{1.0, 0.0}, 1.0};
          const PowerSplit solo2{{0.0, 1.0}, 1.0};
          const SinrReport rep1 = sinr_dl(st1, solo1, 1.0, 1.0 / snr1, 0);
          const SinrReport rep2 = sinr_dl(st2, solo2, 1.0, 1.0 / snr2, 1);
          s.rate1 = 0.5 * symbol_rate_bps_hz(rep1.post_sic);
          s.rate2 = 0.5 * symbol_rate_bps_hz(rep2.post_sic);
          s.sum_rate = s.rate1 + s.rate2;
        } else {
          PowerSplit split;
          switch (scheme) {
            case PaScheme::kFixed:
              split = fpa(config.fixed_fractions);
              break;
            case PaScheme::kFtpaAvgSnr:
              split = ftpa_avg_snr({snr1, snr2});
              break;
            case PaScheme::kFtpaChannelNorm:
              split = ftpa_channel_norm(std::vector<double>{norm1, norm2});
              break;
            case PaScheme::kWsrmAvgSnr:
              split = wsrm_avg_snr(config.wsrm_weights, snr1, snr2);
              break;
            case PaScheme::kWsrmInst:
              split = wsrm_instantaneous(config.wsrm_weights,
                                         averaged_scalars(st1, st2, snr1, snr2));
              break;
            default:
              break;
          }
          const auto [r1, r2] = dl_pair_rates(st1, st2, split, snr1, snr2);
          s.rate1 = r1;
          s.rate2 = r2;
          s.sum_rate = r1 + r2;
        }
        samples[out++] = s;
      }
    }
  };

  int threads = config.threads > 0
                    ? config.threads
                    : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<int>(threads, config.drops);
  if (threads <= 1) {
    for (int d = 0; d < config.drops; ++d) run_drop(d);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (int d = next.fetch_add(1); d < config.drops; d = next.fetch_add(1))
          run_drop(d);
      });
    }
    for (auto& th : pool) th.join();
  }
  return samples;
}

SeSummary summarize(const std::vector<double>& sum_rates) {
  if (sum_rates.empty()) throw ConfigError("summarize: empty sample set");
  SeSummary s;
  s.count = static_cast<int>(sum_rates.size());
  double acc = 0.0;
  for (double v : sum_rates) acc += v;
  s.mean = acc / s.count;

  std::vector<double> sorted = sum_rates;
  std::sort(sorted.begin(), sorted.end());
  if (sorted.size() == 1) {
    s.outage5 = sorted[0];
  } else {
    // linear interpolation between order statistics at p = 0.05
    const double h = 0.05 * (sorted.size() - 1);
    const size_t lo = static_cast<size_t>(std::floor(h));
    const size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = h - lo;
    s.outage5 = sorted[lo] + frac * (sorted[hi] - sorted[lo]);
  }
  return s;
}

std::vector<double> sum_rates_of(const std::vector<SeSample>& samples,
                                 Waveform waveform, PaScheme scheme) {
  std::vector<double> rates;
  for (const SeSample& s : samples)
    if (s.waveform == waveform && s.scheme == scheme) rates.push_back(s.sum_rate);
  return rates;
}

}  // namespace ddnoma
