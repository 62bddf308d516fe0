#include "ddnoma/link.hpp"

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

std::vector<uint8_t> random_bits(Rng& rng, int count) {
  std::vector<uint8_t> bits(count);
  for (int i = 0; i < count; ++i) bits[i] = rng.next_u64() & 1u;
  return bits;
}

// Transmit-side coding: n_cw codewords back to back, zero padding up to the
// frame's bit capacity (padding excluded from BLER accounting).
struct CodedFrame {
  std::vector<uint8_t> message;     // n_cw * k bits
  std::vector<uint8_t> coded_bits;  // frame capacity, padded
  Eigen::VectorXcd symbols;
};

CodedFrame encode_frame(const LdpcCode& code, const QamConstellation& qc, int mn,
                        int n_cw, Rng& rng) {
  const int k = code.message_len();
  const int n = code.codeword_len();
  CodedFrame f;
  f.message = random_bits(rng, n_cw * k);
  f.coded_bits.assign(static_cast<size_t>(mn) * qc.bits_per_symbol(), 0);
  for (int cw = 0; cw < n_cw; ++cw) {
    const auto codeword = code.encode(
        std::span<const uint8_t>(f.message).subspan(static_cast<size_t>(cw) * k, k));
    std::copy(codeword.begin(), codeword.end(),
              f.coded_bits.begin() + static_cast<size_t>(cw) * n);
  }
  f.symbols = qam_map(f.coded_bits, qc);
  return f;
}

// Decodes the n_cw codewords of a frame, returns per-codeword block errors
// against the transmitted message plus the re-mapped hard codeword bits.
struct FrameDecode {
  int block_errors = 0;
  std::vector<uint8_t> codeword_bits;  // frame capacity, decoded + zero padding
};

FrameDecode decode_frame(const LdpcCode& code, const QamConstellation& qc,
                         const Eigen::VectorXcd& symbols,
                         const Eigen::VectorXd& sigma2, int n_cw,
                         std::span<const uint8_t> tx_message, int max_iter) {
  const int k = code.message_len();
  const int n = code.codeword_len();
  const Eigen::VectorXd llr = qam_llr(symbols, sigma2, qc);
  FrameDecode out;
  out.codeword_bits.assign(static_cast<size_t>(symbols.size()) * qc.bits_per_symbol(),
                           0);
  for (int cw = 0; cw < n_cw; ++cw) {
    std::vector<double> cw_llr(n);
    for (int b = 0; b < n; ++b) cw_llr[b] = llr(static_cast<Eigen::Index>(cw) * n + b);
    const LdpcDecodeResult res = ldpc_decode_minsum(code, cw_llr, max_iter);
    std::copy(res.codeword.begin(), res.codeword.end(),
              out.codeword_bits.begin() + static_cast<size_t>(cw) * n);
    bool err = false;
    for (int b = 0; b < k; ++b) {
      if (res.codeword[b] != tx_message[static_cast<size_t>(cw) * k + b]) {
        err = true;
        break;
      }
    }
    out.block_errors += err ? 1 : 0;
  }
  return out;
}

struct FrameErrors {
  int err1 = 0;
  int err2 = 0;
};

template <typename FrameFn>
LinkOutcome accumulate_frames(const LinkConfig& cfg, int n_cw1, int n_cw2,
                              uint64_t seed, FrameFn&& frame_fn) {
  std::vector<FrameErrors> per_frame(cfg.frames);
  const int threads = std::max(1, cfg.threads);
  if (threads == 1) {
    for (int f = 0; f < cfg.frames; ++f) per_frame[f] = frame_fn(derive_seed(seed, f));
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (int f = next.fetch_add(1); f < cfg.frames; f = next.fetch_add(1))
          per_frame[f] = frame_fn(derive_seed(seed, f));
      });
    }
    for (auto& th : pool) th.join();
  }

  int err1 = 0, err2 = 0;
  for (const FrameErrors& fe : per_frame) {
    err1 += fe.err1;
    err2 += fe.err2;
  }

  LinkOutcome out;
  out.frames = cfg.frames;
  out.codewords_per_frame1 = n_cw1;
  out.codewords_per_frame2 = n_cw2;
  out.bler1 = static_cast<double>(err1) / (static_cast<double>(cfg.frames) * n_cw1);
  out.bler2 = static_cast<double>(err2) / (static_cast<double>(cfg.frames) * n_cw2);
  const double rate = 2.0 / 3.0;
  out.throughput_bps_hz = throughput(
      rate, {static_cast<int>(cfg.mod1), static_cast<int>(cfg.mod2)});
  out.goodput_bps_hz =
      goodput(rate, {static_cast<int>(cfg.mod1), static_cast<int>(cfg.mod2)},
              {out.bler1, out.bler2});
  return out;
}

}  // namespace

void LinkConfig::validate() const {
  grid.validate();
  if (!(snr1_db < snr2_db))
    throw ConfigError("LinkConfig: users must be ordered with snr1 < snr2");
  if (mod1 == QamOrder::kNone || mod2 == QamOrder::kNone)
    throw ConfigError("LinkConfig: both users need a constellation");
  if (frames < 1) throw ConfigError("LinkConfig: frames must be >= 1");
  if (direction == Direction::kDownlink) {
    split.validate();
    if (split.users() != 2) throw ConfigError("LinkConfig: downlink needs 2 users");
    if (split.total_power_w != 1.0)
      throw ConfigError("LinkConfig: total power is normalized to 1");
  }
}

std::pair<double, double> avg_sinr_dl(double snr1_lin, double snr2_lin, double beta1,
                                      double beta2) {
  const double u1 = 10.0 * std::log10(beta1 * snr1_lin / (beta2 * snr1_lin + 1.0));
  const double u2 = beta2 > 0.0
                        ? 10.0 * std::log10(beta2 * snr2_lin)
                        : -std::numeric_limits<double>::infinity();
  return {u1, u2};
}

std::pair<double, double> avg_sinr_ul(double snr1_lin, double snr2_lin) {
  const double u1 = 10.0 * std::log10(snr1_lin);
  const double u2 = 10.0 * std::log10(snr2_lin / (snr1_lin + 1.0));
  return {u1, u2};
}

QamOrder select_modulation(double sinr_db, Waveform waveform) {
  const double q = waveform == Waveform::kOtfs ? 9.5 : 10.8;
  const double q16 = waveform == Waveform::kOtfs ? 15.0 : 18.0;
  const double q64 = waveform == Waveform::kOtfs ? 23.5 : 26.0;
  if (sinr_db >= q64) return QamOrder::k64Qam;
  if (sinr_db >= q16) return QamOrder::k16Qam;
  if (sinr_db >= q) return QamOrder::kQpsk;
  return QamOrder::kNone;
}

double throughput(double code_rate, const std::vector<int>& bits_per_symbol) {
  double t = 0.0;
  for (int k : bits_per_symbol) t += code_rate * k;
  return t;
}

double goodput(double code_rate, const std::vector<int>& bits_per_symbol,
               const std::vector<double>& bler) {
  if (bits_per_symbol.size() != bler.size())
    throw ShapeError("goodput: list length mismatch");
  double g = 0.0;
  for (size_t i = 0; i < bler.size(); ++i)
    g += code_rate * bits_per_symbol[i] * (1.0 - bler[i]);
  return g;
}

LinkOutcome run_dl_link(const LinkConfig& config, uint64_t seed) {
  config.validate();
  if (config.direction != Direction::kDownlink)
    throw ConfigError("run_dl_link: config direction is uplink");

  const GridSpec grid = config.grid;
  const WaveformTransform tf(grid);
  const int mn = grid.frame_size();
  const LdpcCode code = LdpcCode::wlan_648_r23();
  const QamConstellation qc1(config.mod1);
  const QamConstellation qc2(config.mod2);
  const int n_cw1 = mn * qc1.bits_per_symbol() / code.codeword_len();
  const int n_cw2 = mn * qc2.bits_per_symbol() / code.codeword_len();
  if (n_cw1 < 1 || n_cw2 < 1)
    throw ConfigError("run_dl_link: frame too small for one codeword");

  const double snr1 = db_to_lin(config.snr1_db);
  const double snr2 = db_to_lin(config.snr2_db);
  const double noise1 = 1.0 / snr1;
  const double noise2 = 1.0 / snr2;
  const double beta1 = config.split.fractions[0];
  const double beta2 = config.split.fractions[1];

  auto frame_fn = [&](uint64_t frame_seed) -> FrameErrors {
    Rng data_rng(derive_seed(frame_seed, 0));
    const CodedFrame f1 = encode_frame(code, qc1, mn, n_cw1, data_rng);
    const CodedFrame f2 = encode_frame(code, qc2, mn, n_cw2, data_rng);

    const Eigen::VectorXcd s =
        tf.apply(std::sqrt(beta1) * f1.symbols + std::sqrt(beta2) * f2.symbols);

    const PathSet paths1 =
        sample_eva_channel(grid, config.speed_mps, config.carrier_freq_hz,
                           derive_seed(frame_seed, 1));
    const PathSet paths2 =
        sample_eva_channel(grid, config.speed_mps, config.carrier_freq_hz,
                           derive_seed(frame_seed, 2));
    const ChannelRealization ch1 = build_channel_matrix(grid, paths1);
    const ChannelRealization ch2 = build_channel_matrix(grid, paths2);

    const Eigen::VectorXcd r1 =
        apply_channel(ch1.h, s, noise1, derive_seed(frame_seed, 3));
    const Eigen::VectorXcd r2 =
        apply_channel(ch2.h, s, noise2, derive_seed(frame_seed, 4));

    FrameErrors errs;

    // User 1: plain MMSE, user-2 signal treated as noise.
    {
      const LmmseSolver solver(gram_single(ch1.h, 1.0, 1.0 / snr1), ch1.h);
      const LmmseSymbolStats st = solver.symbol_stats(tf);
      const Eigen::VectorXcd d1_hat = solver.equalize(r1, tf, 1.0);
      const Eigen::VectorXd sigma2 =
          noise1 * st.noise_energy + beta2 * st.row_energy;
      errs.err1 = decode_frame(code, qc1, d1_hat, sigma2, n_cw1, f1.message,
                               config.ldpc_max_iter)
                      .block_errors;
    }

    // User 2: decode user 1 first, cancel it at codeword level, then decode
    // its own data with the reduced model.
    {
      const LmmseSolver stage1(gram_single(ch2.h, 1.0, 1.0 / snr2), ch2.h);
      const LmmseSymbolStats st1 = stage1.symbol_stats(tf);
      const Eigen::VectorXcd d12_hat = stage1.equalize(r2, tf, 1.0);
      const Eigen::VectorXd sigma12 =
          noise2 * st1.noise_energy + beta2 * st1.row_energy;
      const FrameDecode dec1 = decode_frame(code, qc1, d12_hat, sigma12, n_cw1,
                                            f1.message, config.ldpc_max_iter);

      const Eigen::VectorXcd regen =
          config.genie_sic ? f1.symbols : qam_map(dec1.codeword_bits, qc1);
      const Eigen::VectorXcd residual =
          r2 - std::sqrt(beta1) * (ch2.h * tf.apply(regen));

      const LmmseSolver stage2(gram_single(ch2.h, beta2, 1.0 / snr2), ch2.h);
      const LmmseSymbolStats st2 = stage2.symbol_stats(tf);
      const Eigen::VectorXcd d2_hat = stage2.equalize(residual, tf, std::sqrt(beta2));
      const Eigen::VectorXd sigma2v = noise2 * st2.noise_energy;
      errs.err2 = decode_frame(code, qc2, d2_hat, sigma2v, n_cw2, f2.message,
                               config.ldpc_max_iter)
                      .block_errors;
    }
    return errs;
  };

  return accumulate_frames(config, n_cw1, n_cw2, seed, frame_fn);
}

LinkOutcome run_ul_link(const LinkConfig& config, uint64_t seed) {
  config.validate();
  if (config.direction != Direction::kUplink)
    throw ConfigError("run_ul_link: config direction is downlink");

  const GridSpec grid = config.grid;
  const WaveformTransform tf(grid);
  const int mn = grid.frame_size();
  const LdpcCode code = LdpcCode::wlan_648_r23();
  const QamConstellation qc1(config.mod1);
  const QamConstellation qc2(config.mod2);
  const int n_cw1 = mn * qc1.bits_per_symbol() / code.codeword_len();
  const int n_cw2 = mn * qc2.bits_per_symbol() / code.codeword_len();
  if (n_cw1 < 1 || n_cw2 < 1)
    throw ConfigError("run_ul_link: frame too small for one codeword");

  // sigma_n^2 = 1; per-user transmit power realizes the configured SNRs.
  const double p1 = db_to_lin(config.snr1_db);
  const double p2 = db_to_lin(config.snr2_db);

  auto frame_fn = [&](uint64_t frame_seed) -> FrameErrors {
    Rng data_rng(derive_seed(frame_seed, 0));
    const CodedFrame f1 = encode_frame(code, qc1, mn, n_cw1, data_rng);
    const CodedFrame f2 = encode_frame(code, qc2, mn, n_cw2, data_rng);

    const ChannelRealization ch1 = build_channel_matrix(
        grid, sample_eva_channel(grid, config.speed_mps, config.carrier_freq_hz,
                                 derive_seed(frame_seed, 1)));
    const ChannelRealization ch2 = build_channel_matrix(
        grid, sample_eva_channel(grid, config.speed_mps, config.carrier_freq_hz,
                                 derive_seed(frame_seed, 2)));

    const Eigen::VectorXcd s1 = tf.apply(std::sqrt(p1) * f1.symbols);
    const Eigen::VectorXcd s2 = tf.apply(std::sqrt(p2) * f2.symbols);
    const Eigen::VectorXcd r =
        ul_aggregate({&ch1.h, &ch2.h}, {s1, s2}, 1.0, derive_seed(frame_seed, 3));

    FrameErrors errs;

    // Strong user decoded first with the weak user whitened as noise.
    const LmmseSolver solver2(
        gram_weighted({&ch2.h, &ch1.h}, {1.0, p1 / p2}, 1.0 / p2), ch2.h);
    const LmmseSymbolStats st2 = solver2.symbol_stats(tf, {&ch1.h});
    const Eigen::VectorXcd d2_hat = solver2.equalize(r, tf, 1.0 / std::sqrt(p2));
    const Eigen::VectorXd sigma2 =
        (st2.noise_energy + p1 * st2.cross_energy[0]) / p2;
    const FrameDecode dec2 = decode_frame(code, qc2, d2_hat, sigma2, n_cw2,
                                          f2.message, config.ldpc_max_iter);
    errs.err2 = dec2.block_errors;

    // Re-encode the decoded message, regenerate and subtract.
    Eigen::VectorXcd regen;
    if (config.genie_sic) {
      regen = f2.symbols;
    } else {
      std::vector<uint8_t> rebits(static_cast<size_t>(mn) * qc2.bits_per_symbol(), 0);
      const int k = code.message_len();
      for (int cw = 0; cw < n_cw2; ++cw) {
        const auto codeword = code.encode(std::span<const uint8_t>(dec2.codeword_bits)
                                              .subspan(static_cast<size_t>(cw) *
                                                           code.codeword_len(),
                                                       k));
        std::copy(codeword.begin(), codeword.end(),
                  rebits.begin() + static_cast<size_t>(cw) * code.codeword_len());
      }
      regen = qam_map(rebits, qc2);
    }
    const Eigen::VectorXcd residual = r - std::sqrt(p2) * (ch2.h * tf.apply(regen));

    const LmmseSolver solver1(gram_single(ch1.h, 1.0, 1.0 / p1), ch1.h);
    const LmmseSymbolStats st1 = solver1.symbol_stats(tf);
    const Eigen::VectorXcd d1_hat = solver1.equalize(residual, tf, 1.0 / std::sqrt(p1));
    const Eigen::VectorXd sigma1 = st1.noise_energy / p1;
    errs.err1 = decode_frame(code, qc1, d1_hat, sigma1, n_cw1, f1.message,
                             config.ldpc_max_iter)
                    .block_errors;
    return errs;
  };

  return accumulate_frames(config, n_cw1, n_cw2, seed, frame_fn);
}

}  // namespace ddnoma
