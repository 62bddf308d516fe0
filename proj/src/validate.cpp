#include "ddnoma/validate.hpp"

#include <cmath>

#include "ddnoma/channel.hpp"
#include "ddnoma/equalizer.hpp"
#include "ddnoma/ldpc.hpp"
#include "ddnoma/power_alloc.hpp"
#include "ddnoma/qam.hpp"
#include "ddnoma/rng.hpp"
#include "ddnoma/sinr.hpp"
#include "ddnoma/transforms.hpp"

namespace ddnoma {

namespace {

GridSpec grid_of(int m, int n, Waveform wf) {
  GridSpec g;
  g.delay_bins = m;
  g.doppler_bins = n;
  g.waveform = wf;
  return g;
}

bool check_unitarity() {
  for (const Waveform wf : {Waveform::kOtfs, Waveform::kOfdm}) {
    const auto mod = build_modulation_matrix(grid_of(8, 4, wf));
    const double err =
        (mod.a * mod.a.adjoint() - Eigen::MatrixXcd::Identity(32, 32)).norm();
    if (err > 1e-10 * 32) return false;
  }
  return true;
}

bool check_round_trips() {
  Rng rng(1);
  Eigen::VectorXcd d(32);
  for (int i = 0; i < 32; ++i) d(i) = rng.cgauss();
  const auto mod = build_modulation_matrix(grid_of(8, 4, Waveform::kOtfs));
  const Eigen::VectorXcd s = modulate(mod, d, 4.0);
  if ((mod.a.adjoint() * s / 2.0 - d).norm() > 1e-10 * d.norm()) return false;
  const auto rt = remove_cyclic_prefix(add_cyclic_prefix(s, 5), 5);
  return (rt - s).norm() == 0.0;
}

bool check_channel_identities() {
  const GridSpec g = grid_of(2, 2, Waveform::kOtfs);
  PathSet dopp;
  dopp.paths.push_back({Cx{1.0, 0.0}, 0, 1});
  const Eigen::MatrixXcd h = build_channel_matrix(g, dopp).dense();
  return std::abs(h(1, 1) - Cx{0.0, 1.0}) < 1e-12 &&
         std::abs(h(2, 2) + Cx{1.0, 0.0}) < 1e-12;
}

bool check_equalizer_agreement() {
  const GridSpec g = grid_of(4, 2, Waveform::kOtfs);
  const WaveformTransform tf(g);
  const auto ch = build_channel_matrix(g, sample_eva_channel(g, 100, 5.9e9, 5));
  const auto dense =
      stats_from_products(mmse_products_dl(ch.dense(), tf.dense(), 1.0, 20.0));
  const LmmseSolver solver(gram_single(ch.h, 1.0, 0.05), ch.h);
  const auto fast = solver.symbol_stats(tf);
  return (fast.desired_gain - dense.desired_gain).norm() < 1e-9 &&
         (fast.row_energy - dense.row_energy).norm() < 1e-9 &&
         (fast.noise_energy - dense.noise_energy).norm() < 1e-9;
}

bool check_sic_ordering() {
  const GridSpec g = grid_of(4, 2, Waveform::kOtfs);
  const WaveformTransform tf(g);
  for (int t = 0; t < 20; ++t) {
    const auto ch = build_channel_matrix(g, sample_eva_channel(g, 200, 5.9e9, 40 + t));
    const auto stats =
        stats_from_products(mmse_products_dl(ch.dense(), tf.dense(), 0.3, 50.0));
    const auto rep = sinr_dl(stats, PowerSplit{{0.7, 0.3}, 1.0}, 1.0, 0.02, 1);
    for (Eigen::Index j = 0; j < rep.pre_sic.size(); ++j)
      if (rep.post_sic(j) < rep.pre_sic(j)) return false;
  }
  return true;
}

bool check_power_allocation() {
  const auto ftpa = ftpa_avg_snr({31.62, 316.2});
  if (std::abs(ftpa.fractions[0] - 0.9091) > 1e-4) return false;
  const auto wsrm = wsrm_avg_snr({0.6, 0.4}, 31.62, 316.2);
  return wsrm.fractions[0] == 1.0 && wsrm.fractions[1] == 0.0;
}

bool check_fec_chain() {
  const LdpcCode code = LdpcCode::wlan_648_r23();
  Rng rng(9);
  for (const QamOrder q : {QamOrder::kQpsk, QamOrder::k16Qam, QamOrder::k64Qam}) {
    const QamConstellation c(q);
    std::vector<uint8_t> msg(432);
    for (auto& b : msg) b = rng.next_u64() & 1u;
    const auto cw = code.encode(msg);
    if (!code.syndrome_ok(cw)) return false;
    std::vector<uint8_t> padded = cw;
    while (padded.size() % c.bits_per_symbol()) padded.push_back(0);
    const auto sym = qam_map(padded, c);
    const Eigen::VectorXd llr =
        qam_llr(sym, Eigen::VectorXd::Constant(sym.size(), 0.1), c);
    std::vector<double> cw_llr(648);
    for (int i = 0; i < 648; ++i) cw_llr[i] = llr(i);
    const auto res = ldpc_decode_minsum(code, cw_llr, 50);
    if (!res.converged || res.codeword != cw) return false;
  }
  return true;
}

}  // namespace

std::vector<std::pair<std::string, bool>> run_validation() {
  return {
      {"modulation-matrix-unitarity", check_unitarity()},
      {"modulate-and-cp-round-trips", check_round_trips()},
      {"channel-matrix-identities", check_channel_identities()},
      {"streaming-equalizer-vs-dense", check_equalizer_agreement()},
      {"post-sic-dominates-pre-sic", check_sic_ordering()},
      {"pinned-power-allocations", check_power_allocation()},
      {"noiseless-fec-chain", check_fec_chain()},
  };
}

}  // namespace ddnoma
