// Acceptance suite: one numbered criterion per run (or all), one PASS/FAIL
// line each. Criteria 7 and 8 are the slow table-scale reproductions.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "ddnoma/channel.hpp"
#include "ddnoma/csv.hpp"
#include "ddnoma/equalizer.hpp"
#include "ddnoma/ldpc.hpp"
#include "ddnoma/link.hpp"
#include "ddnoma/power_alloc.hpp"
#include "ddnoma/qam.hpp"
#include "ddnoma/rng.hpp"
#include "ddnoma/sinr.hpp"
#include "ddnoma/system.hpp"
#include "ddnoma/transforms.hpp"

using namespace ddnoma;

namespace {

struct CheckList {
  bool all_ok = true;
  std::ostringstream detail;

  void expect(bool ok, const std::string& what) {
    all_ok = all_ok && ok;
    detail << "    [" << (ok ? "ok" : "FAIL") << "] " << what << '\n';
  }
};

double db(double lin) { return 10.0 * std::log10(lin); }
double db_to_lin(double v) { return std::pow(10.0, v / 10.0); }

GridSpec grid_of(int m, int n, Waveform wf) {
  GridSpec g;
  g.delay_bins = m;
  g.doppler_bins = n;
  g.waveform = wf;
  g.cp_len = default_cp_len(g);
  return g;
}

GridSpec paper_grid(Waveform wf) { return grid_of(256, 16, wf); }

// ---------------------------------------------------------------------------
// 1. unitarity and round trips at paper scale, under 10 s
bool criterion_1(CheckList& c) {
  const auto t0 = std::chrono::steady_clock::now();

  for (const Waveform wf : {Waveform::kOtfs, Waveform::kOfdm}) {
    const GridSpec g = paper_grid(wf);
    const WaveformTransform tf(g);
    const int mn = g.frame_size();

    // || A'A - I ||_F accumulated column by column through the transforms
    double err2 = 0.0;
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(mn);
    for (int j = 0; j < mn; ++j) {
      e(j) = 1.0;
      Eigen::VectorXcd g2 = tf.apply_adjoint(tf.apply(e));
      g2(j) -= 1.0;
      err2 += g2.squaredNorm();
      e(j) = 0.0;
    }
    const double err = std::sqrt(err2);
    c.expect(err <= 1e-10 * mn,
             to_string(wf) + " unitarity at M=256,N=16: " + csv_num(err));

    // modulate / demodulate round trip through the same operators
    Rng rng(17);
    Eigen::VectorXcd d(mn);
    for (int i = 0; i < mn; ++i) d(i) = rng.cgauss();
    const Eigen::VectorXcd s = tf.apply(std::sqrt(4.0) * d);
    const double rt = (tf.apply_adjoint(s) / 2.0 - d).norm() / d.norm();
    c.expect(rt <= 1e-10, to_string(wf) + " modulate round trip: " + csv_num(rt));
    c.expect(std::abs(s.squaredNorm() - 4.0 * d.squaredNorm()) <=
                 1e-9 * s.squaredNorm(),
             to_string(wf) + " modulate norm preservation");
  }

  // dense matrix unitarity at MN = 1024 plus dense-vs-transform agreement
  {
    const GridSpec g = grid_of(64, 16, Waveform::kOtfs);
    const auto mod = build_modulation_matrix(g);
    const double err =
        (mod.a * mod.a.adjoint() - Eigen::MatrixXcd::Identity(1024, 1024)).norm();
    c.expect(err <= 1e-10 * 1024, "dense unitarity at M=64,N=16: " + csv_num(err));

    const WaveformTransform tf(g);
    Rng rng(3);
    Eigen::VectorXcd x(1024);
    for (int i = 0; i < 1024; ++i) x(i) = rng.cgauss();
    c.expect((tf.apply(x) - mod.a * x).norm() <= 1e-9,
             "transform matches dense A at M=64,N=16");
  }

  // cyclic prefix round trip, bit identical
  Rng rng(5);
  Eigen::VectorXcd v(4096);
  for (int i = 0; i < 4096; ++i) v(i) = rng.cgauss();
  const auto rt = remove_cyclic_prefix(add_cyclic_prefix(v, 10), 10);
  c.expect((rt - v).norm() == 0.0, "CP round trip exact");

  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.expect(secs < 10.0, "runtime " + csv_num(secs) + " s < 10 s");
  return c.all_ok;
}

// ---------------------------------------------------------------------------
// 2. LMMSE matrices vs normal-equation Wiener filters; formula SINR vs
// empirical SINR, small instances
bool criterion_2(CheckList& c) {
  const auto t0 = std::chrono::steady_clock::now();
  Rng seeder(11);

  // (a) dense products against the brute-force Wiener solutions
  double worst_dl = 0.0, worst_ul = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const GridSpec g = grid_of(4, 4, trial % 2 ? Waveform::kOfdm : Waveform::kOtfs);
    const WaveformTransform tf(g);
    const Eigen::MatrixXcd a = tf.dense();
    const auto ch1 = build_channel_matrix(
        g, sample_eva_channel(g, 150.0, 5.9e9, seeder.next_u64()));
    const auto ch2 = build_channel_matrix(
        g, sample_eva_channel(g, 150.0, 5.9e9, seeder.next_u64()));
    const int mn = 16;
    const double beta = 0.8, snr1 = 31.62, snr2 = 316.2;

    {
      const auto prod = mmse_products_dl(ch1.dense(), a, beta, snr1);
      const Eigen::MatrixXcd f = ch1.dense() * a;
      const Eigen::MatrixXcd r_rr =
          f * f.adjoint() + (1.0 / snr1) * Eigen::MatrixXcd::Identity(mn, mn);
      const Eigen::MatrixXcd r_tr = beta * f.adjoint();
      const Eigen::MatrixXcd w = r_rr.ldlt().solve(r_tr.adjoint()).adjoint();
      worst_dl = std::max(worst_dl,
                          (prod.c - w / std::sqrt(beta)).norm() / w.norm());
    }
    {
      const auto prod =
          mmse_products_ul({ch1.dense(), ch2.dense()}, a, {snr1, snr2}, 1);
      const Eigen::MatrixXcd f1 = ch1.dense() * a;
      const Eigen::MatrixXcd f2 = ch2.dense() * a;
      const Eigen::MatrixXcd r_rr = snr2 * f2 * f2.adjoint() +
                                    snr1 * f1 * f1.adjoint() +
                                    Eigen::MatrixXcd::Identity(mn, mn);
      const Eigen::MatrixXcd r_tr = std::sqrt(snr2) * f2.adjoint();
      const Eigen::MatrixXcd w = r_rr.ldlt().solve(r_tr.adjoint()).adjoint();
      worst_ul = std::max(worst_ul,
                          (prod.c - std::sqrt(snr2) * w).norm() / prod.c.norm());
    }
  }
  c.expect(worst_dl <= 1e-8, "downlink Wiener agreement: " + csv_num(worst_dl));
  c.expect(worst_ul <= 1e-8, "uplink Wiener agreement: " + csv_num(worst_ul));

  // (b) formula SINR vs Monte-Carlo SINR over 1e5 draws
  {
    const GridSpec g = grid_of(2, 2, Waveform::kOtfs);
    const WaveformTransform tf(g);
    const auto ch = build_channel_matrix(g, sample_eva_channel(g, 150.0, 5.9e9, 23));
    const PowerSplit split{{0.7, 0.3}, 1.0};
    const double snr1 = 31.62;
    const auto prod = mmse_products_dl(ch.dense(), tf.dense(), 0.7, snr1);
    const auto rep = sinr_dl(stats_from_products(prod), split, 1.0, 1.0 / snr1, 0);

    Rng rng(71);
    const int draws = 100000;
    const int mn = 4;
    Eigen::VectorXd err = Eigen::VectorXd::Zero(mn);
    Eigen::VectorXcd d1(mn), d2(mn), noise(mn);
    for (int t = 0; t < draws; ++t) {
      for (int i = 0; i < mn; ++i) {
        d1(i) = rng.cgauss();
        d2(i) = rng.cgauss();
        noise(i) = rng.cgauss();
      }
      const Eigen::VectorXcd dhat = std::sqrt(0.7) * (prod.b * d1) +
                                    std::sqrt(0.3) * (prod.b * d2) +
                                    prod.c * (std::sqrt(1.0 / snr1) * noise);
      for (int j = 0; j < mn; ++j)
        err(j) += std::norm(dhat(j) - std::sqrt(0.7) * prod.b(j, j) * d1(j));
    }
    double worst_gap = 0.0;
    for (int j = 0; j < mn; ++j) {
      const double emp = 0.7 * std::norm(prod.b(j, j)) / (err(j) / draws);
      worst_gap = std::max(worst_gap, std::abs(db(rep.pre_sic(j)) - db(emp)));
    }
    c.expect(worst_gap <= 0.2,
             "downlink empirical SINR gap " + csv_num(worst_gap) + " dB");
  }
  {
    const GridSpec g = grid_of(2, 2, Waveform::kOtfs);
    const WaveformTransform tf(g);
    const auto ch1 = build_channel_matrix(g, sample_eva_channel(g, 90, 5.9e9, 31));
    const auto ch2 = build_channel_matrix(g, sample_eva_channel(g, 90, 5.9e9, 32));
    const std::vector<double> snrs = {5.0, 50.0};
    const auto up = mmse_products_ul({ch1.dense(), ch2.dense()}, tf.dense(), snrs, 1);
    const auto rep = sinr_ul(stats_from_products(up), snrs, 1.0, 1);

    Rng rng(73);
    const int draws = 100000;
    Eigen::VectorXd err = Eigen::VectorXd::Zero(4);
    Eigen::VectorXcd d1(4), d2(4), noise(4);
    for (int t = 0; t < draws; ++t) {
      for (int i = 0; i < 4; ++i) {
        d1(i) = rng.cgauss();
        d2(i) = rng.cgauss();
        noise(i) = rng.cgauss();
      }
      const Eigen::VectorXcd dhat = std::sqrt(snrs[1]) * (up.b * d2) +
                                    std::sqrt(snrs[0]) * (up.cross[0] * d1) +
                                    up.c * noise;
      for (int j = 0; j < 4; ++j)
        err(j) += std::norm(dhat(j) - std::sqrt(snrs[1]) * up.b(j, j) * d2(j));
    }
    double worst_gap = 0.0;
    for (int j = 0; j < 4; ++j) {
      const double emp = snrs[1] * std::norm(up.b(j, j)) / (err(j) / draws);
      worst_gap = std::max(worst_gap, std::abs(db(rep.post_sic(j)) - db(emp)));
    }
    c.expect(worst_gap <= 0.2,
             "uplink empirical SINR gap " + csv_num(worst_gap) + " dB");
  }

  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.expect(secs < 120.0, "runtime " + csv_num(secs) + " s < 2 min");
  return c.all_ok;
}

// ---------------------------------------------------------------------------
// 3. post-SIC never below pre-SIC, 1000 random instances
bool criterion_3(CheckList& c) {
  Rng rng(13);
  int violations = 0;
  for (int t = 0; t < 1000; ++t) {
    const GridSpec g = grid_of(4, 2, t % 2 ? Waveform::kOfdm : Waveform::kOtfs);
    const WaveformTransform tf(g);
    const auto ch =
        build_channel_matrix(g, sample_eva_channel(g, 400.0, 5.9e9, rng.next_u64()));
    const double b1 = 0.5 + 0.49 * rng.uniform();
    const PowerSplit split{{b1, 1.0 - b1}, 1.0};
    for (int user = 0; user < 2; ++user) {
      const double snr = user == 0 ? 10.0 : 100.0;
      const auto stats = stats_from_products(
          mmse_products_dl(ch.dense(), tf.dense(), split.fractions[user], snr));
      const auto rep = sinr_dl(stats, split, 1.0, 1.0 / snr, user);
      for (Eigen::Index j = 0; j < rep.pre_sic.size(); ++j)
        if (rep.post_sic(j) < rep.pre_sic(j)) ++violations;
    }
  }
  c.expect(violations == 0,
           "violations over 1000 instances: " + std::to_string(violations));
  return c.all_ok;
}

// ---------------------------------------------------------------------------
// 4. WSRM optimizers against grid-search argmax oracles
bool criterion_4(CheckList& c) {
  // closed-form average-SNR WSRM vs the grid argmax of the weighted AWGN rate
  // it optimizes (w1 > w2, Gamma1 < Gamma2)
  Rng rng(19);
  int bad_avg = 0;
  for (int t = 0; t < 1000; ++t) {
    const double w2 = 0.05 + 0.44 * rng.uniform();
    const double w1 = 1.0 - w2;
    const double g1 = 0.2 + 60.0 * rng.uniform();
    const double g2 = g1 * (1.05 + 30.0 * rng.uniform());
    const auto split = wsrm_avg_snr({w1, w2}, g1, g2);

    double best_x = 0.0, best = -1e300;
    for (int i = 0; i <= 1000; ++i) {
      const double b2 = i / 1000.0;
      const double user_a = (1.0 - b2) * g2 / (1.0 + b2 * g2);
      const double r = w1 * std::log2(1.0 + user_a) + w2 * std::log2(1.0 + b2 * g1);
      if (r > best + 1e-12) {
        best = r;
        best_x = b2;
      }
    }
    if (std::abs(split.fractions[1] - best_x) > 1e-3) ++bad_avg;
  }
  c.expect(bad_avg == 0, "avg-SNR WSRM grid mismatches: " + std::to_string(bad_avg));

  // numeric instantaneous WSRM vs grid argmax of the exact rate expression
  int bad_inst = 0;
  for (int t = 0; t < 1000; ++t) {
    InstSinrScalars s;
    s.g1_desired = 20.0 * rng.uniform();
    s.g1_isi = 2.0 * rng.uniform();
    s.g1_noma = s.g1_desired + s.g1_isi;
    s.p1_noise = 0.5 * rng.uniform() + 1e-3;
    s.g2_desired = 200.0 * rng.uniform();
    s.g2_isi = 2.0 * rng.uniform();
    s.p2_noise = 0.05 * rng.uniform() + 1e-4;
    const WsrmWeights w{0.6, 0.4};
    const auto split = wsrm_instantaneous(w, s);

    double best_x = 0.0, best = -1e300;
    for (int i = 0; i <= 1000; ++i) {
      const double b2 = i / 1000.0;
      const double r = wsrm_inst_rate(s, w, b2);
      if (r > best + 1e-12) {
        best = r;
        best_x = b2;
      }
    }
    if (std::abs(split.fractions[1] - best_x) > 1e-3) ++bad_inst;
  }
  c.expect(bad_inst == 0,
           "instantaneous WSRM grid mismatches: " + std::to_string(bad_inst));

  // paper's operating point: full power to the weak user
  const auto pinned = wsrm_avg_snr({0.6, 0.4}, db_to_lin(15.0), db_to_lin(25.0));
  c.expect(pinned.fractions[0] == 1.0 && pinned.fractions[1] == 0.0,
           "15/25 dB, w=(0.6,0.4) gives beta=(1,0)");
  return c.all_ok;
}

// ---------------------------------------------------------------------------
// 5. FTPA pinned value
bool criterion_5(CheckList& c) {
  const auto split = ftpa_avg_snr({db_to_lin(15.0), db_to_lin(25.0)});
  c.expect(std::abs(split.fractions[0] - 0.9091) <= 1e-4,
           "beta1 = " + csv_num(split.fractions[0]));
  c.expect(std::abs(split.fractions[1] - 0.0909) <= 1e-4,
           "beta2 = " + csv_num(split.fractions[1]));
  return c.all_ok;
}

// ---------------------------------------------------------------------------
// 6. FEC: noiseless chains exact; BLER waterfall strictly decreasing
bool criterion_6(CheckList& c) {
  const LdpcCode code = LdpcCode::wlan_648_r23();
  Rng rng(29);

  int bad = 0;
  for (const QamOrder q : {QamOrder::kQpsk, QamOrder::k16Qam, QamOrder::k64Qam}) {
    const QamConstellation qc(q);
    for (int t = 0; t < 1000; ++t) {
      std::vector<uint8_t> msg(432);
      for (auto& b : msg) b = rng.next_u64() & 1u;
      const auto cw = code.encode(msg);
      std::vector<uint8_t> padded = cw;
      while (padded.size() % qc.bits_per_symbol()) padded.push_back(0);
      const auto sym = qam_map(padded, qc);
      const Eigen::VectorXd llr =
          qam_llr(sym, Eigen::VectorXd::Constant(sym.size(), 0.5), qc);
      std::vector<double> cw_llr(648);
      for (int i = 0; i < 648; ++i) cw_llr[i] = llr(i);
      const auto res = ldpc_decode_minsum(code, cw_llr, 50);
      if (!res.converged || res.codeword != cw) ++bad;
    }
  }
  c.expect(bad == 0, "noiseless decode failures: " + std::to_string(bad));

  const QamConstellation qpsk(QamOrder::kQpsk);
  auto bler_at = [&](double es_n0_db) {
    const double sigma2 = std::pow(10.0, -es_n0_db / 10.0);
    int errors = 0;
    const int codewords = 2000;
    for (int t = 0; t < codewords; ++t) {
      std::vector<uint8_t> msg(432);
      for (auto& b : msg) b = rng.next_u64() & 1u;
      const auto cw = code.encode(msg);
      Eigen::VectorXcd sym = qam_map(cw, qpsk);
      for (Eigen::Index i = 0; i < sym.size(); ++i)
        sym(i) += std::sqrt(sigma2) * rng.cgauss();
      const Eigen::VectorXd llr =
          qam_llr(sym, Eigen::VectorXd::Constant(sym.size(), sigma2), qpsk);
      std::vector<double> cw_llr(648);
      for (int i = 0; i < 648; ++i) cw_llr[i] = llr(i);
      const auto res = ldpc_decode_minsum(code, cw_llr, 50);
      for (int i = 0; i < 432; ++i)
        if (res.codeword[i] != msg[i]) {
          ++errors;
          break;
        }
    }
    return static_cast<double>(errors) / codewords;
  };

  const double b2 = bler_at(2.0);
  const double b3 = bler_at(3.0);
  const double b4 = bler_at(4.0);
  c.expect(b2 > b3 && b3 > b4,
           "BLER sweep 2/3/4 dB: " + csv_num(b2) + " > " + csv_num(b3) + " > " +
               csv_num(b4));
  return c.all_ok;
}

// ---------------------------------------------------------------------------
// 7. Table-II-style mean / outage spectral efficiency reproduction
bool criterion_7(CheckList& c) {
  ScenarioConfig cfg;
  cfg.grid = paper_grid(Waveform::kOtfs);
  cfg.drops = 100;
  cfg.seed = 2024;
  cfg.threads = 2;
  cfg.fixed_fractions = {0.7, 0.3};
  cfg.validate();

  const auto samples = run_system_mc(cfg);

  auto mean_of = [&](Waveform wf, PaScheme s) {
    return summarize(sum_rates_of(samples, wf, s)).mean;
  };
  auto outage_of = [&](Waveform wf, PaScheme s) {
    return summarize(sum_rates_of(samples, wf, s)).outage5;
  };

  const double oma_otfs = mean_of(Waveform::kOtfs, PaScheme::kOma);
  c.expect(std::abs(oma_otfs - 4.7618) <= 0.15 * 4.7618,
           "OMA-OTFS mean SE " + csv_num(oma_otfs) + " vs 4.7618 +-15%");

  const double fixed_otfs = mean_of(Waveform::kOtfs, PaScheme::kFixed);
  c.expect(std::abs(fixed_otfs - 5.9499) <= 0.15 * 5.9499,
           "Fixed-I NOMA-OTFS mean SE " + csv_num(fixed_otfs) + " vs 5.9499 +-15%");

  c.expect(fixed_otfs > oma_otfs, "Fixed-I NOMA mean > OMA mean (OTFS)");

  for (const PaScheme s : {PaScheme::kFtpaAvgSnr, PaScheme::kFtpaChannelNorm}) {
    const double ot = outage_of(Waveform::kOtfs, s);
    const double of = outage_of(Waveform::kOfdm, s);
    c.expect(ot > of, to_string(s) + " 5% outage: OTFS " + csv_num(ot) + " > OFDM " +
                          csv_num(of));
  }

  for (const PaScheme s : {PaScheme::kFixed, PaScheme::kFtpaAvgSnr,
                           PaScheme::kFtpaChannelNorm, PaScheme::kWsrmInst}) {
    const double ot = mean_of(Waveform::kOtfs, s);
    const double of = mean_of(Waveform::kOfdm, s);
    c.expect(of > ot, to_string(s) + " mean SE: OFDM " + csv_num(of) + " > OTFS " +
                          csv_num(ot));
  }
  return c.all_ok;
}

// ---------------------------------------------------------------------------
// 8. Table-III/IV-style coded link reproduction
bool criterion_8(CheckList& c) {
  c.expect(std::abs(throughput(2.0 / 3.0, {2, 6}) - 16.0 / 3.0) < 1e-12,
           "throughput formula (R=2/3, K=2,6) = 5.33");

  LinkConfig dl;
  dl.grid = paper_grid(Waveform::kOtfs);
  dl.direction = Direction::kDownlink;
  dl.split = PowerSplit{{0.9, 0.1}, 1.0};
  dl.frames = 170;  // 170 * 12 QPSK codewords > 2000 per user
  dl.threads = 2;

  {
    LinkConfig cfg = dl;
    cfg.snr1_db = 15.0;
    cfg.snr2_db = 25.0;
    cfg.mod1 = QamOrder::kQpsk;
    cfg.mod2 = QamOrder::kQpsk;
    const auto out = run_dl_link(cfg, 81);
    c.expect(out.bler1 <= 0.1, "DL 15/25 OTFS QPSK/QPSK Pe1 = " + csv_num(out.bler1));
    c.expect(out.bler2 <= 0.1, "DL 15/25 OTFS QPSK/QPSK Pe2 = " + csv_num(out.bler2));
  }
  {
    LinkConfig cfg = dl;
    cfg.snr1_db = 15.0;
    cfg.snr2_db = 35.0;
    cfg.mod1 = QamOrder::kQpsk;
    cfg.mod2 = QamOrder::k64Qam;
    const auto out = run_dl_link(cfg, 83);
    c.expect(std::abs(out.goodput_bps_hz - 5.10) <= 0.1 * 5.10,
             "DL 15/35 OTFS QPSK/64QAM goodput = " + csv_num(out.goodput_bps_hz) +
                 " vs 5.10 +-10%");
  }

  LinkConfig ul;
  ul.grid = paper_grid(Waveform::kOtfs);
  ul.direction = Direction::kUplink;
  ul.snr1_db = 10.0;
  ul.snr2_db = 40.0;
  ul.mod1 = QamOrder::kQpsk;
  ul.mod2 = QamOrder::k64Qam;
  ul.frames = 170;
  ul.threads = 2;
  {
    const auto out = run_ul_link(ul, 85);
    c.expect(out.bler1 <= 0.1, "UL 10/40 OTFS Pe1 = " + csv_num(out.bler1));
  }
  {
    LinkConfig cfg = ul;
    cfg.grid.waveform = Waveform::kOfdm;
    const auto out = run_ul_link(cfg, 85);
    c.expect(out.bler1 > 0.1, "UL 10/40 OFDM Pe1 = " + csv_num(out.bler1) + " > 0.1");
  }
  return c.all_ok;
}

// ---------------------------------------------------------------------------
// 9. byte-identical CSV across reruns and thread counts, via the CLI
bool criterion_9(CheckList& c) {
#ifndef DDNOMA_CLI_PATH
  c.expect(false, "CLI path not configured");
  return false;
#else
  const std::string cli = DDNOMA_CLI_PATH;
  const std::string dir = "acceptance_c9_tmp";
  std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str());

  {
    std::ofstream cfg(dir + "/scenario.ini");
    cfg << "[grid]\ndelay_bins = 64\ndoppler_bins = 8\n";
    cfg << "[system-se]\ndrops = 8\nseed = 7\n";
    cfg << "[link-bler]\nframes = 3\nsnr_db = 12, 22\nmod1 = qpsk\nmod2 = qpsk\n";
  }

  auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  auto run = [&](const std::string& args) {
    const std::string cmd = cli + " " + args + " > /dev/null 2>&1";
    return std::system(cmd.c_str()) == 0;
  };

  bool ok = true;
  ok &= run("system-se --config " + dir + "/scenario.ini --threads 1 --out " + dir +
            "/a");
  ok &= run("system-se --config " + dir + "/scenario.ini --threads 1 --out " + dir +
            "/b");
  ok &= run("system-se --config " + dir + "/scenario.ini --threads 2 --out " + dir +
            "/t2");
  c.expect(ok, "CLI runs succeed");
  c.expect(!slurp(dir + "/a_samples.csv").empty(), "samples CSV non-empty");
  c.expect(slurp(dir + "/a_samples.csv") == slurp(dir + "/b_samples.csv"),
           "system-se reruns byte-identical");
  c.expect(slurp(dir + "/a_samples.csv") == slurp(dir + "/t2_samples.csv"),
           "system-se thread counts byte-identical");
  c.expect(slurp(dir + "/a_summary.csv") == slurp(dir + "/t2_summary.csv"),
           "summary byte-identical");

  ok = run("link-bler --config " + dir + "/scenario.ini --seed 3 --threads 1 --out " +
           dir + "/l1.csv");
  ok &= run("link-bler --config " + dir + "/scenario.ini --seed 3 --threads 2 --out " +
            dir + "/l2.csv");
  c.expect(ok, "link-bler runs succeed");
  c.expect(!slurp(dir + "/l1.csv").empty() &&
               slurp(dir + "/l1.csv") == slurp(dir + "/l2.csv"),
           "link-bler thread counts byte-identical");

  std::system(("rm -rf " + dir).c_str());
  return c.all_ok;
#endif
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) which.push_back(std::atoi(argv[++i]));
  }
  if (which.empty()) which = {1, 2, 3, 4, 5, 6, 7, 8, 9};

  const std::vector<std::pair<std::string, std::function<bool(CheckList&)>>> table = {
      {"unitarity and round trips", criterion_1},
      {"LMMSE and SINR oracle equivalence", criterion_2},
      {"SIC monotonicity", criterion_3},
      {"WSRM optimizers vs grid search", criterion_4},
      {"FTPA pinned split", criterion_5},
      {"FEC noiseless chain and waterfall", criterion_6},
      {"Table II mean/outage SE reproduction", criterion_7},
      {"Tables III/IV coded link reproduction", criterion_8},
      {"deterministic CSV emission", criterion_9},
  };

  bool all_ok = true;
  for (int k : which) {
    if (k < 1 || k > static_cast<int>(table.size())) {
      std::cerr << "unknown criterion " << k << '\n';
      return 2;
    }
    CheckList c;
    bool ok = false;
    try {
      ok = table[k - 1].second(c);
    } catch (const std::exception& e) {
      c.detail << "    exception: " << e.what() << '\n';
      ok = false;
    }
    all_ok = all_ok && ok;
    std::cout << "criterion " << k << " [" << (ok ? "PASS" : "FAIL") << "] "
              << table[k - 1].first << '\n'
              << c.detail.str();
  }
  return all_ok ? 0 : 1;
}
