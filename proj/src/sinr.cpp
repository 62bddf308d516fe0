#include "ddnoma/sinr.hpp"

#include <cmath>

#include "ddnoma/rng.hpp"

namespace ddnoma {

Eigen::VectorXcd superpose(const std::vector<Eigen::VectorXcd>& data,
                           const PowerSplit& split, const ModulationMatrix& mod) {
  split.validate();
  if (static_cast<int>(data.size()) != split.users())
    throw ShapeError("superpose: user count mismatch");
  const Eigen::Index mn = mod.a.rows();
  Eigen::VectorXcd mix = Eigen::VectorXcd::Zero(mn);
  for (size_t i = 0; i < data.size(); ++i) {
    if (data[i].size() != mn) throw ShapeError("superpose: data length mismatch");
    mix += std::sqrt(split.fractions[i] * split.total_power_w) * data[i];
  }
  return mod.a * mix;
}

Eigen::VectorXcd ul_aggregate(const std::vector<const SpMat*>& channels,
                              const std::vector<Eigen::VectorXcd>& tx,
                              double noise_var, uint64_t seed) {
  if (channels.empty() || channels.size() != tx.size())
    throw ShapeError("ul_aggregate: channel/signal count mismatch");
  const Eigen::Index mn = channels[0]->rows();
  if (noise_var < 0.0) throw ConfigError("ul_aggregate: negative noise variance");
  Eigen::VectorXcd r = Eigen::VectorXcd::Zero(mn);
  for (size_t i = 0; i < channels.size(); ++i) {
    if (channels[i]->rows() != mn || tx[i].size() != mn)
      throw ShapeError("ul_aggregate: grid mismatch across users");
    r += (*channels[i]) * tx[i];
  }
  if (noise_var > 0.0) {
    Rng rng(seed);
    const double sigma = std::sqrt(noise_var);
    for (Eigen::Index i = 0; i < r.size(); ++i) r(i) += sigma * rng.cgauss();
  }
  return r;
}

SinrReport sinr_dl(const LmmseSymbolStats& stats, const PowerSplit& split,
                   double total_power_w, double noise_var, int user) {
  split.validate();
  if (user < 0 || user >= split.users()) throw ConfigError("sinr_dl: bad user index");
  const Eigen::Index mn = stats.row_energy.size();
  const double p = total_power_w;
  const double beta_i = split.fractions[user];

  double beta_others_pre = 0.0;
  double beta_others_post = 0.0;
  for (int k = 0; k < split.users(); ++k) {
    if (k == user) continue;
    beta_others_pre += split.fractions[k];
    if (k > user) beta_others_post += split.fractions[k];
  }

  SinrReport rep;
  rep.user = user;
  rep.pre_sic.resize(mn);
  rep.post_sic.resize(mn);
  for (Eigen::Index j = 0; j < mn; ++j) {
    const double desired = beta_i * p * std::norm(stats.desired_gain(j));
    const double isi = beta_i * p * (stats.row_energy(j) - std::norm(stats.desired_gain(j)));
    const double noma_full = beta_others_pre * p * stats.row_energy(j);
    const double noma_post = beta_others_post * p * stats.row_energy(j);
    const double noise = noise_var * stats.noise_energy(j);
    const double isi_clamped = std::max(isi, 0.0);
    rep.pre_sic(j) = desired > 0.0 ? desired / (isi_clamped + noma_full + noise) : 0.0;
    rep.post_sic(j) = desired > 0.0 ? desired / (isi_clamped + noma_post + noise) : 0.0;
  }
  return rep;
}

SinrReport sinr_ul(const LmmseSymbolStats& stats, const std::vector<double>& powers_w,
                   double noise_var, int user) {
  if (user < 0 || user >= static_cast<int>(powers_w.size()))
    throw ConfigError("sinr_ul: bad user index");
  if (static_cast<int>(stats.cross_energy.size()) < user)
    throw ShapeError("sinr_ul: missing cross-channel energies");
  const Eigen::Index mn = stats.row_energy.size();
  const double p_i = powers_w[user];

  SinrReport rep;
  rep.user = user;
  rep.pre_sic.resize(mn);
  rep.post_sic.resize(mn);
  for (Eigen::Index j = 0; j < mn; ++j) {
    const double desired = p_i * std::norm(stats.desired_gain(j));
    const double isi =
        std::max(p_i * (stats.row_energy(j) - std::norm(stats.desired_gain(j))), 0.0);
    double noma = 0.0;
    for (int k = 0; k < user; ++k) noma += powers_w[k] * stats.cross_energy[k](j);
    const double noise = noise_var * stats.noise_energy(j);
    const double v = desired > 0.0 ? desired / (isi + noma + noise) : 0.0;
    rep.pre_sic(j) = v;
    rep.post_sic(j) = v;
  }
  return rep;
}

double symbol_rate_bps_hz(const Eigen::VectorXd& sinr) {
  if (sinr.size() == 0) return 0.0;
  double acc = 0.0;
  for (Eigen::Index j = 0; j < sinr.size(); ++j) acc += std::log2(1.0 + sinr(j));
  return acc / static_cast<double>(sinr.size());
}

double dl_sum_rate(const std::vector<SinrReport>& reports) {
  double rate = 0.0;
  for (const auto& rep : reports) rate += symbol_rate_bps_hz(rep.post_sic);
  return rate;
}

double ul_sum_rate(const std::vector<SinrReport>& reports) { return dl_sum_rate(reports); }

}  // namespace ddnoma
