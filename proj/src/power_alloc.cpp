#include "ddnoma/power_alloc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ddnoma {

void PowerSplit::validate() const {
  if (fractions.empty()) throw ConfigError("PowerSplit: no users");
  double sum = 0.0;
  for (double b : fractions) {
    if (b < 0.0 || b > 1.0) throw ConfigError("PowerSplit: fraction outside [0, 1]");
    sum += b;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw ConfigError("PowerSplit: fractions sum to " + std::to_string(sum));
  if (total_power_w < 0.0) throw ConfigError("PowerSplit: negative total power");
}

std::string to_string(PaScheme s) {
  switch (s) {
    case PaScheme::kOma: return "oma";
    case PaScheme::kFixed: return "fixed";
    case PaScheme::kFtpaAvgSnr: return "ftpa_avg_snr";
    case PaScheme::kFtpaChannelNorm: return "ftpa_channel_norm";
    case PaScheme::kWsrmAvgSnr: return "wsrm_avg_snr";
    case PaScheme::kWsrmInst: return "wsrm_inst";
  }
  return "?";
}

PaScheme scheme_from_string(const std::string& s) {
  if (s == "oma") return PaScheme::kOma;
  if (s == "fixed") return PaScheme::kFixed;
  if (s == "ftpa_avg_snr") return PaScheme::kFtpaAvgSnr;
  if (s == "ftpa_channel_norm") return PaScheme::kFtpaChannelNorm;
  if (s == "wsrm_avg_snr") return PaScheme::kWsrmAvgSnr;
  if (s == "wsrm_inst") return PaScheme::kWsrmInst;
  throw ConfigError("unknown power-allocation scheme: " + s);
}

PowerSplit fpa(const std::vector<double>& fractions) {
  for (size_t i = 0; i + 1 < fractions.size(); ++i)
    if (!(fractions[i] > fractions[i + 1]))
      throw ConfigError("fpa: fractions must be strictly decreasing");
  PowerSplit split{fractions, 1.0};
  split.validate();
  return split;
}

PowerSplit ftpa_avg_snr(const std::vector<double>& avg_snrs) {
  if (avg_snrs.empty()) throw ConfigError("ftpa_avg_snr: no users");
  double denom = 0.0;
  for (double g : avg_snrs) {
    if (!(g > 0.0)) throw ConfigError("ftpa_avg_snr: SNRs must be positive");
    denom += 1.0 / g;
  }
  PowerSplit split;
  split.fractions.reserve(avg_snrs.size());
  for (double g : avg_snrs) split.fractions.push_back((1.0 / g) / denom);
  return split;
}

PowerSplit ftpa_channel_norm(const std::vector<double>& frobenius_norms) {
  if (frobenius_norms.empty()) throw ConfigError("ftpa_channel_norm: no users");
  double denom = 0.0;
  for (double n : frobenius_norms) {
    if (!(n > 0.0)) throw ConfigError("ftpa_channel_norm: zero-norm channel");
    denom += 1.0 / n;
  }
  PowerSplit split;
  split.fractions.reserve(frobenius_norms.size());
  for (double n : frobenius_norms) split.fractions.push_back((1.0 / n) / denom);
  return split;
}

PowerSplit ftpa_channel_norm(const std::vector<ChannelRealization>& channels) {
  std::vector<double> norms;
  norms.reserve(channels.size());
  for (const auto& ch : channels) norms.push_back(ch.frobenius_norm());
  return ftpa_channel_norm(norms);
}

PowerSplit wsrm_avg_snr(const WsrmWeights& w, double avg_snr1, double avg_snr2) {
  if (!(w.w1 > 0.0) || !(w.w2 > 0.0)) throw ConfigError("wsrm_avg_snr: weights must be positive");
  if (w.w1 == w.w2)
    throw ConfigError("wsrm_avg_snr: equal weights make the closed form singular");
  if (!(avg_snr1 > 0.0) || !(avg_snr1 < avg_snr2))
    throw ConfigError("wsrm_avg_snr: requires 0 < Gamma_1 < Gamma_2");

  const double raw =
      (w.w2 * avg_snr1 - w.w1 * avg_snr2) / ((w.w1 - w.w2) * avg_snr1 * avg_snr2);
  const double beta2 = std::clamp(raw, 0.0, 1.0);
  return PowerSplit{{1.0 - beta2, beta2}, 1.0};
}

double wsrm_inst_rate(const InstSinrScalars& s, const WsrmWeights& w, double beta2) {
  const double b1 = 1.0 - beta2;
  const double num1 = b1 * (s.g1_desired + s.g1_isi) + beta2 * s.g1_noma + s.p1_noise;
  const double den1 = b1 * s.g1_isi + beta2 * s.g1_noma + s.p1_noise;
  const double num2 = beta2 * (s.g2_desired + s.g2_isi) + s.p2_noise;
  const double den2 = beta2 * s.g2_isi + s.p2_noise;
  double rate = 0.0;
  if (num1 > 0.0 && den1 > 0.0) rate += w.w1 * std::log(num1 / den1);
  if (num2 > 0.0 && den2 > 0.0) rate += w.w2 * std::log(num2 / den2);
  return rate;
}

double wsrm_inst_rate_derivative(const InstSinrScalars& s, const WsrmWeights& w,
                                 double beta2) {
  const double b1 = 1.0 - beta2;
  const double num1 = b1 * (s.g1_desired + s.g1_isi) + beta2 * s.g1_noma + s.p1_noise;
  const double den1 = b1 * s.g1_isi + beta2 * s.g1_noma + s.p1_noise;
  const double num2 = beta2 * (s.g2_desired + s.g2_isi) + s.p2_noise;
  const double den2 = beta2 * s.g2_isi + s.p2_noise;
  double d = 0.0;
  if (num1 > 0.0) d += w.w1 * (s.g1_noma - s.g1_isi - s.g1_desired) / num1;
  if (den1 > 0.0) d -= w.w1 * (s.g1_noma - s.g1_isi) / den1;
  if (num2 > 0.0) d += w.w2 * (s.g2_desired + s.g2_isi) / num2;
  if (den2 > 0.0) d -= w.w2 * s.g2_isi / den2;
  return d;
}

PowerSplit wsrm_instantaneous(const WsrmWeights& w, const InstSinrScalars& s) {
  if (!(w.w1 > 0.0) || !(w.w2 > 0.0))
    throw ConfigError("wsrm_instantaneous: weights must be positive");
  for (double v : {s.g1_desired, s.g1_isi, s.g1_noma, s.p1_noise, s.g2_desired,
                   s.g2_isi, s.p2_noise}) {
    if (v < 0.0 || !std::isfinite(v))
      throw ConfigError("wsrm_instantaneous: scalars must be finite and non-negative");
  }

  constexpr int kScanSteps = 1000;
  constexpr double kRateTol = 1e-12;

  std::vector<double> candidates{0.0, 1.0};
  double prev_x = 0.0;
  double prev_d = wsrm_inst_rate_derivative(s, w, prev_x);
  bool sign_change = false;
  for (int i = 1; i <= kScanSteps; ++i) {
    const double x = static_cast<double>(i) / kScanSteps;
    const double d = wsrm_inst_rate_derivative(s, w, x);
    if (prev_d == 0.0 && prev_x > 0.0 && prev_x < 1.0) candidates.push_back(prev_x);
    if ((prev_d < 0.0 && d > 0.0) || (prev_d > 0.0 && d < 0.0)) {
      sign_change = true;
      double lo = prev_x, hi = x, dlo = prev_d;
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double dm = wsrm_inst_rate_derivative(s, w, mid);
        if (dm == 0.0) { lo = hi = mid; break; }
        if ((dm < 0.0) == (dlo < 0.0)) { lo = mid; dlo = dm; } else { hi = mid; }
      }
      candidates.push_back(std::clamp(0.5 * (lo + hi), 0.0, 1.0));
    }
    prev_x = x;
    prev_d = d;
  }

  if (!sign_change) {
    // Monotone (or flat) rate: direct grid argmax, ties toward smaller beta2.
    double best_x = 0.0, best_r = wsrm_inst_rate(s, w, 0.0);
    for (int i = 1; i <= kScanSteps; ++i) {
      const double x = static_cast<double>(i) / kScanSteps;
      const double r = wsrm_inst_rate(s, w, x);
      if (r > best_r + kRateTol) { best_r = r; best_x = x; }
    }
    return PowerSplit{{1.0 - best_x, best_x}, 1.0};
  }

  std::sort(candidates.begin(), candidates.end());
  double best_x = candidates.front();
  double best_r = wsrm_inst_rate(s, w, best_x);
  for (double x : candidates) {
    const double r = wsrm_inst_rate(s, w, x);
    if (r > best_r + kRateTol) { best_r = r; best_x = x; }
  }
  return PowerSplit{{1.0 - best_x, best_x}, 1.0};
}

}  // namespace ddnoma
