#pragma once

#include <string>
#include <vector>

#include "ddnoma/channel.hpp"
#include "ddnoma/common.hpp"

namespace ddnoma {

// Per-user downlink transmit-power fractions, sum(beta) == 1.
struct PowerSplit {
  std::vector<double> fractions;
  double total_power_w = 1.0;

  void validate() const;
  double beta(int user) const { return fractions.at(user); }
  int users() const { return static_cast<int>(fractions.size()); }
};

struct WsrmWeights {
  double w1 = 0.6;
  double w2 = 0.4;
};

// Scalar powers entering the 2-user instantaneous weighted-sum-rate problem.
// User 1 is the weaker user (lower average SNR).
struct InstSinrScalars {
  double g1_desired = 0.0;   // P |b1_jj|^2
  double g1_isi = 0.0;       // P sum_{l != j} |b1_jl|^2
  double g1_noma = 0.0;      // P sum_l |b1_jl|^2
  double p1_noise = 0.0;     // sigma_n^2 sum_l |c1_jl|^2
  double g2_desired = 0.0;
  double g2_isi = 0.0;
  double p2_noise = 0.0;
};

enum class PaScheme { kOma, kFixed, kFtpaAvgSnr, kFtpaChannelNorm, kWsrmAvgSnr, kWsrmInst };

std::string to_string(PaScheme s);
PaScheme scheme_from_string(const std::string& s);

// Fixed power allocation; fractions must be strictly decreasing and sum to 1.
PowerSplit fpa(const std::vector<double>& fractions);

// beta_i = Gamma_i^-1 / sum Gamma_i'^-1
PowerSplit ftpa_avg_snr(const std::vector<double>& avg_snrs);

// beta_i = ||H_i||_F^-1 / sum ||H_i'||_F^-1
PowerSplit ftpa_channel_norm(const std::vector<ChannelRealization>& channels);
PowerSplit ftpa_channel_norm(const std::vector<double>& frobenius_norms);

// Closed-form 2-user average-SNR WSRM:
// beta2 = clamp( (w2 G1 - w1 G2) / ((w1 - w2) G1 G2), 0, 1 ).
// Requires Gamma1 < Gamma2 and w1 != w2.
PowerSplit wsrm_avg_snr(const WsrmWeights& w, double avg_snr1, double avg_snr2);

// Weighted 2-user rate as a function of beta2 for the instantaneous-CSI
// problem (natural log base cancels in the argmax).
double wsrm_inst_rate(const InstSinrScalars& s, const WsrmWeights& w, double beta2);

// Stationarity residual of the rate above; the optimizer brackets its roots.
double wsrm_inst_rate_derivative(const InstSinrScalars& s, const WsrmWeights& w,
                                 double beta2);

// Numeric instantaneous-CSI WSRM: sign-scan with 1000 subdivisions +
// bisection for interior roots; candidates are the roots plus both endpoints,
// the rate argmax wins (ties toward smaller beta2). Falls back to a direct
// grid argmax when the derivative never changes sign.
PowerSplit wsrm_instantaneous(const WsrmWeights& w, const InstSinrScalars& s);

}  // namespace ddnoma
