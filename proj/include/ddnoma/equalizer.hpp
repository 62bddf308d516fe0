#pragma once

#include <memory>
#include <vector>

#include "ddnoma/common.hpp"
#include "ddnoma/transforms.hpp"

namespace ddnoma {

// LMMSE decomposition matrices for one user.
// Downlink: C = sqrt(beta) (HA)' [ (HA)(HA)' + (1/Gamma) I ]^-1,  B = C H A.
// Uplink:   C = (HA)' [ (HA)(HA)' + sum_{i'<i} (G_i'/G_i)(H_i'A)(H_i'A)'
//                       + (1/Gamma_i) I ]^-1,  B_ii' = C H_i' A.
struct EqualizerProducts {
  Eigen::MatrixXcd c;
  Eigen::MatrixXcd b;                  // target-user B
  std::vector<Eigen::MatrixXcd> cross; // uplink B_ii' for already-interfering users
};

EqualizerProducts mmse_products_dl(const Eigen::MatrixXcd& h,
                                   const Eigen::MatrixXcd& a, double beta,
                                   double avg_snr);

// channels/avg_snrs ordered by ascending SNR; user is a 0-based index into
// them. cross[k] corresponds to channels[k] for k < user.
EqualizerProducts mmse_products_ul(const std::vector<Eigen::MatrixXcd>& channels,
                                   const Eigen::MatrixXcd& a,
                                   const std::vector<double>& avg_snrs, int user);

// Per-symbol scalars the SINR and LLR formulas consume. Computed from the
// scale-free products B~ = (HA)' G^-1 (HA), C~ = (HA)' G^-1, so they are
// independent of the power fractions.
struct LmmseSymbolStats {
  Eigen::VectorXcd desired_gain;          // diag(B~)
  Eigen::VectorXd row_energy;             // sum_l |b~_jl|^2
  Eigen::VectorXd noise_energy;           // sum_l |c~_jl|^2
  std::vector<Eigen::VectorXd> cross_energy;  // sum_l |b~^(i')_jl|^2 per cross channel
};

// Reference route: scalars taken literally from dense rows of B, C. Any
// common scale on (b, c) cancels in the SINR formulas, so products built with
// embedded sqrt(beta) give the same downstream numbers.
LmmseSymbolStats stats_from_products(const EqualizerProducts& prod);

// Gram-matrix builders (G is Hermitian positive definite for finite SNR).
SpMat gram_single(const SpMat& h, double scale, double ridge);
SpMat gram_weighted(const std::vector<const SpMat*>& hs,
                    const std::vector<double>& scales, double ridge);

// Sparse factorization of G with streaming extraction of the per-symbol
// scalars; never materializes B or C.
class LmmseSolver {
 public:
  LmmseSolver(SpMat gram, const SpMat& target_h);
  ~LmmseSolver();

  // x = G^-1 r
  Eigen::VectorXcd solve(const Eigen::VectorXcd& r) const;

  // d_hat = scale * (H_t A)' G^-1 r, evaluated as scale * A'(H_t' G^-1 r).
  Eigen::VectorXcd equalize(const Eigen::VectorXcd& r, const WaveformTransform& tf,
                            double scale) const;

  LmmseSymbolStats symbol_stats(const WaveformTransform& tf,
                                const std::vector<const SpMat*>& cross = {}) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Convenience: downlink single-user solver, G = H H' + (1/avg_snr) I.
LmmseSolver make_dl_solver(const SpMat& h, double avg_snr);

}  // namespace ddnoma
