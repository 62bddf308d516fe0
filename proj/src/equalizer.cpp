#include "ddnoma/equalizer.hpp"

#include <Eigen/SparseCholesky>
#include <cmath>

namespace ddnoma {

namespace {

void check_snr(double avg_snr) {
  if (!(avg_snr > 0.0) || !std::isfinite(avg_snr))
    throw ConfigError("average SNR must be finite and positive");
}

}  // namespace

EqualizerProducts mmse_products_dl(const Eigen::MatrixXcd& h,
                                   const Eigen::MatrixXcd& a, double beta,
                                   double avg_snr) {
  check_snr(avg_snr);
  if (h.rows() != h.cols() || h.rows() != a.rows() || a.rows() != a.cols())
    throw ShapeError("mmse_products_dl: H and A must be square and conforming");

  const Eigen::MatrixXcd f = h * a;
  Eigen::MatrixXcd gram = f * f.adjoint();
  gram.diagonal().array() += 1.0 / avg_snr;
  const Eigen::LLT<Eigen::MatrixXcd> llt(gram);
  const Eigen::MatrixXcd y = llt.solve(f);  // G^-1 F

  EqualizerProducts prod;
  prod.c = std::sqrt(beta) * y.adjoint();
  prod.b = prod.c * f;
  return prod;
}

EqualizerProducts mmse_products_ul(const std::vector<Eigen::MatrixXcd>& channels,
                                   const Eigen::MatrixXcd& a,
                                   const std::vector<double>& avg_snrs, int user) {
  if (channels.size() != avg_snrs.size() || channels.empty())
    throw ShapeError("mmse_products_ul: channel/SNR count mismatch");
  if (user < 0 || user >= static_cast<int>(channels.size()))
    throw ConfigError("mmse_products_ul: user index out of range");
  for (size_t i = 0; i + 1 < avg_snrs.size(); ++i)
    if (!(avg_snrs[i] < avg_snrs[i + 1]))
      throw ConfigError("mmse_products_ul: SNRs must be in ascending order");
  check_snr(avg_snrs[user]);

  std::vector<Eigen::MatrixXcd> f(channels.size());
  for (size_t i = 0; i < channels.size(); ++i) f[i] = channels[i] * a;

  Eigen::MatrixXcd gram = f[user] * f[user].adjoint();
  for (int k = 0; k < user; ++k)
    gram += (avg_snrs[k] / avg_snrs[user]) * (f[k] * f[k].adjoint());
  gram.diagonal().array() += 1.0 / avg_snrs[user];

  const Eigen::LLT<Eigen::MatrixXcd> llt(gram);
  const Eigen::MatrixXcd y = llt.solve(f[user]);

  EqualizerProducts prod;
  prod.c = y.adjoint();
  prod.b = prod.c * f[user];
  prod.cross.reserve(user);
  for (int k = 0; k < user; ++k) prod.cross.push_back(prod.c * f[k]);
  return prod;
}

LmmseSymbolStats stats_from_products(const EqualizerProducts& prod) {
  LmmseSymbolStats st;
  st.desired_gain = prod.b.diagonal();
  st.row_energy = prod.b.rowwise().squaredNorm();
  st.noise_energy = prod.c.rowwise().squaredNorm();
  st.cross_energy.reserve(prod.cross.size());
  for (const auto& x : prod.cross) st.cross_energy.push_back(x.rowwise().squaredNorm());
  return st;
}

SpMat gram_single(const SpMat& h, double scale, double ridge) {
  return gram_weighted({&h}, {scale}, ridge);
}

SpMat gram_weighted(const std::vector<const SpMat*>& hs,
                    const std::vector<double>& scales, double ridge) {
  if (hs.empty() || hs.size() != scales.size())
    throw ShapeError("gram_weighted: term count mismatch");
  if (!(ridge > 0.0)) throw ConfigError("gram_weighted: ridge must be positive");
  const Eigen::Index mn = hs[0]->rows();
  SpMat gram(mn, mn);
  for (size_t k = 0; k < hs.size(); ++k) {
    SpMat term = (*hs[k]) * SpMat(hs[k]->adjoint());
    gram += Cx(scales[k], 0.0) * term;
  }
  SpMat id(mn, mn);
  id.setIdentity();
  gram += Cx(ridge, 0.0) * id;
  gram.makeCompressed();
  return gram;
}

struct LmmseSolver::Impl {
  SpMat target;
  SpMat target_adj;
  Eigen::SimplicialLLT<SpMat, Eigen::Lower> llt;
};

LmmseSolver::LmmseSolver(SpMat gram, const SpMat& target_h)
    : impl_(std::make_unique<Impl>()) {
  impl_->target = target_h;
  impl_->target_adj = target_h.adjoint();
  gram.makeCompressed();
  impl_->llt.compute(gram);
  if (impl_->llt.info() != Eigen::Success)
    throw std::runtime_error("LmmseSolver: sparse Cholesky factorization failed");
}

LmmseSolver::~LmmseSolver() = default;

Eigen::VectorXcd LmmseSolver::solve(const Eigen::VectorXcd& r) const {
  return impl_->llt.solve(r);
}

Eigen::VectorXcd LmmseSolver::equalize(const Eigen::VectorXcd& r,
                                       const WaveformTransform& tf,
                                       double scale) const {
  const Eigen::VectorXcd x = impl_->llt.solve(r);
  const Eigen::VectorXcd v = impl_->target_adj * x;
  return scale * tf.apply_adjoint(v);
}

LmmseSymbolStats LmmseSolver::symbol_stats(
    const WaveformTransform& tf, const std::vector<const SpMat*>& cross) const {
  const Eigen::Index mn = impl_->target.rows();
  LmmseSymbolStats st;
  st.desired_gain.resize(mn);
  st.row_energy.resize(mn);
  st.noise_energy.resize(mn);
  st.cross_energy.assign(cross.size(), Eigen::VectorXd(mn));

  std::vector<SpMat> cross_adj;
  cross_adj.reserve(cross.size());
  for (const SpMat* x : cross) cross_adj.emplace_back(x->adjoint());

  const int groups = tf.group_count();
  const int width = tf.group_size();
  Eigen::MatrixXcd rhs(mn, width);
  for (int g = 0; g < groups; ++g) {
    const std::vector<int> cols = tf.group_columns(g);
    rhs.setZero();
    for (int idx = 0; idx < width; ++idx)
      for (SpMat::InnerIterator it(impl_->target, cols[idx]); it; ++it)
        rhs(it.row(), idx) = it.value();

    // Z_g = G^-1 H_g, then one in-group DFT gives the (Z A) columns.
    Eigen::MatrixXcd za = impl_->llt.solve(rhs);
    tf.transform_group(za);
    for (int idx = 0; idx < width; ++idx)
      st.noise_energy(cols[idx]) = za.col(idx).squaredNorm();

    // (B~ A-rows): H'(ZA) holds the (QA) columns with Q = H' G^-1 H.
    const Eigen::MatrixXcd qa = impl_->target_adj * za;
    for (int idx = 0; idx < width; ++idx) {
      st.row_energy(cols[idx]) = qa.col(idx).squaredNorm();
      st.desired_gain(cols[idx]) = tf.project_onto_a_column(qa, g, idx);
    }

    for (size_t k = 0; k < cross_adj.size(); ++k) {
      const Eigen::MatrixXcd xa = cross_adj[k] * za;
      for (int idx = 0; idx < width; ++idx)
        st.cross_energy[k](cols[idx]) = xa.col(idx).squaredNorm();
    }
  }
  return st;
}

LmmseSolver make_dl_solver(const SpMat& h, double avg_snr) {
  check_snr(avg_snr);
  return LmmseSolver(gram_single(h, 1.0, 1.0 / avg_snr), h);
}

}  // namespace ddnoma
