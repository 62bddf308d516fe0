#include "ddnoma/grid.hpp"

#include <cmath>

namespace ddnoma {

std::string to_string(Waveform w) {
  return w == Waveform::kOtfs ? "otfs" : "ofdm";
}

Waveform waveform_from_string(const std::string& s) {
  if (s == "otfs" || s == "OTFS") return Waveform::kOtfs;
  if (s == "ofdm" || s == "OFDM") return Waveform::kOfdm;
  throw ConfigError("unknown waveform: " + s);
}

void GridSpec::validate() const {
  if (doppler_bins < 1 || delay_bins < 1)
    throw ConfigError("grid dimensions must be positive");
  if (subcarrier_spacing_hz <= 0.0)
    throw ConfigError("subcarrier spacing must be positive");
  if (cp_len < 0) throw ConfigError("cp_len must be non-negative");
}

Eigen::MatrixXcd normalized_idft(int order) {
  Eigen::MatrixXcd w(order, order);
  const double scale = 1.0 / std::sqrt(static_cast<double>(order));
  for (int r = 0; r < order; ++r) {
    for (int c = 0; c < order; ++c) {
      // exponent reduced mod order so large grids do not lose phase accuracy
      const long long rc = (static_cast<long long>(r) * c) % order;
      w(r, c) = std::polar(scale, 2.0 * M_PI * static_cast<double>(rc) / order);
    }
  }
  return w;
}

ModulationMatrix build_modulation_matrix(const GridSpec& grid, int max_dim) {
  grid.validate();
  const int m = grid.delay_bins;
  const int n = grid.doppler_bins;
  if (static_cast<long long>(m) * n > max_dim)
    throw ConfigError("frame size " + std::to_string(static_cast<long long>(m) * n) +
                      " exceeds the dense modulation-matrix limit " +
                      std::to_string(max_dim));

  ModulationMatrix mod;
  mod.waveform = grid.waveform;
  mod.doppler_bins = n;
  mod.delay_bins = m;
  mod.a = Eigen::MatrixXcd::Zero(m * n, m * n);

  if (grid.waveform == Waveform::kOtfs) {
    // A = W_N (x) I_M
    const Eigen::MatrixXcd wn = normalized_idft(n);
    for (int rn = 0; rn < n; ++rn)
      for (int cn = 0; cn < n; ++cn)
        for (int mm = 0; mm < m; ++mm)
          mod.a(rn * m + mm, cn * m + mm) = wn(rn, cn);
  } else {
    // A = I_N (x) W_M
    const Eigen::MatrixXcd wm = normalized_idft(m);
    for (int nn = 0; nn < n; ++nn)
      mod.a.block(nn * m, nn * m, m, m) = wm;
  }
  return mod;
}

Eigen::VectorXcd modulate(const ModulationMatrix& mod, const Eigen::VectorXcd& d,
                          double power_w) {
  if (d.size() != mod.a.rows())
    throw ShapeError("modulate: data length " + std::to_string(d.size()) +
                     " != frame size " + std::to_string(mod.a.rows()));
  if (power_w < 0.0) throw ConfigError("modulate: negative power");
  return mod.a * (std::sqrt(power_w) * d);
}

Eigen::VectorXcd add_cyclic_prefix(const Eigen::VectorXcd& s, int cp_len) {
  if (cp_len < 0 || cp_len > s.size())
    throw ConfigError("add_cyclic_prefix: cp_len out of range");
  Eigen::VectorXcd out(s.size() + cp_len);
  out.head(cp_len) = s.tail(cp_len);
  out.tail(s.size()) = s;
  return out;
}

Eigen::VectorXcd remove_cyclic_prefix(const Eigen::VectorXcd& r, int cp_len) {
  if (cp_len < 0 || cp_len > r.size())
    throw ShapeError("remove_cyclic_prefix: cp_len exceeds input length");
  return r.tail(r.size() - cp_len);
}

Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& dd_grid) {
  return Eigen::Map<const Eigen::VectorXcd>(dd_grid.data(), dd_grid.size());
}

Eigen::MatrixXcd devectorize(const Eigen::VectorXcd& d, int delay_bins,
                             int doppler_bins) {
  if (d.size() != static_cast<Eigen::Index>(delay_bins) * doppler_bins)
    throw ShapeError("devectorize: length mismatch");
  return Eigen::Map<const Eigen::MatrixXcd>(d.data(), delay_bins, doppler_bins);
}

}  // namespace ddnoma
