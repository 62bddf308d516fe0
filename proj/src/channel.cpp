#include "ddnoma/channel.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

#include "ddnoma/rng.hpp"

namespace ddnoma {

namespace {

// Nearest-bin rounding with exact .5 ties toward zero.
int round_ties_toward_zero(double x) {
  const double t = std::trunc(x);
  const double frac = std::abs(x - t);
  if (frac > 0.5) return static_cast<int>(t) + (x > 0 ? 1 : -1);
  if (frac < 0.5) return static_cast<int>(t);
  return static_cast<int>(t);
}

}  // namespace

double max_doppler(double speed_mps, double carrier_freq_hz) {
  if (speed_mps < 0.0) throw ConfigError("max_doppler: negative speed");
  return speed_mps * carrier_freq_hz / kSpeedOfLight;
}

const std::vector<double>& EvaProfile::tap_delays_s() {
  static const std::vector<double> d = {0e-9,    30e-9,   150e-9,  310e-9, 370e-9,
                                        710e-9,  1090e-9, 1730e-9, 2510e-9};
  return d;
}

const std::vector<double>& EvaProfile::tap_powers_db() {
  static const std::vector<double> p = {0.0,  -1.5, -1.4,  -3.6, -0.6,
                                        -9.1, -7.0, -12.0, -16.9};
  return p;
}

std::vector<double> EvaProfile::tap_powers_linear() {
  std::vector<double> lin;
  lin.reserve(tap_powers_db().size());
  double total = 0.0;
  for (double db : tap_powers_db()) {
    lin.push_back(std::pow(10.0, db / 10.0));
    total += lin.back();
  }
  for (double& v : lin) v /= total;
  return lin;
}

double EvaProfile::max_delay_s() { return tap_delays_s().back(); }

int default_cp_len(const GridSpec& grid, double max_delay_s) {
  return static_cast<int>(std::ceil(max_delay_s * grid.bandwidth_hz()));
}

PathSet sample_eva_channel(const GridSpec& grid, double speed_mps,
                           double carrier_freq_hz, uint64_t seed) {
  grid.validate();
  const double bw = grid.bandwidth_hz();
  const double tau_max = EvaProfile::max_delay_s();
  if (bw * tau_max < 1.0 && tau_max > 0.0) {
    static bool warned = false;
    if (!warned) {
      std::cerr << "ddnoma: grid bandwidth " << bw
                << " Hz too coarse to separate EVA taps; all delays quantize to"
                   " bin 0\n";
      warned = true;
    }
  }

  const double nu_max = max_doppler(speed_mps, carrier_freq_hz);
  const double frame_s = grid.doppler_bins * grid.symbol_duration_s();
  const auto& delays = EvaProfile::tap_delays_s();
  const auto powers = EvaProfile::tap_powers_linear();

  Rng rng(seed);
  PathSet ps;
  ps.max_doppler_hz = nu_max;
  ps.max_delay_s = tau_max;
  ps.paths.reserve(delays.size());
  for (size_t t = 0; t < delays.size(); ++t) {
    Path p;
    p.gain = std::sqrt(powers[t]) * rng.cgauss();
    p.delay_bin = round_ties_toward_zero(delays[t] * bw);
    const double theta = rng.uniform(-M_PI, M_PI);
    const double nu = nu_max * std::cos(theta);
    p.doppler_bin = round_ties_toward_zero(nu * frame_s);
    ps.paths.push_back(p);
  }
  return ps;
}

ChannelRealization build_channel_matrix(const GridSpec& grid, const PathSet& paths) {
  const int mn = grid.frame_size();
  for (const Path& p : paths.paths) {
    if (p.delay_bin < 0 || p.delay_bin >= mn)
      throw ConfigError("build_channel_matrix: delay bin out of [0, MN)");
  }

  std::vector<Eigen::Triplet<Cx>> trips;
  trips.reserve(paths.paths.size() * mn);
  for (const Path& p : paths.paths) {
    for (int c = 0; c < mn; ++c) {
      // (Pi^l Delta^k)(row, c) = exp(j 2 pi k c / MN) at row = (c + l) mod MN
      const int r = (c + p.delay_bin) % mn;
      const double phase =
          2.0 * M_PI * static_cast<double>(p.doppler_bin) * c / mn;
      trips.emplace_back(r, c, p.gain * std::polar(1.0, phase));
    }
  }
  ChannelRealization ch;
  ch.path_set = paths;
  ch.h.resize(mn, mn);
  ch.h.setFromTriplets(trips.begin(), trips.end());
  ch.h.makeCompressed();
  return ch;
}

double ChannelRealization::frobenius_norm() const {
  double acc = 0.0;
  for (int k = 0; k < h.outerSize(); ++k)
    for (SpMat::InnerIterator it(h, k); it; ++it) acc += std::norm(it.value());
  return std::sqrt(acc);
}

Eigen::VectorXcd apply_channel(const SpMat& h, const Eigen::VectorXcd& s,
                               double noise_var, uint64_t seed) {
  if (h.cols() != s.size()) throw ShapeError("apply_channel: shape mismatch");
  if (noise_var < 0.0) throw ConfigError("apply_channel: negative noise variance");
  Eigen::VectorXcd r = h * s;
  if (noise_var > 0.0) {
    Rng rng(seed);
    const double sigma = std::sqrt(noise_var);
    for (Eigen::Index i = 0; i < r.size(); ++i) r(i) += sigma * rng.cgauss();
  }
  return r;
}

Eigen::VectorXcd apply_channel_paths(const PathSet& paths, const Eigen::VectorXcd& s) {
  const int mn = static_cast<int>(s.size());
  Eigen::VectorXcd r = Eigen::VectorXcd::Zero(mn);
  for (const Path& p : paths.paths) {
    for (int nidx = 0; nidx < mn; ++nidx) {
      const int src = ((nidx - p.delay_bin) % mn + mn) % mn;
      const double phase =
          2.0 * M_PI * static_cast<double>(p.doppler_bin) * src / mn;
      r(nidx) += p.gain * std::polar(1.0, phase) * s(src);
    }
  }
  return r;
}

void write_path_set_csv(std::ostream& os, const PathSet& ps) {
  os << "h_re,h_im,l,k\n";
  os.precision(17);
  for (const Path& p : ps.paths)
    os << p.gain.real() << ',' << p.gain.imag() << ',' << p.delay_bin << ','
       << p.doppler_bin << '\n';
}

PathSet read_path_set_csv(std::istream& is) {
  PathSet ps;
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (!header_seen) {
      header_seen = true;
      if (line.rfind("h_re", 0) == 0) continue;
    }
    std::istringstream ls(line);
    std::string cell;
    Path p;
    std::getline(ls, cell, ',');
    const double re = std::stod(cell);
    std::getline(ls, cell, ',');
    const double im = std::stod(cell);
    std::getline(ls, cell, ',');
    p.delay_bin = std::stoi(cell);
    std::getline(ls, cell, ',');
    p.doppler_bin = std::stoi(cell);
    p.gain = {re, im};
    ps.paths.push_back(p);
  }
  return ps;
}

}  // namespace ddnoma
