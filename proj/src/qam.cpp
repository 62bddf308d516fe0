#include "ddnoma/qam.hpp"

#include <cmath>
#include <limits>

namespace ddnoma {

namespace {

// Reflected-Gray map of `bits` bits onto the odd amplitudes
// {-(2^bits - 1), ..., -1, +1, ..., +(2^bits - 1)}, with the all-zero label on
// the positive extreme so bit 0 -> positive half-axis.
double gray_axis_amplitude(uint32_t label, int bits) {
  uint32_t gray = label;
  uint32_t binary = 0;
  for (int b = bits - 1; b >= 0; --b) {
    binary = (binary << 1) | (((gray >> b) & 1u) ^ (binary & 1u));
  }
  const int levels = 1 << bits;
  // label 0 -> highest amplitude, keeping Gray adjacency along the axis
  return static_cast<double>(levels - 1 - 2 * static_cast<int>(binary));
}

}  // namespace

std::string to_string(QamOrder q) {
  switch (q) {
    case QamOrder::kQpsk: return "qpsk";
    case QamOrder::k16Qam: return "16qam";
    case QamOrder::k64Qam: return "64qam";
    case QamOrder::kNone: return "none";
  }
  return "?";
}

QamOrder qam_from_string(const std::string& s) {
  if (s == "qpsk" || s == "QPSK") return QamOrder::kQpsk;
  if (s == "16qam" || s == "16QAM") return QamOrder::k16Qam;
  if (s == "64qam" || s == "64QAM") return QamOrder::k64Qam;
  if (s == "none") return QamOrder::kNone;
  throw ConfigError("unknown constellation: " + s);
}

QamConstellation::QamConstellation(QamOrder order) : order_(order) {
  bits_ = static_cast<int>(order);
  if (bits_ != 2 && bits_ != 4 && bits_ != 6)
    throw ConfigError("QamConstellation: unsupported order");
  const int half = bits_ / 2;
  const int count = 1 << bits_;
  // unit average energy: E[a^2 + b^2] = 2 * (L^2 - 1) / 3 for L levels/axis
  const int levels = 1 << half;
  const double mean_sq = 2.0 * (static_cast<double>(levels) * levels - 1.0) / 3.0;
  const double scale = 1.0 / std::sqrt(mean_sq);
  points_.resize(count);
  for (uint32_t label = 0; label < static_cast<uint32_t>(count); ++label) {
    const uint32_t i_bits = label >> half;
    const uint32_t q_bits = label & ((1u << half) - 1u);
    points_[label] = scale * Cx(gray_axis_amplitude(i_bits, half),
                                gray_axis_amplitude(q_bits, half));
  }
}

Eigen::VectorXcd qam_map(std::span<const uint8_t> bits, const QamConstellation& c) {
  const int k = c.bits_per_symbol();
  if (bits.size() % k != 0)
    throw ShapeError("qam_map: bit count not divisible by bits per symbol");
  const size_t count = bits.size() / k;
  Eigen::VectorXcd out(count);
  for (size_t s = 0; s < count; ++s) {
    uint32_t label = 0;
    for (int b = 0; b < k; ++b) label = (label << 1) | (bits[s * k + b] & 1u);
    out(s) = c.map_label(label);
  }
  return out;
}

std::vector<uint8_t> qam_hard_demap(const Eigen::VectorXcd& symbols,
                                    const QamConstellation& c) {
  const int k = c.bits_per_symbol();
  std::vector<uint8_t> bits(symbols.size() * k);
  for (Eigen::Index s = 0; s < symbols.size(); ++s) {
    double best = std::numeric_limits<double>::infinity();
    uint32_t best_label = 0;
    for (uint32_t label = 0; label < c.points().size(); ++label) {
      const double d = std::norm(symbols(s) - c.points()[label]);
      if (d < best) {
        best = d;
        best_label = label;
      }
    }
    for (int b = 0; b < k; ++b)
      bits[s * k + b] = (best_label >> (k - 1 - b)) & 1u;
  }
  return bits;
}

Eigen::VectorXd qam_llr(const Eigen::VectorXcd& symbols, const Eigen::VectorXd& sigma2,
                        const QamConstellation& c) {
  if (symbols.size() != sigma2.size())
    throw ShapeError("qam_llr: symbol/variance length mismatch");
  const int k = c.bits_per_symbol();
  Eigen::VectorXd llr(symbols.size() * k);
  for (Eigen::Index s = 0; s < symbols.size(); ++s) {
    if (!(sigma2(s) > 0.0)) throw ConfigError("qam_llr: non-positive variance");
    for (int b = 0; b < k; ++b) {
      double min0 = std::numeric_limits<double>::infinity();
      double min1 = std::numeric_limits<double>::infinity();
      for (uint32_t label = 0; label < c.points().size(); ++label) {
        const double d = std::norm(symbols(s) - c.points()[label]) / sigma2(s);
        if ((label >> (k - 1 - b)) & 1u) {
          min1 = std::min(min1, d);
        } else {
          min0 = std::min(min0, d);
        }
      }
      // positive favors bit 1 (min over S^0 minus min over S^1)
      llr(s * k + b) = min0 - min1;
    }
  }
  return llr;
}

}  // namespace ddnoma
