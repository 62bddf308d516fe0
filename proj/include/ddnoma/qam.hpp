#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ddnoma/common.hpp"

namespace ddnoma {

enum class QamOrder { kQpsk = 2, k16Qam = 4, k64Qam = 6, kNone = 0 };

std::string to_string(QamOrder q);
QamOrder qam_from_string(const std::string& s);

// Gray-mapped square QAM, unit average energy. Label bits split half to the
// I axis, half to Q, each axis reflected-Gray coded; bit value 0 maps to the
// positive half on each axis (QPSK bits 00 -> (1+j)/sqrt(2)).
class QamConstellation {
 public:
  explicit QamConstellation(QamOrder order);

  QamOrder order() const { return order_; }
  int bits_per_symbol() const { return bits_; }
  const std::vector<Cx>& points() const { return points_; }  // indexed by label
  Cx map_label(uint32_t label) const { return points_[label]; }

 private:
  QamOrder order_;
  int bits_;
  std::vector<Cx> points_;
};

// bits (MSB-first per symbol) -> unit-energy symbols
Eigen::VectorXcd qam_map(std::span<const uint8_t> bits, const QamConstellation& c);

// Hard nearest-point demap, returns bits.
std::vector<uint8_t> qam_hard_demap(const Eigen::VectorXcd& symbols,
                                    const QamConstellation& c);

// Max-log bit LLRs:
//   L(b_j | y) = min_{s in S_j^0} |y - s|^2 / sigma2
//              - min_{s in S_j^1} |y - s|^2 / sigma2,
// so positive favors bit 1. sigma2 is per symbol.
Eigen::VectorXd qam_llr(const Eigen::VectorXcd& symbols, const Eigen::VectorXd& sigma2,
                        const QamConstellation& c);

}  // namespace ddnoma
