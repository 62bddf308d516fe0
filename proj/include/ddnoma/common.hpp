#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <stdexcept>

namespace ddnoma {

using Cx = std::complex<double>;
using SpMat = Eigen::SparseMatrix<Cx>;

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

// Thrown on malformed configuration (bad dimensions, invalid parameter values).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when vector/matrix shapes disagree.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace ddnoma
