#pragma once

#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace reimann {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Complex = std::complex<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition of an operation was violated (bad dimension, zero offset,
/// non-positive height, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A run or probe configuration is inconsistent or references unknown names.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Output could not be written.
class IoError : public Error {
 public:
  using Error::Error;
};

// Planar points are identified with complex numbers x + iy.
inline Complex to_complex(const Vec& p) { return {p[0], p[1]}; }

inline Vec to_vec(Complex z) {
  Vec p(2);
  p << z.real(), z.imag();
  return p;
}

inline Vec vec2(double x, double y) {
  Vec p(2);
  p << x, y;
  return p;
}

inline Vec vec3(double x, double y, double z) {
  Vec p(3);
  p << x, y, z;
  return p;
}

}  // namespace reimann
