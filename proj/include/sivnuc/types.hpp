#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace sivnuc {

using Complex = std::complex<double>;

// Product space orbital (2) x electron spin (2) x nuclear spin (2).
inline constexpr int kDim = 8;

using Mat8 = Eigen::Matrix<Complex, kDim, kDim>;
using Vec8 = Eigen::Matrix<Complex, kDim, 1>;
using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kPi = 3.14159265358979323846;

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range user input (configuration files, options).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine could not produce a trustworthy answer.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Level structure could not be resolved unambiguously (doublet grouping,
/// transition selection, sublevel pairing, degenerate nuclear axis).
class AmbiguityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace sivnuc
