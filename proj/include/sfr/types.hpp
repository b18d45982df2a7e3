#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace sfr {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;

// Error hierarchy. Everything thrown by the library derives from Error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// Source and receiver coincide.
class SingularityError : public Error {
 public:
  using Error::Error;
};

// Argument outside the validated range of a special function.
class RangeError : public Error {
 public:
  using Error::Error;
};

// Linear system is singular or too ill-conditioned to solve without
// regularization.
class SingularSystemError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// A point in 2D or 3D space, in meters. Unused trailing components are zero.
class Position {
 public:
  Position() = default;
  Position(double x, double y) : coords_{x, y, 0.0}, dim_{2} { check_finite(); }
  Position(double x, double y, double z) : coords_{x, y, z}, dim_{3} { check_finite(); }

  static Position zero(int dim) {
    check_dim(dim);
    Position p;
    p.dim_ = dim;
    return p;
  }

  /// Builds a position from a 2- or 3-element vector.
  static Position from(const std::vector<double>& v) {
    if (v.size() == 2) return {v[0], v[1]};
    if (v.size() == 3) return {v[0], v[1], v[2]};
    throw DimensionError("position must have 2 or 3 components, got " + std::to_string(v.size()));
  }

  int dim() const { return dim_; }
  double operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
  double x() const { return coords_[0]; }
  double y() const { return coords_[1]; }
  double z() const { return coords_[2]; }
  const std::array<double, 3>& coords() const { return coords_; }
  std::vector<double> to_vector() const {
    return {coords_.begin(), coords_.begin() + dim_};
  }

  Position operator+(const Position& o) const { return combine(o, 1.0); }
  Position operator-(const Position& o) const { return combine(o, -1.0); }
  Position scaled(double s) const {
    Position p = *this;
    for (auto& c : p.coords_) c *= s;
    return p;
  }

  double dot(const Position& o) const {
    require_same_dim(*this, o);
    return coords_[0] * o.coords_[0] + coords_[1] * o.coords_[1] + coords_[2] * o.coords_[2];
  }
  double norm() const { return std::sqrt(dot(*this)); }
  double distance(const Position& o) const { return (*this - o).norm(); }

  bool operator==(const Position& o) const = default;

  static void require_same_dim(const Position& a, const Position& b) {
    if (a.dim_ != b.dim_) {
      throw DimensionError("dimension mismatch: " + std::to_string(a.dim_) + " vs " +
                           std::to_string(b.dim_));
    }
  }

 private:
  static void check_dim(int dim) {
    if (dim != 2 && dim != 3) throw DimensionError("dimension must be 2 or 3");
  }
  void check_finite() const {
    for (double c : coords_) {
      if (!std::isfinite(c)) throw ValidationError("position has a non-finite component");
    }
  }
  Position combine(const Position& o, double sign) const {
    require_same_dim(*this, o);
    Position p = *this;
    for (std::size_t i = 0; i < 3; ++i) p.coords_[i] += sign * o.coords_[i];
    return p;
  }

  std::array<double, 3> coords_{0.0, 0.0, 0.0};
  int dim_ = 2;
};

/// Unit vector in 2D or 3D.
class Direction {
 public:
  /// Normalizes v. Throws on a zero vector.
  static Direction normalized(const Position& v) {
    const double n = v.norm();
    if (!(n > 0.0)) throw ValidationError("cannot normalize a zero-length direction");
    // Already-normalized input is kept bit-for-bit.
    if (std::abs(n - 1.0) < 1e-15) return Direction(v);
    return Direction(v.scaled(1.0 / n));
  }
  /// Accepts v only if it is already unit length within 1e-12.
  static Direction exact(const Position& v) {
    if (std::abs(v.norm() - 1.0) > 1e-12) throw ValidationError("direction is not a unit vector");
    return Direction(v);
  }
  /// 2D direction at angle phi (radians) from the +x axis.
  static Direction from_angle(double phi) { return Direction(Position(std::cos(phi), std::sin(phi))); }
  /// 3D direction from azimuth phi and zenith theta.
  static Direction from_angles(double phi, double theta) {
    return Direction(Position(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                              std::cos(theta)));
  }

  int dim() const { return v_.dim(); }
  const Position& vec() const { return v_; }
  double operator[](int i) const { return v_[i]; }
  Direction operator-() const { return Direction(v_.scaled(-1.0)); }
  bool operator==(const Direction& o) const = default;

 private:
  explicit Direction(Position v) : v_(v) {}
  Position v_;
};

struct Medium {
  double sound_speed = 343.0;  // m/s

  void validate() const {
    if (!(sound_speed > 0.0) || !std::isfinite(sound_speed)) {
      throw ValidationError("sound speed must be positive");
    }
  }
};

/// Angular frequency and wavenumber k = omega / c.
class Wavenumber {
 public:
  static Wavenumber from_frequency(double hz, const Medium& medium) {
    return from_omega(2.0 * kPi * hz, medium);
  }
  static Wavenumber from_omega(double omega, const Medium& medium) {
    medium.validate();
    if (!(omega > 0.0) || !std::isfinite(omega)) throw ValidationError("frequency must be positive");
    return Wavenumber(omega, omega / medium.sound_speed);
  }
  /// For kernels and fields that only depend on k.
  static Wavenumber from_k(double k) {
    if (!(k > 0.0) || !std::isfinite(k)) throw ValidationError("wavenumber must be positive");
    return Wavenumber(k * Medium{}.sound_speed, k);
  }

  double k() const { return k_; }
  double omega() const { return omega_; }
  double frequency() const { return omega_ / (2.0 * kPi); }

 private:
  Wavenumber(double omega, double k) : omega_(omega), k_(k) {}
  double omega_;
  double k_;
};

}  // namespace sfr
