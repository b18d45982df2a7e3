#include "sfr/special_functions.hpp"

#include <cmath>
#include <string>

#include <boost/math/special_functions/bessel.hpp>

namespace sfr {
namespace {

constexpr double kSeriesLimit = 6.0;

// Neumaier-compensated complex accumulator.
class CompensatedSum {
 public:
  void add(Complex v) {
    re_ = add_part(re_, c_re_, v.real());
    im_ = add_part(im_, c_im_, v.imag());
  }
  Complex value() const { return {re_ + c_re_, im_ + c_im_}; }

 private:
  static double add_part(double sum, double& comp, double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    return t;
  }
  double re_ = 0.0, im_ = 0.0, c_re_ = 0.0, c_im_ = 0.0;
};

Complex j0_series(Complex z) {
  const Complex q = -0.25 * z * z;
  Complex term = 1.0;
  CompensatedSum sum;
  sum.add(term);
  for (int m = 1; m < 200; ++m) {
    term *= q / static_cast<double>(m * m);
    sum.add(term);
    if (std::abs(term) <= 1e-17 * std::abs(sum.value())) break;
  }
  return sum.value();
}

// cos(z cos t) is symmetric under t -> -t and t -> pi - t, so a trapezoid
// rule with 4m nodes on [0, 2pi) collapses onto the quarter period [0, pi/2].
Complex j0_trapezoid(Complex z) {
  const double r = std::abs(z);
  const int m = static_cast<int>(std::ceil((r + 12.0 * std::cbrt(r) + 24.0) / 4.0));
  const int n = 4 * m;
  CompensatedSum sum;
  // t = 0 and t = pi/2 appear twice in the full period; interior nodes of the
  // quarter appear four times.
  sum.add(2.0 * std::cos(z));
  sum.add(2.0 * Complex(1.0, 0.0));
  for (int i = 1; i < m; ++i) {
    const double t = 2.0 * kPi * i / n;
    sum.add(4.0 * std::cos(z * std::cos(t)));
  }
  return sum.value() / static_cast<double>(n);
}

}  // namespace

Complex sph_bessel_j0(Complex z) {
  if (std::abs(z) < 1e-8) return 1.0 - z * z / 6.0;
  return std::sin(z) / z;
}

Complex bessel_j0_complex(Complex z) {
  const double r = std::abs(z);
  if (!std::isfinite(r) || r > kBesselJ0MaxArgument) {
    throw RangeError("bessel_j0_complex: |z| = " + std::to_string(r) +
                     " is outside the validated range |z| <= 80");
  }
  if (r <= kSeriesLimit) return j0_series(z);
  return j0_trapezoid(z);
}

double bessel_j0(double x) { return boost::math::cyl_bessel_j(0, x); }

double bessel_y0(double x) {
  if (!(x > 0.0)) throw RangeError("bessel_y0 requires x > 0");
  return boost::math::cyl_neumann(0, x);
}

Complex hankel2_0(double x) { return {bessel_j0(x), -bessel_y0(x)}; }

}  // namespace sfr
