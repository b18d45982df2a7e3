#pragma once

#include "sfr/types.hpp"

namespace sfr {

/// Spherical Bessel function of the first kind, order 0: sin(z)/z.
/// Total on finite z; uses 1 - z^2/6 for |z| < 1e-8.
Complex sph_bessel_j0(Complex z);

/// Largest |z| accepted by bessel_j0_complex.
inline constexpr double kBesselJ0MaxArgument = 80.0;

/// Cylindrical Bessel function J0 for complex argument, |z| <= 80.
///
/// Small arguments use the power series sum_m (-z^2/4)^m / (m!)^2 with
/// compensated summation. Above |z| = 6 the series loses digits to
/// cancellation on the real axis, so the integral
///   J0(z) = (1/2pi) * int_0^{2pi} cos(z cos t) dt
/// is evaluated with the trapezoidal rule, which converges geometrically
/// for this periodic integrand. Throws RangeError for |z| > 80.
Complex bessel_j0_complex(Complex z);

/// J0 and Y0 for real positive x, full double precision on any x > 0.
double bessel_j0(double x);
double bessel_y0(double x);

/// Second-kind Hankel function H0^(2)(x) = J0(x) - j Y0(x) for real x > 0.
Complex hankel2_0(double x);

}  // namespace sfr
