#pragma once

#include <complex>

namespace rmtwork {

/// Bessel function of the first kind, order one.
double bessel_j1(double x);

/// Modified Bessel function of the first kind, order one. Overflows to
/// +/-inf for |x| > ~713; use bessel_i1_scaled beyond that.
double bessel_i1(double x);

/// e^{-|x|} I1(x), finite for all real x.
double bessel_i1_scaled(double x);

/// J1(x)/x with the removable singularity filled in (value 1/2 at x = 0).
double j1_over_x(double x);

/// I1(x)/x with the removable singularity filled in (value 1/2 at x = 0).
/// Overflows like bessel_i1.
double i1_over_x(double x);

/// A complex number stored as mantissa * exp(log_scale), for quantities whose
/// magnitude exceeds the double range.
struct ScaledComplex {
  std::complex<double> mantissa;
  double log_scale = 0.0;

  std::complex<double> value() const;
};

/// e^{-Re zeta} I1(zeta) for complex zeta with Re zeta >= 0.
///
/// Three regimes by |zeta|: ascending series (|zeta| <= 2), Miller backward
/// recurrence normalised by e^zeta = I0 + 2 sum_k Ik (2 < |zeta| < 25), and the
/// Hankel large-argument expansion with both exponentials kept (|zeta| >= 25).
std::complex<double> bessel_i1_complex_scaled(std::complex<double> zeta);

/// Confluent hypergeometric limit function 0F1(;2;z) in scaled form. The scale
/// is Re(2 sqrt z) outside the series regime so that ratios of large values
/// can be formed without overflow.
///
/// Throws DomainError for |z| > 1e14 or non-finite z.
ScaledComplex hyp0f1_2_scaled(std::complex<double> z);

/// 0F1(;2;z) = I1(2 sqrt z)/sqrt z. May overflow to inf for large Re sqrt z.
std::complex<double> hyp0f1_2(std::complex<double> z);

inline constexpr double kHyp0f1MaxAbsArgument = 1e14;

}  // namespace rmtwork
