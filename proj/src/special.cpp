#include "rmtwork/special.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/bessel.hpp>
#include <fmt/format.h>

#include "rmtwork/error.hpp"

namespace rmtwork {

namespace {

using cplx = std::complex<double>;

constexpr double kSeriesRadius = 2.0;    // |zeta| at or below: ascending series
constexpr double kHankelRadius = 25.0;   // |zeta| at or above: Hankel expansion
constexpr double kSmallArgument = 1e-4;  // removable-singularity branch of J1(x)/x, I1(x)/x

// sum_k (zeta^2/4)^k / (k! (k+1)!) times zeta/2, i.e. I1(zeta).
cplx i1_series(cplx zeta) {
  const cplx q = 0.25 * zeta * zeta;
  cplx term = 1.0;
  cplx sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * (k + 1));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return 0.5 * zeta * sum;
}

// Miller's algorithm: I_k is the minimal solution of the recurrence
// I_{k-1} = (2k/zeta) I_k + I_{k+1}, so backward recurrence from a high order
// is stable. Normalisation uses e^zeta = I_0 + 2 sum_{k>=1} I_k.
cplx i1_miller_scaled(cplx zeta) {
  const int start = 2 * static_cast<int>(std::ceil(std::abs(zeta))) + 40;
  cplx y_next = 0.0;
  cplx y = 1e-30;
  cplx sum = 0.0;
  cplx y1 = 0.0;
  for (int k = start; k >= 1; --k) {
    if (k == 1) y1 = y;
    sum += 2.0 * y;
    const cplx y_prev = (2.0 * k / zeta) * y + y_next;
    y_next = y;
    y = y_prev;
    if (std::abs(y) > 1e200) {
      y *= 1e-200;
      y_next *= 1e-200;
      sum *= 1e-200;
      y1 *= 1e-200;
    }
  }
  sum += y;
  return y1 / sum * std::polar(1.0, zeta.imag());
}

cplx i1_hankel_scaled(cplx zeta) {
  cplx s_plus = 1.0;
  cplx s_minus = 1.0;
  double a_k = 1.0;
  cplx inv_pow = 1.0;
  const cplx inv_zeta = 1.0 / zeta;
  double last = 1.0;
  for (int k = 1; k < 400; ++k) {
    const double odd = 2.0 * k - 1.0;
    a_k *= (4.0 - odd * odd) / (8.0 * k);
    inv_pow *= inv_zeta;
    const cplx term = a_k * inv_pow;
    const double mag = std::abs(term);
    if (mag > last) break;  // asymptotic series started to diverge
    s_plus += term;
    s_minus += (k % 2 == 0) ? term : -term;
    last = mag;
    if (mag < 1e-17) break;
  }
  // Upper sign of the connection formula holds for -pi/2 < ph zeta <= pi/2 + ...,
  // lower sign for ph zeta < -pi/2 + ...; pick by the half-plane of zeta.
  const cplx connection = zeta.imag() >= 0.0 ? cplx(0.0, -1.0) : cplx(0.0, 1.0);
  const cplx dominant = std::polar(1.0, zeta.imag()) * s_minus;
  const cplx recessive = connection * std::exp(-zeta - zeta.real()) * s_plus;
  return (dominant + recessive) / std::sqrt(2.0 * std::numbers::pi * zeta);
}

}  // namespace

double bessel_j1(double x) { return boost::math::cyl_bessel_j(1, x); }

double bessel_i1(double x) {
  if (std::abs(x) > 700.0) {
    return std::copysign(std::exp(std::abs(x)) * bessel_i1_scaled(std::abs(x)), x);
  }
  return boost::math::cyl_bessel_i(1, x);
}

double bessel_i1_scaled(double x) {
  const double ax = std::abs(x);
  double value;
  if (ax <= 700.0) {
    value = boost::math::cyl_bessel_i(1, ax) * std::exp(-ax);
  } else {
    value = bessel_i1_complex_scaled(cplx(ax, 0.0)).real();
  }
  return std::copysign(value, x);
}

double j1_over_x(double x) {
  if (std::abs(x) < kSmallArgument) {
    const double x2 = x * x;
    return 0.5 - x2 / 16.0 + x2 * x2 / 384.0;
  }
  return bessel_j1(x) / x;
}

double i1_over_x(double x) {
  if (std::abs(x) < kSmallArgument) {
    const double x2 = x * x;
    return 0.5 + x2 / 16.0 + x2 * x2 / 384.0;
  }
  return bessel_i1(x) / x;
}

std::complex<double> ScaledComplex::value() const {
  if (log_scale == 0.0) return mantissa;
  return mantissa * std::exp(log_scale);
}

std::complex<double> bessel_i1_complex_scaled(std::complex<double> zeta) {
  if (zeta.real() < 0.0) return -bessel_i1_complex_scaled(-zeta);  // I1 is odd
  const double r = std::abs(zeta);
  if (r <= kSeriesRadius) return i1_series(zeta) * std::exp(-zeta.real());
  if (r < kHankelRadius) return i1_miller_scaled(zeta);
  return i1_hankel_scaled(zeta);
}

ScaledComplex hyp0f1_2_scaled(std::complex<double> z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("hyp0f1_2: non-finite argument");
  }
  if (std::abs(z) > kHyp0f1MaxAbsArgument) {
    throw DomainError(fmt::format("hyp0f1_2: |z| = {:.6g} exceeds {:.0e}", std::abs(z),
                                  kHyp0f1MaxAbsArgument));
  }
  if (std::abs(z) <= 0.25 * kSeriesRadius * kSeriesRadius) {
    cplx term = 1.0;
    cplx sum = 1.0;
    for (int k = 1; k < 200; ++k) {
      term *= z / (static_cast<double>(k) * (k + 1));
      sum += term;
      if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return {sum, 0.0};
  }
  // 0F1(;2;z) = 2 I1(zeta)/zeta with zeta = 2 sqrt(z), Re zeta >= 0.
  const cplx zeta = 2.0 * std::sqrt(z);
  return {2.0 * bessel_i1_complex_scaled(zeta) / zeta, zeta.real()};
}

std::complex<double> hyp0f1_2(std::complex<double> z) { return hyp0f1_2_scaled(z).value(); }

}  // namespace rmtwork
