#include "rmtwork/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <fmt/format.h>

#include "rmtwork/error.hpp"
#include "rmtwork/kernels.hpp"
#include "rmtwork/special.hpp"

namespace rmtwork {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

bool is_inf(double beta) { return std::isinf(beta) && beta > 0.0; }

void require_uniform(std::span<const double> grid) {
  if (grid.size() < 3) return;
  const double step = grid[1] - grid[0];
  if (!(step > 0.0)) throw InvalidSpec("w grid must be strictly increasing");
  for (std::size_t i = 2; i < grid.size(); ++i) {
    if (std::abs((grid[i] - grid[i - 1]) - step) > 1e-9 * std::max(1.0, std::abs(step))) {
      throw InvalidSpec("w grid must be uniform");
    }
  }
}

}  // namespace

double QuenchParams::radius_init() const { return semicircle_radius(n_levels, s_init); }
double QuenchParams::radius_final() const { return semicircle_radius(n_levels, s_final); }

double QuenchParams::ground() const {
  return ground_energy.value_or(e_init - radius_init());
}

void QuenchParams::validate() const {
  if (n_levels < 1) throw InvalidSpec("quench params: N must be >= 1");
  if (!(s_init > 0.0) || !(s_final > 0.0) || !std::isfinite(s_init) || !std::isfinite(s_final)) {
    throw InvalidSpec("quench params: mean spacings must be positive and finite");
  }
  if (!std::isfinite(e_init) || !std::isfinite(e_final)) {
    throw InvalidSpec("quench params: spectral centres must be finite");
  }
  if (std::isnan(beta) || beta < 0.0) throw InvalidSpec("quench params: beta must be >= 0");
  if (ground_energy && !std::isfinite(*ground_energy)) {
    throw InvalidSpec("quench params: ground energy must be finite");
  }
}

double semicircle_radius(int n_levels, double mean_spacing) {
  return 2.0 * n_levels * mean_spacing / kPi;
}

double semicircle_density(double a, double x) {
  const double t = x / a;
  if (std::abs(t) > 1.0) return 0.0;
  return 2.0 / (kPi * a) * std::sqrt(1.0 - t * t);
}

double semicircle_cdf(double a, double x) {
  if (x <= -a) return 0.0;
  if (x >= a) return 1.0;
  const double t = x / a;
  return 0.5 + (t * std::sqrt(1.0 - t * t) + std::asin(t)) / kPi;
}

double semicircle_convolution(double a1, double a2, double shift, double w) {
  const double t = w - shift;
  const double lo = std::max(-a1, t - a2);
  const double hi = std::min(a1, t + a2);
  if (!(hi > lo)) return 0.0;
  thread_local boost::math::quadrature::tanh_sinh<double> integrator;
  auto f = [&](double x) { return semicircle_density(a1, x) * semicircle_density(a2, t - x); };
  return integrator.integrate(f, lo, hi, 1e-13);
}

std::complex<double> avg_phase(const QuenchParams& p, double u, int sign, Spectrum which) {
  if (sign != 1 && sign != -1) throw InvalidSpec("avg_phase: sign must be +1 or -1");
  const double centre = which == Spectrum::initial ? p.e_init : p.e_final;
  const double radius = which == Spectrum::initial ? p.radius_init() : p.radius_final();
  return 2.0 * std::polar(1.0, sign * u * centre) * j1_over_x(radius * u);
}

double log_avg_boltzmann(const QuenchParams& p) {
  if (std::isnan(p.beta) || p.beta < 0.0 || is_inf(p.beta)) {
    throw InvalidSpec("avg_boltzmann: beta must be finite and >= 0");
  }
  const double x = p.radius_init() * p.beta;
  const double shape = x < 1.0 ? std::log(2.0 * i1_over_x(x))
                               : std::log(2.0 * bessel_i1_scaled(x) / x) + x;
  return -p.beta * p.e_init + shape;
}

double avg_boltzmann(const QuenchParams& p) { return std::exp(log_avg_boltzmann(p)); }

std::complex<double> avg_joint(const QuenchParams& p, double u) {
  if (std::isnan(p.beta) || p.beta < 0.0 || is_inf(p.beta)) {
    throw InvalidSpec("avg_joint: beta must be finite and >= 0");
  }
  const double half_a = 0.5 * p.radius_init();
  const cplx shifted(u, -p.beta);
  const ScaledComplex f = hyp0f1_2_scaled(-half_a * half_a * shifted * shifted);
  return f.mantissa * std::exp(cplx(f.log_scale - p.beta * p.e_init, -u * p.e_init));
}

std::complex<double> g_ensemble(const QuenchParams& p, double u) {
  if (std::isnan(p.beta) || p.beta < 0.0) throw InvalidSpec("g_ensemble: beta must be >= 0");
  if (p.beta == 0.0) return g_beta0(p, u);
  if (is_inf(p.beta)) return g_betainf(p, u);

  // (a beta / I1(a beta)) 0F1(;2; -(a/2)^2 (u - i beta)^2) / 2 written as a
  // ratio of two 0F1 values; the denominator is the same expression at u = 0,
  // so both share the exp(a beta) scale and the ratio is exactly 1 at u = 0.
  const double half_a = 0.5 * p.radius_init();
  const cplx shifted(u, -p.beta);
  const cplx at_zero(0.0, -p.beta);
  const ScaledComplex num = hyp0f1_2_scaled(-half_a * half_a * shifted * shifted);
  const ScaledComplex den = hyp0f1_2_scaled(-half_a * half_a * at_zero * at_zero);
  const cplx ratio = num.mantissa / den.mantissa * std::exp(num.log_scale - den.log_scale);
  return std::polar(1.0, u * (p.e_final - p.e_init)) * ratio * 2.0 *
         j1_over_x(p.radius_final() * u);
}

std::complex<double> g_beta0(const QuenchParams& p, double u) {
  return std::polar(1.0, u * (p.e_final - p.e_init)) * 4.0 * j1_over_x(p.radius_init() * u) *
         j1_over_x(p.radius_final() * u);
}

std::complex<double> g_betainf(const QuenchParams& p, double u) {
  return 2.0 * std::polar(1.0, u * (p.e_final - p.ground())) * j1_over_x(p.radius_final() * u);
}

std::vector<double> density_from_characteristic(
    const std::function<std::complex<double>(double)>& g, double envelope_radius,
    double center, double half_support, std::span<const double> w_grid, double envelope_tol,
    std::size_t max_points) {
  if (w_grid.empty()) return {};
  if (!(envelope_radius > 0.0) || !(half_support > 0.0) || !(envelope_tol > 0.0)) {
    throw InvalidSpec("density_from_characteristic: radii and tolerance must be positive");
  }
  const auto [lo_it, hi_it] = std::minmax_element(w_grid.begin(), w_grid.end());
  const double span =
      std::max(*hi_it, center + half_support) - std::min(*lo_it, center - half_support);
  // Periodic images of the density sit 2 pi/du apart; keep them off the grid.
  const double du = 2.0 * kPi / (1.5 * span);
  // |2 J1(x)/x| <= 1.6 x^{-3/2}; stop once that bound is below the tolerance.
  const double u_max = std::pow(1.6 / envelope_tol, 2.0 / 3.0) / envelope_radius;
  const double count = std::ceil(u_max / du) + 1.0;
  if (count > static_cast<double>(max_points)) {
    throw NumericError(fmt::format(
        "inverse transform needs {:.0f} u points (limit {}); the envelope radius {:.3g} is too "
        "small relative to the support width {:.3g}",
        count, max_points, envelope_radius, span));
  }
  const auto n = static_cast<std::size_t>(count);
  std::vector<double> u(n), weight(n, du);
  std::vector<cplx> values(n);
  weight.front() = weight.back() = 0.5 * du;
  for (std::size_t k = 0; k < n; ++k) u[k] = du * static_cast<double>(k);
  const auto signed_n = static_cast<std::ptrdiff_t>(n);
  std::exception_ptr failure;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < signed_n; ++k) {
    try {
      values[k] = g(u[k]);
    } catch (...) {
#pragma omp critical(rmtwork_density_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<double> out(w_grid.size());
  kernels::inverse_fourier_parallel(u, weight, values, w_grid, out);
  return out;
}

std::vector<double> p_w_predicted(const QuenchParams& p, std::span<const double> w_grid) {
  p.validate();
  require_uniform(w_grid);
  const double a = p.radius_init();
  const double a_final = p.radius_final();
  std::vector<double> out(w_grid.size());
  const auto n = static_cast<std::ptrdiff_t>(w_grid.size());

  if (p.beta == 0.0) {
    const double shift = p.e_final - p.e_init;
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t j = 0; j < n; ++j) {
      try {
        out[j] = semicircle_convolution(a, a_final, shift, w_grid[j]);
      } catch (...) {
#pragma omp critical(rmtwork_convolution_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
  }
  if (is_inf(p.beta)) {
    const double centre = p.e_final - p.ground();
    for (std::ptrdiff_t j = 0; j < n; ++j) out[j] = semicircle_density(a_final, w_grid[j] - centre);
    return out;
  }
  return density_from_characteristic([&p](double u) { return g_ensemble(p, u); }, a_final,
                                     p.e_final - p.e_init, a + a_final, w_grid);
}

PeakWidth peak_width(const QuenchParams& p, Regime regime) {
  const double two_n_over_pi = 2.0 * p.n_levels / kPi;
  if (regime == Regime::beta0) {
    const double shift = p.e_final - p.e_init;
    return {shift, two_n_over_pi * std::max(p.s_init, p.s_final) + shift};
  }
  return {p.e_final - p.ground(), two_n_over_pi * p.s_final};
}

double n_eff(double beta, double s_init) {
  if (!(s_init > 0.0)) throw InvalidSpec("n_eff: mean spacing must be positive");
  if (std::isnan(beta) || beta < 0.0) throw InvalidSpec("n_eff: beta must be >= 0");
  if (beta == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / (beta * s_init);
}

}  // namespace rmtwork
