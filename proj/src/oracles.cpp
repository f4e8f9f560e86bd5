#include "rmtwork/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace rmtwork::oracle {

namespace {

using cplx = std::complex<double>;
using Rule = boost::math::quadrature::gauss_kronrod<double, 61>;

struct Piece {
  cplx value;
  double error = 0.0;
  double l1 = 0.0;
};

// One non-adaptive Gauss-Kronrod panel for each component.
Piece panel(const std::function<cplx(double)>& f, double lo, double hi) {
  double err_re = 0.0, err_im = 0.0, l1_re = 0.0, l1_im = 0.0;
  const double re = Rule::integrate([&](double t) { return f(t).real(); }, lo, hi, 0, 0.0, &err_re, &l1_re);
  const double im = Rule::integrate([&](double t) { return f(t).imag(); }, lo, hi, 0, 0.0, &err_im, &l1_im);
  return {{re, im}, std::hypot(err_re, err_im), l1_re + l1_im};
}

// Bisection until each panel meets an absolute tolerance derived from the
// L1 norm over the whole interval. A relative test per component would never
// terminate on identically vanishing parts.
cplx refine(const std::function<cplx(double)>& f, double lo, double hi, const Piece& whole,
            double abs_tol, int depth) {
  if (whole.error <= abs_tol || depth == 0) return whole.value;
  const double mid = 0.5 * (lo + hi);
  const Piece left = panel(f, lo, mid);
  const Piece right = panel(f, mid, hi);
  return refine(f, lo, mid, left, 0.5 * abs_tol, depth - 1) +
         refine(f, mid, hi, right, 0.5 * abs_tol, depth - 1);
}

cplx integrate(const std::function<cplx(double)>& f, double lo, double hi) {
  const Piece whole = panel(f, lo, hi);
  return refine(f, lo, hi, whole, 1e-13 * std::max(whole.l1, 1e-300), 16);
}

}  // namespace

std::complex<double> semicircle_average(const std::function<std::complex<double>(double)>& f,
                                        double a, double centre) {
  // (2/pi) int_0^pi sin^2(theta) f(centre + a cos theta) dtheta
  return integrate(
      [&](double theta) {
        const double s = std::sin(theta);
        return 2.0 / std::numbers::pi * s * s * f(centre + a * std::cos(theta));
      },
      0.0, std::numbers::pi);
}

std::complex<double> avg_phase(const QuenchParams& p, double u, int sign, Spectrum which) {
  const double centre = which == Spectrum::initial ? p.e_init : p.e_final;
  const double a = which == Spectrum::initial ? p.radius_init() : p.radius_final();
  return semicircle_average(
      [&](double x) { return std::polar(1.0, sign * u * x); }, a, centre);
}

double avg_boltzmann(const QuenchParams& p) {
  return semicircle_average([&](double x) { return std::complex<double>(std::exp(-p.beta * x)); },
                            p.radius_init(), p.e_init)
      .real();
}

std::complex<double> avg_joint(const QuenchParams& p, double u) {
  return semicircle_average(
      [&](double x) { return std::exp(std::complex<double>(-p.beta * x, -u * x)); },
      p.radius_init(), p.e_init);
}

}  // namespace rmtwork::oracle
