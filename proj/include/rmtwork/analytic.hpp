#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace rmtwork {

/// Parameters of a quench {<s>, <E>} -> {<s~>, <E~>} at inverse temperature
/// beta, in the large-N semicircle description. beta may be +inf.
struct QuenchParams {
  int n_levels = 0;
  double s_init = 0.0;
  double s_final = 0.0;
  double e_init = 0.0;
  double e_final = 0.0;
  double beta = 0.0;
  /// Initial ground-state energy used by the zero-temperature forms.
  /// Defaults to <E> - 2N<s>/pi.
  std::optional<double> ground_energy;

  double radius_init() const;
  double radius_final() const;
  double ground() const;
  void validate() const;
};

enum class Spectrum { initial, final };
enum class Regime { beta0, betainf };

struct PeakWidth {
  double peak = 0.0;
  double width = 0.0;
};

/// Semicircle radius 2N<s>/pi.
double semicircle_radius(int n_levels, double mean_spacing);

/// Unit-normalised semicircle density (2/(pi a)) sqrt(1 - (x/a)^2), zero for |x| > a.
double semicircle_density(double a, double x);

/// Cumulative distribution of semicircle_density.
double semicircle_cdf(double a, double x);

/// Density of the sum of two independent semicircle variables with radii
/// a1, a2, shifted by `shift`, evaluated at w.
double semicircle_convolution(double a1, double a2, double shift, double w);

/// <e^{sign i u E'}> over the chosen spectrum: 2 e^{sign i u <E'>} J1(a'u)/(a'u).
std::complex<double> avg_phase(const QuenchParams& p, double u, int sign, Spectrum which);

/// <e^{-beta E}> = 2 e^{-beta <E>} I1(a beta)/(a beta), value 1 at beta = 0.
/// Returns +inf/0 when the value leaves the double range; see log_avg_boltzmann.
double avg_boltzmann(const QuenchParams& p);
double log_avg_boltzmann(const QuenchParams& p);

/// <e^{-beta E} e^{-i u E}> = e^{-(beta + i u)<E>} 0F1(;2; -(a/2)^2 (u - i beta)^2).
std::complex<double> avg_joint(const QuenchParams& p, double u);

/// Ensemble-averaged work characteristic function for finite beta >= 0.
/// beta = 0 and beta = +inf delegate to g_beta0 and g_betainf.
std::complex<double> g_ensemble(const QuenchParams& p, double u);

/// Infinite-temperature form: e^{iu(<E~>-<E>)} [2 J1(a u)/(a u)] [2 J1(a~ u)/(a~ u)].
std::complex<double> g_beta0(const QuenchParams& p, double u);

/// Zero-temperature form: 2 e^{iu(<E~> - E1)} J1(a~ u)/(a~ u).
std::complex<double> g_betainf(const QuenchParams& p, double u);

/// Work probability density predicted at each w in a uniform grid:
/// convolution of semicircles at beta = 0, shifted semicircle at beta = inf,
/// inverse Fourier transform of g_ensemble otherwise.
std::vector<double> p_w_predicted(const QuenchParams& p, std::span<const double> w_grid);

/// Density recovered from a characteristic function by trapezoidal inversion
/// over u >= 0 (uses G(-u) = conj G(u)). `envelope_radius` bounds |G(u)| by
/// |2 J1(r u)/(r u)| and fixes the truncation point; `center` and
/// `half_support` bound the support of the density and fix the spacing.
/// Throws NumericError if the required u-grid exceeds `max_points`.
std::vector<double> density_from_characteristic(
    const std::function<std::complex<double>(double)>& g, double envelope_radius,
    double center, double half_support, std::span<const double> w_grid,
    double envelope_tol = 1e-6, std::size_t max_points = 4'000'000);

PeakWidth peak_width(const QuenchParams& p, Regime regime);

/// Effective number of thermally populated levels 1/(beta <s>); +inf at beta = 0.
double n_eff(double beta, double s_init);

}  // namespace rmtwork
