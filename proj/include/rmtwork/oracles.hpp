#pragma once

// Adaptive-quadrature evaluations of averages over the semicircle density.
// These deliberately avoid the Bessel and 0F1 routines so they can serve as
// independent references for the closed forms in analytic.hpp.

#include <complex>
#include <functional>

#include "rmtwork/analytic.hpp"

namespace rmtwork::oracle {

/// Integral of f(x) against the unit semicircle of radius a centred at `centre`,
/// computed in the angle variable x = centre + a cos(theta).
std::complex<double> semicircle_average(const std::function<std::complex<double>(double)>& f,
                                        double a, double centre);

std::complex<double> avg_phase(const QuenchParams& p, double u, int sign, Spectrum which);
double avg_boltzmann(const QuenchParams& p);
std::complex<double> avg_joint(const QuenchParams& p, double u);

}  // namespace rmtwork::oracle
