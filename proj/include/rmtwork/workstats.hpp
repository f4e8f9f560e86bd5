#pragma once

#include <complex>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "rmtwork/histogram.hpp"
#include "rmtwork/spectra.hpp"

namespace rmtwork {

/// Thermal occupation of the initial levels, degeneracy included:
/// p_n = a e^{-beta E_n} / Z0 with Z0 = sum_n a e^{-beta E_n}.
struct GibbsWeights {
  double beta = 0.0;
  std::vector<double> weights;
  std::vector<double> log_weights;
  double log_partition = 0.0;
};

/// Point masses of the two-measurement work distribution. Atom k = m * n_initial + n
/// carries work E~_m - E_n and probability p_n * entry(m, n) / a.
struct WorkAtoms {
  std::size_t n_initial = 0;
  std::size_t n_final = 0;
  std::vector<double> work;
  std::vector<double> prob;
  /// log of prob, kept separately so that atoms whose prob underflows still
  /// contribute to exponential averages.
  std::vector<double> log_prob;

  std::size_t size() const { return work.size(); }
};

enum class CurveSource { single_draw, analytic, ensemble_mean };
std::string to_string(CurveSource source);

struct CharacteristicCurve {
  std::vector<double> u;
  std::vector<std::complex<double>> values;
  CurveSource source = CurveSource::single_draw;
  std::map<std::string, double> metadata;
};

struct JarzynskiCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double rel_err = 0.0;
  double log_lhs = 0.0;
  double log_rhs = 0.0;
};

struct WorkMoments {
  double mean = 0.0;
  double variance = 0.0;
};

/// beta may be +inf (ground level only). Throws InvalidSpec for beta < 0.
GibbsWeights gibbs_weights(std::span<const double> levels, int multiplicity, double beta);

WorkAtoms work_atoms(std::span<const double> initial_levels, std::span<const double> final_levels,
                     const OverlapTable& overlaps, const GibbsWeights& gibbs);
WorkAtoms work_atoms(const SpectralData& initial, const SpectralData& final,
                     const OverlapTable& overlaps, double beta);

CharacteristicCurve characteristic_single(const WorkAtoms& atoms, std::span<const double> u_grid);

/// Density-normalised histogram on [lo, hi]; mass outside the range is
/// reported in `outside_mass` and the bins integrate to 1 - outside_mass.
Histogram work_histogram(const WorkAtoms& atoms, int n_bins, double lo, double hi);

/// Total atom mass with work outside [lo, hi].
double mass_outside(const WorkAtoms& atoms, double lo, double hi);

/// <e^{-beta w}> against Z_tau / Z_0, accumulated in log domain.
JarzynskiCheck jarzynski_check(const WorkAtoms& atoms, double beta, double log_z0, double log_ztau);

WorkMoments work_moments(const WorkAtoms& atoms);

/// Uniform grid of `count` points on [lo, hi].
std::vector<double> uniform_grid(double lo, double hi, int count);

}  // namespace rmtwork
