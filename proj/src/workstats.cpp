#include "rmtwork/workstats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "rmtwork/error.hpp"
#include "rmtwork/kernels.hpp"

namespace rmtwork {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Compensated sum; the atom lists run to N^2 terms.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - carry_;
    const double t = total_ + y;
    carry_ = (t - total_) - y;
    total_ = t;
  }
  double value() const { return total_; }

 private:
  double total_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace

std::string to_string(CurveSource source) {
  switch (source) {
    case CurveSource::single_draw: return "single_draw";
    case CurveSource::analytic: return "analytic";
    case CurveSource::ensemble_mean: return "ensemble_mean";
  }
  return "?";
}

GibbsWeights gibbs_weights(std::span<const double> levels, int multiplicity, double beta) {
  if (std::isnan(beta) || beta < 0.0) throw InvalidSpec(fmt::format("gibbs_weights: beta = {} < 0", beta));
  if (levels.empty()) throw InvalidSpec("gibbs_weights: no levels");
  if (multiplicity < 1) throw InvalidSpec("gibbs_weights: multiplicity must be >= 1");
  const std::size_t n = levels.size();
  const double ground = levels.front();
  const double log_a = std::log(static_cast<double>(multiplicity));
  GibbsWeights g;
  g.beta = beta;
  g.weights.assign(n, 0.0);
  g.log_weights.assign(n, kNegInf);

  if (std::isinf(beta)) {
    g.weights[0] = 1.0;
    g.log_weights[0] = 0.0;
    g.log_partition = ground == 0.0 ? log_a : log_a - beta * ground;
    return g;
  }

  // Factor out e^{-beta E_1}.
  KahanSum rel;
  for (double e : levels) rel.add(std::exp(-beta * (e - ground)));
  const double log_rel = std::log(rel.value());
  g.log_partition = log_a + log_rel - beta * ground;
  for (std::size_t i = 0; i < n; ++i) {
    g.log_weights[i] = -beta * (levels[i] - ground) - log_rel;
    g.weights[i] = std::exp(g.log_weights[i]);
  }
  return g;
}

WorkAtoms work_atoms(std::span<const double> initial_levels, std::span<const double> final_levels,
                     const OverlapTable& overlaps, const GibbsWeights& gibbs) {
  const auto n_init = initial_levels.size();
  const auto n_fin = final_levels.size();
  if (overlaps.entries.cols() != static_cast<Eigen::Index>(n_init) ||
      overlaps.entries.rows() != static_cast<Eigen::Index>(n_fin) ||
      gibbs.weights.size() != n_init) {
    throw ContractViolation(fmt::format(
        "work_atoms: dimension mismatch (initial {}, final {}, overlaps {}x{}, weights {})", n_init,
        n_fin, overlaps.entries.rows(), overlaps.entries.cols(), gibbs.weights.size()));
  }
  const double inv_a = 1.0 / overlaps.degeneracy;
  const double log_a = std::log(static_cast<double>(overlaps.degeneracy));
  WorkAtoms atoms;
  atoms.n_initial = n_init;
  atoms.n_final = n_fin;
  atoms.work.resize(n_init * n_fin);
  atoms.prob.resize(n_init * n_fin);
  atoms.log_prob.resize(n_init * n_fin);
  for (std::size_t m = 0; m < n_fin; ++m) {
    for (std::size_t n = 0; n < n_init; ++n) {
      const std::size_t k = m * n_init + n;
      const double overlap = overlaps.entries(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
      atoms.work[k] = final_levels[m] - initial_levels[n];
      atoms.prob[k] = gibbs.weights[n] * overlap * inv_a;
      atoms.log_prob[k] = overlap > 0.0 ? gibbs.log_weights[n] + std::log(overlap) - log_a : kNegInf;
    }
  }
  return atoms;
}

WorkAtoms work_atoms(const SpectralData& initial, const SpectralData& final,
                     const OverlapTable& overlaps, double beta) {
  return work_atoms(initial.levels, final.levels, overlaps,
                    gibbs_weights(initial.levels, initial.multiplicity, beta));
}

CharacteristicCurve characteristic_single(const WorkAtoms& atoms, std::span<const double> u_grid) {
  CharacteristicCurve curve;
  curve.u.assign(u_grid.begin(), u_grid.end());
  curve.values.resize(u_grid.size());
  curve.source = CurveSource::single_draw;
  kernels::characteristic_parallel(atoms.work, atoms.prob, curve.u, curve.values);
  return curve;
}

Histogram work_histogram(const WorkAtoms& atoms, int n_bins, double lo, double hi) {
  if (n_bins < 1) throw InvalidSpec("work_histogram: n_bins must be >= 1");
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw InvalidSpec(fmt::format("work_histogram: empty range [{}, {}]", lo, hi));
  }
  Histogram hist;
  hist.lo = lo;
  hist.hi = hi;
  const double width = (hi - lo) / n_bins;
  hist.centers.resize(n_bins);
  for (int b = 0; b < n_bins; ++b) hist.centers[b] = lo + (b + 0.5) * width;
  std::vector<KahanSum> mass(n_bins);
  KahanSum outside;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    const double w = atoms.work[k];
    if (w < lo || w > hi) {
      outside.add(atoms.prob[k]);
      continue;
    }
    const int bin = std::min(static_cast<int>((w - lo) / width), n_bins - 1);
    mass[bin].add(atoms.prob[k]);
  }
  hist.values.resize(n_bins);
  for (int b = 0; b < n_bins; ++b) hist.values[b] = mass[b].value() / width;
  hist.outside_mass = outside.value();
  return hist;
}

double mass_outside(const WorkAtoms& atoms, double lo, double hi) {
  KahanSum outside;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    if (atoms.work[k] < lo || atoms.work[k] > hi) outside.add(atoms.prob[k]);
  }
  return outside.value();
}

JarzynskiCheck jarzynski_check(const WorkAtoms& atoms, double beta, double log_z0, double log_ztau) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw InvalidSpec("jarzynski_check: beta must be finite and > 0");
  }
  // log sum_k exp(log p_k - beta w_k), shifted by the largest exponent.
  double peak = kNegInf;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    peak = std::max(peak, atoms.log_prob[k] - beta * atoms.work[k]);
  }
  if (!std::isfinite(peak)) throw NumericError("jarzynski_check: no atom carries mass");
  KahanSum sum;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    sum.add(std::exp(atoms.log_prob[k] - beta * atoms.work[k] - peak));
  }
  JarzynskiCheck check;
  check.log_lhs = peak + std::log(sum.value());
  check.log_rhs = log_ztau - log_z0;
  check.lhs = std::exp(check.log_lhs);
  check.rhs = std::exp(check.log_rhs);
  check.rel_err = std::abs(std::expm1(check.log_lhs - check.log_rhs));
  return check;
}

WorkMoments work_moments(const WorkAtoms& atoms) {
  KahanSum total, first;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    total.add(atoms.prob[k]);
    first.add(atoms.prob[k] * atoms.work[k]);
  }
  const double mean = first.value() / total.value();
  KahanSum second;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    const double d = atoms.work[k] - mean;
    second.add(atoms.prob[k] * d * d);
  }
  return {mean, second.value() / total.value()};
}

std::vector<double> uniform_grid(double lo, double hi, int count) {
  if (count < 1) throw InvalidSpec("uniform_grid: count must be >= 1");
  if (count == 1) return {lo};
  if (!(hi > lo)) throw InvalidSpec("uniform_grid: need hi > lo");
  std::vector<double> grid(count);
  const double step = (hi - lo) / (count - 1);
  for (int i = 0; i < count; ++i) grid[i] = lo + step * i;
  grid.back() = hi;
  return grid;
}

}  // namespace rmtwork
