#include "rmtwork/quench.hpp"

#include <cmath>
#include <exception>
#include <limits>

#include <fmt/format.h>

#include "rmtwork/error.hpp"
#include "rmtwork/rng.hpp"
#include "rmtwork/spectra.hpp"

namespace rmtwork {

namespace {

double central_spacing_or_nan(std::span<const double> levels) {
  if (levels.size() < 20) return std::numeric_limits<double>::quiet_NaN();
  return mean_spacing_center(levels, 0.1);
}

double rms_deviation(const CharacteristicCurve& curve, const QuenchParams& p) {
  if (curve.u.empty()) return 0.0;
  double acc = 0.0;
  for (std::size_t k = 0; k < curve.u.size(); ++k) {
    acc += std::norm(curve.values[k] - g_ensemble(p, curve.u[k]));
  }
  return std::sqrt(acc / static_cast<double>(curve.u.size()));
}

}  // namespace

std::vector<double> GridSpec::points() const { return uniform_grid(min, max, count); }

void QuenchExperiment::validate() const {
  initial.validate();
  final.validate();
  if (!(initial.symmetry == final.symmetry)) {
    throw InvalidSpec("quench: initial and final ensembles must share a symmetry class");
  }
  if (initial.n_levels != final.n_levels) {
    throw InvalidSpec("quench: initial and final ensembles must have the same N");
  }
  if (std::isnan(beta) || beta < 0.0) throw InvalidSpec("quench: beta must be >= 0");
  if (n_draws < 1) throw InvalidSpec("quench: n_draws must be >= 1");
  if (u_grid.count < 1 || (u_grid.count > 1 && !(u_grid.max > u_grid.min))) {
    throw InvalidSpec("quench: u grid needs count >= 1 and max > min");
  }
  if (w_hist.bins < 1) throw InvalidSpec("quench: histogram needs at least one bin");
  if (w_hist.range && !(w_hist.range->second > w_hist.range->first)) {
    throw InvalidSpec("quench: empty histogram range");
  }
}

std::pair<std::uint64_t, std::uint64_t> QuenchExperiment::draw_seeds(std::size_t draw_index) const {
  return {stream_seed(master_seed, 2 * draw_index), stream_seed(master_seed, 2 * draw_index + 1)};
}

QuenchParams QuenchExperiment::analytic_params(double offset) const {
  QuenchParams p;
  p.n_levels = initial.n_levels;
  p.s_init = initial.mean_spacing;
  p.s_final = final.mean_spacing;
  p.beta = beta;
  if (shift_to_ground_zero) {
    p.e_init = initial.mean_energy + offset;
    p.e_final = final.mean_energy + offset;
    p.ground_energy = 0.0;
  } else {
    p.e_init = initial.mean_energy;
    p.e_final = final.mean_energy;
  }
  return p;
}

std::pair<double, double> QuenchExperiment::histogram_range() const {
  if (w_hist.range) return *w_hist.range;
  const double centre = final.mean_energy - initial.mean_energy;
  const double reach = 1.1 * (initial.radius() + final.radius());
  return {centre - reach, centre + reach};
}

DrawReport run_single_draw(const QuenchExperiment& exp, std::size_t draw_index) {
  exp.validate();
  DrawReport report;
  report.draw_index = draw_index;
  std::tie(report.seed_initial, report.seed_final) = exp.draw_seeds(draw_index);

  const SpectralData initial = eigendecompose(sample_matrix(exp.initial, report.seed_initial));
  const SpectralData final = eigendecompose(sample_matrix(exp.final, report.seed_final));

  report.diagnostics.spacing_initial = central_spacing_or_nan(initial.levels);
  report.diagnostics.spacing_final = central_spacing_or_nan(final.levels);
  report.diagnostics.radius_initial = 0.5 * (initial.levels.back() - initial.levels.front());
  report.diagnostics.radius_final = 0.5 * (final.levels.back() - final.levels.front());

  std::vector<double> levels_init = initial.levels;
  std::vector<double> levels_final = final.levels;
  if (exp.shift_to_ground_zero) {
    ShiftedSpectra shifted = shift_both_spectra(levels_init, levels_final);
    levels_init = std::move(shifted.initial);
    levels_final = std::move(shifted.final);
    report.offset = shifted.offset;
  }

  const OverlapTable overlaps = overlap_table(initial, final);
  const int a = initial.multiplicity;
  const GibbsWeights gibbs_init = gibbs_weights(levels_init, a, exp.beta);
  const WorkAtoms atoms = work_atoms(levels_init, levels_final, overlaps, gibbs_init);

  report.g = characteristic_single(atoms, exp.u_grid.points());
  report.g.metadata = {{"draw_index", static_cast<double>(draw_index)},
                       {"beta", exp.beta},
                       {"n_levels", static_cast<double>(exp.initial.n_levels)},
                       {"offset", report.offset}};
  const auto [lo, hi] = exp.histogram_range();
  report.p = work_histogram(atoms, exp.w_hist.bins, lo, hi);
  if (exp.beta > 0.0 && std::isfinite(exp.beta)) {
    const GibbsWeights gibbs_final = gibbs_weights(levels_final, a, exp.beta);
    report.jarzynski =
        jarzynski_check(atoms, exp.beta, gibbs_init.log_partition, gibbs_final.log_partition);
  }
  report.moments = work_moments(atoms);
  report.analytic = exp.analytic_params(report.offset);
  report.rms_vs_analytic = rms_deviation(report.g, report.analytic);
  return report;
}

EnsembleReport run_ensemble(const QuenchExperiment& exp) {
  exp.validate();
  const auto n = static_cast<std::size_t>(exp.n_draws);
  std::vector<DrawReport> draws(n);
  std::vector<std::exception_ptr> failures(n);
  const auto signed_n = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t k = 0; k < signed_n; ++k) {
    try {
      draws[k] = run_single_draw(exp, static_cast<std::size_t>(k));
    } catch (...) {
      failures[k] = std::current_exception();
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  EnsembleReport out;
  const std::size_t n_u = draws.front().g.u.size();
  const std::size_t n_bins = draws.front().p.values.size();
  out.mean.u = draws.front().g.u;
  out.mean.values.assign(n_u, {0.0, 0.0});
  out.mean.source = CurveSource::ensemble_mean;
  out.mean_p = draws.front().p;
  std::fill(out.mean_p.values.begin(), out.mean_p.values.end(), 0.0);
  out.mean_p.outside_mass = 0.0;

  const double inv_n = 1.0 / static_cast<double>(n);
  double jarzynski_sum = 0.0;
  for (const DrawReport& d : draws) {
    for (std::size_t k = 0; k < n_u; ++k) out.mean.values[k] += d.g.values[k] * inv_n;
    for (std::size_t b = 0; b < n_bins; ++b) out.mean_p.values[b] += d.p.values[b] * inv_n;
    out.mean_p.outside_mass += d.p.outside_mass * inv_n;
    out.mean_offset += d.offset * inv_n;
    if (d.jarzynski) {
      out.max_jarzynski_rel_err = std::max(out.max_jarzynski_rel_err, d.jarzynski->rel_err);
      jarzynski_sum += d.jarzynski->rel_err;
    }
    out.rms_per_draw.push_back(d.rms_vs_analytic);
    out.seeds.push_back(d.seed_initial);
    out.seeds.push_back(d.seed_final);
  }
  out.mean_jarzynski_rel_err = jarzynski_sum * inv_n;
  out.variance.assign(n_u, 0.0);
  for (const DrawReport& d : draws) {
    for (std::size_t k = 0; k < n_u; ++k) {
      out.variance[k] += std::norm(d.g.values[k] - out.mean.values[k]) * inv_n;
    }
  }
  out.mean.metadata = {{"n_draws", static_cast<double>(n)},
                       {"beta", exp.beta},
                       {"n_levels", static_cast<double>(exp.initial.n_levels)},
                       {"mean_offset", out.mean_offset}};
  return out;
}

ErgodicityReport ergodicity_study(const QuenchExperiment& base, const std::vector<int>& n_list,
                                  int draws_per_n, bool hold_neff_ratio) {
  base.validate();
  if (n_list.empty()) throw InvalidSpec("ergodicity: empty N list");
  if (draws_per_n < 1) throw InvalidSpec("ergodicity: draws per N must be >= 1");
  for (std::size_t i = 1; i < n_list.size(); ++i) {
    if (n_list[i] < n_list[i - 1]) throw InvalidSpec("ergodicity: N list must be ascending");
  }
  const double n0 = base.initial.n_levels;
  ErgodicityReport report;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    const int n = n_list[i];
    if (n < 1) throw InvalidSpec(fmt::format("ergodicity: invalid N {}", n));
    QuenchExperiment exp = base;
    exp.initial.n_levels = n;
    exp.final.n_levels = n;
    exp.initial.mean_spacing = base.initial.mean_spacing * n0 / n;
    exp.final.mean_spacing = base.final.mean_spacing * n0 / n;
    if (hold_neff_ratio && base.beta > 0.0 && std::isfinite(base.beta)) {
      // N_eff/N = 1/(beta <s> N)
      exp.beta = base.beta * (base.initial.mean_spacing * n0) / (exp.initial.mean_spacing * n);
    }
    exp.n_draws = draws_per_n;
    exp.master_seed = stream_seed(base.master_seed, 0x1000 + i);
    const EnsembleReport ens = run_ensemble(exp);

    double mean = 0.0;
    for (double r : ens.rms_per_draw) mean += r;
    mean /= draws_per_n;
    double var = 0.0;
    for (double r : ens.rms_per_draw) var += (r - mean) * (r - mean);
    const double stderr_ =
        draws_per_n > 1 ? std::sqrt(var / (draws_per_n - 1) / draws_per_n) : 0.0;

    report.n_list.push_back(n);
    report.s_init.push_back(exp.initial.mean_spacing);
    report.s_final.push_back(exp.final.mean_spacing);
    report.beta.push_back(exp.beta);
    report.draws.push_back(draws_per_n);
    report.rms_mean.push_back(mean);
    report.rms_stderr.push_back(stderr_);
    report.rms_per_draw.push_back(ens.rms_per_draw);
  }
  return report;
}

}  // namespace rmtwork
