#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rmtwork/analytic.hpp"
#include "rmtwork/ensembles.hpp"
#include "rmtwork/histogram.hpp"
#include "rmtwork/workstats.hpp"

namespace rmtwork {

struct GridSpec {
  double min = 0.0;
  double max = 3.0;
  int count = 512;

  std::vector<double> points() const;
};

struct HistSpec {
  int bins = 100;
  /// When unset the range is centred on <E~> - <E> and spans the combined
  /// semicircle support with a 10% margin.
  std::optional<std::pair<double, double>> range;
};

/// A sudden quench between two independent draws of the same symmetry class.
struct QuenchExperiment {
  EnsembleSpec initial;
  EnsembleSpec final;
  double beta = 0.0;
  int n_draws = 1;
  std::uint64_t master_seed = 1;
  GridSpec u_grid;
  HistSpec w_hist;
  bool shift_to_ground_zero = true;

  void validate() const;
  /// Seeds for draw k: streams 2k (initial) and 2k+1 (final) of master_seed.
  std::pair<std::uint64_t, std::uint64_t> draw_seeds(std::size_t draw_index) const;
  /// Parameters for the analytic curves given the applied spectrum offset.
  QuenchParams analytic_params(double offset) const;
  std::pair<double, double> histogram_range() const;
};

struct SpectralDiagnostics {
  double spacing_initial = 0.0;  // central-window estimate
  double spacing_final = 0.0;
  double radius_initial = 0.0;   // (max - min)/2 of the raw spectrum
  double radius_final = 0.0;
};

struct DrawReport {
  std::size_t draw_index = 0;
  std::uint64_t seed_initial = 0;
  std::uint64_t seed_final = 0;
  double offset = 0.0;
  CharacteristicCurve g;
  Histogram p;
  std::optional<JarzynskiCheck> jarzynski;  // absent for beta = 0 or inf
  WorkMoments moments;
  SpectralDiagnostics diagnostics;
  QuenchParams analytic;
  /// sqrt(mean_u |G_single(u) - G_analytic(u)|^2) over the u-grid.
  double rms_vs_analytic = 0.0;
};

struct EnsembleReport {
  CharacteristicCurve mean;
  /// Per-u variance E|G - mean|^2 across draws (0 for a single draw).
  std::vector<double> variance;
  Histogram mean_p;
  double mean_offset = 0.0;
  double max_jarzynski_rel_err = 0.0;
  double mean_jarzynski_rel_err = 0.0;
  std::vector<double> rms_per_draw;
  std::vector<std::uint64_t> seeds;  // initial/final interleaved
};

struct ErgodicityReport {
  std::vector<int> n_list;
  std::vector<double> s_init;
  std::vector<double> s_final;
  std::vector<double> beta;
  std::vector<int> draws;
  std::vector<double> rms_mean;
  std::vector<double> rms_stderr;
  std::vector<std::vector<double>> rms_per_draw;
};

DrawReport run_single_draw(const QuenchExperiment& exp, std::size_t draw_index);

/// Runs exp.n_draws draws in parallel and reduces them in draw order, so the
/// result does not depend on the thread count.
EnsembleReport run_ensemble(const QuenchExperiment& exp);

/// For each N in n_list, rescale <s>, <s~> by N0/N (N0 = base N) so N<s> is
/// fixed, optionally rescale beta to hold N_eff/N fixed, and record the RMS
/// deviation of single-draw G from the analytic curve over draws_per_n draws.
ErgodicityReport ergodicity_study(const QuenchExperiment& base, const std::vector<int>& n_list,
                                  int draws_per_n, bool hold_neff_ratio = true);

}  // namespace rmtwork
