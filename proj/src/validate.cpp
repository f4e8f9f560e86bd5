#include "rmtwork/validate.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <exception>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "rmtwork/analytic.hpp"
#include "rmtwork/oracles.hpp"
#include "rmtwork/rng.hpp"
#include "rmtwork/special.hpp"
#include "rmtwork/spectra.hpp"
#include "rmtwork/workstats.hpp"

namespace rmtwork {

namespace {

// Reference quench used by several checks.
constexpr int kRefN = 300;
constexpr double kRefSpacing = 0.1283;

double rel_err(std::complex<double> got, std::complex<double> want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

CheckResult make(std::string name, double measured, double tol, std::string detail = {}) {
  return {std::move(name), measured, tol, measured < tol, std::move(detail)};
}

}  // namespace

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

CheckResult check_special_identities() {
  double worst = 0.0;
  double worst_x = 0.0;
  const int n = 400;
  for (int i = 0; i < n; ++i) {
    const double x = 1e-3 * std::pow(30.0 / 1e-3, i / (n - 1.0));
    const double e_i = rel_err(hyp0f1_2(x * x) * x, bessel_i1(2.0 * x));
    const double e_j = rel_err(hyp0f1_2(-x * x) * x, bessel_j1(2.0 * x));
    if (std::max(e_i, e_j) > worst) {
      worst = std::max(e_i, e_j);
      worst_x = x;
    }
  }
  return make("special_function_identities", worst, 1e-10,
              fmt::format("0F1(2;+-x^2) x vs I1/J1(2x), {} points on [1e-3, 30]; worst at x={:.6g}", n,
                          worst_x));
}

CheckResult check_quadrature_oracles() {
  double worst = 0.0;
  std::string where;
  for (double e : {0.0, 24.0}) {
    for (double beta : {0.0, 0.01, 0.1, 1.0}) {
      QuenchParams p{kRefN, kRefSpacing, kRefSpacing / 2, e, e, beta, {}};
      auto note = [&](double err, const char* what, double u) {
        if (err > worst) {
          worst = err;
          where = fmt::format("{} beta={} u={} E={}", what, beta, u, e);
        }
      };
      note(std::abs(avg_boltzmann(p) - oracle::avg_boltzmann(p)) / oracle::avg_boltzmann(p),
           "avg_boltzmann", 0.0);
      for (double u : {0.0, 0.1, 1.0, 3.0, 10.0}) {
        note(rel_err(avg_joint(p, u), oracle::avg_joint(p, u)), "avg_joint", u);
        note(rel_err(avg_phase(p, u, -1, Spectrum::initial),
                     oracle::avg_phase(p, u, -1, Spectrum::initial)),
             "avg_phase(initial)", u);
        note(rel_err(avg_phase(p, u, +1, Spectrum::final), oracle::avg_phase(p, u, +1, Spectrum::final)),
             "avg_phase(final)", u);
      }
    }
  }
  return make("quadrature_oracles", worst, 1e-8, "worst: " + where);
}

CheckResult check_normalization(std::uint64_t seed, int n_sets) {
  Engine engine = make_engine(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto log_uniform = [&](double lo, double hi) {
    return lo * std::pow(hi / lo, unit(engine));
  };
  double worst = 0.0;
  for (int i = 0; i < n_sets; ++i) {
    QuenchParams p;
    p.n_levels = static_cast<int>(log_uniform(2.0, 5000.0));
    p.s_init = log_uniform(1e-3, 1.0);
    p.s_final = log_uniform(1e-3, 1.0);
    p.e_init = -50.0 + 100.0 * unit(engine);
    p.e_final = -50.0 + 100.0 * unit(engine);
    // beta * a spans [1e-4, 1e4]; every tenth set sits at beta = 0
    p.beta = i % 10 == 0 ? 0.0 : log_uniform(1e-4, 1e4) / p.radius_init();
    worst = std::max(worst, std::abs(g_ensemble(p, 0.0) - 1.0));
  }
  return make("normalization_g0", worst, 1e-12, fmt::format("{} random parameter sets", n_sets));
}

std::vector<CheckResult> check_jarzynski(std::uint64_t seed, int n_levels) {
  std::vector<CheckResult> out;
  const double s = kRefSpacing * kRefN / n_levels;
  std::uint64_t stream = 0;
  for (const auto kind : {SymmetryKind::goe, SymmetryKind::gue, SymmetryKind::gse}) {
    const SymmetryClass cls(kind);
    const EnsembleSpec init{n_levels, cls, 0.0, s};
    const EnsembleSpec fin{n_levels, cls, 0.0, s / 2};
    const SpectralData si = eigendecompose(sample_matrix(init, stream_seed(seed, stream++)));
    const SpectralData sf = eigendecompose(sample_matrix(fin, stream_seed(seed, stream++)));
    const ShiftedSpectra shifted = shift_both_spectra(si.levels, sf.levels);
    const OverlapTable overlaps = overlap_table(si, sf);
    for (double beta : {0.01, 0.1, 1.0}) {
      const GibbsWeights g0 = gibbs_weights(shifted.initial, si.multiplicity, beta);
      const GibbsWeights gt = gibbs_weights(shifted.final, sf.multiplicity, beta);
      const WorkAtoms atoms = work_atoms(shifted.initial, shifted.final, overlaps, g0);
      const JarzynskiCheck j = jarzynski_check(atoms, beta, g0.log_partition, gt.log_partition);
      out.push_back(make(fmt::format("jarzynski_{}_beta{}", cls.name(), beta), j.rel_err, 1e-10,
                         fmt::format("N={} lhs={:.17g} rhs={:.17g}", n_levels, j.lhs, j.rhs)));
    }
  }
  return out;
}

CheckResult check_semicircle(const RadiusRule& radius, std::uint64_t seed, int n_levels) {
  const EnsembleSpec spec{n_levels, SymmetryClass(SymmetryKind::goe), 0.0, kRefSpacing * kRefN / n_levels};
  const std::vector<double> levels = eigenvalues(sample_matrix(spec, stream_seed(seed, 100)));
  const double d = semicircle_cdf_distance(levels, spec.mean_energy, radius(spec));
  return make("semicircle_cdf_distance", d, 0.02, fmt::format("GOE N={}", n_levels));
}

CheckResult check_central_spacing(std::uint64_t seed, int draws, int n_levels) {
  const EnsembleSpec spec{n_levels, SymmetryClass(SymmetryKind::goe), 0.0, kRefSpacing * kRefN / n_levels};
  std::vector<double> estimates(draws);
  std::vector<std::exception_ptr> failures(draws);
#pragma omp parallel for schedule(dynamic, 1)
  for (int k = 0; k < draws; ++k) {
    try {
      const auto levels = eigenvalues(sample_matrix(spec, stream_seed(seed, 200 + k)));
      estimates[k] = mean_spacing_center(levels, 0.1);
    } catch (...) {
      failures[k] = std::current_exception();
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  double mean = 0.0;
  for (double e : estimates) mean += e / draws;
  const double rel = std::abs(mean / spec.mean_spacing - 1.0);
  return make("central_mean_spacing", rel, 0.05,
              fmt::format("GOE N={}, {} draws, mean {:.6g} vs {:.6g}", n_levels, draws, mean,
                          spec.mean_spacing));
}

CheckResult check_kramers(std::uint64_t seed, int n_levels, int draws) {
  const EnsembleSpec spec{n_levels, SymmetryClass(SymmetryKind::gse), 0.0, kRefSpacing};
  double worst = 0.0;
  double defect = 0.0;
  for (int k = 0; k < draws; ++k) {
    const HermitianMatrix h = sample_matrix(spec, stream_seed(seed, 300 + k));
    defect = std::max(defect, self_dual_defect(h));
    worst = std::max(worst, kramers_max_gap(eigenvalues(h)));
  }
  CheckResult r = make("gse_kramers_pairs", worst, 1e-8,
                       fmt::format("GSE N={}, {} draws, self-dual defect {:.3g}", n_levels, draws, defect));
  r.passed = r.passed && defect == 0.0;
  return r;
}

std::vector<CheckResult> check_limits() {
  std::vector<CheckResult> out;
  {
    QuenchParams p{kRefN, kRefSpacing, kRefSpacing / 2, 24.0, 24.0, 1e-8, {}};
    double worst = 0.0;
    for (int i = 0; i <= 300; ++i) {
      const double u = 3.0 * i / 300.0;
      worst = std::max(worst, std::abs(g_ensemble(p, u) - g_beta0(p, u)));
    }
    out.push_back(make("limit_beta0", worst, 1e-6, "|g(beta=1e-8) - g_beta0| on u in [0,3]"));
  }
  {
    // Energies in units of the initial radius: a = 1, beta a = 100.
    QuenchParams p{kRefN, std::numbers::pi / (2.0 * kRefN), std::numbers::pi / (4.0 * kRefN), 0.0, 0.0, 100.0, {}};
    double worst = 0.0;
    for (int i = 0; i <= 100; ++i) {
      const double u = i / 100.0;
      worst = std::max(worst, rel_err(g_ensemble(p, u), g_betainf(p, u)));
    }
    out.push_back(make("limit_betainf", worst, 2e-2, "relative, a = 1, beta a = 100, u in [0,1]"));
  }
  return out;
}

ValidationReport run_validation(const ValidationOptions& options) {
  ValidationReport report;
  report.checks.push_back(check_special_identities());
  report.checks.push_back(check_quadrature_oracles());
  report.checks.push_back(check_normalization(options.seed));
  for (auto& c : check_jarzynski(options.seed)) report.checks.push_back(std::move(c));
  report.checks.push_back(check_semicircle(options.radius, options.seed));
  report.checks.push_back(check_central_spacing(options.seed, options.spacing_draws));
  report.checks.push_back(check_kramers(options.seed));
  for (auto& c : check_limits()) report.checks.push_back(std::move(c));
  return report;
}

}  // namespace rmtwork
