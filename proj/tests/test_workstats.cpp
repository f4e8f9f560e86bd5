#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "rmtwork/error.hpp"
#include "rmtwork/workstats.hpp"

using namespace rmtwork;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const SymmetryClass kGoe(SymmetryKind::goe);

WorkAtoms single_atom(double w) {
  WorkAtoms a;
  a.n_initial = a.n_final = 1;
  a.work = {w};
  a.prob = {1.0};
  a.log_prob = {0.0};
  return a;
}

struct Pair {
  SpectralData initial, final;
  OverlapTable overlaps;
};

Pair draw_pair(SymmetryClass cls, int n, std::uint64_t seed) {
  SpectralData i = eigendecompose(sample_matrix({n, cls, 0.0, 0.1283 * 300 / n}, seed));
  SpectralData f = eigendecompose(sample_matrix({n, cls, 0.0, 0.1283 * 150 / n}, seed + 1));
  OverlapTable t = overlap_table(i, f);
  return {std::move(i), std::move(f), std::move(t)};
}

double total(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

}  // namespace

TEST_CASE("Gibbs weights") {
  std::vector<double> levels(300);
  for (int k = 0; k < 300; ++k) levels[k] = 0.1 * k;
  const GibbsWeights hot = gibbs_weights(levels, 1, 0.0);
  for (double p : hot.weights) CHECK(p == doctest::Approx(1.0 / 300));

  const GibbsWeights cold = gibbs_weights(levels, 2, kInf);
  CHECK(cold.weights[0] == 1.0);
  CHECK(total(cold.weights) == 1.0);

  const double beta = 0.7;
  const GibbsWeights two = gibbs_weights(std::vector<double>{0.0, std::log(2.0) / beta}, 1, beta);
  CHECK(two.weights[0] == doctest::Approx(2.0 / 3));
  CHECK(two.weights[1] == doctest::Approx(1.0 / 3));
  CHECK(two.log_partition == doctest::Approx(std::log(1.5)));

  // degeneracy enters Z but not the per-level weights
  const GibbsWeights deg = gibbs_weights(std::vector<double>{0.0, 1.0}, 2, 1.0);
  CHECK(deg.log_partition == doctest::Approx(std::log(2.0 * (1.0 + std::exp(-1.0)))));
  CHECK(total(deg.weights) == doctest::Approx(1.0));

  // deep ground states: weights stay finite, log Z carries the scale
  const GibbsWeights deep = gibbs_weights(std::vector<double>{-1e4, -1e4 + 1.0}, 1, 1.0);
  CHECK(deep.log_partition == doctest::Approx(1e4 + std::log1p(std::exp(-1.0))));
  CHECK_THROWS_AS(gibbs_weights(levels, 1, -1.0), InvalidSpec);
  CHECK_THROWS_AS(gibbs_weights({}, 1, 1.0), InvalidSpec);
}

TEST_CASE("work atoms carry the full probability") {
  for (auto kind : {SymmetryKind::goe, SymmetryKind::gue, SymmetryKind::gse}) {
    const Pair p = draw_pair(SymmetryClass(kind), 60, 3);
    for (double beta : {0.0, 0.3, kInf}) {
      const WorkAtoms a = work_atoms(p.initial, p.final, p.overlaps, beta);
      CHECK(a.size() == 60u * 60u);
      CHECK(total(a.prob) == doctest::Approx(1.0).epsilon(1e-12));
      for (std::size_t k = 0; k < a.size(); k += 97) {
        const std::size_t m = k / a.n_initial, n = k % a.n_initial;
        CHECK(a.work[k] == doctest::Approx(p.final.levels[m] - p.initial.levels[n]));
      }
    }
  }
}

TEST_CASE("beta = 0 atoms have mean mass 1/N^2") {
  const Pair p = draw_pair(kGoe, 300, 10);
  const WorkAtoms a = work_atoms(p.initial, p.final, p.overlaps, 0.0);
  CHECK(total(a.prob) / a.size() == doctest::Approx(1.0 / (300.0 * 300.0)));
}

TEST_CASE("null quench: a single atom at zero") {
  const SpectralData s = eigendecompose(sample_matrix({50, kGoe, 0.0, 0.2}, 1));
  const OverlapTable t = overlap_table(s, s);
  for (double beta : {0.0, 0.5, kInf}) {
    const WorkAtoms a = work_atoms(s, s, t, beta);
    double at_zero = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (std::abs(a.work[k]) < 1e-12) at_zero += a.prob[k];
    }
    CHECK(at_zero == doctest::Approx(1.0).epsilon(1e-12));
    const Histogram h = work_histogram(a, 11, -1.0, 1.0);
    CHECK(h.values[5] * h.bin_width() == doctest::Approx(1.0).epsilon(1e-12));
  }
  const GibbsWeights g = gibbs_weights(s.levels, 1, 0.5);
  const JarzynskiCheck j = jarzynski_check(work_atoms(s.levels, s.levels, t, g), 0.5, g.log_partition, g.log_partition);
  CHECK(j.lhs == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(j.rhs == 1.0);
}

TEST_CASE("characteristic function of point masses") {
  const auto u = uniform_grid(0.0, 3.0, 7);
  const CharacteristicCurve zero = characteristic_single(single_atom(0.0), u);
  for (auto g : zero.values) CHECK(g == std::complex<double>(1.0, 0.0));
  const CharacteristicCurve shifted = characteristic_single(single_atom(2.5), u);
  for (std::size_t k = 0; k < u.size(); ++k) {
    CHECK(std::abs(shifted.values[k] - std::polar(1.0, 2.5 * u[k])) < 1e-15);
  }
  CHECK(shifted.source == CurveSource::single_draw);
  CHECK(to_string(CurveSource::ensemble_mean) == "ensemble_mean");
}

TEST_CASE("characteristic function of a draw is normalised and bounded") {
  const Pair p = draw_pair(SymmetryClass(SymmetryKind::gue), 80, 4);
  const WorkAtoms a = work_atoms(p.initial, p.final, p.overlaps, 0.1);
  const CharacteristicCurve g = characteristic_single(a, uniform_grid(0.0, 3.0, 64));
  CHECK(std::abs(g.values[0] - 1.0) < 1e-12);
  for (auto v : g.values) CHECK(std::abs(v) <= 1.0 + 1e-12);
}

TEST_CASE("histograms") {
  const Histogram one = work_histogram(single_atom(0.3), 4, 0.0, 1.0);
  CHECK(one.values == std::vector<double>{0.0, 4.0, 0.0, 0.0});
  CHECK(one.outside_mass == 0.0);
  const Histogram out = work_histogram(single_atom(3.0), 4, 0.0, 1.0);
  CHECK(out.outside_mass == 1.0);
  CHECK(out.mass_outside(0.0, 1.0) == 1.0);
  CHECK(one.mass_outside(0.25, 0.5) == doctest::Approx(0.0));
  CHECK(one.mass_outside(0.25, 0.375) == doctest::Approx(0.5));
  CHECK(mass_outside(single_atom(3.0), 0.0, 1.0) == 1.0);
  CHECK_THROWS_AS(work_histogram(single_atom(0.0), 0, 0.0, 1.0), InvalidSpec);
  CHECK_THROWS_AS(work_histogram(single_atom(0.0), 3, 1.0, 1.0), InvalidSpec);
}

TEST_CASE("moments") {
  const WorkMoments one = work_moments(single_atom(1.5));
  CHECK(one.mean == 1.5);
  CHECK(one.variance == 0.0);
  WorkAtoms two;
  two.n_initial = 2;
  two.n_final = 1;
  two.work = {-1.0, 1.0};
  two.prob = {0.5, 0.5};
  two.log_prob = {std::log(0.5), std::log(0.5)};
  const WorkMoments m = work_moments(two);
  CHECK(m.mean == 0.0);
  CHECK(m.variance == 1.0);
}

TEST_CASE("Jarzynski equality holds per draw") {
  for (auto kind : {SymmetryKind::goe, SymmetryKind::gue, SymmetryKind::gse}) {
    const Pair p = draw_pair(SymmetryClass(kind), 100, 20);
    for (double beta : {0.01, 0.1, 1.0}) {
      const GibbsWeights gi = gibbs_weights(p.initial.levels, p.initial.multiplicity, beta);
      const GibbsWeights gf = gibbs_weights(p.final.levels, p.final.multiplicity, beta);
      const WorkAtoms a = work_atoms(p.initial.levels, p.final.levels, p.overlaps, gi);
      const JarzynskiCheck j = jarzynski_check(a, beta, gi.log_partition, gf.log_partition);
      CHECK(j.rel_err < 1e-10);
    }
  }
}

TEST_CASE("Jarzynski at low temperature with shifted spectra") {
  const Pair p = draw_pair(kGoe, 300, 30);
  const ShiftedSpectra s = shift_both_spectra(p.initial.levels, p.final.levels);
  for (double beta : {1.0, 20.0}) {
    const GibbsWeights gi = gibbs_weights(s.initial, 1, beta);
    const GibbsWeights gf = gibbs_weights(s.final, 1, beta);
    const JarzynskiCheck j = jarzynski_check(work_atoms(s.initial, s.final, p.overlaps, gi), beta,
                                             gi.log_partition, gf.log_partition);
    CHECK(j.rel_err < 1e-10);
    CHECK(std::isfinite(j.log_lhs));
  }
  CHECK_THROWS_AS(jarzynski_check(single_atom(0.0), 0.0, 0.0, 0.0), InvalidSpec);
  CHECK_THROWS_AS(jarzynski_check(single_atom(0.0), kInf, 0.0, 0.0), InvalidSpec);
}

TEST_CASE("uniform grid") {
  const auto g = uniform_grid(0.0, 3.0, 4);
  CHECK(g == std::vector<double>{0.0, 1.0, 2.0, 3.0});
  CHECK(uniform_grid(2.0, 5.0, 1) == std::vector<double>{2.0});
  CHECK_THROWS_AS(uniform_grid(0.0, 1.0, 0), InvalidSpec);
}
