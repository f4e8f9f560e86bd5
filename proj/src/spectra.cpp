#include "rmtwork/spectra.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "rmtwork/analytic.hpp"
#include "rmtwork/error.hpp"

namespace rmtwork {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kKramersMergeTol = 1e-6;

void require_hermitian(const HermitianMatrix& h) {
  if (h.data.rows() != h.data.cols()) throw ContractViolation("eigendecompose: matrix not square");
  if (h.data.rows() != static_cast<Eigen::Index>(h.symmetry.matrix_dim_factor()) * h.n_levels) {
    throw ContractViolation("eigendecompose: dimension does not match symmetry class and N");
  }
  if (h.data.size() == 0) throw ContractViolation("eigendecompose: empty matrix");
  const double scale = h.data.cwiseAbs().maxCoeff();
  const double defect = (h.data - h.data.adjoint()).cwiseAbs().maxCoeff();
  if (defect > kHermitianTol * std::max(scale, 1e-300)) {
    throw ContractViolation(
        fmt::format("eigendecompose: matrix is not Hermitian (max asymmetry {:.3e}, scale {:.3e})",
                    defect, scale));
  }
}

bool is_real(const HermitianMatrix& h) {
  return h.symmetry.kind() == SymmetryKind::goe && h.data.imag().cwiseAbs().maxCoeff() == 0.0;
}

[[noreturn]] void solver_failed(const HermitianMatrix& h) {
  throw NumericError(fmt::format("eigensolver did not converge (dim {}, class {}, max |H_ij| {:.3e})",
                                 h.dim(), h.symmetry.name(), h.data.cwiseAbs().maxCoeff()));
}

void check_kramers(std::span<const double> eigs, int multiplicity) {
  if (multiplicity == 2 && kramers_max_gap(eigs) > kKramersMergeTol) {
    throw ContractViolation("eigendecompose: GSE eigenvalues are not Kramers paired");
  }
}

}  // namespace

std::vector<double> eigenvalues(const HermitianMatrix& h) {
  require_hermitian(h);
  if (is_real(h)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.data.real(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) solver_failed(h);
    const auto& e = solver.eigenvalues();
    return {e.data(), e.data() + e.size()};
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.data, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) solver_failed(h);
  const auto& e = solver.eigenvalues();
  return {e.data(), e.data() + e.size()};
}

SpectralData eigendecompose(const HermitianMatrix& h) {
  require_hermitian(h);
  SpectralData out;
  out.symmetry = h.symmetry;
  out.multiplicity = h.symmetry.degeneracy();
  std::vector<double> eigs;
  if (is_real(h)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.data.real());
    if (solver.info() != Eigen::Success) solver_failed(h);
    eigs.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + h.dim());
    out.vectors = solver.eigenvectors().cast<std::complex<double>>();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.data);
    if (solver.info() != Eigen::Success) solver_failed(h);
    eigs.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + h.dim());
    out.vectors = solver.eigenvectors();
  }
  check_kramers(eigs, out.multiplicity);
  out.levels = group_levels(eigs, out.multiplicity);
  return out;
}

std::vector<double> group_levels(std::span<const double> sorted_eigs, int multiplicity) {
  if (multiplicity < 1 || sorted_eigs.size() % static_cast<std::size_t>(multiplicity) != 0) {
    throw ContractViolation("group_levels: eigenvalue count is not a multiple of the multiplicity");
  }
  std::vector<double> levels(sorted_eigs.size() / multiplicity);
  for (std::size_t k = 0; k < levels.size(); ++k) {
    double sum = 0.0;
    for (int g = 0; g < multiplicity; ++g) sum += sorted_eigs[k * multiplicity + g];
    levels[k] = sum / multiplicity;
  }
  return levels;
}

double kramers_max_gap(std::span<const double> sorted_eigs) {
  if (sorted_eigs.size() % 2 != 0) throw ContractViolation("kramers_max_gap: odd eigenvalue count");
  if (sorted_eigs.empty()) return 0.0;
  const double scale = std::max({std::abs(sorted_eigs.front()), std::abs(sorted_eigs.back()), 1e-300});
  double gap = 0.0;
  for (std::size_t k = 0; k + 1 < sorted_eigs.size(); k += 2) {
    gap = std::max(gap, std::abs(sorted_eigs[k + 1] - sorted_eigs[k]));
  }
  return gap / scale;
}

Histogram empirical_level_density(std::span<const double> levels, int multiplicity, int n_bins) {
  if (n_bins < 1) throw InvalidSpec("empirical_level_density: n_bins must be >= 1");
  if (levels.size() < 2) throw InvalidSpec("empirical_level_density: need at least 2 levels");
  if (multiplicity < 1) throw InvalidSpec("empirical_level_density: multiplicity must be >= 1");
  const auto [lo_it, hi_it] = std::minmax_element(levels.begin(), levels.end());
  Histogram hist;
  hist.lo = *lo_it;
  hist.hi = *hi_it;
  if (!(hist.hi > hist.lo)) throw InvalidSpec("empirical_level_density: all levels coincide");
  const double width = (hist.hi - hist.lo) / n_bins;
  hist.values.assign(n_bins, 0.0);
  hist.centers.resize(n_bins);
  for (int b = 0; b < n_bins; ++b) hist.centers[b] = hist.lo + (b + 0.5) * width;
  const double weight = 1.0 / multiplicity;
  for (double e : levels) {
    auto bin = static_cast<int>((e - hist.lo) / width);
    hist.values[std::clamp(bin, 0, n_bins - 1)] += weight;
  }
  return hist;
}

int default_bin_count(std::span<const double> levels) {
  if (levels.size() < 4) return 20;
  std::vector<double> sorted(levels.begin(), levels.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = sorted.size();
  const double iqr = sorted[(3 * n) / 4] - sorted[n / 4];
  const double range = sorted.back() - sorted.front();
  if (!(iqr > 0.0)) return 20;
  const double h = 2.0 * iqr / std::cbrt(static_cast<double>(n));
  return std::clamp(static_cast<int>(std::ceil(range / h)), 20, 200);
}

double mean_spacing_center(std::span<const double> levels, double window_fraction) {
  if (!(window_fraction > 0.0) || window_fraction > 1.0) {
    throw InvalidSpec("mean_spacing_center: window_fraction must lie in (0, 1]");
  }
  const std::size_t n = levels.size();
  const auto k = static_cast<std::size_t>(std::llround(window_fraction * static_cast<double>(n)));
  if (k < 2) {
    throw InvalidSpec(fmt::format("mean_spacing_center: window holds {} levels, need >= 2", k));
  }
  const std::size_t start = (n - k) / 2;
  return (levels[start + k - 1] - levels[start]) / static_cast<double>(k - 1);
}

double semicircle_cdf_distance(std::span<const double> levels, double centre, double radius) {
  if (levels.empty()) throw InvalidSpec("semicircle_cdf_distance: no levels");
  std::vector<double> sorted(levels.begin(), levels.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = semicircle_cdf(radius, sorted[i] - centre);
    d = std::max({d, std::abs(f - i / n), std::abs(f - (i + 1) / n)});
  }
  return d;
}

OverlapTable overlap_table(const SpectralData& initial, const SpectralData& final) {
  if (initial.vectors.rows() != final.vectors.rows() || initial.size() != final.size()) {
    throw ContractViolation(fmt::format("overlap_table: dimension mismatch ({} vs {})",
                                        initial.vectors.rows(), final.vectors.rows()));
  }
  if (initial.multiplicity != final.multiplicity) {
    throw ContractViolation("overlap_table: multiplicity mismatch");
  }
  const int a = initial.multiplicity;
  Eigen::MatrixXd squared;
  if (initial.symmetry.kind() == SymmetryKind::goe && final.symmetry.kind() == SymmetryKind::goe) {
    squared = (final.vectors.real().transpose() * initial.vectors.real()).array().square().matrix();
  } else {
    squared = (final.vectors.adjoint() * initial.vectors).cwiseAbs2();
  }
  const auto n = static_cast<Eigen::Index>(initial.size());
  OverlapTable table{a, Eigen::MatrixXd(n, n)};
  if (a == 1) {
    table.entries = std::move(squared);
    return table;
  }
  for (Eigen::Index col = 0; col < n; ++col) {
    for (Eigen::Index row = 0; row < n; ++row) {
      table.entries(row, col) = squared.block(row * a, col * a, a, a).sum();
    }
  }
  return table;
}

}  // namespace rmtwork
