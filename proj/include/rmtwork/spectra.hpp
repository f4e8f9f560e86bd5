#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "rmtwork/ensembles.hpp"
#include "rmtwork/histogram.hpp"

namespace rmtwork {

/// Eigendecomposition grouped by degenerate level. Column k*multiplicity + g
/// of `vectors` is the g-th basis vector of level k.
struct SpectralData {
  SymmetryClass symmetry;
  std::vector<double> levels;  // strictly ascending
  int multiplicity = 1;
  Eigen::MatrixXcd vectors;

  std::size_t size() const { return levels.size(); }
};

/// entry(m, n) = sum over degeneracy labels of |<final_m | initial_n>|^2.
/// Rows index final levels, columns initial levels.
struct OverlapTable {
  int degeneracy = 1;
  Eigen::MatrixXd entries;

  Eigen::Index size() const { return entries.rows(); }
  double operator()(Eigen::Index m, Eigen::Index n) const { return entries(m, n); }
};

/// Full decomposition. Throws ContractViolation for a non-Hermitian input and
/// NumericError if the eigensolver fails.
SpectralData eigendecompose(const HermitianMatrix& h);

/// All matrix eigenvalues in ascending order (2N of them for GSE).
std::vector<double> eigenvalues(const HermitianMatrix& h);

/// Merge consecutive runs of `multiplicity` sorted eigenvalues into levels.
std::vector<double> group_levels(std::span<const double> sorted_eigs, int multiplicity);

/// Largest |e_{2k} - e_{2k+1}| / max|e| over consecutive pairs.
double kramers_max_gap(std::span<const double> sorted_eigs);

/// Level counts over n_bins uniform bins on [min, max]; each eigenvalue
/// counts 1/multiplicity, so the total is the number of distinct levels.
Histogram empirical_level_density(std::span<const double> levels, int multiplicity, int n_bins);

/// Freedman-Diaconis bin count clamped to [20, 200].
int default_bin_count(std::span<const double> levels);

/// Mean nearest-neighbour spacing among the central `window_fraction` of levels.
double mean_spacing_center(std::span<const double> levels, double window_fraction = 0.1);

/// sup_x |F_empirical(x) - F_semicircle(x)| for levels centred at `centre`.
double semicircle_cdf_distance(std::span<const double> levels, double centre, double radius);

OverlapTable overlap_table(const SpectralData& initial, const SpectralData& final);

}  // namespace rmtwork
