#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace rmtwork {

enum class SymmetryKind { goe, gue, gse };

/// One of the three Gaussian symmetry classes.
class SymmetryClass {
 public:
  constexpr SymmetryClass() = default;
  constexpr explicit SymmetryClass(SymmetryKind kind) : kind_(kind) {}

  static SymmetryClass from_dyson_index(int beta_e);
  static SymmetryClass parse(std::string_view name);  // "goe" | "gue" | "gse", any case

  constexpr SymmetryKind kind() const { return kind_; }
  /// Real parameters per matrix element: 1, 2, 4.
  constexpr int dyson_index() const {
    return kind_ == SymmetryKind::goe ? 1 : kind_ == SymmetryKind::gue ? 2 : 4;
  }
  /// Multiplicity of every level (Kramers degeneracy for GSE).
  constexpr int degeneracy() const { return kind_ == SymmetryKind::gse ? 2 : 1; }
  constexpr int matrix_dim_factor() const { return degeneracy(); }
  std::string name() const;

  friend constexpr bool operator==(SymmetryClass, SymmetryClass) = default;

 private:
  SymmetryKind kind_ = SymmetryKind::goe;
};

/// A Gaussian ensemble in the {N, beta_e, <E>, <s>} parameterisation.
struct EnsembleSpec {
  int n_levels = 0;
  SymmetryClass symmetry;
  double mean_energy = 0.0;
  double mean_spacing = 0.0;

  /// Throws InvalidSpec unless N >= 1 and <s> > 0 (finite).
  void validate() const;
  /// sqrt(2 N beta_e) sigma.
  double radius_from_sigma() const;
  /// 2 N <s> / pi.
  double radius() const;
  int matrix_dim() const { return symmetry.matrix_dim_factor() * n_levels; }
};

/// sigma = <s> sqrt(2N/beta_e) / pi.
double spacing_to_sigma(const EnsembleSpec& spec);
/// <s> = pi sigma sqrt(beta_e / 2N).
double sigma_to_spacing(int n_levels, SymmetryClass symmetry, double sigma);

struct HermitianMatrix {
  SymmetryClass symmetry;
  int n_levels = 0;
  Eigen::MatrixXcd data;  // dim = matrix_dim_factor * n_levels

  Eigen::Index dim() const { return data.rows(); }
};

/// Draw from density proportional to exp(-Tr (H - <E>)^2 / (2 sigma^2)), the
/// trace taken over quaternion blocks for GSE. Same (spec, seed) gives a
/// bit-identical matrix.
HermitianMatrix sample_matrix(const EnsembleSpec& spec, std::uint64_t seed);

/// Largest absolute deviation from the self-dual block form
/// [[A, B], [-conj B, conj A]] with A Hermitian and B antisymmetric.
double self_dual_defect(const HermitianMatrix& h);

struct ShiftedSpectra {
  std::vector<double> initial;
  std::vector<double> final;
  double offset = 0.0;
};

/// Shift both spectra by -min(initial) so the initial ground state sits at 0.
ShiftedSpectra shift_both_spectra(std::span<const double> initial_eigs,
                                  std::span<const double> final_eigs);

}  // namespace rmtwork
