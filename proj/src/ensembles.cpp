#include "rmtwork/ensembles.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "rmtwork/error.hpp"
#include "rmtwork/rng.hpp"

namespace rmtwork {

SymmetryClass SymmetryClass::from_dyson_index(int beta_e) {
  switch (beta_e) {
    case 1: return SymmetryClass(SymmetryKind::goe);
    case 2: return SymmetryClass(SymmetryKind::gue);
    case 4: return SymmetryClass(SymmetryKind::gse);
    default: throw InvalidSpec(fmt::format("Dyson index must be 1, 2 or 4 (got {})", beta_e));
  }
}

SymmetryClass SymmetryClass::parse(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "goe") return SymmetryClass(SymmetryKind::goe);
  if (lower == "gue") return SymmetryClass(SymmetryKind::gue);
  if (lower == "gse") return SymmetryClass(SymmetryKind::gse);
  throw InvalidSpec(fmt::format("unknown symmetry class '{}'", name));
}

std::string SymmetryClass::name() const {
  switch (kind_) {
    case SymmetryKind::goe: return "goe";
    case SymmetryKind::gue: return "gue";
    case SymmetryKind::gse: return "gse";
  }
  return "?";
}

void EnsembleSpec::validate() const {
  if (n_levels < 1) throw InvalidSpec(fmt::format("ensemble: N must be >= 1 (got {})", n_levels));
  if (!(mean_spacing > 0.0) || !std::isfinite(mean_spacing)) {
    throw InvalidSpec(fmt::format("ensemble: mean spacing must be positive (got {})", mean_spacing));
  }
  if (!std::isfinite(mean_energy)) throw InvalidSpec("ensemble: mean energy must be finite");
}

double EnsembleSpec::radius_from_sigma() const {
  return std::sqrt(2.0 * n_levels * symmetry.dyson_index()) * spacing_to_sigma(*this);
}

double EnsembleSpec::radius() const { return 2.0 * n_levels * mean_spacing / std::numbers::pi; }

double spacing_to_sigma(const EnsembleSpec& spec) {
  spec.validate();
  return spec.mean_spacing * std::sqrt(2.0 * spec.n_levels / spec.symmetry.dyson_index()) /
         std::numbers::pi;
}

double sigma_to_spacing(int n_levels, SymmetryClass symmetry, double sigma) {
  if (n_levels < 1 || !(sigma > 0.0)) throw InvalidSpec("sigma_to_spacing: need N >= 1, sigma > 0");
  return std::numbers::pi * sigma * std::sqrt(symmetry.dyson_index() / (2.0 * n_levels));
}

HermitianMatrix sample_matrix(const EnsembleSpec& spec, std::uint64_t seed) {
  const double sigma = spacing_to_sigma(spec);
  Engine engine = make_engine(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int n = spec.n_levels;
  const double diag_sd = sigma;
  const double off_sd = sigma / std::numbers::sqrt2;  // each real component

  HermitianMatrix h{spec.symmetry, n, Eigen::MatrixXcd::Zero(spec.matrix_dim(), spec.matrix_dim())};
  auto& m = h.data;

  switch (spec.symmetry.kind()) {
    case SymmetryKind::goe:
      for (int j = 0; j < n; ++j) {
        m(j, j) = diag_sd * normal(engine);
        for (int i = j + 1; i < n; ++i) {
          const double x = off_sd * normal(engine);
          m(i, j) = x;
          m(j, i) = x;
        }
      }
      break;
    case SymmetryKind::gue:
      for (int j = 0; j < n; ++j) {
        m(j, j) = diag_sd * normal(engine);
        for (int i = j + 1; i < n; ++i) {
          const double re = off_sd * normal(engine);
          const double im = off_sd * normal(engine);
          m(i, j) = {re, im};
          m(j, i) = {re, -im};
        }
      }
      break;
    case SymmetryKind::gse: {
      // H = [[A, B], [-conj B, conj A]]; the quaternion trace of H^2 equals
      // half the complex trace, so the density is exp(-Tr_C H^2 / (4 sigma^2)).
      Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
      Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(n, n);
      for (int j = 0; j < n; ++j) {
        a(j, j) = diag_sd * normal(engine);
        for (int i = j + 1; i < n; ++i) {
          const double a_re = off_sd * normal(engine);
          const double a_im = off_sd * normal(engine);
          const double b_re = off_sd * normal(engine);
          const double b_im = off_sd * normal(engine);
          a(i, j) = {a_re, a_im};
          a(j, i) = {a_re, -a_im};
          b(i, j) = {b_re, b_im};
          b(j, i) = {-b_re, -b_im};
        }
      }
      m.topLeftCorner(n, n) = a;
      m.topRightCorner(n, n) = b;
      m.bottomLeftCorner(n, n) = -b.conjugate();
      m.bottomRightCorner(n, n) = a.conjugate();
      break;
    }
  }
  m.diagonal().array() += spec.mean_energy;
  return h;
}

double self_dual_defect(const HermitianMatrix& h) {
  if (h.symmetry.kind() != SymmetryKind::gse) return 0.0;
  const Eigen::Index n = h.n_levels;
  const auto& m = h.data;
  const Eigen::MatrixXcd a = m.topLeftCorner(n, n);
  const Eigen::MatrixXcd b = m.topRightCorner(n, n);
  double defect = (a - a.adjoint()).cwiseAbs().maxCoeff();
  defect = std::max(defect, (b + b.transpose()).cwiseAbs().maxCoeff());
  defect = std::max(defect, (m.bottomLeftCorner(n, n) + b.conjugate()).cwiseAbs().maxCoeff());
  defect = std::max(defect, (m.bottomRightCorner(n, n) - a.conjugate()).cwiseAbs().maxCoeff());
  return defect;
}

ShiftedSpectra shift_both_spectra(std::span<const double> initial_eigs,
                                  std::span<const double> final_eigs) {
  if (initial_eigs.empty() || final_eigs.empty()) {
    throw InvalidSpec("shift_both_spectra: empty spectrum");
  }
  const double offset = -*std::min_element(initial_eigs.begin(), initial_eigs.end());
  ShiftedSpectra out{{initial_eigs.begin(), initial_eigs.end()},
                     {final_eigs.begin(), final_eigs.end()},
                     offset};
  for (double& e : out.initial) e += offset;
  for (double& e : out.final) e += offset;
  return out;
}

}  // namespace rmtwork
