#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rmtwork/ensembles.hpp"

namespace rmtwork {

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool passed() const;
};

/// Radius used when comparing a sampled spectrum with the semicircle law.
/// Injectable so that tests can check the semicircle check rejects a wrong formula.
using RadiusRule = std::function<double(const EnsembleSpec&)>;

struct ValidationOptions {
  std::uint64_t seed = 1234567;
  RadiusRule radius = [](const EnsembleSpec& s) { return s.radius(); };
  int spacing_draws = 50;
};

CheckResult check_special_identities();
CheckResult check_quadrature_oracles();
CheckResult check_normalization(std::uint64_t seed, int n_sets = 100);
/// One result per (class, beta) with the measured Jarzynski relative error.
std::vector<CheckResult> check_jarzynski(std::uint64_t seed, int n_levels = 100);
CheckResult check_semicircle(const RadiusRule& radius, std::uint64_t seed, int n_levels = 1000);
CheckResult check_central_spacing(std::uint64_t seed, int draws, int n_levels = 1000);
CheckResult check_kramers(std::uint64_t seed, int n_levels = 50, int draws = 5);
std::vector<CheckResult> check_limits();

ValidationReport run_validation(const ValidationOptions& options = {});

}  // namespace rmtwork
