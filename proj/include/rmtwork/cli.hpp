#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "rmtwork/quench.hpp"
#include "rmtwork/validate.hpp"

namespace rmtwork::cli {

enum ExitCode : int { ok = 0, validation_failed = 1, invalid_config = 2, numeric_error = 3 };

/// Fully resolved settings for one invocation. Serialised verbatim into the
/// manifest so a run can be repeated with `--config manifest.json`.
struct RunConfig {
  std::string command = "single";
  int figure = 0;
  std::vector<int> n_list{300};
  /// N at which s_init/s_final are quoted. Figures and the ergodicity study
  /// rescale the spacings by reference_n / N.
  int reference_n = 300;
  std::string symmetry = "goe";
  double s_init = 0.1283;
  double s_final = 0.1283 / 2;
  double e_init = 0.0;
  double e_final = 0.0;
  double beta = 0.01;
  int draws = 1;
  std::uint64_t seed = 1;
  double u_min = 0.0;
  double u_max = 3.0;
  int u_points = 512;
  int w_bins = 100;
  std::optional<std::pair<double, double>> w_range;
  std::filesystem::path out = ".";

  /// Spacings actually used at N (rescaled from reference_n).
  double s_init_at(int n) const;
  double s_final_at(int n) const;
  QuenchExperiment experiment(int n) const;
  void validate() const;
};

/// Built-in parameters for figure 1, 2 or 3 (beta = 0.01, 0.1, 1).
RunConfig figure_preset(int id);

/// Overlay keys present in `j` onto `cfg`. Unknown keys are rejected.
void apply_json(RunConfig& cfg, const nlohmann::json& j);
nlohmann::json to_json(const RunConfig& cfg);

/// Accepts a number or "inf".
double parse_beta(const std::string& text);
std::vector<int> parse_n_list(const std::string& text);

/// %.17g
std::string format_double(double x);

void write_single(const RunConfig& cfg, const DrawReport& draw);
void write_ensemble(const RunConfig& cfg, const EnsembleReport& ens);
void write_ergodicity(const RunConfig& cfg, const ErgodicityReport& rep);
nlohmann::json validation_json(const ValidationReport& report);

/// Command-line overrides; unset members leave the lower-precedence value.
struct Overrides {
  std::optional<std::string> n, symmetry, beta, out, config;
  std::optional<double> s_init, s_final, u_max;
  std::optional<int> draws, u_points, w_bins;
  std::optional<std::uint64_t> seed;
};

/// Layers built-in defaults (or the figure preset), the config file and the
/// overrides. Passing --s-init/--s-final quotes the spacings at the requested N.
RunConfig resolve(const std::string& command, int figure_id, const Overrides& overrides);

/// Executes a resolved configuration and writes its outputs. Returns an exit code;
/// library exceptions propagate.
int execute(const RunConfig& cfg);

/// Full command-line entry: parsing, execution and exception-to-exit-code mapping.
int run(int argc, const char* const* argv);

}  // namespace rmtwork::cli
