#include "rmtwork/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "rmtwork/analytic.hpp"
#include "rmtwork/error.hpp"

namespace rmtwork::cli {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

json beta_json(double beta) { return std::isinf(beta) ? json("inf") : json(beta); }

double beta_from_json(const json& j) {
  if (j.is_string()) return parse_beta(j.get<std::string>());
  if (j.is_number()) return j.get<double>();
  throw InvalidSpec("config: beta must be a number or \"inf\"");
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidSpec(fmt::format("cannot open {} for writing", path.string()));
  return f;
}

void finish(std::ofstream& f, const std::filesystem::path& path) {
  f.flush();
  if (!f) throw InvalidSpec(fmt::format("write to {} failed", path.string()));
}

void write_json(const std::filesystem::path& path, const json& j) {
  auto f = open_out(path);
  f << j.dump(2) << '\n';
  finish(f, path);
}

json peak_json(const PeakWidth& pw) { return {{"peak", pw.peak}, {"width", pw.width}}; }

json histogram_json(const Histogram& h) {
  return {{"lo", h.lo}, {"hi", h.hi}, {"bins", h.values.size()}, {"outside_mass", h.outside_mass}};
}

std::vector<double> analytic_pdf(const QuenchParams& p, const Histogram& h) {
  return p_w_predicted(p, h.centers);
}

// Prediction block shared by single and ensemble manifests.
json prediction_json(const QuenchParams& p, const Histogram& h) {
  json j;
  j["n_eff_over_n"] = n_eff(p.beta, p.s_init) / p.n_levels;
  json peaks;
  for (const auto& [name, regime] : {std::pair{"beta0", Regime::beta0}, {"betainf", Regime::betainf}}) {
    const PeakWidth pw = peak_width(p, regime);
    json entry = peak_json(pw);
    entry["histogram_mass_outside"] = h.mass_outside(pw.peak - pw.width, pw.peak + pw.width);
    peaks[name] = entry;
  }
  j["peak_width"] = peaks;
  j["analytic_params"] = {{"n_levels", p.n_levels}, {"s_init", p.s_init},     {"s_final", p.s_final},
                          {"e_init", p.e_init},     {"e_final", p.e_final}, {"beta", beta_json(p.beta)},
                          {"radius_init", p.radius_init()}, {"radius_final", p.radius_final()},
                          {"ground_energy", p.ground()}};
  return j;
}

void write_hist_csv(const std::filesystem::path& path, const Histogram& h,
                    const std::vector<double>& analytic, const char* column) {
  auto f = open_out(path);
  fmt::print(f, "w,{},p_analytic\n", column);
  for (std::size_t k = 0; k < h.centers.size(); ++k) {
    fmt::print(f, "{},{},{}\n", format_double(h.centers[k]), format_double(h.values[k]),
               format_double(analytic[k]));
  }
  finish(f, path);
}

std::filesystem::path prepare_out(const RunConfig& cfg) {
  std::error_code ec;
  std::filesystem::create_directories(cfg.out, ec);
  if (ec) throw InvalidSpec(fmt::format("cannot create output directory {}: {}", cfg.out.string(), ec.message()));
  return cfg.out;
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", x);
}

double parse_beta(const std::string& text) {
  std::string t;
  for (char c : text) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (t == "inf" || t == "+inf" || t == "infinity") return kInf;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw InvalidSpec(fmt::format("invalid beta '{}'", text));
  }
  if (used != t.size() || std::isnan(v) || v < 0.0) throw InvalidSpec(fmt::format("invalid beta '{}'", text));
  return v;
}

std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw InvalidSpec(fmt::format("invalid N '{}'", item));
    }
    if (used != item.size() || v < 1) throw InvalidSpec(fmt::format("invalid N '{}'", item));
    out.push_back(v);
  }
  if (out.empty()) throw InvalidSpec("empty N list");
  return out;
}

double RunConfig::s_init_at(int n) const { return s_init * reference_n / n; }
double RunConfig::s_final_at(int n) const { return s_final * reference_n / n; }

QuenchExperiment RunConfig::experiment(int n) const {
  QuenchExperiment exp;
  const SymmetryClass cls = SymmetryClass::parse(symmetry);
  exp.initial = {n, cls, e_init, s_init_at(n)};
  exp.final = {n, cls, e_final, s_final_at(n)};
  exp.beta = beta;
  exp.n_draws = draws;
  exp.master_seed = seed;
  exp.u_grid = {u_min, u_max, u_points};
  exp.w_hist.bins = w_bins;
  exp.w_hist.range = w_range;
  return exp;
}

void RunConfig::validate() const {
  static const std::set<std::string> commands{"figure", "single", "ensemble", "ergodicity", "validate"};
  if (!commands.count(command)) throw InvalidSpec(fmt::format("unknown command '{}'", command));
  if (command == "figure" && (figure < 1 || figure > 3)) {
    throw InvalidSpec(fmt::format("figure id must be 1, 2 or 3 (got {})", figure));
  }
  if (n_list.empty()) throw InvalidSpec("N list is empty");
  if (command != "ergodicity" && n_list.size() != 1) {
    throw InvalidSpec("a list of N values is only accepted by 'ergodicity'");
  }
  if (reference_n < 1) throw InvalidSpec("reference_n must be >= 1");
  if (!(u_max > u_min) && u_points > 1) throw InvalidSpec("u range is empty");
  if (command != "validate") {
    for (int n : n_list) experiment(n).validate();
  }
}

RunConfig figure_preset(int id) {
  static constexpr double kBeta[] = {0.01, 0.1, 1.0};
  if (id < 1 || id > 3) throw InvalidSpec(fmt::format("figure id must be 1, 2 or 3 (got {})", id));
  RunConfig cfg;
  cfg.command = "figure";
  cfg.figure = id;
  cfg.beta = kBeta[id - 1];
  return cfg;
}

void apply_json(RunConfig& cfg, const json& j) {
  if (!j.is_object()) throw InvalidSpec("config must be a JSON object");
  static const std::set<std::string> known{"command", "figure", "n_list",  "reference_n", "symmetry",
                                           "s_init",  "s_final", "e_init", "e_final",     "beta",
                                           "draws",   "seed",    "u_min",  "u_max",       "u_points",
                                           "w_bins",  "w_range", "out"};
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) throw InvalidSpec(fmt::format("config: unknown key '{}'", key));
  }
  try {
    if (j.contains("figure")) cfg.figure = j["figure"].get<int>();
    if (j.contains("n_list")) {
      cfg.n_list = j["n_list"].is_array() ? j["n_list"].get<std::vector<int>>()
                                          : std::vector<int>{j["n_list"].get<int>()};
    }
    if (j.contains("reference_n")) {
      cfg.reference_n = j["reference_n"].get<int>();
    } else if (j.contains("s_init") || j.contains("s_final")) {
      // spacings given without a reference N are taken at the configured N
      cfg.reference_n = cfg.n_list.front();
    }
    if (j.contains("symmetry")) cfg.symmetry = j["symmetry"].get<std::string>();
    if (j.contains("s_init")) cfg.s_init = j["s_init"].get<double>();
    if (j.contains("s_final")) cfg.s_final = j["s_final"].get<double>();
    if (j.contains("e_init")) cfg.e_init = j["e_init"].get<double>();
    if (j.contains("e_final")) cfg.e_final = j["e_final"].get<double>();
    if (j.contains("beta")) cfg.beta = beta_from_json(j["beta"]);
    if (j.contains("draws")) cfg.draws = j["draws"].get<int>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("u_min")) cfg.u_min = j["u_min"].get<double>();
    if (j.contains("u_max")) cfg.u_max = j["u_max"].get<double>();
    if (j.contains("u_points")) cfg.u_points = j["u_points"].get<int>();
    if (j.contains("w_bins")) cfg.w_bins = j["w_bins"].get<int>();
    if (j.contains("w_range")) {
      if (j["w_range"].is_null()) {
        cfg.w_range.reset();
      } else {
        const auto r = j["w_range"].get<std::vector<double>>();
        if (r.size() != 2) throw InvalidSpec("config: w_range needs two values");
        cfg.w_range = std::pair{r[0], r[1]};
      }
    }
    if (j.contains("out")) cfg.out = j["out"].get<std::string>();
  } catch (const json::exception& e) {
    throw InvalidSpec(fmt::format("config: {}", e.what()));
  }
}

json to_json(const RunConfig& cfg) {
  json j;
  j["command"] = cfg.command;
  j["figure"] = cfg.figure;
  j["n_list"] = cfg.n_list;
  j["reference_n"] = cfg.reference_n;
  j["symmetry"] = cfg.symmetry;
  j["s_init"] = cfg.s_init;
  j["s_final"] = cfg.s_final;
  j["e_init"] = cfg.e_init;
  j["e_final"] = cfg.e_final;
  j["beta"] = beta_json(cfg.beta);
  j["draws"] = cfg.draws;
  j["seed"] = cfg.seed;
  j["u_min"] = cfg.u_min;
  j["u_max"] = cfg.u_max;
  j["u_points"] = cfg.u_points;
  j["w_bins"] = cfg.w_bins;
  j["w_range"] = cfg.w_range ? json{cfg.w_range->first, cfg.w_range->second} : json(nullptr);
  j["out"] = cfg.out.string();
  return j;
}

void write_single(const RunConfig& cfg, const DrawReport& draw) {
  const auto dir = prepare_out(cfg);
  const QuenchParams& p = draw.analytic;

  {
    const auto path = dir / "gu_curve.csv";
    auto f = open_out(path);
    f << "u,re_g_single,im_g_single,re_g_analytic,im_g_analytic\n";
    for (std::size_t k = 0; k < draw.g.u.size(); ++k) {
      const double u = draw.g.u[k];
      const auto ga = g_ensemble(p, u);
      fmt::print(f, "{},{},{},{},{}\n", format_double(u), format_double(draw.g.values[k].real()),
                 format_double(draw.g.values[k].imag()), format_double(ga.real()), format_double(ga.imag()));
    }
    finish(f, path);
  }
  write_hist_csv(dir / "pw_hist.csv", draw.p, analytic_pdf(p, draw.p), "p_single");

  json m;
  m["config"] = to_json(cfg);
  m["seeds"] = {{"master", cfg.seed}, {"initial", draw.seed_initial}, {"final", draw.seed_final}};
  m["offset"] = draw.offset;
  m.update(prediction_json(p, draw.p));
  if (draw.jarzynski) {
    m["jarzynski"] = {{"lhs", draw.jarzynski->lhs},
                      {"rhs", draw.jarzynski->rhs},
                      {"rel_err", draw.jarzynski->rel_err},
                      {"log_lhs", draw.jarzynski->log_lhs},
                      {"log_rhs", draw.jarzynski->log_rhs}};
  } else {
    m["jarzynski"] = nullptr;
  }
  m["moments"] = {{"mean", draw.moments.mean}, {"variance", draw.moments.variance}};
  m["rms_vs_analytic"] = draw.rms_vs_analytic;
  m["histogram"] = histogram_json(draw.p);
  m["diagnostics"] = {{"spacing_initial", draw.diagnostics.spacing_initial},
                      {"spacing_final", draw.diagnostics.spacing_final},
                      {"radius_initial", draw.diagnostics.radius_initial},
                      {"radius_final", draw.diagnostics.radius_final}};
  write_json(dir / "manifest.json", m);
}

void write_ensemble(const RunConfig& cfg, const EnsembleReport& ens) {
  const auto dir = prepare_out(cfg);
  const int n = cfg.n_list.front();
  const QuenchParams p = cfg.experiment(n).analytic_params(ens.mean_offset);

  {
    const auto path = dir / "gu_curve.csv";
    auto f = open_out(path);
    f << "u,re_g_mean,im_g_mean,var_g,re_g_analytic,im_g_analytic\n";
    for (std::size_t k = 0; k < ens.mean.u.size(); ++k) {
      const double u = ens.mean.u[k];
      const auto ga = g_ensemble(p, u);
      fmt::print(f, "{},{},{},{},{},{}\n", format_double(u), format_double(ens.mean.values[k].real()),
                 format_double(ens.mean.values[k].imag()), format_double(ens.variance[k]),
                 format_double(ga.real()), format_double(ga.imag()));
    }
    finish(f, path);
  }
  write_hist_csv(dir / "pw_hist.csv", ens.mean_p, analytic_pdf(p, ens.mean_p), "p_mean");

  json m;
  m["config"] = to_json(cfg);
  m["seeds"] = {{"master", cfg.seed}, {"draws", ens.seeds}};
  m["mean_offset"] = ens.mean_offset;
  m.update(prediction_json(p, ens.mean_p));
  m["jarzynski"] = {{"max_rel_err", ens.max_jarzynski_rel_err}, {"mean_rel_err", ens.mean_jarzynski_rel_err}};
  m["rms_per_draw"] = ens.rms_per_draw;
  m["histogram"] = histogram_json(ens.mean_p);
  write_json(dir / "manifest.json", m);
}

void write_ergodicity(const RunConfig& cfg, const ErgodicityReport& rep) {
  const auto dir = prepare_out(cfg);
  {
    const auto path = dir / "ergodicity.csv";
    auto f = open_out(path);
    f << "n,s_init,s_final,beta,draws,rms_mean,rms_stderr\n";
    for (std::size_t i = 0; i < rep.n_list.size(); ++i) {
      fmt::print(f, "{},{},{},{},{},{},{}\n", rep.n_list[i], format_double(rep.s_init[i]),
                 format_double(rep.s_final[i]), format_double(rep.beta[i]), rep.draws[i],
                 format_double(rep.rms_mean[i]), format_double(rep.rms_stderr[i]));
    }
    finish(f, path);
  }
  json m;
  m["config"] = to_json(cfg);
  m["seeds"] = {{"master", cfg.seed}};
  json per_n = json::array();
  for (std::size_t i = 0; i < rep.n_list.size(); ++i) {
    per_n.push_back({{"n", rep.n_list[i]}, {"beta", beta_json(rep.beta[i])}, {"rms_per_draw", rep.rms_per_draw[i]}});
  }
  m["per_n"] = per_n;
  write_json(dir / "manifest.json", m);
}

json validation_json(const ValidationReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"measured", c.measured},
                      {"tolerance", c.tolerance},
                      {"passed", c.passed},
                      {"detail", c.detail}});
  }
  return {{"passed", report.passed()}, {"checks", checks}};
}

int execute(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.command == "validate") {
    ValidationOptions opts;
    opts.seed = cfg.seed;
    const ValidationReport report = run_validation(opts);
    prepare_out(cfg);
    write_json(cfg.out / "validate_report.json", validation_json(report));
    for (const auto& c : report.checks) {
      fmt::print("{} {} measured={:.3e} tol={:.1e}\n", c.passed ? "PASS" : "FAIL", c.name, c.measured,
                 c.tolerance);
    }
    return report.passed() ? ok : validation_failed;
  }
  if (cfg.command == "ergodicity") {
    QuenchExperiment base = cfg.experiment(cfg.reference_n);
    write_ergodicity(cfg, ergodicity_study(base, cfg.n_list, cfg.draws));
    return ok;
  }
  const QuenchExperiment exp = cfg.experiment(cfg.n_list.front());
  if (cfg.command == "ensemble") {
    write_ensemble(cfg, run_ensemble(exp));
  } else {
    write_single(cfg, run_single_draw(exp, 0));
  }
  return ok;
}

RunConfig resolve(const std::string& command, int figure_id, const Overrides& o) {
  RunConfig cfg = command == "figure" ? figure_preset(figure_id) : RunConfig{};
  cfg.command = command;
  if (command == "ergodicity") {
    cfg.n_list = {100, 400};
    cfg.draws = 10;
  }
  if (o.config) {
    std::ifstream f(*o.config);
    if (!f) throw InvalidSpec(fmt::format("cannot read config {}", *o.config));
    json j;
    try {
      j = json::parse(f);
    } catch (const json::exception& e) {
      throw InvalidSpec(fmt::format("config {}: {}", *o.config, e.what()));
    }
    // a manifest can be passed directly; its config block is used
    if (j.is_object() && j.contains("config") && j["config"].is_object()) j = j["config"];
    apply_json(cfg, j);
    cfg.command = command;
    if (command == "figure") cfg.figure = figure_id;
  }
  if (o.n) cfg.n_list = parse_n_list(*o.n);
  if (o.s_init || o.s_final) cfg.reference_n = cfg.n_list.front();
  if (o.s_init) cfg.s_init = *o.s_init;
  if (o.s_final) cfg.s_final = *o.s_final;
  if (o.symmetry) {
    cfg.symmetry = *o.symmetry;
    for (auto& c : cfg.symmetry) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  if (o.beta) cfg.beta = parse_beta(*o.beta);
  if (o.draws) cfg.draws = *o.draws;
  if (o.seed) cfg.seed = *o.seed;
  if (o.u_max) cfg.u_max = *o.u_max;
  if (o.u_points) cfg.u_points = *o.u_points;
  if (o.w_bins) cfg.w_bins = *o.w_bins;
  if (o.out) cfg.out = *o.out;
  return cfg;
}

int run(int argc, const char* const* argv) {
  CLI::App app{"Work statistics of sudden quenches between Gaussian random Hamiltonians"};
  app.require_subcommand(1);

  Overrides flags;
  int figure_id = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--N", flags.n, "Number of levels (comma-separated list for ergodicity)");
    sub->add_option("--class", flags.symmetry, "Symmetry class")
        ->check(CLI::IsMember({"goe", "gue", "gse"}, CLI::ignore_case));
    sub->add_option("--s-init", flags.s_init, "Mean level spacing of the initial Hamiltonian");
    sub->add_option("--s-final", flags.s_final, "Mean level spacing of the final Hamiltonian");
    sub->add_option("--beta", flags.beta, "Inverse temperature (number or inf)");
    sub->add_option("--draws", flags.draws, "Number of draws");
    sub->add_option("--seed", flags.seed, "Master seed");
    sub->add_option("--u-max", flags.u_max, "Upper end of the u grid");
    sub->add_option("--u-points", flags.u_points, "Number of u grid points");
    sub->add_option("--w-bins", flags.w_bins, "Number of work histogram bins");
    sub->add_option("--out", flags.out, "Output directory");
    sub->add_option("--config", flags.config, "JSON config file or manifest");
  };

  auto* fig = app.add_subcommand("figure", "Reproduce a reference figure dataset (1, 2 or 3)");
  fig->add_option("id", figure_id, "Figure id")->required();
  add_common(fig);
  for (const char* name : {"single", "ensemble", "ergodicity", "validate"}) {
    add_common(app.add_subcommand(name, fmt::format("Run the {} pipeline", name)));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : invalid_config;
  }

  try {
    return execute(resolve(app.get_subcommands().front()->get_name(), figure_id, flags));
  } catch (const InvalidSpec& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return invalid_config;
  } catch (const Error& e) {
    fmt::print(stderr, "numeric error: {}\n", e.what());
    return numeric_error;
  } catch (const std::filesystem::filesystem_error& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return invalid_config;
  }
}

}  // namespace rmtwork::cli
