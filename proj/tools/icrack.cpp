#include "icrack/config.hpp"
#include "icrack/error.hpp"
#include "icrack/report.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace icrack;

namespace {

enum Exit { ok = 0, usage = 1, solver_failure = 2, validation_failure = 3 };

struct Common {
  std::string config;
  std::string out;
  std::optional<int> order;
  bool quiet = false;
};

// --out, then [output] directory, then $ICRACK_OUTPUT_ROOT/<name>, then output/<name>.
fs::path output_dir(const Common& c, const RunConfig& cfg) {
  if (!c.out.empty()) return c.out;
  if (!cfg.output.directory.empty()) return cfg.output.directory;
  if (const char* root = std::getenv("ICRACK_OUTPUT_ROOT"); root && *root) {
    return fs::path(root) / cfg.name;
  }
  return fs::path("output") / cfg.name;
}

fs::path scenario_dir(const Common& c, const std::string& name) {
  if (!c.out.empty()) return c.out;
  if (const char* root = std::getenv("ICRACK_OUTPUT_ROOT"); root && *root) {
    return fs::path(root) / name;
  }
  return fs::path("output") / name;
}

RunConfig load(const Common& c) {
  RunConfig cfg = load_config(c.config);
  if (c.order) cfg.numerics.order = *c.order;
  cfg.problem();
  cfg.numerics.validate();
  return cfg;
}

void progress(const Common& c, const std::string& line) {
  if (!c.quiet) std::cout << line << std::endl;
}

std::string describe(const std::string& label, const RunResult& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s: N=%d opening=%.6g max_residual=%.3g validation=%s",
                label.c_str(), r.config.numerics.order, r.max_crack_opening,
                r.solution.report.max_residual, r.validation.passed() ? "pass" : "fail");
  return buf;
}

int cmd_solve(const Common& c) {
  const RunConfig cfg = load(c);
  const RunResult r = run_case(cfg);
  const fs::path dir = output_dir(c, cfg);
  write_run_outputs(r, dir);
  progress(c, describe(cfg.name, r) + " -> " + dir.string());
  return ok;
}

int cmd_validate(const Common& c) {
  const RunConfig cfg = load(c);
  const RunResult r = run_case(cfg);
  const fs::path dir = output_dir(c, cfg);
  write_run_outputs(r, dir);
  for (const Check& k : r.validation.checks) {
    if (!c.quiet || !k.passed) {
      std::printf("%-4s %-28s value=%.3e tolerance=%.1e\n", k.passed ? "ok" : "FAIL",
                  k.name.c_str(), k.value, k.tolerance);
    }
  }
  return r.validation.passed() ? ok : validation_failure;
}

std::string value_label(const std::string& param, double v) {
  char buf[64];
  if (param == "N") {
    std::snprintf(buf, sizeof buf, "N_%d", static_cast<int>(v));
  } else {
    std::snprintf(buf, sizeof buf, "%s_%.6g", param.c_str(), v);
  }
  return buf;
}

RunConfig with_value(RunConfig cfg, const std::string& param, double v) {
  if (param == "gamma0") {
    cfg.surface.gamma_plus = v;
    cfg.surface.gamma_minus = v;
  } else if (param == "alpha") {
    cfg.load.alpha = v;
  } else {
    if (v != std::floor(v)) throw ConfigError("sweep N: values must be integers");
    cfg.numerics.order = static_cast<int>(v);
  }
  cfg.name = value_label(param, v);
  cfg.output.directory.clear();
  cfg.problem();
  cfg.numerics.validate();
  return cfg;
}

int cmd_sweep(const Common& c, const std::string& param, const std::vector<double>& values,
              int jobs) {
  if (values.empty()) throw ConfigError("sweep: empty value list");
  const RunConfig base = load(c);
  std::vector<RunConfig> configs;
  for (double v : values) configs.push_back(with_value(base, param, v));

  const fs::path dir = output_dir(c, base);
  std::vector<std::optional<RunResult>> results(configs.size());
  // Each iteration owns its result slot and subdirectory.
  for (std::size_t start = 0; start < configs.size(); start += static_cast<std::size_t>(jobs)) {
    std::vector<std::future<RunResult>> batch;
    const std::size_t stop = std::min(configs.size(), start + static_cast<std::size_t>(jobs));
    for (std::size_t k = start; k < stop; ++k) {
      batch.push_back(std::async(std::launch::async, [&configs, &dir, k] {
        RunResult r = run_case(configs[k]);
        write_run_outputs(r, dir / configs[k].name);
        return r;
      }));
    }
    for (std::size_t k = start; k < stop; ++k) {
      results[k] = batch[k - start].get();
      progress(c, describe(configs[k].name, *results[k]));
    }
  }

  std::ofstream csv(dir / "sweep.csv", std::ios::binary);
  if (!csv) throw Error("cannot write " + (dir / "sweep.csv").string());
  csv << param
      << ",max_crack_opening,normal_exponent_tip0,shear_exponent_tip0,normal_exponent_tip_l0,"
         "shear_exponent_tip_l0,max_residual,condition_estimate,validation_passed";
  if (param == "N") csv << ",re_g0_prime_difference,im_g0_prime_difference";
  csv << "\n";
  char buf[64];
  auto put = [&](double x) {
    std::snprintf(buf, sizeof buf, ",%.12g", x);
    csv << buf;
  };
  // The N sweep compares every curve with the last value's.
  const DensitySet& reference = results.back()->solution.densities;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const RunResult& r = *results[k];
    std::snprintf(buf, sizeof buf, "%.12g", values[k]);
    csv << buf;
    put(r.max_crack_opening);
    for (const TipFit& t : r.tips) {
      put(t.normal_exponent);
      put(t.shear_exponent);
    }
    put(r.solution.report.max_residual);
    put(r.solution.report.condition_estimate);
    csv << "," << (r.validation.passed() ? 1 : 0);
    if (param == "N") {
      const auto [re, im] = g0_curve_difference(r.solution.densities, reference);
      put(re);
      put(im);
    }
    csv << "\n";
  }
  progress(c, "sweep.csv -> " + (dir / "sweep.csv").string());
  return ok;
}

int cmd_scenario(const Common& c, const std::string& name, const std::string& dump) {
  Scenario sc = make_scenario(name);
  if (c.order) {
    for (ScenarioRun& run : sc.runs) {
      // fig1 is a study in N and keeps its own orders.
      if (name != "fig1") run.config.numerics.order = *c.order;
    }
  }
  if (!dump.empty()) {
    fs::create_directories(dump);
    for (const ScenarioRun& run : sc.runs) {
      std::ofstream out(fs::path(dump) / (run.config.name + ".ini"), std::ios::binary);
      if (!out) throw Error("cannot write into " + dump);
      out << run.config.to_ini();
    }
    progress(c, "wrote " + std::to_string(sc.runs.size()) + " configs -> " + dump);
    return ok;
  }
  const fs::path dir = scenario_dir(c, name);
  std::vector<RunResult> results;
  for (const ScenarioRun& run : sc.runs) {
    results.push_back(run_case(run.config));
    write_run_outputs(results.back(), dir / run.label);
    progress(c, describe(run.label, results.back()));
  }
  write_scenario_outputs(sc, results, dir);
  progress(c, name + " -> " + dir.string());
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interface crack with surface tension: collocation solver"};
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* cmd, bool needs_config) {
    auto* opt = cmd->add_option("--config", common.config, "run configuration (INI)");
    if (needs_config) opt->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", common.out,
                    "output directory (default: [output] directory, then $ICRACK_OUTPUT_ROOT/<name>)");
    cmd->add_option("--order", common.order, "polynomial order N")->check(CLI::Range(4, 200));
    cmd->add_flag("--quiet,-q", common.quiet, "print nothing on success");
  };

  auto* solve_cmd = app.add_subcommand("solve", "solve one configuration");
  add_common(solve_cmd, true);

  auto* validate_cmd = app.add_subcommand("validate", "solve and run the solution checks");
  add_common(validate_cmd, true);

  std::string param;
  std::vector<double> values;
  int jobs = 1;
  auto* sweep_cmd = app.add_subcommand("sweep", "solve a configuration for a list of values");
  add_common(sweep_cmd, true);
  sweep_cmd->add_option("--param", param, "swept parameter")
      ->required()
      ->check(CLI::IsMember({"gamma0", "alpha", "N"}));
  sweep_cmd->add_option("--values", values, "comma-separated values")->delimiter(',');
  sweep_cmd->add_option("--jobs", jobs, "concurrent solves")->check(CLI::Range(1, 64));

  std::string scenario;
  std::string dump;
  auto* scenario_cmd = app.add_subcommand("scenario", "run a built-in preset");
  add_common(scenario_cmd, false);
  scenario_cmd->add_option("name", scenario, "preset name")
      ->required()
      ->check(CLI::IsMember(scenario_names()));
  scenario_cmd->add_option("--dump-configs", dump,
                           "write the preset's run configurations here instead of solving");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : usage;
  }

  try {
    if (*solve_cmd) return cmd_solve(common);
    if (*validate_cmd) return cmd_validate(common);
    if (*sweep_cmd) return cmd_sweep(common, param, values, jobs);
    return cmd_scenario(common, scenario, dump);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    for (const std::string& tag : e.row_tags()) std::cerr << "  row " << tag << "\n";
    return solver_failure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return solver_failure;
  }
}
