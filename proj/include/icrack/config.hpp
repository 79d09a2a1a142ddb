#pragma once

#include "icrack/model.hpp"
#include "icrack/solver.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace icrack {

/// Contour block: circle, ellipse or a table of (x, y) samples at uniform parameter spacing.
struct ContourSpec {
  std::string shape = "circle";
  double radius = 1.0;
  double semi_axis_a = 1.0;
  double semi_axis_b = 1.0;
  std::filesystem::path table_file;
  double crack_start_rad = 0.0;
  double crack_end_rad = 3.14159265358979323846;

  Contour build() const;
};

/// Crack-face tractions: zero, uniform pressure, constant (f1, f2) or a table file with
/// columns s, re f1, im f1, re f2, im f2.
struct TractionSpec {
  std::string kind = "zero";
  double pressure_mpa = 0.0;
  Complex f1_mpa;
  Complex f2_mpa;
  std::filesystem::path table_file;

  CrackTractions build() const;
};

struct OutputSpec {
  std::filesystem::path directory;
  double deformation_scale = 1.0;
  int samples = 201;  ///< boundary-field samples per arc
};

struct RunConfig {
  std::string name = "run";
  ContourSpec contour;
  Material matrix{40.0, 0.25};
  Material inclusion{60.0, 0.35};
  SurfaceTension surface{0.1, 0.1, 0.1};
  RemoteLoad load{1.0, 0.0, 0.0};
  TractionSpec tractions;
  SolverOptions numerics;
  OutputSpec output;

  /// Builds and validates the problem.
  ProblemSetup problem() const;
  /// INI text that parse_config reads back to an equal configuration.
  std::string to_ini() const;
};

/// Parses INI text. Unknown sections or keys, malformed numbers and violated invariants raise
/// ConfigError naming the key (and line, for syntax errors). Relative table paths are resolved
/// against `base_dir`.
RunConfig parse_config(std::istream& in, const std::string& source_name,
                       const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

/// One solve of a preset.
struct ScenarioRun {
  std::string label;
  RunConfig config;
};

struct Scenario {
  std::string name;
  std::string description;
  std::string note;  ///< caveats recorded in the output metadata
  std::vector<ScenarioRun> runs;
};

std::vector<std::string> scenario_names();
/// Throws InvalidArgument for an unknown name.
Scenario make_scenario(const std::string& name);

/// Numerics used by every preset.
SolverOptions preset_numerics();

}  // namespace icrack
