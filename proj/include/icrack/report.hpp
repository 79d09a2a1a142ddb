#pragma once

#include "icrack/config.hpp"
#include "icrack/postprocess.hpp"
#include "icrack/solver.hpp"
#include "icrack/validation.hpp"

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace icrack {

/// Everything produced by one solve.
struct RunResult {
  RunConfig config;
  ProblemSetup setup;
  LinearSystem system;
  Solution solution;
  ValidationReport validation;
  double max_crack_opening{};
  std::array<TipFit, 2> tips{};
};

/// Assemble, solve, post-process and validate. SolverError propagates.
RunResult run_case(const RunConfig& config);

/// Columns of boundary_fields.csv, in order.
const std::vector<std::string>& boundary_field_columns();
/// Values of one boundary sample in boundary_field_columns() order (arc and s first).
std::vector<double> boundary_field_row(const DensitySet& densities, const BoundarySample& b,
                                       int arc);

void write_boundary_fields_csv(std::ostream& out, const RunResult& r);
void write_deformed_csv(std::ostream& out, const RunResult& r);
std::string densities_json(const RunResult& r);
std::string summary_json(const RunResult& r, const std::string& note = {});

/// Writes densities.json, boundary_fields.csv, validation.json, summary.json and
/// deformed_boundary.csv into `dir`, creating it if needed.
void write_run_outputs(const RunResult& r, const std::filesystem::path& dir,
                       const std::string& note = {});

/// Relative max difference of Re g0' and Im g0' between two solutions over the central
/// `fraction` of the crack, each divided by the max amplitude of `reference` there.
std::pair<double, double> g0_curve_difference(const DensitySet& a, const DensitySet& reference,
                                              double fraction = 0.8, int samples = 801);

/// Writes the combined per-scenario files next to the per-run subdirectories.
void write_scenario_outputs(const Scenario& scenario, const std::vector<RunResult>& runs,
                            const std::filesystem::path& dir);

}  // namespace icrack
