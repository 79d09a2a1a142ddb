#include "icrack/solver.hpp"
#include "icrack/validation.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <numbers>

using namespace icrack;

namespace {
constexpr double pi = std::numbers::pi;

ProblemSetup fig1_setup(RemoteLoad load = {1.0, 0.0, 0.0}) {
  return {circular_contour(1.0, 0.0, pi), Material(40.0, 0.25), Material(60.0, 0.35),
          SurfaceTension{0.1, 0.1, 0.1}, load};
}

QuadratureRule graded() {
  QuadratureRule r;
  r.tip_levels = 12;
  return r;
}
}  // namespace

TEST_CASE("inversion of constants and analytic densities") {
  const Contour c = circular_contour(1.0, 0.0, pi);
  const auto samples = mid_arc_samples(c, 5);
  CHECK(samples.size() == 10);
  CHECK(inversion_check(c, QuadratureRule{}, [](double) { return Complex(1.0); }, samples).value <
        1e-12);
  const Check sq = inversion_check(c, QuadratureRule{}, [&](double s) {
    const Complex t = c.point(s);
    return t * t;
  }, samples);
  CHECK(sq.value < 1e-6);
  CHECK(sq.passed);
}

TEST_CASE("inversion of random densities with tip jumps") {
  const Contour c = circular_contour(1.0, 0.0, pi);
  const auto trials = random_trial_densities(c, 4, 99);
  REQUIRE(trials.size() == 4);
  for (const TrialDensity& phi : trials) {
    CHECK(inversion_check(c, graded(), phi, mid_arc_samples(c, 4)).value < 1e-5);
  }
}

TEST_CASE("trial densities are reproducible") {
  const Contour c = circular_contour(1.0, 0.0, pi);
  const auto a = random_trial_densities(c, 3, 5);
  const auto b = random_trial_densities(c, 3, 5);
  const auto other = random_trial_densities(c, 3, 6);
  for (int i = 0; i < 3; ++i) CHECK(a[i](1.1) == b[i](1.1));
  CHECK(a[0](1.1) != other[0](1.1));
}

TEST_CASE("unloaded solution passes every check with zero error") {
  const ProblemSetup p = fig1_setup({0.0, 0.0, 0.0});
  SolverOptions o;
  o.order = 8;
  const Solution s = solve_problem(p, o);
  const ValidationReport r = validate_solution(s.densities, p, 8);
  CHECK(r.passed());
  for (const Check& c : r.checks) CHECK_MESSAGE(c.value == 0.0, c.name);
  CHECK(load_scale(p) == 1.0);
}

TEST_CASE("conservation integrals of a solved problem") {
  const ProblemSetup p = fig1_setup();
  SolverOptions o;
  o.order = 16;
  const Solution s = solve_problem(p, o);
  QuadratureRule rule;
  rule.panels_per_arc = 16;
  rule.nodes_per_panel = 20;
  rule.adaptive = false;
  const auto checks = conservation_checks(s.densities, p, rule);
  REQUIRE(checks.size() == 2);
  for (const Check& c : checks) CHECK_MESSAGE(c.value < 1e-6, c.name);
}

TEST_CASE("load scale takes the largest remote stress or traction") {
  ProblemSetup p = fig1_setup({1.0, -3.0, 0.0});
  CHECK(load_scale(p) == 3.0);
  p.tractions = CrackTractions::pressure(5.0);
  CHECK(load_scale(p) == 5.0);
}

TEST_CASE("report serializes every check") {
  ValidationReport r;
  r.add({"total_force", "int (q0 - q) dt = 0", 1e-9, 1e-6, true});
  r.add({"trace_consistency", "trace = 2 q0", 0.5, 1e-3, false});
  CHECK_FALSE(r.passed());
  const auto j = nlohmann::json::parse(r.to_json());
  CHECK(j["passed"] == false);
  CHECK(j["checks"].size() == 2);
  CHECK(j["checks"][0]["name"] == "total_force");
}
