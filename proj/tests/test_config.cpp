#include "icrack/config.hpp"
#include "icrack/error.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace icrack;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi;

RunConfig parse(const std::string& text, const std::filesystem::path& base = {}) {
  std::istringstream in(text);
  return parse_config(in, "test.ini", base);
}

std::string error_of(const std::string& text) {
  try {
    parse(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

bool contains(const std::string& s, const std::string& part) {
  return s.find(part) != std::string::npos;
}
}  // namespace

TEST_CASE("an empty file gives the defaults") {
  const RunConfig c = parse("");
  CHECK(c.matrix.shear_modulus == 40.0);
  CHECK(c.inclusion.poisson == 0.35);
  CHECK(c.numerics.order == 24);
  CHECK(c.contour.crack_end_rad == Approx(pi));
  CHECK(c.problem().contour.l0() == Approx(pi));
}

TEST_CASE("every section is read") {
  const RunConfig c = parse(R"(
[run]
name = demo
[contour]
shape = ellipse
semi_axis_a = 2
semi_axis_b = 1
crack_start_rad = -0.5
crack_end_rad = 0.5
[matrix]
mu_gpa = 2.39
nu = 0.35
plane = strain
[inclusion]
mu_gpa = 44.2
nu = 0.22
[surface_tension]
gamma_plus = 0.2
gamma_minus = 0.3
gamma_interface = 0
[load]
sigma1_mpa = 2
sigma2_mpa = 1
alpha_rad = 0.25
[tractions]
kind = constant
f1_re_mpa = -1
f2_im_mpa = 0.5
[numerics]
order = 12
oversampling = 2
tip_inset = 0.001
zero_mode = eliminate
exact_side_conditions = false
single_valuedness_rows = no
nodes_per_panel = 12
panels_per_arc = 6
adaptive = false
[output]
directory = out
deformation_scale = 2
samples = 51
)",
                             "/base");
  CHECK(c.name == "demo");
  CHECK(c.contour.shape == "ellipse");
  CHECK(c.matrix.mode == PlaneMode::strain);
  CHECK(c.inclusion.shear_modulus == 44.2);
  CHECK(c.surface.gamma_minus == 0.3);
  CHECK(c.load.alpha == 0.25);
  CHECK(c.tractions.f1_mpa == Complex(-1.0, 0.0));
  CHECK(c.tractions.f2_mpa == Complex(0.0, 0.5));
  CHECK(c.numerics.order == 12);
  CHECK(c.numerics.tip_inset.value() == 0.001);
  CHECK(c.numerics.zero_mode == ZeroModeConstraint::eliminate);
  CHECK_FALSE(c.numerics.exact_side_conditions);
  CHECK_FALSE(c.numerics.single_valuedness_rows);
  CHECK_FALSE(c.numerics.quadrature.adaptive);
  CHECK(c.output.directory == std::filesystem::path("/base/out"));
  CHECK(c.output.samples == 51);
}

TEST_CASE("unknown sections and keys are rejected by name") {
  CHECK(contains(error_of("[matrix]\nmu = 40\n"), "unknown key 'mu' in [matrix]"));
  CHECK(contains(error_of("[solver]\norder = 4\n"), "unknown section [solver]"));
  CHECK(contains(error_of("order = 4\n"), "outside a section"));
}

TEST_CASE("malformed values name the key") {
  CHECK(contains(error_of("[matrix]\nmu_gpa = forty\n"), "[matrix] mu_gpa"));
  CHECK(contains(error_of("[numerics]\norder = 2.5\n"), "[numerics] order"));
  CHECK(contains(error_of("[numerics]\nadaptive = maybe\n"), "[numerics] adaptive"));
  CHECK(contains(error_of("[matrix]\nplane = shell\n"), "[matrix] plane"));
  CHECK(contains(error_of("[contour]\nshape = square\n"), "[contour] shape"));
  CHECK(contains(error_of("[output]\nsamples = 1\n"), "[output] samples"));
}

TEST_CASE("violated invariants are reported") {
  CHECK(contains(error_of("[matrix]\nnu = 0.7\n"), "matrix: Poisson ratio"));
  CHECK(contains(error_of("[surface_tension]\ngamma_plus = 0\n"), "gamma_plus"));
  CHECK(contains(error_of("[numerics]\norder = 3\n"), "order"));
  CHECK(contains(error_of("[contour]\ncrack_end_rad = 0\n"), "crack arc"));
}

TEST_CASE("syntax errors carry the line number") {
  CHECK(contains(error_of("[run]\nname = a\n[broken\n"), "test.ini:3"));
}

TEST_CASE("every preset round-trips through its INI text") {
  for (const std::string& name : scenario_names()) {
    for (const ScenarioRun& run : make_scenario(name).runs) {
      const std::string text = run.config.to_ini();
      const RunConfig back = parse(text);
      CHECK(back.to_ini() == text);
      CHECK(back.name == run.config.name);
      CHECK(back.load.alpha == run.config.load.alpha);
      CHECK(back.surface.gamma_plus == run.config.surface.gamma_plus);
    }
  }
}

TEST_CASE("table files are resolved against the configuration directory") {
  const auto dir = std::filesystem::temp_directory_path() / "icrack_config_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream t(dir / "shape.txt");
    for (int k = 0; k < 32; ++k) {
      const double th = 2.0 * pi * k / 32;
      t << 1.5 * std::cos(th) << ", " << std::sin(th) << "\n";
    }
    std::ofstream f(dir / "tractions.txt");
    f << "# s re_f1 im_f1 re_f2 im_f2\n0 -1 0 -1 0\n4 -1 0 -1 0\n";
  }
  const RunConfig c = parse(
      "[contour]\nshape = table\ntable_file = shape.txt\ncrack_start_rad = 0\ncrack_end_rad = 1\n"
      "[tractions]\nkind = table\ntable_file = tractions.txt\n",
      dir);
  const ProblemSetup p = c.problem();
  CHECK(p.contour.shape().kind() == "table");
  CHECK(std::abs(p.tractions.f1(0.5) - Complex(-1.0, 0.0)) < 1e-14);
  CHECK(contains(error_of("[contour]\nshape = table\ntable_file = /nonexistent/x.txt\n"),
                 "cannot open"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("presets") {
  CHECK(scenario_names().size() == 7);
  CHECK_THROWS_AS(make_scenario("fig9"), InvalidArgument);
  const Scenario fig1 = make_scenario("fig1");
  REQUIRE(fig1.runs.size() == 3);
  CHECK(fig1.runs[0].config.numerics.order == 16);
  CHECK(fig1.runs[2].config.numerics.order == 30);
  const Scenario fig5a = make_scenario("fig5a");
  REQUIRE(fig5a.runs.size() == 1);
  CHECK(fig5a.runs[0].config.surface.gamma_plus == 1e-4);
  CHECK(fig5a.runs[0].config.surface.gamma_interface == 0.0);
  CHECK(fig5a.runs[0].config.problem().contour.l0() == Approx(pi / 3.0));
  CHECK_FALSE(fig5a.note.empty());
  CHECK_FALSE(make_scenario("fig4").note.empty());
  CHECK(make_scenario("fig4").runs[0].config.problem().special_material_case());
  CHECK(make_scenario("fig5").runs[1].config.load.alpha == Approx(pi / 2.0));
  CHECK(make_scenario("fig5").runs[0].config.output.deformation_scale == 2.0);
  CHECK(make_scenario("fig6").runs.size() == 9);
}
