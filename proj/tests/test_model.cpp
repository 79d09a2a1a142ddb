#include "icrack/error.hpp"
#include "icrack/model.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace icrack;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi;

ProblemSetup fig1_setup() {
  return {circular_contour(1.0, 0.0, pi), Material(40.0, 0.25), Material(60.0, 0.35),
          SurfaceTension{0.1, 0.1, 0.1}, RemoteLoad{1.0, 0.0, 0.0}};
}
}  // namespace

TEST_CASE("Kolosov constants") {
  CHECK(kolosov(0.25, PlaneMode::stress) == Approx(2.2));
  CHECK(kolosov(0.25, PlaneMode::strain) == Approx(2.0));
  CHECK(kolosov(0.35, PlaneMode::stress) == Approx(2.65 / 1.35));
}

TEST_CASE("material invariants") {
  CHECK_THROWS_AS(Material(40.0, 0.7).validate("matrix"), InvalidArgument);
  CHECK_THROWS_AS(Material(0.0, 0.25).validate("matrix"), InvalidArgument);
  CHECK_THROWS_AS(Material(40.0, 0.5, PlaneMode::strain).validate("matrix"), InvalidArgument);
  CHECK_NOTHROW(Material(40.0, 0.49).validate("matrix"));
  try {
    Material(40.0, 0.7).validate("matrix");
  } catch (const InvalidArgument& e) {
    CHECK(std::string(e.what()).find("matrix") != std::string::npos);
  }
}

TEST_CASE("surface tension must be positive on the crack and non-negative on the bond") {
  CHECK_NOTHROW(SurfaceTension({0.1, 0.1, 0.0}).validate());
  CHECK_THROWS_AS(SurfaceTension({0.0, 0.1, 0.1}).validate(), InvalidArgument);
  CHECK_THROWS_AS(SurfaceTension({0.1, 0.1, -0.1}).validate(), InvalidArgument);
}

TEST_CASE("far-field constants") {
  auto [g, gp] = far_field_constants({1.0, 0.0, 0.0});
  CHECK(g == Approx(0.25));
  CHECK(std::abs(gp - Complex(-0.5, 0.0)) < 1e-15);
  std::tie(g, gp) = far_field_constants({1.0, 0.0, pi / 2.0});
  CHECK(g == Approx(0.25));
  CHECK(std::abs(gp - Complex(0.5, 0.0)) < 1e-15);
  std::tie(g, gp) = far_field_constants({3.0, 3.0, 0.4});
  CHECK(g == Approx(1.5));
  CHECK(std::abs(gp) < 1e-15);
}

TEST_CASE("m coefficients on the unit circle at s = 0") {
  const Contour c = circular_contour(1.0, 0.0, pi);
  const MCoefficients m = m_coefficients(c, 0.0);
  CHECK(std::abs(m.m3 - Complex(-4.0, 0.0)) < 1e-13);
  CHECK(std::abs(m.m4 - Complex(2.0, 0.0)) < 1e-13);
  // By hand with t' = i, t'' = -1, t''' = -i, rho = 1, rho' = 0.
  CHECK(std::abs(m.m1 - Complex(0.0, 4.0)) < 1e-13);
  CHECK(std::abs(m.m2) < 1e-13);
}

TEST_CASE("m3 and m4 shrink with the curvature") {
  const Contour big = circular_contour(1e6, 0.0, pi);
  const MCoefficients m = m_coefficients(big, 1.0);
  CHECK(std::abs(m.m3) < 1e-5);
  CHECK(std::abs(m.m4) < 1e-5);
  CHECK(std::abs(m.m1) < 1e-5);
  CHECK(std::abs(m.m2) < 1e-5);
}

TEST_CASE("special material case") {
  ProblemSetup p = fig1_setup();
  CHECK_FALSE(p.special_material_case());
  p.inclusion = p.matrix;
  CHECK(p.special_material_case());
}

TEST_CASE("scaled loads scale remote stresses and crack tractions") {
  ProblemSetup p = fig1_setup();
  p.tractions = CrackTractions::pressure(2.0);
  const ProblemSetup q = p.with_scaled_loads(3.0);
  CHECK(q.load.sigma1 == Approx(3.0));
  CHECK(q.load.alpha == Approx(0.0));
  CHECK(std::abs(q.tractions.f1(0.5) - Complex(-6.0, 0.0)) < 1e-14);
  CHECK(std::abs(q.tractions.f2(0.5) - Complex(-6.0, 0.0)) < 1e-14);
}

TEST_CASE("traction table interpolates linearly") {
  const auto t = CrackTractions::table({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0}, {0.0, Complex(0, 2), 0.0});
  CHECK(std::abs(t.f1(0.5) - Complex(0.5, 0.0)) < 1e-14);
  CHECK(std::abs(t.f2(1.5) - Complex(0.0, 1.0)) < 1e-14);
}

TEST_CASE("problem validation names the offending part") {
  ProblemSetup p = fig1_setup();
  p.matrix = Material(40.0, 0.7);
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
}
