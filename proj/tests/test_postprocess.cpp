#include "icrack/error.hpp"
#include "icrack/postprocess.hpp"
#include "icrack/solver.hpp"
#include "icrack/traces.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace icrack;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi;
const Complex I(0.0, 1.0);

ProblemSetup fig1_setup(RemoteLoad load = {1.0, 0.0, 0.0}) {
  return {circular_contour(1.0, 0.0, pi), Material(40.0, 0.25), Material(60.0, 0.35),
          SurfaceTension{0.1, 0.1, 0.1}, load};
}

SolverOptions options(int order) {
  SolverOptions o;
  o.order = order;
  return o;
}

DensitySet constant_q0(const Contour& c, Complex value) {
  std::array<std::vector<double>, 8> re, im;
  const DensitySet shape(c, 4);
  for (int j = 0; j < 8; ++j) {
    re[j].assign(shape.degree_re(j) + 1, 0.0);
    im[j].assign(shape.degree_im(j) + 1, 0.0);
  }
  re[0][0] = value.real();
  im[0][0] = value.imag();
  return DensitySet::from_taylor(c, 4, re, im);
}
}  // namespace

TEST_CASE("zero densities give zero fields") {
  const ProblemSetup p = fig1_setup();
  const DensitySet d(p.contour, 6);
  for (const BoundarySample& b : crack_face_fields(d, p, 11).samples) {
    CHECK(std::abs(b.stress_plus) == 0.0);
    CHECK(std::abs(b.dudt_minus) == 0.0);
  }
  CHECK(max_crack_opening(d, p) == 0.0);
  const Displacements u(d, p, 1.0);
  CHECK(std::abs(u.inclusion(2.0)) == 0.0);
  CHECK(std::abs(u.matrix(5.0)) == 0.0);
}

TEST_CASE("constant q0 gives constant inclusion-side stress") {
  const ProblemSetup p = fig1_setup();
  const DensitySet d = constant_q0(p.contour, {0.3, -0.2});
  const auto f = crack_face_fields(d, p, 21).samples;
  REQUIRE(f.size() == 21);
  CHECK(f.front().s == 0.0);
  CHECK(f.back().s == Approx(pi));
  for (const BoundarySample& b : f) CHECK(std::abs(b.stress_plus - Complex(0.6, -0.4)) < 1e-14);
  for (const BoundarySample& b : interface_fields(d, p, 5).samples) CHECK(std::abs(b.stress_plus) == 0.0);
}

TEST_CASE("potentials of zero densities are the far-field constants") {
  const ProblemSetup p = fig1_setup({1.0, 0.0, 0.3});
  const DensitySet d(p.contour, 6);
  const auto [g, gp] = far_field_constants(p.load);
  const Potentials out = potentials_at(d, p, {3.0, 1.0}, Region::matrix);
  CHECK(std::abs(out.phi - g) < 1e-14);
  CHECK(std::abs(out.psi - gp) < 1e-14);
  const Potentials in = potentials_at(d, p, {0.2, -0.1}, Region::inclusion);
  CHECK(std::abs(in.phi) == 0.0);
  CHECK(std::abs(in.psi) == 0.0);
}

TEST_CASE("points are checked against the region and the contour") {
  const ProblemSetup p = fig1_setup();
  const DensitySet d(p.contour, 6);
  CHECK_THROWS_AS(potentials_at(d, p, {1.005, 0.0}, Region::matrix), NearBoundaryError);
  CHECK_THROWS_AS(potentials_at(d, p, {0.5, 0.0}, Region::matrix), InvalidArgument);
  CHECK_THROWS_AS(potentials_at(d, p, {2.0, 0.0}, Region::inclusion), InvalidArgument);
}

TEST_CASE("far from the inclusion the potential tends to the remote value") {
  const ProblemSetup p = fig1_setup();
  const Solution s = solve_problem(p, options(12));
  const auto [g, gp] = far_field_constants(p.load);
  const Potentials far = potentials_at(s.densities, p, {100.0, 30.0}, Region::matrix);
  CHECK(std::abs(far.phi - g) < 0.01 * std::abs(g));
}

TEST_CASE("traces jump by the densities across the contour") {
  const Contour c = circular_contour(1.0, 0.0, pi);
  const PhaseDensities dens{[](double s) { return Complex(std::cos(s), 0.5 * std::sin(2.0 * s)); },
                            [](double s) { return Complex(0.3 * std::sin(s), std::cos(3.0 * s)); }};
  const PhaseConstants phase{2.2, 40.0, 0.0, 0.0};
  QuadratureRule rule;
  rule.tip_levels = 12;
  for (double s : {0.8, 2.2, 4.4}) {
    const Traces t = boundary_traces(c, dens, phase, s, rule);
    CHECK(std::abs(t.stress_plus - t.stress_minus - 2.0 * dens.q(s)) < 1e-8);
    CHECK(std::abs(t.dudt_plus - t.dudt_minus - I * 3.2 / 80.0 * dens.g(s)) < 1e-8);
  }
}

TEST_CASE("opening scales with the load") {
  const ProblemSetup p = fig1_setup();
  const double one = max_crack_opening(solve_problem(p, options(10)).densities, p);
  const ProblemSetup q = p.with_scaled_loads(2.0);
  const double two = max_crack_opening(solve_problem(q, options(10)).densities, q);
  CHECK(one > 0.0);
  CHECK(two == Approx(2.0 * one).epsilon(1e-10));
}

TEST_CASE("crack-face displacement jumps close through the bonded arc") {
  const ProblemSetup p = fig1_setup();
  const Solution s = solve_problem(p, options(16));
  const Displacements u(s.densities, p, 0.5 * pi);
  const Complex inc = u.inclusion(pi) - u.inclusion(0.0);
  const Complex mat = u.matrix(pi) - u.matrix(0.0);
  CHECK(std::abs(inc - mat) < 1e-9 * std::abs(inc));
}

TEST_CASE("deformed boundary of an unloaded problem is the contour") {
  const ProblemSetup p = fig1_setup({0.0, 0.0, 0.0});
  const DensitySet d(p.contour, 6);
  for (const DeformedPoint& q : deformed_boundary(d, p, 2.0, 9)) {
    CHECK(std::abs(q.inclusion - q.undeformed) == 0.0);
    CHECK(std::abs(q.matrix - q.undeformed) == 0.0);
  }
}

TEST_CASE("tip fits report the sampled exponents") {
  const ProblemSetup p = fig1_setup();
  const auto fits = tip_fits(solve_problem(p, options(12)).densities, p);
  CHECK(fits[0].tip_s == 0.0);
  CHECK(fits[1].tip_s == Approx(pi));
  CHECK(std::isfinite(fits[0].normal_exponent));
  CHECK(fits[1].shear_log_residual >= 0.0);
}
