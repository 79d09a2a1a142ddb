#include "icrack/error.hpp"
#include "icrack/kernels.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace icrack;

namespace {
constexpr double pi = std::numbers::pi;
const Complex I(0.0, 1.0);

bool close(Complex a, Complex b, double tol) { return std::abs(a - b) < tol; }
}  // namespace

TEST_CASE("k1 and k2 on the unit circle") {
  const Contour c = circular_contour(1.0, 0.0, pi);
  CHECK(close(k1(c, 0.0, pi), 1.0, 1e-13));
  CHECK(close(k2(c, 0.0, pi), -1.0, 1e-13));
  for (double s : {0.3, 2.0, 4.0}) {
    CHECK(close(k1(c, s, s), std::exp(-I * s), 1e-12));
    CHECK(close(k2(c, s, s), std::exp(I * s), 1e-12));
  }
}

TEST_CASE("kernels vanish on a nearly straight piece") {
  const Contour c = circular_contour(1e7, 0.0, 1.0);
  CHECK(std::abs(k1(c, 0.1, 0.4)) < 1e-6);
  CHECK(std::abs(k2(c, 0.1, 0.4)) < 1e-6);
}

TEST_CASE("kernels are continuous across the diagonal") {
  const Contour c = elliptic_contour(2.0, 1.0, 0.0, pi / 2.0);
  const double eps = diagonal_epsilon(c);
  for (double s : {0.5, 3.0, 6.0}) {
    CHECK(close(k1(c, s, s + 2.0 * eps), k1(c, s, s), 1e3 * eps));
    CHECK(close(k2(c, s, s - 2.0 * eps), k2(c, s, s), 1e3 * eps));
  }
}

// Reference values from tools/oracles/contour_oracles.py.
TEST_CASE("ellipse kernels match the high-precision oracle") {
  const Contour c = elliptic_contour(2.0, 1.0, 0.0, pi / 2.0);
  CHECK(close(k1(c, 0.7, 2.9), {0.22899793876354016, -0.31849587003953864}, 1e-10));
  CHECK(close(k2(c, 0.7, 2.9), {-0.097029555445959818, 0.3800854385005458}, 1e-10));
  CHECK(close(k1(c, 0.7, 5.0), {0.23153173644296957, -0.32201993711530099}, 1e-10));
  CHECK(close(k2(c, 0.7, 5.0), {-0.33764570494667135, 0.20808450882058587}, 1e-10));
}

TEST_CASE("principal values of analytic densities on the unit circle") {
  const Contour c = circular_contour(1.0, 0.0, pi);
  const QuadratureRule rule;
  for (double s : {0.4, 2.5, 4.1}) {
    const Complex t = c.point(s);
    CHECK(close(cauchy_pv(c, [](double) { return Complex(1.0); }, s, rule), pi * I, 1e-10));
    CHECK(close(cauchy_pv(c, [&](double x) { return c.point(x); }, s, rule), pi * I * t, 1e-10));
    CHECK(close(cauchy_pv(c, [&](double x) { return c.point(x) * c.point(x); }, s, rule),
                pi * I * t * t, 1e-10));
  }
}

TEST_CASE("principal values on the ellipse match the high-precision oracle") {
  const Contour c = elliptic_contour(2.0, 1.0, 0.0, pi / 2.0);
  QuadratureRule rule;
  rule.tip_levels = 12;
  const auto conj_pos = [&](double s) { return std::conj(c.point(s)); };
  const auto crack_only = [&](double s) { return s <= c.l0() ? c.point(s) : Complex(0.0); };
  CHECK(close(cauchy_pv(c, conj_pos, 0.7, rule), {-2.9893911387394007, -1.7194933393499434}, 1e-8));
  CHECK(close(cauchy_pv(c, crack_only, 0.7, rule), {-0.91454071972358814, 2.7672419047518026}, 1e-8));
  CHECK(close(cauchy_pv(c, conj_pos, 4.0, rule), {-3.3999076322798941, 1.5927935646664924}, 1e-8));
  CHECK(close(cauchy_pv(c, crack_only, 4.0, rule), {-1.0028067880119897, -0.16110616387717744}, 1e-8));
}

TEST_CASE("singular operator reproduces boundary values of analytic functions") {
  const Contour c = circular_contour(1.0, 0.0, pi);
  const SingularImage one = singular_apply(c, [](double) { return Complex(1.0); }, QuadratureRule{});
  const SingularImage pos = singular_apply(c, [&](double x) { return c.point(x); }, QuadratureRule{});
  for (double s : {0.7, 3.9}) {
    CHECK(close(one.at(s), 1.0, 1e-10));
    CHECK(close(pos.at(s), c.point(s), 1e-10));
  }
}

TEST_CASE("field points at a tip are rejected") {
  const Contour c = circular_contour(1.0, 0.0, pi);
  CHECK_THROWS_AS(cauchy_pv(c, [](double) { return Complex(1.0); }, 0.0, QuadratureRule{}),
                  TipProximityError);
  CHECK_THROWS_AS(cauchy_pv(c, [](double) { return Complex(1.0); }, pi, QuadratureRule{}),
                  TipProximityError);
}
