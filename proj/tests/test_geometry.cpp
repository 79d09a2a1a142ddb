#include "icrack/error.hpp"
#include "icrack/geometry.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace icrack;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi;

void check_close(Complex a, Complex b, double tol) {
  CHECK(std::abs(a - b) < tol);
}
}  // namespace

TEST_CASE("semicircular crack on the unit circle") {
  const Contour c = circular_contour(1.0, 0.0, pi);
  CHECK(c.l0() == Approx(pi));
  CHECK(c.length() == Approx(2.0 * pi));
  for (double s : {0.0, 0.3, 2.0, 4.5}) check_close(c.point(s), std::polar(1.0, s), 1e-14);
}

TEST_CASE("crack symmetric about the x axis starts at the lower tip") {
  const Contour c = circular_contour(1.0, -pi / 6.0, pi / 6.0);
  CHECK(c.l0() == Approx(pi / 3.0));
  CHECK(c.length() == Approx(2.0 * pi));
  check_close(c.point(0.0), std::polar(1.0, -pi / 6.0), 1e-14);
  check_close(c.point(c.l0()), std::polar(1.0, pi / 6.0), 1e-14);
}

TEST_CASE("radius two is parametrized by arc length") {
  const Contour c = circular_contour(2.0, 0.0, pi);
  CHECK(c.l0() == Approx(2.0 * pi));
  for (double s : {0.0, 1.0, 7.0}) check_close(c.point(s), 2.0 * std::polar(1.0, s / 2.0), 1e-14);
  CHECK(c.curvature(1.3) == Approx(0.5));
}

TEST_CASE("unit circle derivatives at s = 0") {
  const Contour c = circular_contour(1.0, 0.0, pi);
  check_close(c.derivative(0.0, 1), {0.0, 1.0}, 1e-14);
  check_close(c.derivative(0.0, 2), {-1.0, 0.0}, 1e-14);
  check_close(c.derivative(0.0, 3), {0.0, -1.0}, 1e-14);
  CHECK(curvature(c, 0.7) == Approx(1.0));
}

TEST_CASE("arc length is taken modulo the perimeter") {
  const Contour c = circular_contour(1.0, 0.0, pi);
  CHECK(c.wrap(2.0 * pi + 0.25) == Approx(0.25));
  CHECK(c.wrap(-0.25) == Approx(2.0 * pi - 0.25));
}

// Reference values from tools/oracles/contour_oracles.py (mpmath, ellipse a = 2, b = 1,
// crack over parametric angles [0, pi/2]).
TEST_CASE("ellipse matches the high-precision oracle") {
  const Contour c = elliptic_contour(2.0, 1.0, 0.0, pi / 2.0);
  CHECK(c.length() == Approx(9.6884482205476762).epsilon(1e-12));
  CHECK(c.l0() == Approx(2.422112055136919).epsilon(1e-12));
  const LocalFrame f = c.frame(1.0);
  check_close(f.t, {1.383372104044856, 0.72219831447991281}, 1e-10);
  check_close(f.d1, {-0.90191836587815056, 0.43190654231174426}, 1e-10);
  CHECK(f.rho == Approx(0.48693645424127185).epsilon(1e-9));
}

TEST_CASE("ellipse curvature agrees with finite differences of t(s)") {
  const Contour c = elliptic_contour(2.0, 1.0, 0.0, pi / 2.0);
  const double h = 1e-4;
  for (double s : {0.0, 1.7, 5.2}) {
    const Complex d2 = (c.point(s + h) - 2.0 * c.point(s) + c.point(s - h)) / (h * h);
    const double rho = std::imag(d2 * std::conj(c.derivative(s, 1)));
    CHECK(c.curvature(s) == Approx(rho).epsilon(1e-6));
  }
}

TEST_CASE("unit speed on every built-in shape") {
  std::vector<Complex> samples;
  for (int k = 0; k < 64; ++k) {
    const double th = 2.0 * pi * k / 64;
    samples.push_back(std::polar(1.0 + 0.1 * std::cos(3.0 * th), th));
  }
  const std::vector<Contour> shapes{circular_contour(1.5, 0.0, 2.0),
                                    elliptic_contour(2.0, 1.0, 0.5, 2.0),
                                    sampled_contour(samples, 0.0, pi / 2.0)};
  std::mt19937 rng(11);
  for (const Contour& c : shapes) {
    std::uniform_real_distribution<double> u(0.0, c.length());
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) worst = std::max(worst, std::abs(std::abs(c.derivative(u(rng), 1)) - 1.0));
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("third derivative identity t''' = (i rho' - rho^2) t'") {
  const Contour c = elliptic_contour(2.0, 1.0, 0.0, pi / 2.0);
  for (double s : {0.4, 3.3}) {
    const LocalFrame f = c.frame(s);
    check_close(f.d3, (Complex(0.0, f.drho) - f.rho * f.rho) * f.d1, 1e-9);
  }
}

TEST_CASE("degenerate crack spans are rejected") {
  CHECK_THROWS_AS(circular_contour(1.0, 0.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(circular_contour(-1.0, 0.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(circular_contour(1.0, 0.0, 7.0), InvalidArgument);
}
