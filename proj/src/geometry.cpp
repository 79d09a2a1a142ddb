#include "icrack/geometry.hpp"

#include "icrack/error.hpp"
#include "icrack/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace icrack {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kArcPanels = 512;
constexpr int kArcNodes = 24;

double wrap_to(double x, double period) {
  double r = std::fmod(x, period);
  if (r < 0.0) r += period;
  if (r >= period) r -= period;
  return r;
}

void check_crack_span(double angle_start, double angle_end) {
  const double span = angle_end - angle_start;
  if (!(span > 0.0) || !(span < kTwoPi)) {
    throw InvalidArgument("crack arc must span an angle in (0, 2pi), got " +
                          std::to_string(span));
  }
}

LocalFrame frame_from_z(Complex z0, Complex z1, Complex z2, Complex z3) {
  const double v = std::abs(z1);
  const double num = std::imag(z2 * std::conj(z1));
  const double den = v * v * v;
  const double dnum = std::imag(z3 * std::conj(z1));
  const double dden = 3.0 * v * std::real(z2 * std::conj(z1));

  LocalFrame f;
  f.t = z0;
  f.d1 = z1 / v;
  f.rho = num / den;
  f.drho = (dnum * den - num * dden) / (den * den) / v;
  f.d2 = Complex(0.0, f.rho) * f.d1;
  f.d3 = Complex(-f.rho * f.rho, f.drho) * f.d1;
  return f;
}

}  // namespace

// ---------------------------------------------------------------- circle

CircleShape::CircleShape(double radius) : radius_(radius) {
  if (!(radius > 0.0)) throw InvalidArgument("circle radius must be positive");
}

double CircleShape::length() const { return kTwoPi * radius_; }

double CircleShape::arc_length_at(double theta) const { return radius_ * wrap_to(theta, kTwoPi); }

LocalFrame CircleShape::frame(double s) const {
  const double theta = s / radius_;
  const Complex e = std::polar(1.0, theta);
  LocalFrame f;
  f.t = radius_ * e;
  f.d1 = Complex(0.0, 1.0) * e;
  f.d2 = -e / radius_;
  f.d3 = Complex(0.0, -1.0) * e / (radius_ * radius_);
  f.rho = 1.0 / radius_;
  f.drho = 0.0;
  return f;
}

// ---------------------------------------------------------------- parametric

void ParametricShape::tabulate() {
  const double h = kTwoPi / kArcPanels;
  panel_s_.assign(kArcPanels + 1, 0.0);
  for (int p = 0; p < kArcPanels; ++p) {
    panel_s_[p + 1] = panel_s_[p] + partial_length(p * h, (p + 1) * h);
  }
  length_ = panel_s_.back();
}

double ParametricShape::partial_length(double theta0, double theta1) const {
  const auto& gl = gauss_legendre(kArcNodes);
  const double half = 0.5 * (theta1 - theta0);
  const double mid = 0.5 * (theta1 + theta0);
  double acc = 0.0;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    acc += gl.weights[i] * speed(mid + half * gl.nodes[i]);
  }
  return acc * half;
}

double ParametricShape::arc_length_at(double theta) const {
  const double th = wrap_to(theta, kTwoPi);
  const double h = kTwoPi / kArcPanels;
  const int p = std::min(static_cast<int>(th / h), kArcPanels - 1);
  return panel_s_[p] + partial_length(p * h, th);
}

double ParametricShape::theta_at(double s) const {
  const double sw = wrap_to(s, length_);
  const double h = kTwoPi / kArcPanels;
  auto it = std::upper_bound(panel_s_.begin(), panel_s_.end(), sw);
  int p = static_cast<int>(std::distance(panel_s_.begin(), it)) - 1;
  p = std::clamp(p, 0, kArcPanels - 1);
  const double lo = p * h;
  const double hi = lo + h;
  const double s_lo = panel_s_[p];
  double theta = lo + h * (sw - s_lo) / (panel_s_[p + 1] - s_lo);
  for (int it_n = 0; it_n < 30; ++it_n) {
    const double f = s_lo + partial_length(lo, theta) - sw;
    const double step = f / speed(theta);
    theta = std::clamp(theta - step, lo, hi);
    if (std::abs(step) < 1e-15 * kTwoPi) break;
  }
  return theta;
}

LocalFrame ParametricShape::frame(double s) const {
  const double theta = theta_at(s);
  return frame_from_z(z(theta, 0), z(theta, 1), z(theta, 2), z(theta, 3));
}

// ---------------------------------------------------------------- ellipse

EllipseShape::EllipseShape(double semi_axis_a, double semi_axis_b)
    : a_(semi_axis_a), b_(semi_axis_b) {
  if (!(a_ > 0.0) || !(b_ > 0.0)) throw InvalidArgument("ellipse semi-axes must be positive");
  tabulate();
}

Complex EllipseShape::z(double theta, int k) const {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  switch (k) {
    case 0: return {a_ * c, b_ * s};
    case 1: return {-a_ * s, b_ * c};
    case 2: return {-a_ * c, -b_ * s};
    case 3: return {a_ * s, -b_ * c};
    default: throw InvalidArgument("ellipse derivative order must be 0..3");
  }
}

// ---------------------------------------------------------------- sampled

SampledShape::SampledShape(std::span<const Complex> samples) {
  const int m = static_cast<int>(samples.size());
  if (m < 8) throw InvalidArgument("sampled contour needs at least 8 points");

  std::vector<Complex> pts(samples.begin(), samples.end());
  double area2 = 0.0;
  for (int k = 0; k < m; ++k) area2 += std::imag(std::conj(pts[k]) * pts[(k + 1) % m]);
  if (area2 < 0.0) std::reverse(pts.begin(), pts.end());

  half_ = m / 2;
  coeffs_.assign(2 * half_ + 1, Complex{});
  for (int j = -half_; j <= half_; ++j) {
    Complex acc{};
    for (int k = 0; k < m; ++k) acc += pts[k] * std::polar(1.0, -kTwoPi * j * k / m);
    acc /= static_cast<double>(m);
    if (m % 2 == 0 && std::abs(j) == half_) acc *= 0.5;
    coeffs_[j + half_] = acc;
  }
  tabulate();
}

Complex SampledShape::z(double theta, int k) const {
  Complex acc{};
  for (int j = -half_; j <= half_; ++j) {
    Complex factor = 1.0;
    for (int d = 0; d < k; ++d) factor *= Complex(0.0, static_cast<double>(j));
    acc += coeffs_[j + half_] * factor * std::polar(1.0, j * theta);
  }
  return acc;
}

// ---------------------------------------------------------------- contour

Contour::Contour(std::shared_ptr<const Shape> shape, double start, double l0)
    : shape_(std::move(shape)), start_(0.0), l0_(l0) {
  if (!shape_) throw InvalidArgument("contour needs a shape");
  start_ = wrap_to(start, shape_->length());
  if (!(l0 > 0.0) || !(l0 < shape_->length())) {
    throw InvalidArgument("crack length must satisfy 0 < l0 < l");
  }
}

double Contour::wrap(double s) const { return wrap_to(s, length()); }

LocalFrame Contour::frame(double s) const { return shape_->frame(wrap_to(start_ + s, length())); }

Complex Contour::derivative(double s, int order) const {
  const LocalFrame f = frame(s);
  switch (order) {
    case 1: return f.d1;
    case 2: return f.d2;
    case 3: return f.d3;
    default: throw InvalidArgument("derivative order must be 1, 2 or 3");
  }
}

Contour circular_contour(double radius, double angle_start, double angle_end) {
  check_crack_span(angle_start, angle_end);
  auto shape = std::make_shared<CircleShape>(radius);
  return Contour(shape, shape->arc_length_at(angle_start), radius * (angle_end - angle_start));
}

Contour elliptic_contour(double semi_axis_a, double semi_axis_b, double angle_start,
                         double angle_end) {
  check_crack_span(angle_start, angle_end);
  auto shape = std::make_shared<EllipseShape>(semi_axis_a, semi_axis_b);
  const double s0 = shape->arc_length_at(angle_start);
  double l0 = shape->arc_length_at(angle_end) - s0;
  if (l0 <= 0.0) l0 += shape->length();
  return Contour(shape, s0, l0);
}

Contour sampled_contour(std::span<const Complex> samples, double angle_start, double angle_end) {
  check_crack_span(angle_start, angle_end);
  auto shape = std::make_shared<SampledShape>(samples);
  const double s0 = shape->arc_length_at(angle_start);
  double l0 = shape->arc_length_at(angle_end) - s0;
  if (l0 <= 0.0) l0 += shape->length();
  return Contour(shape, s0, l0);
}

double curvature(const Contour& contour, double s) {
  const LocalFrame f = contour.frame(s);
  return std::imag(f.d2 * std::conj(f.d1));
}

Complex derivative(const Contour& contour, double s, int order) {
  return contour.derivative(s, order);
}

}  // namespace icrack
