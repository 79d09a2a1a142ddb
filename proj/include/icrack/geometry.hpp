#pragma once

#include <complex>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace icrack {

using Complex = std::complex<double>;

/// Position, derivatives up to third order and curvature at one arc-length value.
struct LocalFrame {
  Complex t;      ///< t(s)
  Complex d1;     ///< t'(s), unit tangent
  Complex d2;     ///< t''(s) = i rho t'
  Complex d3;     ///< t'''(s) = (i rho' - rho^2) t'
  double rho{};   ///< signed curvature, positive for a counterclockwise circle
  double drho{};  ///< d rho / ds
};

/// A smooth closed counterclockwise curve parametrized by its own arc length.
class Shape {
public:
  virtual ~Shape() = default;

  virtual std::string kind() const = 0;
  virtual double length() const = 0;
  /// Arc length measured from the shape's own origin to the point with angular parameter theta.
  virtual double arc_length_at(double theta) const = 0;
  /// Frame at arc length s, with s already reduced to [0, length()).
  virtual LocalFrame frame(double s) const = 0;
};

/// Circle of radius R centred at the origin, origin at polar angle 0.
class CircleShape final : public Shape {
public:
  explicit CircleShape(double radius);

  std::string kind() const override { return "circle"; }
  double length() const override;
  double arc_length_at(double theta) const override;
  LocalFrame frame(double s) const override;

  double radius() const noexcept { return radius_; }

private:
  double radius_;
};

/// Closed curve z(theta), theta in [0, 2pi), reparametrized numerically by arc length.
///
/// Subclasses supply z and its first three theta-derivatives; this class tabulates
/// the arc length on a fine panel grid and inverts it with Newton iterations.
class ParametricShape : public Shape {
public:
  double length() const override { return length_; }
  double arc_length_at(double theta) const override;
  LocalFrame frame(double s) const override;

  /// Angular parameter at arc length s.
  double theta_at(double s) const;

protected:
  /// k-th derivative of z with respect to theta, k in 0..3.
  virtual Complex z(double theta, int k) const = 0;
  /// Must be called by the subclass constructor once z() is usable.
  void tabulate();

private:
  double speed(double theta) const { return std::abs(z(theta, 1)); }
  double partial_length(double theta0, double theta1) const;

  std::vector<double> panel_s_;  // cumulative arc length at panel boundaries
  double length_{};
};

/// Ellipse x = a cos(theta), y = b sin(theta).
class EllipseShape final : public ParametricShape {
public:
  EllipseShape(double semi_axis_a, double semi_axis_b);
  std::string kind() const override { return "ellipse"; }

protected:
  Complex z(double theta, int k) const override;

private:
  double a_, b_;
};

/// Closed curve through user samples taken at uniform parameter spacing, interpolated
/// by a trigonometric polynomial. Smoothness of the underlying curve is assumed, not checked.
class SampledShape final : public ParametricShape {
public:
  explicit SampledShape(std::span<const Complex> samples);
  std::string kind() const override { return "table"; }

protected:
  Complex z(double theta, int k) const override;

private:
  std::vector<Complex> coeffs_;  // coefficient of exp(i m theta), m = -M/2 .. M/2
  int half_{};
};

/// The closed contour L0 u L: s in [0, l0] is the crack, s in [l0, l] the bonded line.
///
/// All arc-length arguments are taken modulo l; s = 0 (= l) and s = l0 are the crack tips.
/// Evaluation is const and reentrant.
class Contour {
public:
  /// `start` is the arc length on the shape where the crack begins.
  Contour(std::shared_ptr<const Shape> shape, double start, double l0);

  double l0() const noexcept { return l0_; }
  double length() const noexcept { return shape_->length(); }
  bool counterclockwise() const noexcept { return true; }
  const Shape& shape() const noexcept { return *shape_; }

  /// s reduced to [0, l).
  double wrap(double s) const;

  LocalFrame frame(double s) const;
  Complex point(double s) const { return frame(s).t; }
  /// Analytic derivative of order 1, 2 or 3.
  Complex derivative(double s, int order) const;
  double curvature(double s) const { return frame(s).rho; }
  double curvature_derivative(double s) const { return frame(s).drho; }

private:
  std::shared_ptr<const Shape> shape_;
  double start_;
  double l0_;
};

/// Circle of the given radius with the crack over polar angles [angle_start, angle_end].
Contour circular_contour(double radius, double angle_start, double angle_end);

/// Ellipse with the crack over parametric angles [angle_start, angle_end].
Contour elliptic_contour(double semi_axis_a, double semi_axis_b, double angle_start,
                         double angle_end);

/// Sampled closed curve with the crack over parameter angles [angle_start, angle_end];
/// the k-th of M samples sits at parameter 2 pi k / M.
Contour sampled_contour(std::span<const Complex> samples, double angle_start, double angle_end);

/// Curvature of the contour at s, rho = Im(t'' conj(t')).
double curvature(const Contour& contour, double s);

/// t^(order)(s) for order 1..3.
Complex derivative(const Contour& contour, double s, int order);

}  // namespace icrack
