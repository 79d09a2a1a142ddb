#include "icrack/postprocess.hpp"

#include "icrack/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace icrack {

namespace {

const Complex kI{0.0, 1.0};

std::vector<double> spaced(double a, double b, int count) {
  if (count < 2) throw InvalidArgument("at least two samples are required");
  std::vector<double> s(count);
  for (int i = 0; i < count; ++i) s[i] = a + (b - a) * i / (count - 1);
  s.back() = b;
  return s;
}

// Least-squares line y = c0 + c1 x.
std::pair<double, double> fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  Eigen::MatrixXd A(x.size(), 2);
  Eigen::VectorXd b(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    A(i, 0) = 1.0;
    A(i, 1) = x[i];
    b(i) = y[i];
  }
  const Eigen::Vector2d c = A.colPivHouseholderQr().solve(b);
  return {c(0), c(1)};
}

double min_abs_floor(double v) { return std::max(std::abs(v), 1e-300); }

}  // namespace

PhaseDensities inclusion_densities(const DensitySet& d) {
  return {[&d](double s) { return d.eval(Density::g0p, s); },
          [&d](double s) { return d.eval(Density::q0, s); }};
}

PhaseDensities matrix_densities(const DensitySet& d) {
  return {[&d](double s) { return d.eval(Density::gp, s); },
          [&d](double s) { return d.eval(Density::q, s); }};
}

PhaseConstants inclusion_constants(const ProblemSetup& setup) {
  return {setup.inclusion.kappa(), setup.inclusion.shear_modulus, 0.0, 0.0};
}

PhaseConstants matrix_constants(const ProblemSetup& setup) {
  const auto [g, gp] = far_field_constants(setup.load);
  return {setup.matrix.kappa(), setup.matrix.shear_modulus, g, gp};
}

BoundarySample boundary_sample_on_arc(const DensitySet& d, const ProblemSetup& setup, int arc,
                                      double s) {
  const double kap0 = setup.inclusion.kappa();
  const double kap = setup.matrix.kappa();
  BoundarySample b;
  b.s = s;
  b.tangent = setup.contour.derivative(s, 1);
  b.stress_plus = 2.0 * d.eval_on_arc(Density::q0, arc, s);
  b.stress_minus = -2.0 * d.eval_on_arc(Density::q, arc, s);
  b.dudt_plus = kI * (kap0 + 1.0) / (2.0 * setup.inclusion.shear_modulus) *
                d.eval_on_arc(Density::g0p, arc, s);
  b.dudt_minus =
      -kI * (kap + 1.0) / (2.0 * setup.matrix.shear_modulus) * d.eval_on_arc(Density::gp, arc, s);
  return b;
}

BoundarySample boundary_sample(const DensitySet& d, const ProblemSetup& setup, double s) {
  return boundary_sample_on_arc(d, setup, s <= d.l0() ? 0 : 1, s);
}

BoundaryField crack_face_fields(const DensitySet& d, const ProblemSetup& setup, int count) {
  BoundaryField f;
  for (double s : spaced(0.0, d.l0(), count)) {
    f.samples.push_back(boundary_sample_on_arc(d, setup, 0, s));
  }
  return f;
}

BoundaryField interface_fields(const DensitySet& d, const ProblemSetup& setup, int count) {
  BoundaryField f;
  for (double s : spaced(d.l0(), d.length(), count)) {
    f.samples.push_back(boundary_sample_on_arc(d, setup, 1, s));
  }
  return f;
}

Displacements::Displacements(const DensitySet& d, const ProblemSetup& setup, double anchor)
    : densities_(d), setup_(setup), anchor_(anchor) {
  if (anchor < 0.0 || anchor > d.length()) throw InvalidArgument("anchor lies outside [0, l]");
  const double l1 = d.arc(1).centre();
  matrix_offset_ = inclusion(l1);
}

Complex Displacements::integrate(bool inclusion_side, double from, double to) const {
  const double sign = to >= from ? 1.0 : -1.0;
  const double lo = std::min(from, to);
  const double hi = std::max(from, to);
  const double l0 = densities_.l0();
  const QuadratureRule rule;
  Complex sum;
  for (int arc = 0; arc < 2; ++arc) {
    const Arc& a = densities_.arc(arc);
    const double x0 = std::max(lo, a.a);
    const double x1 = std::min(hi, arc == 0 ? l0 : a.b);
    if (!(x1 > x0)) continue;
    for (const ArcNode& n : composite_nodes(x0, x1, rule)) {
      const Density which = inclusion_side ? Density::g0p : Density::gp;
      const Complex g = densities_.eval_on_arc(which, arc, n.s);
      const Complex factor =
          inclusion_side
              ? kI * (setup_.inclusion.kappa() + 1.0) / (2.0 * setup_.inclusion.shear_modulus)
              : -kI * (setup_.matrix.kappa() + 1.0) / (2.0 * setup_.matrix.shear_modulus);
      sum += n.w * factor * g * setup_.contour.derivative(n.s, 1);
    }
  }
  return sign * sum;
}

Complex Displacements::inclusion(double s) const { return integrate(true, anchor_, s); }

Complex Displacements::matrix(double s) const {
  return matrix_offset_ + integrate(false, densities_.arc(1).centre(), s);
}

double max_crack_opening(const DensitySet& d, const ProblemSetup& setup, int count) {
  double m = 0.0;
  for (double s : spaced(0.0, d.l0(), count)) {
    const BoundarySample b = boundary_sample(d, setup, s);
    m = std::max(m, std::abs(b.dudt_plus - b.dudt_minus));
  }
  return m;
}

double near_boundary_distance(const Contour& contour) { return 0.02 * contour.length(); }

Potentials potentials_at(const DensitySet& d, const ProblemSetup& setup, Complex z,
                         Region region, const QuadratureRule& rule) {
  const Contour& c = setup.contour;
  constexpr int kSamples = 4000;
  double dist = std::numeric_limits<double>::infinity();
  double winding = 0.0;
  Complex prev = c.point(0.0) - z;
  for (int i = 1; i <= kSamples; ++i) {
    const Complex cur = c.point(c.length() * i / kSamples) - z;
    dist = std::min(dist, std::abs(cur));
    winding += std::arg(cur / prev);
    prev = cur;
  }
  if (dist < near_boundary_distance(c)) {
    throw NearBoundaryError("point lies within 0.02 l of the contour; use boundary traces");
  }
  const bool inside = std::abs(winding) > std::numbers::pi;
  if (inside != (region == Region::inclusion)) {
    throw InvalidArgument(inside ? "point lies inside the inclusion"
                                 : "point lies outside the inclusion");
  }
  return region == Region::inclusion
             ? phase_potentials(c, inclusion_densities(d), inclusion_constants(setup), z, rule)
             : phase_potentials(c, matrix_densities(d), matrix_constants(setup), z, rule);
}

std::array<TipFit, 2> tip_fits(const DensitySet& d, const ProblemSetup& /*setup*/) {
  std::array<TipFit, 2> out;
  const double l0 = d.l0();
  for (int tip = 0; tip < 2; ++tip) {
    std::vector<double> logd, log_sn, log_tn, tn;
    for (int k = 3; k <= 10; ++k) {
      const double dist = l0 * std::ldexp(1.0, -k);
      const double s = tip == 0 ? dist : l0 - dist;
      const Complex st = 2.0 * d.eval(Density::q0, s);
      logd.push_back(std::log(dist));
      log_sn.push_back(std::log(min_abs_floor(st.real())));
      log_tn.push_back(std::log(min_abs_floor(st.imag())));
      tn.push_back(st.imag());
    }
    TipFit& f = out[tip];
    f.tip_s = tip == 0 ? 0.0 : l0;
    f.normal_exponent = -fit_line(logd, log_sn).second;
    f.shear_exponent = -fit_line(logd, log_tn).second;
    const auto [a, b] = fit_line(logd, tn);
    f.shear_log_intercept = a;
    f.shear_log_slope = b;
    double res = 0.0;
    double norm = 0.0;
    for (std::size_t i = 0; i < tn.size(); ++i) {
      res += std::pow(tn[i] - (a + b * logd[i]), 2);
      norm += tn[i] * tn[i];
    }
    f.shear_log_residual = norm > 0.0 ? std::sqrt(res / norm) : 0.0;
  }
  return out;
}

std::vector<DeformedPoint> deformed_boundary(const DensitySet& d, const ProblemSetup& setup,
                                             double scale, int count) {
  const Displacements u(d, setup, 0.5 * d.l0());
  std::vector<DeformedPoint> out;
  for (double s : spaced(0.0, d.length(), count)) {
    const Complex t = setup.contour.point(s);
    out.push_back({s, t, t + scale * u.inclusion(s), t + scale * u.matrix(s)});
  }
  return out;
}

}  // namespace icrack
