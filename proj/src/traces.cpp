#include "icrack/traces.hpp"

#include "icrack/kernels.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace icrack {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

struct RegularParts {
  Complex k1g, k2g, k1q, k2q;
};

RegularParts regular_parts(const Contour& contour, const PhaseDensities& d, double s,
                           const QuadratureRule& rule) {
  RegularParts r;
  const LocalFrame field = contour.frame(s);
  const double eps = diagonal_epsilon(contour);
  for (const Arc& arc : arcs_of(contour)) {
    const double rep = nearest_representative(contour.wrap(s), arc, contour.length());
    for (const ArcNode& node : nodes_for_field(arc, rep, rule)) {
      const LocalFrame src = contour.frame(node.s);
      const KernelSample k = kernel_sample(field, src, node.s - rep, eps);
      const Complex g = d.g(node.s);
      const Complex q = d.q(node.s);
      r.k1g += node.w * k.k1 * g * src.d1;
      r.k2g += node.w * k.k2 * std::conj(g * src.d1);
      r.k1q += node.w * k.k1 * q * src.d1;
      r.k2q += node.w * k.k2 * std::conj(q * src.d1);
    }
  }
  return r;
}

}  // namespace

Traces boundary_traces(const Contour& contour, const PhaseDensities& d, const PhaseConstants& p,
                       double s, const QuadratureRule& rule) {
  const Complex cg = cauchy_pv(contour, d.g, s, rule);
  const Complex cq = cauchy_pv(contour, d.q, s, rule);
  const RegularParts r = regular_parts(contour, d, s, rule);
  const LocalFrame f = contour.frame(s);
  const Complex tilt = std::conj(f.d1) / f.d1;
  const double k = p.kappa;
  const Complex g0 = d.g(s);
  const Complex q0 = d.q(s);
  const Complex cq_factor = 1.0 / ((k + 1.0) * kPi * kI);

  const Complex stress = (2.0 * cg + r.k1g + r.k2g) / (2.0 * kPi) +
                         cq_factor * ((1.0 - k) * cq - k * r.k1q - r.k2q) + 2.0 * p.gamma +
                         std::conj(p.gamma_prime) * tilt;
  const Complex strain = ((k - 1.0) * cg - r.k1g - r.k2g) / (2.0 * kPi) +
                         cq_factor * (k * (2.0 * cq + r.k1q) + r.k2q) + k * p.gamma - p.gamma -
                         std::conj(p.gamma_prime) * tilt;
  const Complex local_g = kI * (k + 1.0) / 2.0 * g0;
  return {stress + q0, stress - q0, (strain + local_g) / (2.0 * p.mu),
          (strain - local_g) / (2.0 * p.mu)};
}

Potentials phase_potentials(const Contour& contour, const PhaseDensities& d,
                            const PhaseConstants& p, Complex z, const QuadratureRule& rule) {
  Complex ag, bg, cg, dg, aq, bq, cq, dq;
  for (const Arc& arc : arcs_of(contour)) {
    double s_near = arc.a;
    double standoff = std::numeric_limits<double>::infinity();
    for (const ArcNode& node : composite_nodes(arc.a, arc.b, rule)) {
      const double dist = std::abs(contour.point(node.s) - z);
      if (dist < standoff) {
        standoff = dist;
        s_near = node.s;
      }
    }
    for (const ArcNode& node : graded_nodes(arc.a, arc.b, s_near, rule, standoff)) {
      const LocalFrame f = contour.frame(node.s);
      const Complex inv = 1.0 / (f.t - z);
      const Complex gdt = node.w * d.g(node.s) * f.d1;
      const Complex qdt = node.w * d.q(node.s) * f.d1;
      ag += gdt * inv;
      bg += std::conj(gdt) * inv;
      cg += std::conj(f.t) * gdt * inv * inv;
      dg += gdt * inv * inv;
      aq += qdt * inv;
      bq += std::conj(qdt) * inv;
      cq += std::conj(f.t) * qdt * inv * inv;
      dq += qdt * inv * inv;
    }
  }
  const double k = p.kappa;
  const Complex cf = 1.0 / ((k + 1.0) * kPi * kI);
  Potentials out;
  out.phi = p.gamma + ag / (2.0 * kPi) + cf * aq;
  out.psi = p.gamma_prime + (bg - cg) / (2.0 * kPi) + cf * (k * bq - cq);
  out.phi_prime = dg / (2.0 * kPi) + cf * dq;
  return out;
}

PointField field_from_potentials(const Potentials& pot, const PhaseConstants& p, Complex z,
                                 Complex tangent) {
  const Complex tilt = std::conj(tangent) / tangent;
  const Complex extra = tilt * (z * std::conj(pot.phi_prime) + std::conj(pot.psi));
  return {pot.phi + std::conj(pot.phi) + extra,
          (p.kappa * pot.phi - std::conj(pot.phi) - extra) / (2.0 * p.mu)};
}

}  // namespace icrack
