#pragma once

#include "icrack/geometry.hpp"
#include "icrack/quadrature.hpp"

#include <array>
#include <functional>
#include <vector>

namespace icrack {

/// One of the two open arcs of the contour: [0, l0] (crack) or [l0, l] (bonded line).
struct Arc {
  double a;
  double b;
  double length() const { return b - a; }
  double centre() const { return 0.5 * (a + b); }
  bool contains(double s) const { return a <= s && s <= b; }
};

std::array<Arc, 2> arcs_of(const Contour& contour);

/// Width below which kernels switch to their Taylor expansion about the diagonal.
double diagonal_epsilon(const Contour& contour);

/// Field points closer than this to a crack tip are rejected by the principal-value routines.
double tip_epsilon(const Contour& contour);

/// Representative of s (mod l) closest to the arc, so that s - rep lies in the local chart.
double nearest_representative(double s, const Arc& arc, double l);

/// Regular kernel k1(t, tau) = -1/(tau - t) + conj(t')/t' / conj(tau - t), t = t(s_field).
Complex k1(const Contour& contour, double s_field, double s_src);

/// Regular kernel k2(t, tau) = 1/conj(tau - t) - (tau - t)/conj(tau - t)^2 conj(t')/t'.
Complex k2(const Contour& contour, double s_field, double s_src);

/// Kernel values at one source node for a fixed field point. `h` is s_src - s_field in the
/// local chart (see nearest_representative), used for the near-diagonal expansions.
struct KernelSample {
  Complex cauchy;     ///< tau'/(tau - t)
  Complex remainder;  ///< tau'/(tau - t) - 1/h, smooth through the diagonal
  Complex k1;
  Complex k2;
};

KernelSample kernel_sample(const LocalFrame& field, const LocalFrame& src, double h,
                           double eps_diag);

/// Principal value of the integral of density(tau)/(tau - t(s_field)) dtau over L0 u L.
///
/// The density must be smooth on each arc; it may jump at the tips. The singular part is
/// handled by subtracting density(s_field) on the arc that carries the field point and
/// integrating 1/(s - s_field) exactly; the other arc is integrated on panels graded
/// towards the field point.
Complex cauchy_pv(const Contour& contour, const std::function<Complex(double)>& density,
                  double s_field, const QuadratureRule& rule);

/// Singular operator S phi(t) = (1/(pi i)) PV int phi(tau)/(tau - t) dtau.
struct SingularImage {
  std::function<Complex(double)> at;  ///< S phi evaluated on demand
  std::vector<double> s;              ///< rule nodes on both arcs
  std::vector<Complex> values;        ///< S phi at those nodes
};

SingularImage singular_apply(const Contour& contour, std::function<Complex(double)> density,
                             const QuadratureRule& rule);

/// Nodes used for integrating over `arc` when the field point has local coordinate s_rep:
/// plain composite panels if s_rep is interior, panels graded towards s_rep otherwise.
std::vector<ArcNode> nodes_for_field(const Arc& arc, double s_rep, const QuadratureRule& rule);

}  // namespace icrack
