#pragma once

#include "icrack/geometry.hpp"
#include "icrack/quadrature.hpp"

#include <functional>

namespace icrack {

/// Jump densities of one phase: g is the displacement-derivative jump, q the traction jump.
struct PhaseDensities {
  std::function<Complex(double)> g;
  std::function<Complex(double)> q;
};

/// Elastic constants of one phase plus the constant terms of its potentials
/// (zero for the inclusion).
struct PhaseConstants {
  double kappa{};
  double mu{};
  double gamma{};
  Complex gamma_prime{};
};

/// One-sided limits on the contour: "+" is the left (interior) side, "-" the right side.
struct Traces {
  Complex stress_plus;   ///< (sigma_n + i tau_n)^+
  Complex stress_minus;  ///< (sigma_n + i tau_n)^-
  Complex dudt_plus;     ///< d(u1 + i u2)^+/dt
  Complex dudt_minus;    ///< d(u1 + i u2)^-/dt
};

/// Boundary limits of the stresses and displacement derivatives generated by the integral
/// representation of one phase, computed by quadrature at arc length s.
Traces boundary_traces(const Contour& contour, const PhaseDensities& densities,
                       const PhaseConstants& phase, double s, const QuadratureRule& rule);

/// Complex potentials of one phase at an off-contour point z.
struct Potentials {
  Complex phi;
  Complex psi;
  Complex phi_prime;
};

/// Evaluates the integral representation at z. Accuracy degrades as z approaches the contour;
/// callers enforce their own distance threshold.
Potentials phase_potentials(const Contour& contour, const PhaseDensities& densities,
                            const PhaseConstants& phase, Complex z, const QuadratureRule& rule);

/// Stresses and displacement derivative on a line element through z with unit tangent `tangent`.
struct PointField {
  Complex stress;  ///< sigma_n + i tau_n
  Complex dudt;    ///< d(u1 + i u2)/dt
};

PointField field_from_potentials(const Potentials& p, const PhaseConstants& phase, Complex z,
                                 Complex tangent);

}  // namespace icrack
