#pragma once

#include "icrack/density.hpp"
#include "icrack/model.hpp"
#include "icrack/quadrature.hpp"
#include "icrack/traces.hpp"

#include <array>
#include <vector>

namespace icrack {

/// One-sided boundary values at arc length s. "plus" is the inclusion side, "minus" the matrix.
struct BoundarySample {
  double s{};
  Complex tangent;       ///< t'(s)
  Complex stress_plus;   ///< (sigma_n + i tau_n)^+_0 = 2 q0
  Complex stress_minus;  ///< (sigma_n + i tau_n)^- = -2 q
  Complex dudt_plus;     ///< d(u1 + i u2)^+_0/dt = i (kappa0 + 1)/(2 mu0) g0'
  Complex dudt_minus;    ///< d(u1 + i u2)^-/dt = -i (kappa + 1)/(2 mu) g'

  /// Tangential (real part) and normal (imaginary part) displacement derivatives.
  Complex local_dudt_plus() const { return dudt_plus * std::conj(tangent); }
  Complex local_dudt_minus() const { return dudt_minus * std::conj(tangent); }
};

struct BoundaryField {
  std::vector<BoundarySample> samples;
};

/// Boundary sample computed directly from the densities.
BoundarySample boundary_sample(const DensitySet& densities, const ProblemSetup& setup, double s);
/// Same, using the polynomials of one arc (0 crack, 1 bonded) so that tips can be sampled
/// from either side.
BoundarySample boundary_sample_on_arc(const DensitySet& densities, const ProblemSetup& setup,
                                      int arc, double s);

/// `count` equally spaced samples over [0, l0], both tips included.
BoundaryField crack_face_fields(const DensitySet& densities, const ProblemSetup& setup,
                                int count = 201);

/// `count` equally spaced samples over [l0, l], both tips included.
BoundaryField interface_fields(const DensitySet& densities, const ProblemSetup& setup,
                               int count = 201);

/// Boundary displacements obtained by integrating the displacement derivatives along the
/// contour. u^+_0 vanishes at `anchor`; u^- matches u^+_0 at the bonded-arc midpoint.
class Displacements {
public:
  Displacements(const DensitySet& densities, const ProblemSetup& setup, double anchor);

  Complex inclusion(double s) const;
  Complex matrix(double s) const;
  /// u^+_0 - u^- on the crack. Distinct from the derivative-jump opening measure.
  Complex aperture(double s) const { return inclusion(s) - matrix(s); }

private:
  Complex integrate(bool inclusion_side, double from, double to) const;

  const DensitySet& densities_;
  const ProblemSetup& setup_;
  double anchor_;
  Complex matrix_offset_;
};

/// Maximum over the crack of |du^+_0/dt - du^-/dt|, sampled at `count` points.
double max_crack_opening(const DensitySet& densities, const ProblemSetup& setup,
                         int count = 2001);

enum class Region { inclusion, matrix };

/// Full-field evaluation distance limit: 0.02 l.
double near_boundary_distance(const Contour& contour);

/// Phi, Psi (and Phi') of the requested phase at z. Throws NearBoundaryError if z lies within
/// near_boundary_distance of the contour and InvalidArgument if z is not in `region`.
Potentials potentials_at(const DensitySet& densities, const ProblemSetup& setup, Complex z,
                         Region region, const QuadratureRule& rule = {});

/// Least-squares fits of the inclusion-side crack-face stress near one tip, sampled at distances
/// d_k = l0 2^-k, k = 3..10.
struct TipFit {
  double tip_s{};
  double normal_exponent{};        ///< p in |sigma_n| ~ d^-p
  double shear_exponent{};         ///< p in |tau_n| ~ d^-p
  double shear_log_intercept{};    ///< a in tau_n ~ a + b log d
  double shear_log_slope{};        ///< b
  double shear_log_residual{};     ///< rms misfit / rms |tau_n|
};

std::array<TipFit, 2> tip_fits(const DensitySet& densities, const ProblemSetup& setup);

/// Undeformed and deformed contour points; deformed = t + scale * u on each side.
struct DeformedPoint {
  double s{};
  Complex undeformed;
  Complex inclusion;
  Complex matrix;
};

std::vector<DeformedPoint> deformed_boundary(const DensitySet& densities,
                                             const ProblemSetup& setup, double scale,
                                             int count = 721);

/// Phase data of the inclusion (no far field) and of the matrix.
PhaseDensities inclusion_densities(const DensitySet& densities);
PhaseDensities matrix_densities(const DensitySet& densities);
PhaseConstants inclusion_constants(const ProblemSetup& setup);
PhaseConstants matrix_constants(const ProblemSetup& setup);

}  // namespace icrack
