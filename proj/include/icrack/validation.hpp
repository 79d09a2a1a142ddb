#pragma once

#include "icrack/density.hpp"
#include "icrack/model.hpp"
#include "icrack/quadrature.hpp"

#include <functional>
#include <string>
#include <vector>

namespace icrack {

/// One named oracle result. `equation` names the identity being checked.
struct Check {
  std::string name;
  std::string equation;
  double value{};
  double tolerance{};
  bool passed{};
};

struct ValidationReport {
  std::vector<Check> checks;

  void add(Check c) { checks.push_back(std::move(c)); }
  bool passed() const;
  /// JSON text with one object per check and an overall "passed" flag.
  std::string to_json() const;
};

using TrialDensity = std::function<Complex(double)>;

/// Random trial densities on the contour: trigonometric polynomials in s (smooth on the closed
/// contour) alternating with degree-6 polynomials in s over [0, l], which jump at s = 0.
/// Deterministic in `seed`.
std::vector<TrialDensity> random_trial_densities(const Contour& contour, int count,
                                                 unsigned seed);

/// max |S(S phi) - phi| over `samples`, which must avoid the tips.
Check inversion_check(const Contour& contour, const QuadratureRule& rule,
                      const TrialDensity& trial, const std::vector<double>& samples,
                      double tolerance = 1e-5);

/// Midpoints of `count` equal cells over the central half of each arc.
std::vector<double> mid_arc_samples(const Contour& contour, int count);

/// Mismatch of the original surface-tension conditions (with m1..m4 and third derivatives of
/// the displacements), stresses taken from the integral traces, relative to the larger of the
/// remote stress and the largest sampled traction.
Check original_bc_residual(const DensitySet& densities, const ProblemSetup& setup,
                           const std::vector<double>& samples, const QuadratureRule& rule,
                           double tolerance = 0.02);

/// Integral traces versus 2 q0 (inclusion side) and -2 q (matrix side), relative to the
/// largest sampled traction.
Check trace_consistency(const DensitySet& densities, const ProblemSetup& setup,
                        const std::vector<double>& samples, const QuadratureRule& rule,
                        double tolerance = 1e-3);

/// |int (q0 - q) dt| over the contour and the crack single-valuedness integral scaled by mu,
/// both divided by the load scale (remote stresses and crack tractions).
std::vector<Check> conservation_checks(const DensitySet& densities, const ProblemSetup& setup,
                                       const QuadratureRule& rule, double tolerance = 1e-6);

/// Largest of |sigma1|, |sigma2| and the sampled crack tractions; 1 for an unloaded problem.
double load_scale(const ProblemSetup& setup);

/// Runs every solution check with quadrature at twice `assembly_panels` panels per arc.
ValidationReport validate_solution(const DensitySet& densities, const ProblemSetup& setup,
                                   int assembly_panels, unsigned seed = 7);

}  // namespace icrack
