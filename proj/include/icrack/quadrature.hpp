#pragma once

#include <vector>

namespace icrack {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule, computed by Newton iteration on P_n. Results are cached.
const GaussLegendre& gauss_legendre(int n);

/// Composite Gauss-Legendre settings used for every contour integral.
struct QuadratureRule {
  int nodes_per_panel = 16;
  int panels_per_arc = 8;
  bool adaptive = true;            ///< double the panels until matrix entries settle
  double adaptive_tolerance = 1e-9;
  int max_doublings = 3;
  int tip_levels = 0;  ///< geometric bisections of the end panels of each arc towards the tips

  void validate() const;
  /// Same rule with the panel count multiplied by `factor`.
  QuadratureRule refined(int factor) const;
};

/// A node on the arc-length axis with its weight.
struct ArcNode {
  double s;
  double w;
};

/// Composite rule on [a, b] with `panels` equal panels.
std::vector<ArcNode> composite_nodes(double a, double b, const QuadratureRule& rule);

/// Composite rule on [a, b] whose panels are bisected while they lie closer to `s_near`
/// than their own width, so that a near-singular point outside the interval is resolved.
/// `standoff` is the distance of the singular point from the arc itself (0 on the arc).
std::vector<ArcNode> graded_nodes(double a, double b, double s_near, const QuadratureRule& rule,
                                  double standoff = 0.0);

}  // namespace icrack
