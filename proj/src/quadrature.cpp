#include "icrack/quadrature.hpp"

#include "icrack/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>

namespace icrack {

namespace {

// (P_n(x), P_n'(x)) by the three-term recurrence.
std::pair<double, double> legendre_with_derivative(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

const GaussLegendre& gauss_legendre(int n) {
  if (n < 1) throw InvalidArgument("Gauss-Legendre rule needs at least one node");
  static std::mutex mutex;
  static std::map<int, GaussLegendre> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(n); it != cache.end()) return it->second;

  GaussLegendre rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre_with_derivative(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre_with_derivative(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return cache.emplace(n, std::move(rule)).first->second;
}

void QuadratureRule::validate() const {
  if (nodes_per_panel < 4) throw InvalidArgument("quadrature needs at least 4 nodes per panel");
  if (panels_per_arc < 1) throw InvalidArgument("quadrature needs at least one panel per arc");
  if (max_doublings < 0) throw InvalidArgument("max_doublings must be non-negative");
  if (tip_levels < 0 || tip_levels > 40) throw InvalidArgument("tip_levels must lie in 0..40");
  if (!(adaptive_tolerance > 0.0)) throw InvalidArgument("adaptive tolerance must be positive");
}

QuadratureRule QuadratureRule::refined(int factor) const {
  QuadratureRule r = *this;
  r.panels_per_arc *= factor;
  return r;
}

namespace {

void append_panel(std::vector<ArcNode>& out, double a, double b, const GaussLegendre& gl) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    out.push_back({mid + half * gl.nodes[i], half * gl.weights[i]});
  }
}

void append_graded(std::vector<ArcNode>& out, double a, double b, double s_near,
                   double standoff, const GaussLegendre& gl, int depth) {
  const double width = b - a;
  const double along = s_near < a ? a - s_near : (s_near > b ? s_near - b : 0.0);
  if (depth < 60 && std::hypot(along, standoff) < width) {
    const double mid = 0.5 * (a + b);
    append_graded(out, a, mid, s_near, standoff, gl, depth + 1);
    append_graded(out, mid, b, s_near, standoff, gl, depth + 1);
    return;
  }
  append_panel(out, a, b, gl);
}

}  // namespace

namespace {

// Panel breakpoints of the composite rule on [a, b].
std::vector<double> panel_cuts(double a, double b, const QuadratureRule& rule) {
  const double h = (b - a) / rule.panels_per_arc;
  std::vector<double> cuts;
  for (int p = 0; p <= rule.panels_per_arc; ++p) cuts.push_back(a + p * h);
  cuts.back() = b;
  // Extra breakpoints grade the end panels geometrically towards the arc ends.
  for (int k = 1; k <= rule.tip_levels; ++k) {
    cuts.push_back(a + std::ldexp(h, -k));
    cuts.push_back(b - std::ldexp(h, -k));
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

}  // namespace

std::vector<ArcNode> composite_nodes(double a, double b, const QuadratureRule& rule) {
  const auto& gl = gauss_legendre(rule.nodes_per_panel);
  const std::vector<double> cuts = panel_cuts(a, b, rule);
  std::vector<ArcNode> out;
  out.reserve(gl.nodes.size() * (cuts.size() - 1));
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) append_panel(out, cuts[i], cuts[i + 1], gl);
  return out;
}

std::vector<ArcNode> graded_nodes(double a, double b, double s_near, const QuadratureRule& rule,
                                  double standoff) {
  const auto& gl = gauss_legendre(rule.nodes_per_panel);
  const std::vector<double> cuts = panel_cuts(a, b, rule);
  std::vector<ArcNode> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    append_graded(out, cuts[i], cuts[i + 1], s_near, standoff, gl, 0);
  }
  return out;
}

}  // namespace icrack
