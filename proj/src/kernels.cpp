#include "icrack/kernels.hpp"

#include "icrack/error.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

namespace icrack {

namespace {

double distance_to(const Arc& arc, double s) {
  if (s < arc.a) return arc.a - s;
  if (s > arc.b) return s - arc.b;
  return 0.0;
}

void check_tip_distance(const Contour& contour, double s_field) {
  const double s = contour.wrap(s_field);
  const double l = contour.length();
  const double d = std::min({s, l - s, std::abs(s - contour.l0())});
  if (d < tip_epsilon(contour)) {
    std::ostringstream os;
    os << "field point s = " << s_field << " lies within " << tip_epsilon(contour)
       << " of a crack tip";
    throw TipProximityError(os.str());
  }
}

// s_src - s_field reduced to [-l/2, l/2].
double chart_offset(const Contour& contour, double s_field, double s_src) {
  const double l = contour.length();
  double h = contour.wrap(s_src) - contour.wrap(s_field);
  if (h > 0.5 * l) h -= l;
  if (h < -0.5 * l) h += l;
  return h;
}

}  // namespace

std::array<Arc, 2> arcs_of(const Contour& contour) {
  return {Arc{0.0, contour.l0()}, Arc{contour.l0(), contour.length()}};
}

double diagonal_epsilon(const Contour& contour) { return 1e-5 * contour.length(); }

double tip_epsilon(const Contour& contour) { return 1e-9 * contour.length(); }

double nearest_representative(double s, const Arc& arc, double l) {
  double best = s;
  double best_d = distance_to(arc, s);
  for (double cand : {s - l, s + l}) {
    const double d = distance_to(arc, cand);
    if (d < best_d) {
      best = cand;
      best_d = d;
    }
  }
  return best;
}

KernelSample kernel_sample(const LocalFrame& field, const LocalFrame& src, double h,
                           double eps_diag) {
  KernelSample k;
  const Complex dtc_over_dt = std::conj(field.d1) / field.d1;
  if (std::abs(h) < eps_diag) {
    const double r = field.rho;
    const double dr = field.drho;
    k.remainder = Complex(-r * r / 12.0 * h, 0.5 * r + dr / 3.0 * h);
    k.cauchy = k.remainder + (h != 0.0 ? 1.0 / h : 0.0);
    k.k1 = Complex(0.0, r + dr / 3.0 * h) / field.d1;
    k.k2 = Complex(r * r * h, -r - dr / 3.0 * h) / std::conj(field.d1);
    return k;
  }
  const Complex d = src.t - field.t;
  const Complex dc = std::conj(d);
  k.cauchy = src.d1 / d;
  k.remainder = k.cauchy - 1.0 / h;
  k.k1 = -1.0 / d + dtc_over_dt / dc;
  k.k2 = 1.0 / dc - d / (dc * dc) * dtc_over_dt;
  return k;
}

Complex k1(const Contour& contour, double s_field, double s_src) {
  const double sf = contour.wrap(s_field);
  const double h = chart_offset(contour, sf, s_src);
  return kernel_sample(contour.frame(sf), contour.frame(s_src), h, diagonal_epsilon(contour)).k1;
}

Complex k2(const Contour& contour, double s_field, double s_src) {
  const double sf = contour.wrap(s_field);
  const double h = chart_offset(contour, sf, s_src);
  return kernel_sample(contour.frame(sf), contour.frame(s_src), h, diagonal_epsilon(contour)).k2;
}

std::vector<ArcNode> nodes_for_field(const Arc& arc, double s_rep, const QuadratureRule& rule) {
  if (s_rep > arc.a && s_rep < arc.b) return composite_nodes(arc.a, arc.b, rule);
  return graded_nodes(arc.a, arc.b, s_rep, rule);
}

Complex cauchy_pv(const Contour& contour, const std::function<Complex(double)>& density,
                  double s_field, const QuadratureRule& rule) {
  check_tip_distance(contour, s_field);
  const double l = contour.length();
  const double eps = diagonal_epsilon(contour);
  const LocalFrame field = contour.frame(s_field);

  Complex total{};
  for (const Arc& arc : arcs_of(contour)) {
    const double rep = nearest_representative(contour.wrap(s_field), arc, l);
    const bool inside = rep > arc.a && rep < arc.b;
    const Complex phi0 = inside ? density(rep) : Complex{};
    for (const ArcNode& node : nodes_for_field(arc, rep, rule)) {
      const double h = node.s - rep;
      const LocalFrame src = contour.frame(node.s);
      const KernelSample k = kernel_sample(field, src, h, eps);
      const Complex phi = density(node.s);
      if (inside && std::abs(h) < eps) {
        // Node on top of the field point: the difference quotient tends to phi'(rep).
        const double step = std::min(eps, 0.5 * std::min(rep - arc.a, arc.b - rep));
        const Complex slope = (density(rep + step) - density(rep - step)) / (2.0 * step);
        total += node.w * (phi * k.remainder + slope);
      } else if (inside) {
        total += node.w * (phi * k.remainder + (phi - phi0) / h);
      } else {
        total += node.w * phi * k.cauchy;
      }
    }
    if (inside) total += phi0 * std::log((arc.b - rep) / (rep - arc.a));
  }
  return total;
}

SingularImage singular_apply(const Contour& contour, std::function<Complex(double)> density,
                             const QuadratureRule& rule) {
  SingularImage out;
  auto shared = std::make_shared<std::function<Complex(double)>>(std::move(density));
  const Contour c = contour;
  out.at = [c, shared, rule](double s) {
    return cauchy_pv(c, *shared, s, rule) / Complex(0.0, std::numbers::pi);
  };
  for (const Arc& arc : arcs_of(contour)) {
    for (const ArcNode& node : composite_nodes(arc.a, arc.b, rule)) {
      out.s.push_back(node.s);
      out.values.push_back(out.at(node.s));
    }
  }
  return out;
}

}  // namespace icrack
