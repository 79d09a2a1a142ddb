#include "icrack/validation.hpp"

#include "icrack/error.hpp"
#include "icrack/kernels.hpp"
#include "icrack/postprocess.hpp"
#include "icrack/traces.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <unordered_map>

namespace icrack {

namespace {

const Complex kI{0.0, 1.0};

Check make_check(std::string name, std::string equation, double value, double tolerance) {
  return {std::move(name), std::move(equation), value, tolerance,
          std::isfinite(value) && value < tolerance};
}

// dU/ds, d2U/ds2, d3U/ds3 on one side, where dU/ds = t' * factor * g' of the matching phase.
std::array<Complex, 3> side_derivatives(const DensitySet& d, Density which, int arc, double s,
                                        const LocalFrame& f, Complex factor) {
  const Complex g = d.derivative_on_arc(which, arc, s, 0);
  const Complex g1 = d.derivative_on_arc(which, arc, s, 1);
  const Complex g2 = d.derivative_on_arc(which, arc, s, 2);
  return {factor * f.d1 * g, factor * (f.d2 * g + f.d1 * g1),
          factor * (f.d3 * g + 2.0 * f.d2 * g1 + f.d1 * g2)};
}

// Right-hand side of the original condition without the prescribed traction.
Complex tension_term(double gamma, const MCoefficients& m, const LocalFrame& f,
                     const std::array<Complex, 3>& u) {
  return 0.5 * gamma *
         (m.m1 * u[0] + m.m2 * std::conj(u[0]) + m.m3 * u[1] + m.m4 * std::conj(u[1]) +
          std::conj(f.d1) * u[2] - f.d1 * std::conj(u[2]));
}

}  // namespace

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string ValidationReport::to_json() const {
  nlohmann::ordered_json j;
  j["passed"] = passed();
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const Check& c : checks) {
    list.push_back({{"name", c.name},
                    {"equation", c.equation},
                    {"value", c.value},
                    {"tolerance", c.tolerance},
                    {"passed", c.passed}});
  }
  j["checks"] = std::move(list);
  return j.dump(2);
}

std::vector<TrialDensity> random_trial_densities(const Contour& contour, int count,
                                                 unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> normal;
  const double l = contour.length();
  std::vector<TrialDensity> out;
  for (int n = 0; n < count; ++n) {
    if (n % 2 == 0) {
      std::vector<Complex> c(7);
      for (Complex& v : c) v = {normal(gen), normal(gen)};
      out.push_back([c, l](double s) {
        Complex sum;
        for (int m = -3; m <= 3; ++m) {
          sum += c[m + 3] * std::exp(kI * (2.0 * std::numbers::pi * m * s / l));
        }
        return sum;
      });
    } else {
      // Polynomial in s over [0, l]: continuous except for the jump at s = 0 = l.
      std::vector<Complex> c(7);
      for (Complex& v : c) v = {normal(gen), normal(gen)};
      out.push_back([c, l](double s) {
        const double x = 2.0 * s / l - 1.0;
        Complex sum;
        for (auto it = c.rbegin(); it != c.rend(); ++it) sum = sum * x + *it;
        return sum;
      });
    }
  }
  return out;
}

Check inversion_check(const Contour& contour, const QuadratureRule& rule,
                      const TrialDensity& trial, const std::vector<double>& samples,
                      double tolerance) {
  const SingularImage once = singular_apply(contour, trial, rule);
  // Nodes repeat between sample points; S phi is costly, so cache it by node.
  std::unordered_map<double, Complex> cache;
  const std::function<Complex(double)> cached = [&](double s) {
    auto [it, fresh] = cache.try_emplace(s);
    if (fresh) it->second = once.at(s);
    return it->second;
  };
  double err = 0.0;
  for (double s : samples) {
    const Complex twice = cauchy_pv(contour, cached, s, rule) / Complex(0.0, std::numbers::pi);
    err = std::max(err, std::abs(twice - trial(s)));
  }
  return make_check("cauchy_inversion", "S^2 phi = phi", err, tolerance);
}

std::vector<double> mid_arc_samples(const Contour& contour, int count) {
  std::vector<double> out;
  for (const Arc& arc : arcs_of(contour)) {
    for (int i = 0; i < count; ++i) {
      out.push_back(arc.a + arc.length() * (0.25 + 0.5 * (i + 0.5) / count));
    }
  }
  return out;
}

double load_scale(const ProblemSetup& setup) {
  double m = std::max(std::abs(setup.load.sigma1), std::abs(setup.load.sigma2));
  const double l0 = setup.contour.l0();
  for (int i = 0; i <= 64; ++i) {
    const double s = l0 * i / 64.0;
    m = std::max({m, std::abs(setup.tractions.f1(s)), std::abs(setup.tractions.f2(s))});
  }
  return m > 0.0 ? m : 1.0;
}

Check original_bc_residual(const DensitySet& d, const ProblemSetup& setup,
                           const std::vector<double>& samples, const QuadratureRule& rule,
                           double tolerance) {
  const Contour& c = setup.contour;
  const PhaseDensities inc = inclusion_densities(d);
  const PhaseDensities mat = matrix_densities(d);
  const PhaseConstants pinc = inclusion_constants(setup);
  const PhaseConstants pmat = matrix_constants(setup);
  const Complex a0 = kI * (setup.inclusion.kappa() + 1.0) / (2.0 * setup.inclusion.shear_modulus);
  const Complex a1 = -kI * (setup.matrix.kappa() + 1.0) / (2.0 * setup.matrix.shear_modulus);
  const double l0 = c.l0();

  double worst = 0.0;
  double scale = load_scale(setup);
  for (double s : samples) {
    const LocalFrame f = c.frame(s);
    const MCoefficients m = m_coefficients(c, s);
    const int arc = s <= l0 ? 0 : 1;
    const Complex plus = boundary_traces(c, inc, pinc, s, rule).stress_plus;
    const Complex minus = boundary_traces(c, mat, pmat, s, rule).stress_minus;
    const auto up = side_derivatives(d, Density::g0p, arc, s, f, a0);
    if (arc == 0) {
      const auto um = side_derivatives(d, Density::gp, arc, s, f, a1);
      const Complex r1 =
          plus - tension_term(setup.surface.gamma_plus, m, f, up) - setup.tractions.f1(s);
      const Complex r2 =
          minus - tension_term(setup.surface.gamma_minus, m, f, um) - setup.tractions.f2(s);
      worst = std::max({worst, std::abs(r1), std::abs(r2)});
      scale = std::max({scale, std::abs(plus), std::abs(minus)});
    } else {
      const Complex r = plus - minus - tension_term(setup.surface.gamma_interface, m, f, up);
      worst = std::max(worst, std::abs(r));
      scale = std::max({scale, std::abs(plus), std::abs(minus)});
    }
  }
  return make_check("original_bc_residual", "surface-tension boundary conditions",
                    worst / scale, tolerance);
}

Check trace_consistency(const DensitySet& d, const ProblemSetup& setup,
                        const std::vector<double>& samples, const QuadratureRule& rule,
                        double tolerance) {
  const Contour& c = setup.contour;
  const PhaseDensities inc = inclusion_densities(d);
  const PhaseDensities mat = matrix_densities(d);
  const PhaseConstants pinc = inclusion_constants(setup);
  const PhaseConstants pmat = matrix_constants(setup);
  double worst = 0.0;
  double scale = 0.0;
  for (double s : samples) {
    const Complex direct_plus = 2.0 * d.eval(Density::q0, s);
    const Complex direct_minus = -2.0 * d.eval(Density::q, s);
    const Complex plus = boundary_traces(c, inc, pinc, s, rule).stress_plus;
    const Complex minus = boundary_traces(c, mat, pmat, s, rule).stress_minus;
    worst = std::max({worst, std::abs(plus - direct_plus), std::abs(minus - direct_minus)});
    scale = std::max({scale, std::abs(direct_plus), std::abs(direct_minus)});
  }
  return make_check("trace_consistency", "integral traces equal 2 q0 and -2 q",
                    scale > 0.0 ? worst / scale : worst, tolerance);
}

std::vector<Check> conservation_checks(const DensitySet& d, const ProblemSetup& setup,
                                       const QuadratureRule& rule, double tolerance) {
  const Contour& c = setup.contour;
  const double mu0 = setup.inclusion.shear_modulus;
  const double mu = setup.matrix.shear_modulus;
  const double k0 = setup.inclusion.kappa();
  const double k = setup.matrix.kappa();
  Complex force;
  Complex single;
  for (int arc = 0; arc < 2; ++arc) {
    const Arc& a = d.arc(arc);
    for (const ArcNode& n : composite_nodes(a.a, a.b, rule)) {
      const Complex dt = n.w * c.derivative(n.s, 1);
      force += (d.eval_on_arc(Density::q0, arc, n.s) - d.eval_on_arc(Density::q, arc, n.s)) * dt;
      if (arc == 0) {
        single += ((k0 + 1.0) / mu0 * d.eval_on_arc(Density::g0p, 0, n.s) +
                   (k + 1.0) / mu * d.eval_on_arc(Density::gp, 0, n.s)) *
                  dt;
      }
    }
  }
  const double scale = load_scale(setup);
  return {make_check("total_force", "int (q0 - q) dt = 0", std::abs(force) / scale, tolerance),
          make_check("single_valuedness", "displacement single-valued around the crack",
                     std::abs(single) * mu / scale, tolerance)};
}

ValidationReport validate_solution(const DensitySet& d, const ProblemSetup& setup,
                                   int assembly_panels, unsigned seed) {
  QuadratureRule rule;
  rule.nodes_per_panel = 20;
  rule.panels_per_arc = 2 * std::max(assembly_panels, 1);
  rule.adaptive = false;

  ValidationReport report;
  std::mt19937 gen(seed);
  std::vector<double> random_s;
  for (const Arc& arc : arcs_of(setup.contour)) {
    std::uniform_real_distribution<double> u(arc.a + 0.1 * arc.length(),
                                             arc.b - 0.1 * arc.length());
    for (int i = 0; i < 10; ++i) random_s.push_back(u(gen));
  }
  report.add(trace_consistency(d, setup, random_s, rule));
  report.add(original_bc_residual(d, setup, mid_arc_samples(setup.contour, 8), rule));
  for (Check& c : conservation_checks(d, setup, rule)) report.add(std::move(c));
  return report;
}

}  // namespace icrack
