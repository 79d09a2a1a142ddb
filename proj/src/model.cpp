#include "icrack/model.hpp"

#include "icrack/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace icrack {

double kolosov(double poisson, PlaneMode mode) {
  if (!(poisson > -1.0) || !(poisson < 0.5)) {
    std::ostringstream os;
    os << "Poisson ratio must satisfy -1 < nu < 0.5, got " << poisson;
    throw InvalidArgument(os.str());
  }
  return mode == PlaneMode::stress ? (3.0 - poisson) / (1.0 + poisson) : 3.0 - 4.0 * poisson;
}

Material::Material(double mu, double nu, PlaneMode plane_mode)
    : shear_modulus(mu), poisson(nu), mode(plane_mode) {}

void Material::validate(const std::string& name) const {
  if (!(shear_modulus > 0.0)) {
    throw InvalidArgument(name + ": shear modulus must be positive");
  }
  try {
    (void)kappa();
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(name + ": " + e.what());
  }
}

void SurfaceTension::validate() const {
  if (!(gamma_plus > 0.0)) throw InvalidArgument("surface tension gamma_plus must be positive");
  if (!(gamma_minus > 0.0)) throw InvalidArgument("surface tension gamma_minus must be positive");
  if (!(gamma_interface >= 0.0)) {
    throw InvalidArgument("surface tension gamma_interface must be non-negative");
  }
}

double RemoteLoad::gamma() const { return 0.25 * (sigma1 + sigma2); }

Complex RemoteLoad::gamma_prime() const {
  return 0.5 * (sigma2 - sigma1) * std::polar(1.0, -2.0 * alpha);
}

std::pair<double, Complex> far_field_constants(const RemoteLoad& load) {
  return {load.gamma(), load.gamma_prime()};
}

// ---------------------------------------------------------------- tractions

CrackTractions CrackTractions::zero() {
  return {[](double) { return Complex{}; }, [](double) { return Complex{}; }, "zero"};
}

CrackTractions CrackTractions::pressure(double p) {
  auto f = [p](double) { return Complex(-p, 0.0); };
  return {f, f, "pressure"};
}

CrackTractions CrackTractions::constant(Complex f1, Complex f2) {
  return {[f1](double) { return f1; }, [f2](double) { return f2; }, "constant"};
}

CrackTractions CrackTractions::table(std::vector<double> s, std::vector<Complex> f1,
                                     std::vector<Complex> f2) {
  if (s.size() < 2 || f1.size() != s.size() || f2.size() != s.size()) {
    throw InvalidArgument("traction table needs at least two rows of equal length");
  }
  if (!std::is_sorted(s.begin(), s.end())) {
    throw InvalidArgument("traction table arc lengths must be increasing");
  }
  auto interp = [](const std::vector<double>& xs, const std::vector<Complex>& ys, double x) {
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const auto i = static_cast<std::size_t>(std::distance(xs.begin(), it)) - 1;
    const double u = (x - xs[i]) / (xs[i + 1] - xs[i]);
    return (1.0 - u) * ys[i] + u * ys[i + 1];
  };
  auto g1 = [=](double x) { return interp(s, f1, x); };
  auto g2 = [=](double x) { return interp(s, f2, x); };
  return {g1, g2, "table"};
}

CrackTractions CrackTractions::scaled(double factor) const {
  auto a = f1;
  auto b = f2;
  return {[a, factor](double s) { return factor * a(s); },
          [b, factor](double s) { return factor * b(s); }, description};
}

void CrackTractions::validate(double l0) const {
  if (!f1 || !f2) throw InvalidArgument("crack tractions are not set");
  for (int i = 0; i <= 32; ++i) {
    const double s = l0 * i / 32.0;
    const Complex a = f1(s);
    const Complex b = f2(s);
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()) || !std::isfinite(b.real()) ||
        !std::isfinite(b.imag())) {
      throw InvalidArgument("crack tractions must be finite on [0, l0]");
    }
  }
}

// ---------------------------------------------------------------- setup

void ProblemSetup::validate() const {
  matrix.validate("matrix");
  inclusion.validate("inclusion");
  surface.validate();
  tractions.validate(contour.l0());
}

bool ProblemSetup::special_material_case() const {
  const double mu = matrix.shear_modulus;
  const double mu0 = inclusion.shear_modulus;
  const double k = matrix.kappa();
  const double k0 = inclusion.kappa();
  const double lhs = mu0 * k * (k0 + 1.0);
  const double rhs = mu * k0 * (k + 1.0);
  return std::abs(lhs - rhs) <= 1e-10 * std::max(std::abs(lhs), std::abs(rhs));
}

ProblemSetup ProblemSetup::with_scaled_loads(double factor) const {
  ProblemSetup out = *this;
  out.load = load.scaled(factor);
  out.tractions = tractions.scaled(factor);
  return out;
}

MCoefficients m_coefficients(const Contour& contour, double s) {
  const LocalFrame f = contour.frame(s);
  const Complex i(0.0, 1.0);
  const Complex d1c = std::conj(f.d1);
  const Complex d2c = std::conj(f.d2);
  const Complex d3c = std::conj(f.d3);
  MCoefficients m;
  m.m1 = -d3c - 2.0 * i * d2c * f.rho - 3.0 * i * d1c * f.drho - 3.0 * d1c * f.rho * f.rho;
  m.m2 = f.d3 - 4.0 * i * f.d2 * f.rho - 3.0 * i * f.d1 * f.drho - 3.0 * f.d1 * f.rho * f.rho;
  m.m3 = -4.0 * i * d1c * f.rho;
  m.m4 = -2.0 * i * f.d1 * f.rho;
  return m;
}

}  // namespace icrack
