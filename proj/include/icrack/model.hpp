#pragma once

#include "icrack/geometry.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace icrack {

enum class PlaneMode { stress, strain };

/// Kolosov constant: (3 - nu)/(1 + nu) in plane stress, 3 - 4 nu in plane strain.
double kolosov(double poisson, PlaneMode mode);

/// Isotropic linear elastic phase. Shear modulus in GPa.
struct Material {
  double shear_modulus{};
  double poisson{};
  PlaneMode mode = PlaneMode::stress;

  Material() = default;
  Material(double mu, double nu, PlaneMode plane_mode = PlaneMode::stress);

  double kappa() const { return kolosov(poisson, mode); }
  void validate(const std::string& name) const;
};

/// Surface-tension parameters on the inclusion side of the crack, the matrix side of the
/// crack and the bonded line.
struct SurfaceTension {
  double gamma_plus{};
  double gamma_minus{};
  double gamma_interface{};

  void validate() const;
};

/// Principal stresses at infinity (MPa) acting at angle alpha and alpha + pi/2.
struct RemoteLoad {
  double sigma1{};
  double sigma2{};
  double alpha{};

  /// (sigma1 + sigma2)/4
  double gamma() const;
  /// (sigma2 - sigma1) exp(-2 i alpha) / 2
  Complex gamma_prime() const;
  RemoteLoad scaled(double factor) const { return {sigma1 * factor, sigma2 * factor, alpha}; }
};

/// Returns (Gamma, Gamma').
std::pair<double, Complex> far_field_constants(const RemoteLoad& load);

/// Tractions prescribed on the crack banks: f1 from the inclusion side, f2 from the matrix side.
struct CrackTractions {
  std::function<Complex(double)> f1;
  std::function<Complex(double)> f2;
  std::string description = "zero";

  static CrackTractions zero();
  /// Uniform pressure p inside the crack: f1 = f2 = -p.
  static CrackTractions pressure(double p);
  static CrackTractions constant(Complex f1, Complex f2);
  /// Piecewise-linear interpolation of samples (s, f1, f2) on [0, l0].
  static CrackTractions table(std::vector<double> s, std::vector<Complex> f1,
                              std::vector<Complex> f2);

  CrackTractions scaled(double factor) const;
  /// Checks boundedness at a few sample points of [0, l0].
  void validate(double l0) const;
};

/// Everything needed to pose one problem.
struct ProblemSetup {
  Contour contour;
  Material matrix;
  Material inclusion;
  SurfaceTension surface;
  RemoteLoad load;
  CrackTractions tractions = CrackTractions::zero();

  void validate() const;
  /// mu0 kappa (kappa0 + 1) == mu kappa0 (kappa + 1) to relative tolerance 1e-10.
  bool special_material_case() const;
  /// Same problem with every load (remote and crack face) multiplied by `factor`.
  ProblemSetup with_scaled_loads(double factor) const;
};

/// Coefficient functions m1..m4 of the linearised surface-tension boundary conditions.
struct MCoefficients {
  Complex m1, m2, m3, m4;
};

MCoefficients m_coefficients(const Contour& contour, double s);

}  // namespace icrack
