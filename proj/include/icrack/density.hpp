#pragma once

#include "icrack/geometry.hpp"
#include "icrack/kernels.hpp"

#include <array>
#include <string_view>
#include <vector>

namespace icrack {

/// The four unknown complex densities: traction jumps q0, q and displacement-derivative
/// jumps g0', g' of the inclusion and the matrix.
enum class Density { q0 = 0, g0p = 1, q = 2, gp = 3 };

std::string_view density_name(Density d);

/// Piecewise-polynomial densities: on each arc every density is
///   sum_k a_k (s - c)^k + i sum_k b_k (s - c)^k
/// with c the arc midpoint. The real part has degree N+1 (N for q on the bonded arc) and the
/// imaginary part degree N.
///
/// Internally the polynomials are stored as Legendre series in x = 2 (s - c) / L_arc; the
/// Taylor coefficients in s are available through taylor_re / taylor_im.
class DensitySet {
public:
  /// Block index j = 1..8: q0, g0', q, g' on the crack, then the same on the bonded arc.
  static constexpr int kBlocks = 8;

  DensitySet(const Contour& contour, int order);

  /// Build from Taylor coefficients in s; `re[j-1]` and `im[j-1]` hold a^j and b^j.
  static DensitySet from_taylor(const Contour& contour, int order,
                                const std::array<std::vector<double>, kBlocks>& re,
                                const std::array<std::vector<double>, kBlocks>& im);

  int order() const noexcept { return order_; }
  const Arc& arc(int index) const { return arcs_[index]; }
  double l0() const noexcept { return arcs_[0].b; }
  double length() const noexcept { return arcs_[1].b; }

  static int block(Density d, int arc_index) { return static_cast<int>(d) + 4 * arc_index; }
  int degree_re(int block) const { return block == 6 ? order_ : order_ + 1; }
  int degree_im(int /*block*/) const { return order_; }

  /// Value at s in [0, l]; s <= l0 is taken on the crack.
  Complex eval(Density d, double s) const;
  /// Value of the polynomial of one arc; s may not leave the arc by more than 1e-12 l.
  Complex eval_on_arc(Density d, int arc_index, double s) const;
  /// d^order/ds^order of the density, order 0..3.
  Complex derivative(Density d, double s, int order) const;
  Complex derivative_on_arc(Density d, int arc_index, double s, int order) const;

  std::vector<double>& legendre_re(int block) { return re_[block]; }
  std::vector<double>& legendre_im(int block) { return im_[block]; }
  const std::vector<double>& legendre_re(int block) const { return re_[block]; }
  const std::vector<double>& legendre_im(int block) const { return im_[block]; }

  /// a^j_k, b^j_k for block index 0..7 (j - 1).
  std::vector<double> taylor_re(int block) const;
  std::vector<double> taylor_im(int block) const;

  /// Linear combination helpers used by tests.
  DensitySet scaled(double factor) const;
  double max_abs_coefficient() const;

private:
  int arc_of(double s) const;

  int order_;
  std::array<Arc, 2> arcs_;
  std::array<std::vector<double>, kBlocks> re_;
  std::array<std::vector<double>, kBlocks> im_;
};

/// N+1 equally spaced points on each arc, inset by `inset` from both ends.
struct CollocationPoints {
  std::vector<double> crack;
  std::vector<double> bonded;
};

CollocationPoints collocation_points(double l0, double l, int order, double inset);

/// Default tip inset l / (200 (N + 1)).
double default_tip_inset(double l, int order);

}  // namespace icrack
