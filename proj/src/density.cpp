#include "icrack/density.hpp"

#include "icrack/error.hpp"
#include "icrack/legendre.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace icrack {

std::string_view density_name(Density d) {
  switch (d) {
    case Density::q0: return "q0";
    case Density::g0p: return "g0_prime";
    case Density::q: return "q";
    case Density::gp: return "g_prime";
  }
  return "?";
}

DensitySet::DensitySet(const Contour& contour, int order)
    : order_(order), arcs_(arcs_of(contour)) {
  if (order < 1) throw InvalidArgument("truncation order N must be at least 1");
  for (int j = 0; j < kBlocks; ++j) {
    re_[j].assign(degree_re(j) + 1, 0.0);
    im_[j].assign(degree_im(j) + 1, 0.0);
  }
}

DensitySet DensitySet::from_taylor(const Contour& contour, int order,
                                   const std::array<std::vector<double>, kBlocks>& re,
                                   const std::array<std::vector<double>, kBlocks>& im) {
  DensitySet d(contour, order);
  for (int j = 0; j < kBlocks; ++j) {
    const double half = 0.5 * d.arcs_[j / 4].length();
    auto convert = [half](const std::vector<double>& taylor, std::vector<double>& target) {
      if (taylor.empty()) return;
      if (taylor.size() > target.size()) {
        throw InvalidArgument("too many Taylor coefficients for the truncation order");
      }
      std::vector<double> mono(target.size(), 0.0);
      double scale = 1.0;
      for (std::size_t k = 0; k < taylor.size(); ++k) {
        mono[k] = taylor[k] * scale;
        scale *= half;
      }
      target = legendre::from_monomial(mono);
    };
    convert(re[j], d.re_[j]);
    convert(im[j], d.im_[j]);
  }
  return d;
}

int DensitySet::arc_of(double s) const {
  const double tol = 1e-12 * length();
  if (s < -tol || s > length() + tol) {
    std::ostringstream os;
    os << "arc length " << s << " lies outside [0, " << length() << "]";
    throw InvalidArgument(os.str());
  }
  return s <= arcs_[0].b ? 0 : 1;
}

Complex DensitySet::eval(Density d, double s) const { return derivative(d, s, 0); }

Complex DensitySet::eval_on_arc(Density d, int arc_index, double s) const {
  return derivative_on_arc(d, arc_index, s, 0);
}

Complex DensitySet::derivative(Density d, double s, int order) const {
  return derivative_on_arc(d, arc_of(s), s, order);
}

Complex DensitySet::derivative_on_arc(Density d, int arc_index, double s, int order) const {
  const Arc& arc = arcs_.at(arc_index);
  const double tol = 1e-12 * length();
  if (s < arc.a - tol || s > arc.b + tol) {
    std::ostringstream os;
    os << "arc length " << s << " lies outside the arc [" << arc.a << ", " << arc.b << "]";
    throw InvalidArgument(os.str());
  }
  if (order < 0 || order > 3) throw InvalidArgument("density derivative order must be 0..3");
  const int j = block(d, arc_index);
  const double x = 2.0 * (s - arc.centre()) / arc.length();
  const double chain = std::pow(2.0 / arc.length(), order);
  std::vector<double> basis(static_cast<std::size_t>(order_) + 2);
  legendre::derivatives(x, order, basis);
  double vr = 0.0;
  double vi = 0.0;
  for (std::size_t k = 0; k < re_[j].size(); ++k) vr += re_[j][k] * basis[k];
  for (std::size_t k = 0; k < im_[j].size(); ++k) vi += im_[j][k] * basis[k];
  return chain * Complex(vr, vi);
}

namespace {

std::vector<double> legendre_to_taylor(const std::vector<double>& c, double half_length) {
  auto mono = legendre::to_monomial(c);
  double scale = 1.0;
  for (double& m : mono) {
    m *= scale;
    scale /= half_length;
  }
  return mono;
}

}  // namespace

std::vector<double> DensitySet::taylor_re(int block) const {
  return legendre_to_taylor(re_.at(block), 0.5 * arcs_[block / 4].length());
}

std::vector<double> DensitySet::taylor_im(int block) const {
  return legendre_to_taylor(im_.at(block), 0.5 * arcs_[block / 4].length());
}

DensitySet DensitySet::scaled(double factor) const {
  DensitySet out = *this;
  for (int j = 0; j < kBlocks; ++j) {
    for (double& v : out.re_[j]) v *= factor;
    for (double& v : out.im_[j]) v *= factor;
  }
  return out;
}

double DensitySet::max_abs_coefficient() const {
  double m = 0.0;
  for (int j = 0; j < kBlocks; ++j) {
    for (double v : re_[j]) m = std::max(m, std::abs(v));
    for (double v : im_[j]) m = std::max(m, std::abs(v));
  }
  return m;
}

double default_tip_inset(double l, int order) { return l / (200.0 * (order + 1)); }

CollocationPoints collocation_points(double l0, double l, int order, double inset) {
  if (order < 1) throw InvalidArgument("collocation needs N >= 1");
  if (!(inset > 0.0)) throw InvalidArgument("tip inset must be positive");
  if (!(2.0 * inset < l0) || !(2.0 * inset < l - l0)) {
    throw InvalidArgument("tip inset is larger than half an arc");
  }
  CollocationPoints pts;
  auto fill = [&](double a, double b, std::vector<double>& out) {
    const double step = (b - a - 2.0 * inset) / order;
    for (int m = 0; m <= order; ++m) out.push_back(a + inset + m * step);
  };
  fill(0.0, l0, pts.crack);
  fill(l0, l, pts.bonded);
  return pts;
}

}  // namespace icrack
