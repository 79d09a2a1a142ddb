#include "icrack/solver.hpp"

#include "icrack/error.hpp"
#include "icrack/kernels.hpp"
#include "icrack/legendre.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

namespace icrack {

void SolverOptions::validate() const {
  if (order < 4) throw InvalidArgument("truncation order N must be at least 4");
  if (tip_inset && !(*tip_inset > 0.0)) throw InvalidArgument("tip inset must be positive");
  if (!(rank_tolerance > 0.0) || !(rank_tolerance < 1e-3)) {
    throw InvalidArgument("rank tolerance must lie in (0, 1e-3)");
  }
  if (refinement_steps < 0) throw InvalidArgument("refinement steps must be non-negative");
  if (oversampling < 1) throw InvalidArgument("oversampling must be at least 1");
  quadrature.validate();
}

std::string RowTag::label() const {
  std::ostringstream os;
  os << equation << (imaginary ? "[im]" : "[re]") << "@s=" << std::setprecision(6) << s;
  return os.str();
}

ColumnLayout::ColumnLayout(const DensitySet& shape) : im_degree_(shape.degree_im(0)) {
  int offset = 0;
  for (int j = 0; j < DensitySet::kBlocks; ++j) {
    re_degree_[j] = shape.degree_re(j);
    re_offset_[j] = offset;
    offset += re_degree_[j] + 1;
    im_offset_[j] = offset;
    offset += im_degree_ + 1;
  }
  size_ = offset;
}

int ColumnLayout::degree(int block, bool imaginary) const {
  return imaginary ? im_degree_ : re_degree_.at(block);
}

int ColumnLayout::index(int block, bool imaginary, int k) const {
  if (k < 0 || k > degree(block, imaginary)) throw InvalidArgument("coefficient index out of range");
  return (imaginary ? im_offset_.at(block) : re_offset_.at(block)) + k;
}

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

// Nodes, frames and Legendre values of the plain composite rule on one arc.
struct ArcTable {
  Arc arc;
  std::vector<ArcNode> nodes;
  std::vector<LocalFrame> frames;
  std::vector<double> basis;  // node-major, `terms` values per node
  int terms{};
};

ArcTable build_table(const Contour& contour, const Arc& arc, const QuadratureRule& rule,
                     int terms) {
  ArcTable t{arc, composite_nodes(arc.a, arc.b, rule), {}, {}, terms};
  t.frames.reserve(t.nodes.size());
  t.basis.resize(t.nodes.size() * terms);
  for (std::size_t n = 0; n < t.nodes.size(); ++n) {
    t.frames.push_back(contour.frame(t.nodes[n].s));
    const double x = 2.0 * (t.nodes[n].s - arc.centre()) / arc.length();
    legendre::derivatives(x, 0, std::span<double>(t.basis).subspan(n * terms, terms));
  }
  return t;
}

// Integrals over one arc of P_k times tau'/(tau - t) (principal value), k1 tau' and k2 conj(tau').
struct Moments {
  std::vector<Complex> cauchy, k1, k2;
};

Moments arc_moments(const Contour& contour, const ArcTable& table, double s_field,
                    const LocalFrame& field, const QuadratureRule& rule) {
  const int K = table.terms;
  const Arc& arc = table.arc;
  Moments m{std::vector<Complex>(K), std::vector<Complex>(K), std::vector<Complex>(K)};
  const double rep = nearest_representative(s_field, arc, contour.length());
  const bool inside = rep > arc.a && rep < arc.b;
  const double eps = diagonal_epsilon(contour);

  auto accumulate = [&](double s, double w, const LocalFrame& src, std::span<const double> phi) {
    const KernelSample k = kernel_sample(field, src, s - rep, eps);
    const Complex c = w * (inside ? k.remainder : k.cauchy);
    const Complex a = w * k.k1 * src.d1;
    const Complex b = w * k.k2 * std::conj(src.d1);
    for (int j = 0; j < K; ++j) {
      m.cauchy[j] += phi[j] * c;
      m.k1[j] += phi[j] * a;
      m.k2[j] += phi[j] * b;
    }
  };

  if (inside) {
    for (std::size_t n = 0; n < table.nodes.size(); ++n) {
      accumulate(table.nodes[n].s, table.nodes[n].w, table.frames[n],
                 std::span<const double>(table.basis).subspan(n * K, K));
    }
    std::vector<double> q(K);
    legendre::second_kind(2.0 * (rep - arc.centre()) / arc.length(), q);
    for (int j = 0; j < K; ++j) m.cauchy[j] += -2.0 * q[j];
  } else {
    std::vector<double> phi(K);
    for (const ArcNode& node : nodes_for_field(arc, rep, rule)) {
      legendre::derivatives(2.0 * (node.s - arc.centre()) / arc.length(), 0, phi);
      accumulate(node.s, node.w, contour.frame(node.s), phi);
    }
  }
  return m;
}

// Integrals over one arc of P_k tau'.
std::vector<Complex> plain_moments(const ArcTable& table) {
  std::vector<Complex> out(table.terms);
  for (std::size_t n = 0; n < table.nodes.size(); ++n) {
    const Complex f = table.nodes[n].w * table.frames[n].d1;
    for (int j = 0; j < table.terms; ++j) out[j] += table.basis[n * table.terms + j] * f;
  }
  return out;
}

class RowBuilder {
public:
  RowBuilder(const ColumnLayout& layout, int rows)
      : layout_(layout), matrix_(Eigen::MatrixXd::Zero(rows, layout.full_size())),
        rhs_(Eigen::VectorXd::Zero(rows)) {}

  // Opens a pair of rows for the real and imaginary part of one complex equation.
  int complex_pair(const std::string& equation, double s, Complex rhs) {
    const int r = real_row(equation, s, false, rhs.real());
    real_row(equation, s, true, rhs.imag());
    return r;
  }

  int real_row(const std::string& equation, double s, bool imaginary, double rhs) {
    if (next_ >= matrix_.rows()) throw Error("row count mismatch during assembly");
    tags_.push_back({equation, s, imaginary});
    rhs_(next_) = rhs;
    return next_++;
  }

  // A real coefficient x of (block, part, k) contributes `coeff * x` to the complex pair at r.
  void add_complex(int r, int block, bool imaginary, int k, Complex coeff) {
    const int c = layout_.index(block, imaginary, k);
    matrix_(r, c) += coeff.real();
    matrix_(r + 1, c) += coeff.imag();
  }

  void add_real(int r, int block, bool imaginary, int k, double coeff) {
    matrix_(r, layout_.index(block, imaginary, k)) += coeff;
  }

  int rows_used() const { return next_; }
  Eigen::MatrixXd& matrix() { return matrix_; }
  Eigen::VectorXd& rhs() { return rhs_; }
  std::vector<RowTag>& tags() { return tags_; }

private:
  const ColumnLayout& layout_;
  Eigen::MatrixXd matrix_;
  Eigen::VectorXd rhs_;
  std::vector<RowTag> tags_;
  int next_ = 0;
};

// Legendre derivative values at s on an arc, already multiplied by the chain factor.
std::vector<double> basis_at(const Arc& arc, double s, int order, int terms) {
  std::vector<double> p(terms);
  const double x = std::clamp(2.0 * (s - arc.centre()) / arc.length(), -1.0, 1.0);
  legendre::derivatives(x, order, p);
  const double chain = std::pow(2.0 / arc.length(), order);
  for (double& v : p) v *= chain;
  return p;
}

struct Assembled {
  Eigen::MatrixXd full;
  Eigen::VectorXd rhs;
  std::vector<RowTag> tags;
};

Assembled assemble_full(const ProblemSetup& setup, const SolverOptions& options,
                        const QuadratureRule& rule) {
  const Contour& contour = setup.contour;
  const int N = options.order;
  const int K = N + 2;
  const DensitySet shape(contour, N);
  const ColumnLayout layout(shape);
  const auto arcs = arcs_of(contour);
  const double l0 = contour.l0();
  const double l = contour.length();

  const double mu0 = setup.inclusion.shear_modulus;
  const double mu = setup.matrix.shear_modulus;
  const double kap0 = setup.inclusion.kappa();
  const double kap = setup.matrix.kappa();
  const auto [Gamma, GammaP] = far_field_constants(setup.load);

  const bool k0_rows = options.zero_mode == ZeroModeConstraint::residual_rows;
  const int n_points = N * options.oversampling + 1;
  const int rows = 8 * n_points + 4 * n_points + 2 * n_points + (k0_rows ? 2 : 0) + 2 + 4 +
                   (options.single_valuedness_rows ? 2 : 0);
  RowBuilder rb(layout, rows);

  const std::array<ArcTable, 2> tables{build_table(contour, arcs[0], rule, K),
                                       build_table(contour, arcs[1], rule, K)};
  const std::vector<Complex> crack_moment = plain_moments(tables[0]);

  const double inset = options.tip_inset.value_or(default_tip_inset(l, N));
  const int M = N * options.oversampling;
  const CollocationPoints pts = collocation_points(l0, l, M, inset);

  const Complex inc_q = kap0 / ((kap0 + 1.0) * kPi * kI);
  const Complex inc_q2 = 1.0 / ((kap0 + 1.0) * kPi * kI);
  const Complex mat_q = kap / ((kap + 1.0) * kPi * kI);
  const Complex mat_q2 = 1.0 / ((kap + 1.0) * kPi * kI);
  const double inv2pi = 1.0 / (2.0 * kPi);

  // Integral equations at every collocation point.
  for (int field_arc = 0; field_arc < 2; ++field_arc) {
    const auto& points = field_arc == 0 ? pts.crack : pts.bonded;
    for (double s0 : points) {
      const LocalFrame f = contour.frame(s0);
      const std::vector<double> local = basis_at(arcs[field_arc], s0, 0, K);
      const int ri = rb.complex_pair("inclusion_integral", s0, 0.0);
      const Complex load = kap * Gamma - Gamma - std::conj(GammaP) * std::conj(f.d1) / f.d1;
      const int rm = rb.complex_pair("matrix_integral", s0, -load);
      for (int A = 0; A < 2; ++A) {
        const Moments m = arc_moments(contour, tables[A], s0, f, rule);
        for (bool im : {false, true}) {
          const Complex e = im ? kI : Complex(1.0);
          const Complex ec = std::conj(e);
          for (int k = 0; k <= layout.degree(DensitySet::block(Density::q0, A), im); ++k) {
            const Complex c = m.cauchy[k], a = m.k1[k], b = m.k2[k];
            rb.add_complex(ri, DensitySet::block(Density::q0, A), im, k,
                           inc_q * e * (2.0 * c + a) + inc_q2 * ec * b);
            Complex g0 = inv2pi * (e * ((kap0 - 1.0) * c - a) - ec * b);
            if (A == field_arc) g0 += -kI * (kap0 + 1.0) / 2.0 * e * local[k];
            rb.add_complex(ri, DensitySet::block(Density::g0p, A), im, k, g0);

            Complex g = inv2pi * (e * ((kap - 1.0) * c - a) - ec * b);
            if (A == field_arc) g += kI * (kap + 1.0) / 2.0 * e * local[k];
            if (A == 0) {
              const Complex jump = e * crack_moment[k] * std::conj(f.d1);
              rb.add_complex(rm, DensitySet::block(Density::g0p, 0), im, k,
                             (kap0 + 1.0) / mu0 * jump);
              g += (kap + 1.0) / mu * jump;
            }
            rb.add_complex(rm, DensitySet::block(Density::gp, A), im, k, g);
          }
          for (int k = 0; k <= layout.degree(DensitySet::block(Density::q, A), im); ++k) {
            rb.add_complex(rm, DensitySet::block(Density::q, A), im, k,
                           mat_q * e * (2.0 * m.cauchy[k] + m.k1[k]) + mat_q2 * ec * m.k2[k]);
          }
        }
      }
    }
  }

  // Surface-tension conditions. With E = rho Im g' + Re g'_s the normal row reads
  // Re q - c rho E = rhs and the shear row Im q - c E_s = rhs.
  auto tension_rows = [&](int r_normal, int r_shear, int q_block, int q_block2, int g_block,
                          double c, const Arc& arc, double s) {
    const LocalFrame f = contour.frame(s);
    const auto p0 = basis_at(arc, s, 0, K);
    const auto p1 = basis_at(arc, s, 1, K);
    const auto p2 = basis_at(arc, s, 2, K);
    for (int qb : {q_block, q_block2}) {
      if (qb < 0) continue;
      for (int k = 0; k <= layout.degree(qb, false); ++k) rb.add_real(r_normal, qb, false, k, p0[k]);
      for (int k = 0; k <= layout.degree(qb, true); ++k) rb.add_real(r_shear, qb, true, k, p0[k]);
    }
    for (int k = 0; k <= layout.degree(g_block, true); ++k) {
      rb.add_real(r_normal, g_block, true, k, -c * f.rho * f.rho * p0[k]);
      rb.add_real(r_shear, g_block, true, k, -c * (f.drho * p0[k] + f.rho * p1[k]));
    }
    for (int k = 0; k <= layout.degree(g_block, false); ++k) {
      rb.add_real(r_normal, g_block, false, k, -c * f.rho * p1[k]);
      rb.add_real(r_shear, g_block, false, k, -c * p2[k]);
    }
  };

  const double c_plus = setup.surface.gamma_plus * (kap0 + 1.0) / (4.0 * mu0);
  const double c_minus = setup.surface.gamma_minus * (kap + 1.0) / (4.0 * mu);
  const double c_int = setup.surface.gamma_interface * (kap0 + 1.0) / (4.0 * mu0);

  for (double s : pts.crack) {
    const Complex f1 = setup.tractions.f1(s);
    const Complex f2 = setup.tractions.f2(s);
    const int a = rb.real_row("crack_inclusion_traction", s, false, 0.5 * f1.real());
    const int b = rb.real_row("crack_inclusion_traction", s, true, 0.5 * f1.imag());
    tension_rows(a, b, DensitySet::block(Density::q0, 0), -1,
                 DensitySet::block(Density::g0p, 0), c_plus, arcs[0], s);
    const int c = rb.real_row("crack_matrix_traction", s, false, -0.5 * f2.real());
    const int d = rb.real_row("crack_matrix_traction", s, true, -0.5 * f2.imag());
    tension_rows(c, d, DensitySet::block(Density::q, 0), -1, DensitySet::block(Density::gp, 0),
                 c_minus, arcs[0], s);
  }
  for (double s : pts.bonded) {
    const int a = rb.real_row("interface_traction", s, false, 0.0);
    const int b = rb.real_row("interface_traction", s, true, 0.0);
    tension_rows(a, b, DensitySet::block(Density::q0, 1), DensitySet::block(Density::q, 1),
                 DensitySet::block(Density::g0p, 1), c_int, arcs[1], s);
  }

  if (k0_rows) {
    const double s = arcs[1].centre();
    const int r = rb.complex_pair("interface_displacement", s, 0.0);
    const auto p = basis_at(arcs[1], s, 0, K);
    for (bool im : {false, true}) {
      const Complex e = im ? kI : Complex(1.0);
      for (int k = 0; k <= N + 1 - (im ? 1 : 0); ++k) {
        rb.add_complex(r, DensitySet::block(Density::g0p, 1), im, k, (kap0 + 1.0) / mu0 * e * p[k]);
        rb.add_complex(r, DensitySet::block(Density::gp, 1), im, k, (kap + 1.0) / mu * e * p[k]);
      }
    }
  }

  // Total force on the inclusion.
  {
    const int r = rb.complex_pair("total_force", 0.0, 0.0);
    for (int A = 0; A < 2; ++A) {
      const std::vector<Complex> mom = plain_moments(tables[A]);
      for (bool im : {false, true}) {
        const Complex e = im ? kI : Complex(1.0);
        const int bq0 = DensitySet::block(Density::q0, A);
        const int bq = DensitySet::block(Density::q, A);
        for (int k = 0; k <= layout.degree(bq0, im); ++k) rb.add_complex(r, bq0, im, k, e * mom[k]);
        for (int k = 0; k <= layout.degree(bq, im); ++k) rb.add_complex(r, bq, im, k, -e * mom[k]);
      }
    }
  }

  // Displacement single-valuedness around the crack.
  if (options.single_valuedness_rows) {
    const int r = rb.complex_pair("single_valuedness", 0.5 * l0, 0.0);
    for (bool im : {false, true}) {
      const Complex e = im ? kI : Complex(1.0);
      for (int k = 0; k <= layout.degree(DensitySet::block(Density::g0p, 0), im); ++k) {
        rb.add_complex(r, DensitySet::block(Density::g0p, 0), im, k,
                       (kap0 + 1.0) / mu0 * e * crack_moment[k]);
      }
      for (int k = 0; k <= layout.degree(DensitySet::block(Density::gp, 0), im); ++k) {
        rb.add_complex(r, DensitySet::block(Density::gp, 0), im, k,
                       (kap + 1.0) / mu * e * crack_moment[k]);
      }
    }
  }

  // Continuity of Re g0' and Re g' through both tips: P_k(+-1) = (+-1)^k.
  for (Density d : {Density::g0p, Density::gp}) {
    const std::string name =
        d == Density::g0p ? "tip_continuity_inclusion" : "tip_continuity_matrix";
    const int crack = DensitySet::block(d, 0);
    const int bonded = DensitySet::block(d, 1);
    const int r_start = rb.real_row(name, 0.0, false, 0.0);
    const int r_end = rb.real_row(name, l0, false, 0.0);
    for (int k = 0; k <= layout.degree(crack, false); ++k) {
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      rb.add_real(r_start, crack, false, k, sign);
      rb.add_real(r_end, crack, false, k, 1.0);
    }
    for (int k = 0; k <= layout.degree(bonded, false); ++k) {
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      rb.add_real(r_start, bonded, false, k, -1.0);
      rb.add_real(r_end, bonded, false, k, -sign);
    }
  }

  if (rb.rows_used() != rows) throw Error("row count mismatch after assembly");
  return {std::move(rb.matrix()), std::move(rb.rhs()), std::move(rb.tags())};
}

// Full coefficient vector as a linear map of the free ones.
Eigen::MatrixXd elimination_map(const ColumnLayout& layout, const ProblemSetup& setup,
                                ZeroModeConstraint mode) {
  const double mu0 = setup.inclusion.shear_modulus;
  const double mu = setup.matrix.shear_modulus;
  const double tie = -mu * (setup.inclusion.kappa() + 1.0) / (mu0 * (setup.matrix.kappa() + 1.0));
  const int src = DensitySet::block(Density::g0p, 1);
  const int dst = DensitySet::block(Density::gp, 1);
  const int first = mode == ZeroModeConstraint::eliminate ? 0 : 1;

  const int full = layout.full_size();
  std::vector<int> free_index(full, -1);
  std::vector<bool> eliminated(full, false);
  for (bool im : {false, true}) {
    for (int k = first; k <= layout.degree(dst, im); ++k) eliminated[layout.index(dst, im, k)] = true;
  }
  int nfree = 0;
  for (int c = 0; c < full; ++c) {
    if (!eliminated[c]) free_index[c] = nfree++;
  }
  Eigen::MatrixXd E = Eigen::MatrixXd::Zero(full, nfree);
  for (int c = 0; c < full; ++c) {
    if (free_index[c] >= 0) E(c, free_index[c]) = 1.0;
  }
  for (bool im : {false, true}) {
    for (int k = first; k <= layout.degree(dst, im); ++k) {
      E(layout.index(dst, im, k), free_index[layout.index(src, im, k)]) = tie;
    }
  }
  return E;
}

// min |A x - b| subject to C x = d by the null-space method; C must have full row rank.
class ConstrainedLeastSquares {
public:
  ConstrainedLeastSquares(const Eigen::MatrixXd& C, const Eigen::MatrixXd& A)
      : p_(C.rows()), n_(C.cols()) {
    if (p_ > 0) {
      qc_.compute(C.transpose());
      q_ = qc_.householderQ() * Eigen::MatrixXd::Identity(n_, n_);
      r_ = qc_.matrixQR().topLeftCorner(p_, p_).triangularView<Eigen::Upper>();
    } else {
      q_ = Eigen::MatrixXd::Identity(n_, n_);
    }
    a1_ = A * q_.leftCols(p_);
    if (A.rows() > 0 && n_ > p_) qa_.compute(A * q_.rightCols(n_ - p_));
  }

  Eigen::VectorXd solve(const Eigen::VectorXd& d, const Eigen::VectorXd& b) const {
    Eigen::VectorXd u = Eigen::VectorXd::Zero(p_);
    if (p_ > 0) u = r_.transpose().triangularView<Eigen::Lower>().solve(d);
    Eigen::VectorXd x = q_.leftCols(p_) * u;
    if (n_ > p_ && b.size() > 0) x += q_.rightCols(n_ - p_) * qa_.solve(b - a1_ * u);
    return x;
  }

private:
  Eigen::Index p_, n_;
  Eigen::HouseholderQR<Eigen::MatrixXd> qc_;
  Eigen::MatrixXd q_, r_, a1_;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qa_;
};

}  // namespace

bool is_side_condition(const std::string& equation) {
  return equation == "total_force" || equation == "interface_displacement" ||
         equation == "single_valuedness" || equation.starts_with("tip_continuity");
}

LinearSystem assemble(const ProblemSetup& setup, const SolverOptions& options) {
  options.validate();
  setup.validate();

  const DensitySet shape(setup.contour, options.order);
  const ColumnLayout layout(shape);

  LinearSystem sys;
  sys.order = options.order;
  sys.full_columns = layout.full_size();
  sys.special_material_case = setup.special_material_case();
  sys.expand = elimination_map(layout, setup, options.zero_mode);

  QuadratureRule rule = options.quadrature;
  Assembled current = assemble_full(setup, options, rule);
  if (rule.adaptive) {
    sys.quadrature_converged = false;
    for (int d = 0; d < rule.max_doublings; ++d) {
      const QuadratureRule finer = rule.refined(2);
      Assembled next = assemble_full(setup, options, finer);
      const double scale = std::max(current.full.cwiseAbs().maxCoeff(), 1e-300);
      sys.quadrature_change = (next.full - current.full).cwiseAbs().maxCoeff() / scale;
      rule = finer;
      current = std::move(next);
      if (sys.quadrature_change <= rule.adaptive_tolerance) {
        sys.quadrature_converged = true;
        break;
      }
    }
  }
  sys.quadrature_panels = rule.panels_per_arc;
  sys.matrix = current.full * sys.expand;
  sys.rhs = std::move(current.rhs);
  sys.tags = std::move(current.tags);
  return sys;
}

Solution solve(const LinearSystem& system, const ProblemSetup& setup,
               const SolverOptions& options) {
  const Eigen::MatrixXd& A = system.matrix;
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();

  // Equilibrate rows by their largest entry, then columns by their norm.
  Eigen::VectorXd row_scale(m), col_scale(n);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double v = A.row(i).cwiseAbs().maxCoeff();
    row_scale(i) = v > 0.0 ? 1.0 / v : 1.0;
  }
  Eigen::MatrixXd S = row_scale.asDiagonal() * A;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double v = S.col(j).norm();
    col_scale(j) = v > 0.0 ? 1.0 / v : 1.0;
  }
  S = S * col_scale.asDiagonal();

  ResidualReport report;
  report.rows = static_cast<int>(m);
  report.columns = static_cast<int>(n);
  report.special_material_case = system.special_material_case;
  report.quadrature_converged = system.quadrature_converged;
  report.quadrature_change = system.quadrature_change;

  const Eigen::VectorXd sv = Eigen::BDCSVD<Eigen::MatrixXd>(S).singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  const double smin = sv.size() ? sv(sv.size() - 1) : 0.0;
  report.condition_estimate = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
  report.rank = static_cast<int>((sv.array() > options.rank_tolerance * smax).count());

  if (report.rank < std::min(m, n)) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> rows_qr(S.transpose());
    rows_qr.setThreshold(options.rank_tolerance);
    std::vector<std::string> tags;
    const auto& perm = rows_qr.colsPermutation().indices();
    for (Eigen::Index i = rows_qr.rank(); i < perm.size(); ++i) {
      tags.push_back(system.tags.at(perm(i)).label());
    }
    std::ostringstream os;
    os << "collocation system is rank deficient: rank " << report.rank << " of "
       << std::min(m, n) << ", condition estimate " << report.condition_estimate;
    throw SolverError(os.str(), std::move(tags));
  }

  const Eigen::VectorXd b = row_scale.asDiagonal() * system.rhs;
  std::vector<Eigen::Index> side, colloc;
  for (Eigen::Index i = 0; i < m; ++i) {
    const bool hard = options.exact_side_conditions && is_side_condition(system.tags[i].equation);
    (hard ? side : colloc).push_back(i);
  }
  const ConstrainedLeastSquares lse(S(side, Eigen::indexing::all),
                                    S(colloc, Eigen::indexing::all));
  auto split_solve = [&](const Eigen::VectorXd& rhs) {
    return lse.solve(rhs(side), rhs(colloc));
  };
  Eigen::VectorXd y = split_solve(b);
  for (int step = 0; step < options.refinement_steps; ++step) {
    Eigen::VectorXd r(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      long double acc = b(i);
      for (Eigen::Index j = 0; j < n; ++j) {
        acc -= static_cast<long double>(S(i, j)) * static_cast<long double>(y(j));
      }
      r(i) = static_cast<double>(acc);
    }
    y += split_solve(r);
  }
  const Eigen::VectorXd free = col_scale.asDiagonal() * y;

  const Eigen::VectorXd residual = A * free - system.rhs;
  for (Eigen::Index i = 0; i < m; ++i) {
    double& slot = report.max_row_residual[system.tags[i].equation];
    slot = std::max(slot, std::abs(residual(i)));
    report.max_residual = std::max(report.max_residual, std::abs(residual(i)));
  }

  DensitySet dset = expand_solution(system, setup.contour, free);
  return {std::move(dset), std::move(report)};
}

DensitySet expand_solution(const LinearSystem& system, const Contour& contour,
                           const Eigen::VectorXd& free) {
  if (free.size() != system.matrix.cols()) throw InvalidArgument("free coefficient count mismatch");
  const Eigen::VectorXd full = system.expand * free;
  DensitySet dset(contour, system.order);
  const ColumnLayout layout(dset);
  for (int j = 0; j < DensitySet::kBlocks; ++j) {
    auto& re = dset.legendre_re(j);
    auto& im = dset.legendre_im(j);
    for (std::size_t k = 0; k < re.size(); ++k) {
      re[k] = full(layout.index(j, false, static_cast<int>(k)));
    }
    for (std::size_t k = 0; k < im.size(); ++k) {
      im[k] = full(layout.index(j, true, static_cast<int>(k)));
    }
  }
  return dset;
}

Solution solve_problem(const ProblemSetup& setup, const SolverOptions& options) {
  return solve(assemble(setup, options), setup, options);
}

}  // namespace icrack
