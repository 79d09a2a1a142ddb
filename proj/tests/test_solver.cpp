#include "icrack/error.hpp"
#include "icrack/solver.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

using namespace icrack;

namespace {
constexpr double pi = std::numbers::pi;

ProblemSetup fig1_setup(RemoteLoad load = {1.0, 0.0, 0.0}) {
  return {circular_contour(1.0, 0.0, pi), Material(40.0, 0.25), Material(60.0, 0.35),
          SurfaceTension{0.1, 0.1, 0.1}, load};
}

SolverOptions small(int order = 8) {
  SolverOptions o;
  o.order = order;
  return o;
}

double max_coefficient_difference(const DensitySet& a, const DensitySet& b, double factor) {
  double diff = 0.0;
  for (int j = 0; j < DensitySet::kBlocks; ++j) {
    const auto ar = a.taylor_re(j), br = b.taylor_re(j);
    const auto ai = a.taylor_im(j), bi = b.taylor_im(j);
    for (std::size_t k = 0; k < ar.size(); ++k) diff = std::max(diff, std::abs(br[k] - factor * ar[k]));
    for (std::size_t k = 0; k < ai.size(); ++k) diff = std::max(diff, std::abs(bi[k] - factor * ai[k]));
  }
  return diff;
}
}  // namespace

TEST_CASE("coefficient count is 16 N + 23") {
  CHECK(ColumnLayout(DensitySet(circular_contour(1.0, 0.0, pi), 16)).full_size() == 279);
  CHECK(ColumnLayout(DensitySet(circular_contour(1.0, 0.0, pi), 30)).full_size() == 503);
  const LinearSystem sys = assemble(fig1_setup(), small(16));
  CHECK(sys.full_columns == 279);
  CHECK(sys.free_columns() < sys.full_columns);
  CHECK(sys.matrix.rows() == static_cast<Eigen::Index>(sys.tags.size()));
  CHECK(sys.expand.rows() == 279);
}

TEST_CASE("every row carries a known equation tag") {
  const std::set<std::string> known{"inclusion_integral", "matrix_integral",
                                    "crack_inclusion_traction", "crack_matrix_traction",
                                    "interface_traction", "interface_displacement",
                                    "total_force", "single_valuedness",
                                    "tip_continuity_inclusion", "tip_continuity_matrix"};
  for (const RowTag& t : assemble(fig1_setup(), small()).tags) CHECK(known.count(t.equation) == 1);
}

TEST_CASE("orders below four are rejected") {
  CHECK_THROWS_AS(assemble(fig1_setup(), small(3)), InvalidArgument);
  SolverOptions o = small();
  o.oversampling = 0;
  CHECK_THROWS_AS(assemble(fig1_setup(), o), InvalidArgument);
}

TEST_CASE("unloaded problem has the zero solution") {
  const ProblemSetup p = fig1_setup({0.0, 0.0, 0.0});
  const LinearSystem sys = assemble(p, small());
  CHECK(sys.rhs.norm() == 0.0);
  const Solution s = solve(sys, p, small());
  CHECK(s.densities.max_abs_coefficient() == 0.0);
  CHECK(s.report.max_residual == 0.0);
}

TEST_CASE("solution is linear in the loads") {
  const Solution one = solve_problem(fig1_setup(), small(12));
  ProblemSetup p = fig1_setup();
  p.tractions = CrackTractions::zero();
  const Solution two = solve_problem(p.with_scaled_loads(2.0), small(12));
  CHECK(max_coefficient_difference(one.densities, two.densities, 2.0) <
        1e-10 * 2.0 * one.densities.max_abs_coefficient());
}

TEST_CASE("crack pressure and remote load superpose") {
  ProblemSetup a = fig1_setup();
  ProblemSetup b = fig1_setup({0.0, 0.0, 0.0});
  b.tractions = CrackTractions::pressure(0.5);
  ProblemSetup ab = fig1_setup();
  ab.tractions = CrackTractions::pressure(0.5);
  const Solution sa = solve_problem(a, small(10));
  const Solution sb = solve_problem(b, small(10));
  const Solution sab = solve_problem(ab, small(10));
  for (double s : {0.3, 1.5, 4.0}) {
    for (Density d : {Density::q0, Density::g0p, Density::q, Density::gp}) {
      const Complex sum = sa.densities.eval(d, s) + sb.densities.eval(d, s);
      CHECK(std::abs(sab.densities.eval(d, s) - sum) < 1e-10 * (1.0 + std::abs(sum)));
    }
  }
}

TEST_CASE("side conditions hold exactly") {
  const Solution s = solve_problem(fig1_setup(), small(12));
  for (const auto& [name, value] : s.report.max_row_residual) {
    if (is_side_condition(name)) CHECK_MESSAGE(value < 1e-12, name);
  }
  CHECK(is_side_condition("tip_continuity_matrix"));
  CHECK_FALSE(is_side_condition("interface_traction"));
}

TEST_CASE("collocation residual shrinks as the order grows") {
  const double r12 = solve_problem(fig1_setup(), small(12)).report.max_row_residual.at("matrix_integral");
  const double r40 = solve_problem(fig1_setup(), small(40)).report.max_row_residual.at("matrix_integral");
  CHECK(r40 < 0.5 * r12);
}

TEST_CASE("square collocation with residual side conditions still solves") {
  SolverOptions o = small(10);
  o.oversampling = 1;
  o.single_valuedness_rows = false;
  o.exact_side_conditions = false;
  const Solution s = solve_problem(fig1_setup(), o);
  CHECK(s.report.rows >= s.report.columns);
  CHECK(std::isfinite(s.report.max_residual));
}

TEST_CASE("identical phases are flagged") {
  ProblemSetup p = fig1_setup();
  p.inclusion = p.matrix;
  const LinearSystem sys = assemble(p, small());
  CHECK(sys.special_material_case);
  CHECK(solve(sys, p, small()).report.special_material_case);
}

TEST_CASE("the report describes the system") {
  const Solution s = solve_problem(fig1_setup(), small());
  CHECK(s.report.rank == s.report.columns);
  CHECK(s.report.condition_estimate >= 1.0);
  CHECK(s.report.quadrature_converged);
}

TEST_CASE("row tags print their location") {
  CHECK(RowTag{"total_force", 0.0, true}.label().find("total_force") != std::string::npos);
}
