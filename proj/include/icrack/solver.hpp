#pragma once

#include "icrack/density.hpp"
#include "icrack/model.hpp"
#include "icrack/quadrature.hpp"

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace icrack {

/// How the constant terms of the bonded-arc displacement-derivative densities are tied.
enum class ZeroModeConstraint {
  residual_rows,  ///< k >= 1 eliminated as columns, k = 0 enforced by two extra rows
  eliminate,      ///< every coefficient, k = 0 included, eliminated as columns
};

struct SolverOptions {
  int order = 24;
  QuadratureRule quadrature;
  std::optional<double> tip_inset;  ///< defaults to l / (200 (N + 1))
  double rank_tolerance = 1e-14;    ///< relative singular-value cut-off of the scaled matrix
  ZeroModeConstraint zero_mode = ZeroModeConstraint::residual_rows;
  int refinement_steps = 2;
  int oversampling = 3;  ///< collocation points per arc = oversampling * N + 1
  /// Side conditions (total force, tip continuity, bonded-arc k = 0 tie, single-valuedness) are
  /// met exactly and only the collocation rows are solved in the least-squares sense.
  bool exact_side_conditions = true;
  /// Adds the crack single-valuedness integral as two explicit rows.
  bool single_valuedness_rows = true;

  void validate() const;
};

/// Identifies the equation, location and real/imaginary part that produced a matrix row.
struct RowTag {
  std::string equation;
  double s{};
  bool imaginary{};

  std::string label() const;
};

/// Map from (block, real/imaginary part, k) to a column of the full 16N+23 coefficient vector.
class ColumnLayout {
public:
  explicit ColumnLayout(const DensitySet& shape);

  int full_size() const noexcept { return size_; }
  int index(int block, bool imaginary, int k) const;
  int degree(int block, bool imaginary) const;

private:
  std::array<int, DensitySet::kBlocks> re_offset_{};
  std::array<int, DensitySet::kBlocks> im_offset_{};
  std::array<int, DensitySet::kBlocks> re_degree_{};
  int im_degree_{};
  int size_{};
};

struct LinearSystem {
  Eigen::MatrixXd matrix;  ///< rows x free columns
  Eigen::VectorXd rhs;
  std::vector<RowTag> tags;
  Eigen::MatrixXd expand;  ///< full coefficients = expand * free coefficients
  int order{};
  int full_columns{};      ///< 16 N + 23
  bool special_material_case{};
  int quadrature_panels{};  ///< panels per arc actually used
  double quadrature_change{};  ///< relative change of entries at the last panel doubling
  bool quadrature_converged{true};

  int free_columns() const { return static_cast<int>(matrix.cols()); }
};

/// Assembles the collocation system. Throws InvalidArgument for N < 4.
LinearSystem assemble(const ProblemSetup& setup, const SolverOptions& options);

struct ResidualReport {
  std::map<std::string, double> max_row_residual;  ///< keyed by equation name
  double max_residual{};
  double condition_estimate{};
  int rank{};
  int rows{};
  int columns{};
  bool special_material_case{};
  bool quadrature_converged{true};
  double quadrature_change{};
};

struct Solution {
  DensitySet densities;
  ResidualReport report;
};

/// True for rows that `exact_side_conditions` treats as equality constraints.
bool is_side_condition(const std::string& equation);

/// Least-squares solve with row/column equilibration and iterative refinement.
/// Throws SolverError naming the dependent rows when the scaled matrix is rank deficient.
Solution solve(const LinearSystem& system, const ProblemSetup& setup,
               const SolverOptions& options);

/// Densities for a vector of free coefficients of `system`.
DensitySet expand_solution(const LinearSystem& system, const Contour& contour,
                           const Eigen::VectorXd& free);

/// assemble + solve.
Solution solve_problem(const ProblemSetup& setup, const SolverOptions& options);

}  // namespace icrack
