#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace conevol {

/// Sorted list of 0-based column indices.
using IndexSet = std::vector<int>;

/// Calls `fn` with every k-subset of {0..m-1}, in lexicographic order.
/// Iteration stops early when `fn` returns false.
void for_each_combination(int m, int k,
                          const std::function<bool(const IndexSet&)>& fn);

/// Number of singular values above rel_tol * sigma_max.
int numeric_rank(const Eigen::MatrixXd& a, double rel_tol = 1e-9);

/// Dimension of the affine hull of `points` (columns). Singular values of the
/// centred point matrix are compared against tol * max(1, sigma_max).
int affine_dimension(const Eigen::MatrixXd& points, double tol = 1e-9);

/// Orthonormal basis (k x (k-1)) of the orthogonal complement of `normal`.
Eigen::MatrixXd orthonormal_complement(const Eigen::VectorXd& normal);

/// Orthonormal basis of the column span of `a` (rank by rel_tol).
Eigen::MatrixXd orthonormal_span(const Eigen::MatrixXd& a, double rel_tol = 1e-9);

Eigen::MatrixXd select_columns(const Eigen::MatrixXd& a, std::span<const int> cols);

// ---------------------------------------------------------------------------
// Small dense linear programming (two-phase simplex, Bland's rule).

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Eigen::VectorXd x;
  double objective = 0.0;
};

/// minimize c^T x  s.t.  a_eq x = b_eq,  a_le x <= b_le,  x >= 0.
/// Either constraint block may have zero rows. The returned x is a basic
/// feasible solution, hence a vertex of the feasible region when optimal.
LpResult solve_lp(const Eigen::VectorXd& c, const Eigen::MatrixXd& a_eq,
                  const Eigen::VectorXd& b_eq, const Eigen::MatrixXd& a_le,
                  const Eigen::VectorXd& b_le, double eps = 1e-10);

/// True when `target` lies in the positive hull of the columns of `gens`.
bool in_positive_hull(const Eigen::MatrixXd& gens, const Eigen::VectorXd& target,
                      double tol = 1e-9);

/// True when the positive hull of the columns is all of R^rows.
bool positively_spans(const Eigen::MatrixXd& gens, double tol = 1e-9);

}  // namespace conevol
