#include "conevol/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace conevol {

void for_each_combination(int m, int k,
                          const std::function<bool(const IndexSet&)>& fn) {
  if (k < 0 || k > m) return;
  IndexSet idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!fn(idx)) return;
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

int numeric_rank(const Eigen::MatrixXd& a, double rel_tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) <= std::numeric_limits<double>::min()) return 0;
  const double cutoff = rel_tol * s(0);
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cutoff) ++r;
  return r;
}

int affine_dimension(const Eigen::MatrixXd& points, double tol) {
  if (points.cols() <= 1) return 0;
  const Eigen::VectorXd mean = points.rowwise().mean();
  const Eigen::MatrixXd centred = points.colwise() - mean;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(centred);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 0;
  const double cutoff = tol * std::max(1.0, s(0));
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cutoff) ++r;
  return r;
}

Eigen::MatrixXd orthonormal_complement(const Eigen::VectorXd& normal) {
  const Eigen::Index k = normal.size();
  const Eigen::MatrixXd col = normal;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(col);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(k, k);
  return q.rightCols(k - 1);
}

Eigen::MatrixXd orthonormal_span(const Eigen::MatrixXd& a, double rel_tol) {
  if (a.cols() == 0) return Eigen::MatrixXd(a.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU);
  const int r = numeric_rank(a, rel_tol);
  return svd.matrixU().leftCols(r);
}

Eigen::MatrixXd select_columns(const Eigen::MatrixXd& a, std::span<const int> cols) {
  Eigen::MatrixXd out(a.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) out.col(j) = a.col(cols[j]);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

class Tableau {
 public:
  Tableau(Eigen::MatrixXd t, std::vector<int> basis, double eps)
      : t_(std::move(t)), basis_(std::move(basis)), eps_(eps) {}

  Eigen::MatrixXd& table() { return t_; }
  std::vector<int>& basis() { return basis_; }

  void pivot(int row, int col) {
    t_.row(row) /= t_(row, col);
    for (Eigen::Index r = 0; r < t_.rows(); ++r) {
      if (r == row) continue;
      const double f = t_(r, col);
      if (f != 0.0) t_.row(r) -= f * t_.row(row);
    }
    basis_[row] = col;
  }

  /// Runs simplex iterations on the objective stored in the last row.
  /// Columns >= allowed_cols never enter. Returns false when unbounded.
  bool optimize(int allowed_cols) {
    const Eigen::Index rows = t_.rows() - 1;
    const Eigen::Index rhs = t_.cols() - 1;
    for (int iter = 0; iter < 50000; ++iter) {
      int enter = -1;
      for (int j = 0; j < allowed_cols; ++j) {
        if (t_(rows, j) < -eps_) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index r = 0; r < rows; ++r) {
        const double a = t_(r, enter);
        if (a > eps_) {
          const double ratio = t_(r, rhs) / a;
          if (ratio < best - eps_ ||
              (std::abs(ratio - best) <= eps_ && leave >= 0 &&
               basis_[r] < basis_[leave])) {
            best = ratio;
            leave = static_cast<int>(r);
          }
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
    return true;
  }

 private:
  Eigen::MatrixXd t_;
  std::vector<int> basis_;
  double eps_;
};

}  // namespace

LpResult solve_lp(const Eigen::VectorXd& c, const Eigen::MatrixXd& a_eq,
                  const Eigen::VectorXd& b_eq, const Eigen::MatrixXd& a_le,
                  const Eigen::VectorXd& b_le, double eps) {
  const int nx = static_cast<int>(c.size());
  const int n_eq = static_cast<int>(a_eq.rows());
  const int n_le = static_cast<int>(a_le.rows());
  const int rows = n_eq + n_le;
  const int n_slack = n_le;
  const int n_art = rows;
  const int cols = nx + n_slack + n_art;

  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(rows + 1, cols + 1);
  for (int r = 0; r < n_eq; ++r) {
    t.row(r).head(nx) = a_eq.row(r);
    t(r, cols) = b_eq(r);
  }
  for (int r = 0; r < n_le; ++r) {
    t.row(n_eq + r).head(nx) = a_le.row(r);
    t(n_eq + r, nx + r) = 1.0;
    t(n_eq + r, cols) = b_le(r);
  }
  std::vector<int> basis(rows);
  for (int r = 0; r < rows; ++r) {
    if (t(r, cols) < 0.0) t.row(r) *= -1.0;
    t(r, nx + n_slack + r) = 1.0;
    basis[r] = nx + n_slack + r;
  }
  // Phase 1: minimise the sum of artificials.
  for (int r = 0; r < rows; ++r) t.row(rows) -= t.row(r);
  for (int r = 0; r < rows; ++r) t(rows, nx + n_slack + r) = 0.0;

  Tableau tab(std::move(t), std::move(basis), eps);
  tab.optimize(cols);
  LpResult result;
  auto& tt = tab.table();
  const double scale = 1.0 + (rows > 0 ? tt.col(cols).head(rows).cwiseAbs().maxCoeff() : 0.0);
  if (-tt(rows, cols) > 1e-9 * scale) {
    result.status = LpStatus::Infeasible;
    return result;
  }
  // Drive artificials out of the basis where possible.
  for (int r = 0; r < rows; ++r) {
    if (tab.basis()[r] < nx + n_slack) continue;
    for (int j = 0; j < nx + n_slack; ++j) {
      if (std::abs(tt(r, j)) > 1e-9) {
        tab.pivot(r, j);
        break;
      }
    }
  }
  // Phase 2 objective row.
  tt.row(rows).setZero();
  tt.row(rows).head(nx) = c.transpose();
  for (int r = 0; r < rows; ++r) {
    const int bj = tab.basis()[r];
    const double cb = bj < nx ? c(bj) : 0.0;
    if (cb != 0.0) tt.row(rows) -= cb * tt.row(r);
  }
  if (!tab.optimize(nx + n_slack)) {
    result.status = LpStatus::Unbounded;
    return result;
  }
  result.status = LpStatus::Optimal;
  result.x = Eigen::VectorXd::Zero(nx);
  for (int r = 0; r < rows; ++r) {
    const int bj = tab.basis()[r];
    if (bj < nx) result.x(bj) = tt(r, cols);
  }
  result.objective = c.dot(result.x);
  return result;
}

bool in_positive_hull(const Eigen::MatrixXd& gens, const Eigen::VectorXd& target,
                      double tol) {
  const Eigen::VectorXd c = Eigen::VectorXd::Zero(gens.cols());
  const auto res = solve_lp(c, gens, target, Eigen::MatrixXd(0, gens.cols()),
                            Eigen::VectorXd(0));
  if (res.status != LpStatus::Optimal) return false;
  return (gens * res.x - target).norm() <= tol * (1.0 + target.norm());
}

bool positively_spans(const Eigen::MatrixXd& gens, double tol) {
  if (numeric_rank(gens, tol) < gens.rows()) return false;
  for (Eigen::Index j = 0; j < gens.cols(); ++j) {
    if (!in_positive_hull(gens, -gens.col(j), tol)) return false;
  }
  return true;
}

}  // namespace conevol
