#pragma once

#include <array>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "conevol/polynomial.hpp"
#include "conevol/polytope.hpp"

namespace conevol {

/// Normals of a polygon sorted counter-clockwise by angle.
struct PlanarFan {
  Eigen::MatrixXd normals;  ///< 2 x m, original column order
  /// ordering[k] = column index at counter-clockwise position k; position 0
  /// holds column 0.
  std::vector<int> ordering;
  /// position[i] = k with ordering[k] == i.
  std::vector<int> position;
  /// gaps[k] = <u_{ordering[k]}, u_{ordering[k+1 mod m]}>
  std::vector<double> gaps;

  int size() const { return static_cast<int>(ordering.size()); }
  int next(int column) const;
  int prev(int column) const;
};

/// Throws NotPlanar when n != 2.
PlanarFan order_ccw(const NormalMatrix& u);

/// f_i(b) = alpha_i b_i + beta_i b_next + delta_i b_prev, in column indexing.
struct EdgeLengthForm {
  int column = 0;
  int next = 0;
  int prev = 0;
  double alpha = 0.0;
  double beta = 0.0;
  double delta = 0.0;

  double operator()(const Eigen::VectorXd& b) const {
    return alpha * b(column) + beta * b(next) + delta * b(prev);
  }
};

std::vector<EdgeLengthForm> edge_length_forms(const PlanarFan& fan);

/// Edge lengths f_i(b). Throws OutsideTypeCone when some f_i(b) < -1e-9.
Eigen::VectorXd stancu_lengths(const PlanarFan& fan, const Eigen::VectorXd& b);

/// f_i as linear polynomials in b_1..b_m.
std::vector<Polynomial> edge_length_polynomials(const PlanarFan& fan);
/// sum_i f_i(b) b_i / 2
Polynomial planar_volume_polynomial(const PlanarFan& fan);

/// A(U) = {b : rows * b >= 0}. Row r encodes b_i - <u_i, v_l(b)> >= 0 where
/// v_l is the intersection of the lines of columns l and next(l);
/// provenance[r] = (l, i) in column indexing.
struct TypeCone {
  Eigen::MatrixXd rows;
  std::vector<std::pair<int, int>> provenance;

  bool contains(const Eigen::VectorXd& b, double tol = 0.0) const;
};

TypeCone planar_type_cone(const PlanarFan& fan);

/// Coefficients c with <u_i, v> = c_l * b_l + c_next * b_next, for the
/// vertex v where the lines of columns l and next(l) meet.
std::pair<double, double> vertex_support_coefficients(const PlanarFan& fan, int l, int i);

/// Column indices of a trapezoid in the labeling of its closed-form cone-
/// volume description: labels[0] and labels[2] are antiparallel, labels[0]
/// has positive inner product with u_{labels[1]} + u_{labels[3]} (the side
/// where the two legs meet), and labels[1] < labels[3]. The description is
/// symmetric in labels 1 and 3, so orientation does not matter.
struct TrapezoidLabeling {
  std::array<int, 4> labels{0, 1, 2, 3};
};

/// Finds the labeling for a 2 x 4 normal matrix with exactly one
/// antiparallel pair. Throws InvalidInput otherwise.
TrapezoidLabeling trapezoid_labeling(const NormalMatrix& u);

/// Reorders gamma (column indexing) into trapezoid labels.
std::array<double, 4> relabel(const TrapezoidLabeling& lab, const Eigen::VectorXd& gamma);

enum class TrapezoidBranch { None, SumBelow, SqrtBound };

/// Closed-form cone-volume membership for trapezoids, gamma in labeling
/// order: g1 + g3 < g2 + g4, or g1 + g3 >= g2 + g4 >= 2 sqrt(g1 g3) with
/// g1 < g3. Requires gamma > 0 (NotPositive) unless allow_zero, and
/// sum gamma = 1 (NotNormalized). Comparisons use slack `tol`.
TrapezoidBranch trapezoid_branch(const std::array<double, 4>& gamma, bool allow_zero = false,
                                 double tol = 1e-12);
bool trapezoid_membership(const std::array<double, 4>& gamma, bool allow_zero = false,
                          double tol = 1e-12);

}  // namespace conevol
