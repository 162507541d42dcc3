#include "conevol/planar.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "conevol/errors.hpp"

namespace conevol {

int PlanarFan::next(int column) const {
  return ordering[(position[column] + 1) % size()];
}

int PlanarFan::prev(int column) const {
  return ordering[(position[column] + size() - 1) % size()];
}

PlanarFan order_ccw(const NormalMatrix& u) {
  if (u.dim() != 2) {
    throw Error(ErrorCode::NotPlanar, "planar operations need n = 2, got n = " +
                                          std::to_string(u.dim()));
  }
  const int m = u.size();
  const Eigen::MatrixXd& um = u.matrix();
  const double base = std::atan2(um(1, 0), um(0, 0));
  std::vector<double> angle(m);
  for (int i = 0; i < m; ++i) {
    double a = std::atan2(um(1, i), um(0, i)) - base;
    while (a < 0) a += 2 * M_PI;
    while (a >= 2 * M_PI) a -= 2 * M_PI;
    angle[i] = i == 0 ? 0.0 : a;
  }
  PlanarFan fan;
  fan.normals = um;
  fan.ordering.resize(m);
  std::iota(fan.ordering.begin(), fan.ordering.end(), 0);
  std::sort(fan.ordering.begin(), fan.ordering.end(),
            [&](int a, int b) { return angle[a] < angle[b]; });
  fan.position.resize(m);
  for (int k = 0; k < m; ++k) fan.position[fan.ordering[k]] = k;
  fan.gaps.resize(m);
  for (int k = 0; k < m; ++k) {
    const int a = fan.ordering[k], b = fan.ordering[(k + 1) % m];
    fan.gaps[k] = um.col(a).dot(um.col(b));
    const double cross = um(0, a) * um(1, b) - um(1, a) * um(0, b);
    if (cross <= 1e-12) {
      throw Error(ErrorCode::NotPositivelySpanning,
                  "consecutive normals " + std::to_string(a) + " and " + std::to_string(b) +
                      " are at least pi apart");
    }
  }
  return fan;
}

std::vector<EdgeLengthForm> edge_length_forms(const PlanarFan& fan) {
  const int m = fan.size();
  std::vector<EdgeLengthForm> out(m);
  for (int i = 0; i < m; ++i) {
    const int nx = fan.next(i), pv = fan.prev(i);
    const double c_next = fan.gaps[fan.position[i]];
    const double c_prev = fan.gaps[fan.position[pv]];
    const double s_next = std::sqrt(1.0 - c_next * c_next);
    const double s_prev = std::sqrt(1.0 - c_prev * c_prev);
    EdgeLengthForm& f = out[i];
    f.column = i;
    f.next = nx;
    f.prev = pv;
    f.alpha = -(c_next / s_next + c_prev / s_prev);
    f.beta = 1.0 / s_next;
    f.delta = 1.0 / s_prev;
  }
  return out;
}

Eigen::VectorXd stancu_lengths(const PlanarFan& fan, const Eigen::VectorXd& b) {
  const auto forms = edge_length_forms(fan);
  Eigen::VectorXd out(fan.size());
  for (int i = 0; i < fan.size(); ++i) {
    out(i) = forms[i](b);
    if (out(i) < -1e-9) {
      throw Error(ErrorCode::OutsideTypeCone,
                  "edge " + std::to_string(i) + " has negative length " + std::to_string(out(i)) +
                      "; b is outside the all-edges type cone");
    }
  }
  return out;
}

std::vector<Polynomial> edge_length_polynomials(const PlanarFan& fan) {
  const int m = fan.size();
  std::vector<Polynomial> out;
  for (const auto& f : edge_length_forms(fan)) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(m);
    c(f.column) += f.alpha;
    c(f.next) += f.beta;
    c(f.prev) += f.delta;
    out.push_back(Polynomial::linear(c));
  }
  return out;
}

Polynomial planar_volume_polynomial(const PlanarFan& fan) {
  const int m = fan.size();
  const auto f = edge_length_polynomials(fan);
  Polynomial v(m);
  for (int i = 0; i < m; ++i) v += f[i] * Polynomial::variable(m, i) * 0.5;
  return v;
}

std::pair<double, double> vertex_support_coefficients(const PlanarFan& fan, int l, int i) {
  const int nx = fan.next(l);
  Eigen::Matrix2d a;
  a.row(0) = fan.normals.col(l).transpose();
  a.row(1) = fan.normals.col(nx).transpose();
  // v = a^{-1} (b_l, b_next); <u_i, v> = (a^{-T} u_i) . (b_l, b_next)
  const Eigen::Vector2d w = a.transpose().partialPivLu().solve(Eigen::Vector2d(fan.normals.col(i)));
  return {w(0), w(1)};
}

bool TypeCone::contains(const Eigen::VectorXd& b, double tol) const {
  return (rows * b).minCoeff() >= -tol;
}

TypeCone planar_type_cone(const PlanarFan& fan) {
  const int m = fan.size();
  TypeCone cone;
  cone.rows = Eigen::MatrixXd::Zero(m * (m - 2), m);
  int r = 0;
  for (int k = 0; k < m; ++k) {
    const int l = fan.ordering[k];
    const int nx = fan.next(l);
    for (int i = 0; i < m; ++i) {
      if (i == l || i == nx) continue;
      const auto [cl, cn] = vertex_support_coefficients(fan, l, i);
      cone.rows(r, i) += 1.0;
      cone.rows(r, l) -= cl;
      cone.rows(r, nx) -= cn;
      cone.provenance.emplace_back(l, i);
      ++r;
    }
  }
  return cone;
}

TrapezoidLabeling trapezoid_labeling(const NormalMatrix& u) {
  if (u.dim() != 2 || u.size() != 4) {
    throw Error(ErrorCode::InvalidInput, "a trapezoid needs 4 normals in the plane");
  }
  const Eigen::MatrixXd& um = u.matrix();
  std::vector<std::pair<int, int>> anti;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if ((um.col(i) + um.col(j)).norm() <= 1e-9) anti.emplace_back(i, j);
  if (anti.size() != 1) {
    throw Error(ErrorCode::InvalidInput,
                "expected exactly one antiparallel pair of normals, found " +
                    std::to_string(anti.size()));
  }
  const auto [a, c] = anti.front();
  std::vector<int> legs;
  for (int i = 0; i < 4; ++i)
    if (i != a && i != c) legs.push_back(i);
  const Eigen::Vector2d apex = um.col(legs[0]) + um.col(legs[1]);
  const double side = um.col(a).dot(apex);
  TrapezoidLabeling lab;
  lab.labels = side > 0 ? std::array<int, 4>{a, legs[0], c, legs[1]}
                        : std::array<int, 4>{c, legs[0], a, legs[1]};
  return lab;
}

std::array<double, 4> relabel(const TrapezoidLabeling& lab, const Eigen::VectorXd& gamma) {
  return {gamma(lab.labels[0]), gamma(lab.labels[1]), gamma(lab.labels[2]),
          gamma(lab.labels[3])};
}

TrapezoidBranch trapezoid_branch(const std::array<double, 4>& g, bool allow_zero, double tol) {
  for (int i = 0; i < 4; ++i) {
    if (g[i] < 0.0 || (!allow_zero && !(g[i] > 0.0))) {
      throw Error(ErrorCode::NotPositive, "gamma_" + std::to_string(i + 1) + " is not positive");
    }
  }
  const double total = g[0] + g[1] + g[2] + g[3];
  if (std::abs(total - 1.0) > 1e-9) {
    throw Error(ErrorCode::NotNormalized,
                "gamma sums to " + std::to_string(total) + ", expected 1");
  }
  const double parallel = g[0] + g[2];
  const double legs = g[1] + g[3];
  if (parallel < legs - tol) return TrapezoidBranch::SumBelow;
  if (parallel >= legs - tol && legs >= 2.0 * std::sqrt(g[0] * g[2]) - tol && g[0] < g[2]) {
    return TrapezoidBranch::SqrtBound;
  }
  return TrapezoidBranch::None;
}

bool trapezoid_membership(const std::array<double, 4>& gamma, bool allow_zero, double tol) {
  return trapezoid_branch(gamma, allow_zero, tol) != TrapezoidBranch::None;
}

}  // namespace conevol
