#include "conevol/fixtures.hpp"

#include <cmath>

#include "conevol/errors.hpp"

namespace conevol::fixtures {

NormalMatrix square() { return cube(2); }

NormalMatrix cube(int n) {
  return parallelepiped(Eigen::MatrixXd::Identity(n, n));
}

NormalMatrix parallelepiped(const Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  Eigen::MatrixXd u(n, 2 * n);
  u.leftCols(n) = a;
  u.rightCols(n) = -a;
  for (Eigen::Index j = 0; j < 2 * n; ++j) u.col(j).normalize();
  return NormalMatrix(u);
}

NormalMatrix trapezoid() {
  const double s = std::sqrt(0.5);
  Eigen::MatrixXd u(2, 4);
  u << 0, s, 0, -s,
       1, s, -1, s;
  return NormalMatrix(u);
}

NormalMatrix trapezoid(double a2, double a4) {
  if (!(a4 > 0.0 && a2 < 0.0)) throw Error(ErrorCode::InvalidInput, "need a4 > 0 > a2");
  Eigen::MatrixXd u(2, 4);
  u << 0, -1, 0, 1,
       1, -a2, -1, a4;
  u.col(1).normalize();
  u.col(3).normalize();
  return NormalMatrix(u);
}

NormalMatrix pentagon() {
  const double s = std::sqrt(0.5);
  Eigen::MatrixXd u(2, 5);
  u << 1, 0, -1, 0, s,
       0, -1, 0, 1, s;
  return NormalMatrix(u);
}

NormalMatrix triangle() {
  const double s = std::sqrt(0.5);
  Eigen::MatrixXd u(2, 3);
  u << -1, 0, s,
       0, -1, s;
  return NormalMatrix(u);
}

NormalMatrix simplex(int n) {
  Eigen::MatrixXd u(n, n + 1);
  u.leftCols(n).setIdentity();
  u.col(n).setConstant(-1.0 / std::sqrt(static_cast<double>(n)));
  return NormalMatrix(u);
}

NormalMatrix general_position(int n, int m) {
  if (n == 2 && m == 4) {
    const double angles[] = {0.0, 1.1, 2.6, 4.4};
    Eigen::MatrixXd u(2, 4);
    for (int j = 0; j < 4; ++j) u.col(j) << std::cos(angles[j]), std::sin(angles[j]);
    return NormalMatrix(u);
  }
  if (n == 3 && m == 5) {
    Eigen::MatrixXd u(3, 5);
    u << 1, 0, 0, -1, 2,
         0, 1, 0, -1, -1,
         0, 0, 1, -1, 0.5;
    for (int j = 0; j < 5; ++j) u.col(j).normalize();
    return NormalMatrix(u);
  }
  throw Error(ErrorCode::InvalidInput, "no general-position fixture for this (n, m)");
}

NormalMatrix random_normals(int n, int m, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  for (;;) {
    Eigen::MatrixXd u(n, m);
    for (int j = 0; j < m; ++j) {
      for (int i = 0; i < n; ++i) u(i, j) = normal(rng);
      u.col(j).normalize();
    }
    try {
      return NormalMatrix(u);
    } catch (const Error&) {
    }
  }
}

}  // namespace conevol::fixtures
