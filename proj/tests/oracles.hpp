#pragma once

// Reference computations that share no code with the library.

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

inline std::vector<Eigen::Vector2d> polygon_vertices(const Eigen::MatrixXd& u, const Eigen::VectorXd& b,
                                                     double tol = 1e-9) {
  std::vector<Eigen::Vector2d> pts;
  const int m = static_cast<int>(u.cols());
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      Eigen::Matrix2d a;
      a.row(0) = u.col(i).transpose();
      a.row(1) = u.col(j).transpose();
      if (std::abs(a.determinant()) < 1e-12) continue;
      const Eigen::Vector2d x = a.inverse() * Eigen::Vector2d(b(i), b(j));
      if (((u.transpose() * x - b).array() > tol).any()) continue;
      bool dup = false;
      for (const auto& p : pts) dup = dup || (p - x).norm() < 1e-9;
      if (!dup) pts.push_back(x);
    }
  }
  Eigen::Vector2d c = Eigen::Vector2d::Zero();
  for (const auto& p : pts) c += p;
  if (!pts.empty()) c /= static_cast<double>(pts.size());
  std::sort(pts.begin(), pts.end(), [&](const Eigen::Vector2d& p, const Eigen::Vector2d& q) {
    return std::atan2(p.y() - c.y(), p.x() - c.x()) < std::atan2(q.y() - c.y(), q.x() - c.x());
  });
  return pts;
}

inline double shoelace(const std::vector<Eigen::Vector2d>& pts) {
  double s = 0.0;
  for (size_t k = 0; k < pts.size(); ++k) {
    const auto& p = pts[k];
    const auto& q = pts[(k + 1) % pts.size()];
    s += p.x() * q.y() - q.x() * p.y();
  }
  return std::abs(s) / 2.0;
}

/// Length of the edge on {<u_i,x> = b_i}: largest distance between vertices on that line.
inline Eigen::VectorXd polygon_edge_lengths(const Eigen::MatrixXd& u, const Eigen::VectorXd& b,
                                            const std::vector<Eigen::Vector2d>& pts, double tol = 1e-9) {
  Eigen::VectorXd len = Eigen::VectorXd::Zero(u.cols());
  for (int i = 0; i < u.cols(); ++i) {
    for (const auto& p : pts)
      for (const auto& q : pts)
        if (std::abs(u.col(i).dot(p) - b(i)) < tol && std::abs(u.col(i).dot(q) - b(i)) < tol)
          len(i) = std::max(len(i), (p - q).norm());
  }
  return len;
}

/// Vertices of {U^T x <= b} in R^3 by brute force over triples.
inline std::vector<Eigen::Vector3d> polytope3_vertices(const Eigen::MatrixXd& u, const Eigen::VectorXd& b,
                                                       double tol = 1e-9) {
  std::vector<Eigen::Vector3d> pts;
  const int m = static_cast<int>(u.cols());
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = j + 1; k < m; ++k) {
        Eigen::Matrix3d a;
        a.row(0) = u.col(i).transpose();
        a.row(1) = u.col(j).transpose();
        a.row(2) = u.col(k).transpose();
        if (std::abs(a.determinant()) < 1e-12) continue;
        const Eigen::Vector3d x = a.inverse() * Eigen::Vector3d(b(i), b(j), b(k));
        if (((u.transpose() * x - b).array() > tol).any()) continue;
        bool dup = false;
        for (const auto& p : pts) dup = dup || (p - x).norm() < 1e-9;
        if (!dup) pts.push_back(x);
      }
  return pts;
}

/// Volume of a 3-polytope: fan-triangulate each facet around its vertex mean
/// and sum signed-free tetrahedra against the global vertex mean.
inline double polytope3_volume(const Eigen::MatrixXd& u, const Eigen::VectorXd& b, double tol = 1e-9) {
  const auto pts = polytope3_vertices(u, b, tol);
  if (pts.size() < 4) return 0.0;
  Eigen::Vector3d c = Eigen::Vector3d::Zero();
  for (const auto& p : pts) c += p;
  c /= static_cast<double>(pts.size());
  double vol = 0.0;
  for (int i = 0; i < u.cols(); ++i) {
    std::vector<Eigen::Vector3d> face;
    for (const auto& p : pts)
      if (std::abs(u.col(i).dot(p) - b(i)) < tol) face.push_back(p);
    if (face.size() < 3) continue;
    Eigen::Vector3d fc = Eigen::Vector3d::Zero();
    for (const auto& p : face) fc += p;
    fc /= static_cast<double>(face.size());
    const Eigen::Vector3d n = u.col(i);
    Eigen::Vector3d e1 = (face[0] - fc).normalized();
    const Eigen::Vector3d e2 = n.cross(e1);
    std::sort(face.begin(), face.end(), [&](const Eigen::Vector3d& p, const Eigen::Vector3d& q) {
      return std::atan2((p - fc).dot(e2), (p - fc).dot(e1)) < std::atan2((q - fc).dot(e2), (q - fc).dot(e1));
    });
    for (size_t k = 0; k < face.size(); ++k) {
      const Eigen::Vector3d& p = face[k];
      const Eigen::Vector3d& q = face[(k + 1) % face.size()];
      Eigen::Matrix3d t;
      t.col(0) = fc - c;
      t.col(1) = p - c;
      t.col(2) = q - c;
      vol += std::abs(t.determinant()) / 6.0;
    }
  }
  return vol;
}

/// Characteristic vectors of all k-subsets of {0..m-1}.
inline std::set<std::vector<int>> k_subsets(int m, int k) {
  std::set<std::vector<int>> out;
  for (int mask = 0; mask < (1 << m); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    std::vector<int> chi(m);
    for (int i = 0; i < m; ++i) chi[i] = (mask >> i) & 1;
    out.insert(chi);
  }
  return out;
}

inline Eigen::VectorXd uniform_vector(int m, double lo, double hi, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(lo, hi);
  Eigen::VectorXd v(m);
  for (int i = 0; i < m; ++i) v(i) = d(rng);
  return v;
}

/// Uniform point of the open probability simplex.
inline Eigen::VectorXd dirichlet(int m, std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  Eigen::VectorXd v(m);
  for (int i = 0; i < m; ++i) v(i) = e(rng);
  return v / v.sum();
}

}  // namespace oracle
