#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "conevol/linalg.hpp"
#include "conevol/tolerances.hpp"

namespace conevol {

/// The m outer unit normals u_1..u_m of an H-polytope, stored as the columns
/// of an n x m matrix. Construction validates unit length, pairwise
/// distinctness and that the columns positively span R^n.
class NormalMatrix {
 public:
  /// Throws Error{ZeroColumn, DuplicateDirection, NotPositivelySpanning,
  /// InvalidInput}.
  explicit NormalMatrix(Eigen::MatrixXd columns, const Tolerances& tol = {});

  int dim() const { return static_cast<int>(columns_.rows()); }
  int size() const { return static_cast<int>(columns_.cols()); }

  const Eigen::MatrixXd& matrix() const { return columns_; }
  Eigen::VectorXd column(int i) const { return columns_.col(i); }
  Eigen::MatrixXd columns(std::span<const int> idx) const {
    return select_columns(columns_, idx);
  }

  /// Restriction to a subset of columns. The subset must still positively
  /// span R^n.
  NormalMatrix restricted(std::span<const int> idx) const;

 private:
  Eigen::MatrixXd columns_;
};

struct CanonicalInput {
  NormalMatrix normals;
  Eigen::VectorXd b;
};

/// Normalises raw (possibly non-unit) normals, rescaling b so the point set
/// {x : raw^T x <= b} is unchanged.
CanonicalInput canonicalize(const Eigen::MatrixXd& raw_normals,
                            const Eigen::VectorXd& b, const Tolerances& tol = {});

/// P(U,b) = {x : U^T x <= b} with vertices, facet incidence, facet measures,
/// volume and centroid computed once at construction.
class HPolytope {
 public:
  const NormalMatrix& normals() const { return normals_; }
  const Eigen::VectorXd& rhs() const { return b_; }
  int dim() const { return normals_.dim(); }
  int size() const { return normals_.size(); }

  const std::vector<Eigen::VectorXd>& vertices() const { return vertices_; }
  /// Indices of the constraints tight at each vertex.
  const std::vector<IndexSet>& vertex_constraints() const { return vertex_tight_; }
  /// Vertex indices lying on {<u_i,x> = b_i}, for each i.
  const std::vector<IndexSet>& facet_incidence() const { return incidence_; }
  const Eigen::VectorXd& facet_measures() const { return facet_measures_; }
  double volume() const { return volume_; }
  /// Affine dimension of the polytope.
  int affine_dim() const { return affine_dim_; }
  /// Centroid of the n-dimensional body (vertex mean when volume is 0).
  const Eigen::VectorXd& centroid() const { return centroid_; }

  double incidence_tol() const { return incidence_tol_; }

  /// Indices i whose F_i has dimension n-1.
  IndexSet facets() const;

 private:
  friend HPolytope build_polytope(const NormalMatrix&, const Eigen::VectorXd&,
                                  const Tolerances&);
  HPolytope(NormalMatrix u, Eigen::VectorXd b) : normals_(std::move(u)), b_(std::move(b)) {}

  NormalMatrix normals_;
  Eigen::VectorXd b_;
  std::vector<Eigen::VectorXd> vertices_;
  std::vector<IndexSet> vertex_tight_;
  std::vector<IndexSet> incidence_;
  Eigen::VectorXd facet_measures_;
  double volume_ = 0.0;
  int affine_dim_ = 0;
  Eigen::VectorXd centroid_;
  double incidence_tol_ = 1e-9;

  friend double facet_volume(const HPolytope&, int);
};

/// Builds P(U,b). b must be componentwise >= -tol.incidence. Lower-dimensional
/// polytopes are valid and report volume 0.
HPolytope build_polytope(const NormalMatrix& u, const Eigen::VectorXd& b,
                         const Tolerances& tol = {});

/// vol_{n-1}(F_i(b)), computed by recursive pyramid decomposition in an
/// orthonormal chart of the facet hyperplane. 0 when dim F_i < n-1.
double facet_volume(const HPolytope& p, int i);

struct ConeVolumeVector {
  Eigen::VectorXd gamma;
  double total = 0.0;
};

/// gamma_i = b_i * phi_i / n.
ConeVolumeVector cone_volume_vector(const HPolytope& p);

/// Convenience: cone_volume_vector(build_polytope(u, b)).gamma
Eigen::VectorXd cone_volumes(const NormalMatrix& u, const Eigen::VectorXd& b,
                             const Tolerances& tol = {});

/// vol(P(U,b))^{-1/n} * b. Throws ZeroVolume.
Eigen::VectorXd normalize_to_unit_volume(const NormalMatrix& u, const Eigen::VectorXd& b,
                                         const Tolerances& tol = {});

/// Cone volumes of t + P via gamma_i + (phi_i / n) <u_i, t>.
/// Throws OriginLeavesBody when b + U^T t has a negative entry.
ConeVolumeVector translate_cone_volumes(const HPolytope& p, const Eigen::VectorXd& t);

struct ContinuityStep {
  double step = 0.0;
  double deviation = 0.0;
};

/// Deviations ||gamma(U, b + h*dir) - gamma(U, b)|| for h = 10^-1 .. 10^-steps.
std::vector<ContinuityStep> continuity_probe(const NormalMatrix& u, const Eigen::VectorXd& b,
                                             const Eigen::VectorXd& direction, int steps,
                                             const Tolerances& tol = {});

struct SparseWitness {
  IndexSet positive_subset;  ///< S with pos S = R^n, |S| <= 2n-1
  Eigen::VectorXd b;         ///< volume 1, a vertex at the origin
  ConeVolumeVector gamma;
  int support_size = 0;      ///< |gamma|_0
};

/// Volume-1 polytope with a vertex at the origin whose cone-volume vector has
/// fewer than n non-zero entries. std::nullopt when no positively spanning
/// subset of size <= 2n-1 exists (the parallelepiped case).
std::optional<SparseWitness> sparse_vertex_witness(const NormalMatrix& u,
                                                   const Tolerances& tol = {});

}  // namespace conevol
