#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "conevol/linalg.hpp"
#include "conevol/polytope.hpp"

namespace conevol {

/// Linear matroid on a subset (the ground set) of the columns of U.
/// Ranks are numeric: singular values above 1e-9 * sigma_max.
class LinearMatroid {
 public:
  explicit LinearMatroid(const NormalMatrix& u);
  LinearMatroid(const NormalMatrix& u, IndexSet ground);

  const IndexSet& ground() const { return ground_; }
  int rank() const { return rank_of(ground_); }
  int rank_of(const IndexSet& subset) const;

  /// All columns of the ground set lying in lin(subset).
  IndexSet closure(const IndexSet& subset) const;

 private:
  Eigen::MatrixXd u_;
  IndexSet ground_;
  mutable std::unordered_map<std::uint64_t, int> cache_;
};

struct Flat {
  IndexSet members;
  int rank = 0;
  bool operator==(const Flat&) const = default;
};

/// n-subsets S with |det U_S| > 1e-9, lexicographic.
std::vector<IndexSet> enumerate_bases(const NormalMatrix& u);
/// L(U): closed column sets with 1 <= rank <= n-1, sorted by members.
std::vector<Flat> enumerate_flats(const NormalMatrix& u);
/// F(U): flats S with lin S and lin(U \ S) complementary.
std::vector<Flat> enumerate_separators(const NormalMatrix& u);
/// The unique partition into irreducible blocks, sorted by smallest index.
std::vector<IndexSet> irreducible_partition(const NormalMatrix& u);

/// Flats / separators of the matroid restricted to `ground`.
std::vector<Flat> flats_of(const LinearMatroid& mat);
std::vector<Flat> separators_of(const LinearMatroid& mat);
/// Bases of lin(ground) drawn from ground.
std::vector<IndexSet> bases_of(const LinearMatroid& mat);

struct MatroidData {
  std::vector<IndexSet> bases;
  std::vector<Flat> flats;
  std::vector<Flat> separators;
  std::vector<IndexSet> partition;
  int d() const { return static_cast<int>(partition.size()); }
};

MatroidData analyze_matroid(const NormalMatrix& u);

// ---------------------------------------------------------------------------
// Subspace concentration polytope P_scc(U) = (1/n) * basis matroid polytope.

/// A row sum_{i in support} x_i (<= or =) rank / n.
struct SccConstraint {
  IndexSet support;
  int rank = 0;
  bool equality = false;
};

class SccPolytope {
 public:
  int n = 0;
  int m = 0;
  /// Characteristic vectors chi_U(B); the vertex is chi / n.
  std::vector<std::vector<int>> vertex_indicators;
  /// Sum x_i = 1, separator equalities, then flat inequalities. x >= 0 is
  /// implicit.
  std::vector<SccConstraint> constraints;
  int dim = 0;

  std::vector<Eigen::VectorXd> vertices() const;
  /// Dense form: a_eq x = b_eq, a_le x <= b_le (without x >= 0).
  void dense(Eigen::MatrixXd& a_eq, Eigen::VectorXd& b_eq, Eigen::MatrixXd& a_le,
             Eigen::VectorXd& b_le) const;
  /// Exact integer check of chi against every row.
  bool indicator_satisfies(const std::vector<int>& chi) const;
  /// Floating-point membership with tolerance.
  bool contains(const Eigen::VectorXd& x, double tol = 1e-9) const;
};

SccPolytope build_pscc(const NormalMatrix& u);
SccPolytope build_pscc(const NormalMatrix& u, const MatroidData& data);

/// Vertices of the H-description found by LP with `objectives` random cost
/// vectors (deterministic under seed). Every returned point is a vertex.
std::vector<Eigen::VectorXd> pscc_vertices_by_lp(const SccPolytope& p, int objectives,
                                                 std::uint64_t seed);

/// All vertices of the H-description by double description over the
/// homogenised cone.
std::vector<Eigen::VectorXd> pscc_vertices_exhaustive(const SccPolytope& p);

/// Vertices x, y of the H-description are adjacent when the constraints tight
/// at both have rank m - 1.
bool pscc_adjacent(const SccPolytope& p, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                   double tol = 1e-9);

/// Vertex-set comparison of P_scc(U) with the direct sum of its scaled
/// irreducible blocks. Throws NotReducible when d = 1.
bool pscc_direct_sum_check(const NormalMatrix& u);

// ---------------------------------------------------------------------------
// Subspace concentration condition.

enum class SccVerdictKind { Satisfies, ViolatesInequality, ViolatesEqualityCase };

struct SccViolation {
  SccVerdictKind kind = SccVerdictKind::ViolatesInequality;
  IndexSet flat;
  double mass = 0.0;   ///< sum of gamma over the flat
  double bound = 0.0;  ///< rank / n
  bool operator==(const SccViolation& o) const { return kind == o.kind && flat == o.flat; }
};

struct SccVerdict {
  SccVerdictKind kind = SccVerdictKind::Satisfies;
  IndexSet flat;                        ///< first violation, if any
  std::vector<SccViolation> violations;  ///< sorted by flat
  bool satisfies() const { return kind == SccVerdictKind::Satisfies; }
};

std::string to_string(SccVerdictKind kind);

/// Relative-interior test against the H-description. Requires gamma > 0 and
/// sum gamma = 1 (Error NotPositive / NotNormalized).
SccVerdict scc_check(const NormalMatrix& u, const Eigen::VectorXd& gamma, double tol = 1e-9);
SccVerdict scc_check(const NormalMatrix& u, const MatroidData& data,
                     const Eigen::VectorXd& gamma, double tol = 1e-9);

/// Independent route: enumerates every subspace spanned by a column subset
/// and applies the subspace concentration inequalities and the
/// complementary-subspace equality condition directly.
SccVerdict brute_force_scc(const NormalMatrix& u, const Eigen::VectorXd& gamma,
                           double tol = 1e-9);

}  // namespace conevol
