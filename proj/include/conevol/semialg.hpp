#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "conevol/polynomial.hpp"
#include "conevol/polytope.hpp"

namespace conevol {

/// Combinatorial type of P(U,b): the sorted tight-constraint sets of its
/// vertices, hashed to a short hex id.
struct TypeSignature {
  std::string id;
  bool non_simple = false;           ///< some vertex lies on more than n hyperplanes
  std::vector<IndexSet> vertex_sets;  ///< sorted
  IndexSet facets;                    ///< columns with phi_i > 0
};

/// Throws ZeroVolume when vol P(U,b) = 0.
TypeSignature detect_type(const NormalMatrix& u, const Eigen::VectorXd& b,
                          const Tolerances& tol = {});
TypeSignature detect_type(const HPolytope& p);

/// One inequality coeffs . b >= 0 of a type cone. It states that the vertex
/// defined by `vertex` stays on the feasible side of constraint `constraint`.
struct ConeRow {
  Eigen::VectorXd coeffs;  ///< unit Euclidean norm
  IndexSet vertex;
  int constraint = 0;
};

/// Rows valid on the closure of the type cone containing b, normalized,
/// deduplicated and sorted by coefficient vector. Throws NonSimpleType.
std::vector<ConeRow> local_type_cone(const NormalMatrix& u, const Eigen::VectorXd& b,
                                     const Tolerances& tol = {});

struct SemialgSystem {
  int n = 0;
  int m = 0;
  std::string type_id;
  Eigen::VectorXd sample;
  Eigen::VectorXd sample_facet_measures;
  double sample_volume = 0.0;
  std::vector<ConeRow> cone_rows;
  Polynomial volume;              ///< v_k(b), degree <= n
  std::vector<Polynomial> facets;  ///< f_{k,i}(b), degree <= n-1
  bool symbolic = false;          ///< exact planar construction vs interpolation
  double interpolation_residual = 0.0;

  bool full_facet() const;
  /// gamma_i - f_{k,i}(b) b_i / n over the variables (b_1..b_m, g_1..g_m).
  Polynomial coupling(int i) const;
  /// Cone volumes predicted by the system at b.
  Eigen::VectorXd gamma_at(const Eigen::VectorXd& b) const;
};

struct BuildOptions {
  std::uint64_t seed = 0;
  /// Held-out interpolation residual limit, relative to max(1, |value|).
  double residual_limit = 1e-7;
  Tolerances tol{};
};

/// Throws NonSimpleType, InterpolationIllConditioned, ZeroVolume.
SemialgSystem build_system(const NormalMatrix& u, const Eigen::VectorXd& b,
                           const BuildOptions& opts = {});

struct TypeSample {
  std::string type_id;
  Eigen::VectorXd b;       ///< interior representative
  bool full_facet = false;
  int hits = 0;            ///< trials that landed in this type
  int first_trial = 0;
};

/// Random right-hand sides, perturbed off type-cone walls, grouped by type.
/// Deterministic under seed; sorted by type id.
std::vector<TypeSample> sample_type_cones(const NormalMatrix& u, int trials, std::uint64_t seed,
                                          const Tolerances& tol = {});

std::vector<TypeSample> filter_full_facet_types(const std::vector<TypeSample>& samples);
std::vector<SemialgSystem> filter_full_facet_types(const std::vector<SemialgSystem>& systems);

/// Plain-text SMT-LIB script asserting the system, with b1..bm, g1..gm free.
std::string to_smtlib(const SemialgSystem& s);

/// Variable names b1..bm (and g1..gm when with_gamma).
std::vector<std::string> variable_names(int m, bool with_gamma);

}  // namespace conevol
