#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "conevol/polytope.hpp"

namespace conevol {

struct SolveOptions {
  int starts = 20;
  std::uint64_t seed = 0;
  double residual_tol = 1e-10;
  int max_iterations = 100;
  /// Run starts in order and return after the first converged one.
  bool stop_at_first = false;
  /// Random trials used to find full-facet type-cone representatives.
  int type_trials = 64;
  Tolerances tol{};
};

struct Solution {
  Eigen::VectorXd b;
  double residual = 0.0;
  /// m' minus the numeric rank of the residual Jacobian (m' = support size).
  int rank_defect = 0;
  /// True when the Jacobian was taken on a type-cone wall.
  bool on_boundary = false;
};

struct SolutionFamily {
  std::vector<Solution> solutions;  ///< sorted by residual, then b
  IndexSet support;                 ///< columns with target_i > 0
  int expected_defect = 0;          ///< d - 1 of the support's matroid
  int starts_run = 0;
  int converged_starts = 0;
};

/// gamma(U,b) - target.
Eigen::VectorXd inverse_residual(const NormalMatrix& u, const Eigen::VectorXd& b,
                                 const Eigen::VectorXd& target, const Tolerances& tol = {});

/// d gamma / d b: exact from edge-length forms in the plane when all m edges
/// are present, central differences otherwise.
Eigen::MatrixXd cone_volume_jacobian(const NormalMatrix& u, const Eigen::VectorXd& b,
                                     const Tolerances& tol = {});

/// Multistart damped Newton for gamma(U,b) = target. Zero target entries are
/// handled on the support sub-problem; dropped b_j are set to the support
/// value of the solved polytope. Throws NoConvergenceError, NotNormalized,
/// NotPositive (negative entries), DegenerateSupport.
SolutionFamily solve_inverse(const NormalMatrix& u, const Eigen::VectorXd& target,
                             const SolveOptions& opts = {});

/// b with the coordinates of partition block `block` scaled by lambda and
/// the rest by lambda^{-r/(n-r)}, r the block rank. block = -1 picks the
/// last block. Throws Irreducible when d = 1.
Eigen::VectorXd scaling_family(const NormalMatrix& u, const Eigen::VectorXd& b, double lambda,
                               int block = -1);

/// m minus the numeric rank (cutoff 1e-7 sigma_max) of the Jacobian at b.
/// Throws OnTypeConeBoundary when P(U,b) is not simple or misses a facet.
int dimension_probe(const NormalMatrix& u, const Eigen::VectorXd& b, const Tolerances& tol = {});

struct ScanEntry {
  Eigen::VectorXd gamma;
  bool in_relint_pscc = false;
  bool solved = false;
  Eigen::VectorXd b;      ///< solution or best iterate
  double residual = 0.0;  ///< best residual
};

/// Attempts each gamma (stop-at-first mode) and records the outcome.
std::vector<ScanEntry> feasibility_scan(const NormalMatrix& u,
                                        const std::vector<Eigen::VectorXd>& gammas,
                                        const SolveOptions& opts = {});

}  // namespace conevol
