#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace conevol {

enum class ErrorCode {
  InvalidInput,
  ZeroColumn,
  DuplicateDirection,
  NotPositivelySpanning,
  ZeroVolume,
  OriginLeavesBody,
  NotNormalized,
  NotPositive,
  NotReducible,
  NotPlanar,
  OutsideTypeCone,
  NonSimpleType,
  InterpolationIllConditioned,
  NoConvergence,
  Irreducible,
  OnTypeConeBoundary,
  DegenerateSupport,
  Internal,
};

/// Module that owns an error code; used to build "module.Code" identifiers.
std::string_view error_module(ErrorCode code);
std::string_view error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// e.g. "polytope.DuplicateDirection"
  std::string qualified_code() const;

 private:
  ErrorCode code_;
};

/// Raised by the inverse solver when no multistart reaches the residual
/// tolerance. Carries the best iterate seen.
class NoConvergenceError : public Error {
 public:
  NoConvergenceError(const std::string& what, double best_residual,
                     Eigen::VectorXd best_iterate)
      : Error(ErrorCode::NoConvergence, what),
        best_residual_(best_residual),
        best_iterate_(std::move(best_iterate)) {}

  double best_residual() const noexcept { return best_residual_; }
  const Eigen::VectorXd& best_iterate() const noexcept { return best_iterate_; }

 private:
  double best_residual_;
  Eigen::VectorXd best_iterate_;
};

}  // namespace conevol
