#pragma once

namespace conevol {

/// Numerical tolerances shared by all modules. Defaults match the CLI.
struct Tolerances {
  /// Incidence / feasibility of points against hyperplanes.
  double incidence = 1e-9;
  /// Unit-norm check on normals.
  double normalization = 1e-12;
  /// Residual norm accepted by the inverse solver.
  double residual = 1e-10;
};

}  // namespace conevol
