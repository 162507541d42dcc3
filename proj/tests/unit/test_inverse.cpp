#include <cmath>
#include <random>

#include "conevol/fixtures.hpp"
#include "conevol/inverse.hpp"
#include "conevol/matroid.hpp"
#include "conevol/planar.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace conevol;

namespace {

Eigen::VectorXd pentagon_target() { return vec({1.0 / 3, 1.0 / 3, 1.0 / 9, 1.0 / 9, 1.0 / 9}); }

}  // namespace

TEST_CASE("pentagon has a single solution cluster") {
  const auto fam = solve_inverse(fixtures::pentagon(), pentagon_target());
  REQUIRE(fam.solutions.size() == 1);
  const auto& s = fam.solutions.front();
  CHECK(s.residual <= 1e-10);
  CHECK(s.rank_defect == 0);
  CHECK(fam.expected_defect == 0);
  // gamma_i = f_i(b) b_i / 2 from the edge-length forms.
  const Eigen::VectorXd f = stancu_lengths(order_ccw(fixtures::pentagon()), s.b);
  CHECK((f.cwiseProduct(s.b) / 2.0 - pentagon_target()).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("square family has rank defect 1") {
  const auto fam = solve_inverse(fixtures::square(), Eigen::VectorXd::Constant(4, 0.25));
  REQUIRE_FALSE(fam.solutions.empty());
  for (const auto& s : fam.solutions) {
    CHECK(s.rank_defect == 1);
    // Rectangles of area 1: b = (l/2, 1/(2l), l/2, 1/(2l)).
    CHECK(s.b(0) == doctest::Approx(s.b(2)));
    CHECK(s.b(1) == doctest::Approx(s.b(3)));
    CHECK(4 * s.b(0) * s.b(1) == doctest::Approx(1.0));
  }
  CHECK(fam.expected_defect == 1);
}

TEST_CASE("simplex solution is unique") {
  const NormalMatrix u = fixtures::simplex(2);
  const Eigen::VectorXd g = vec({0.5, 0.3, 0.2});
  const auto fam = solve_inverse(u, g);
  REQUIRE(fam.solutions.size() == 1);
  const HPolytope p = build_polytope(u, fam.solutions.front().b);
  CHECK(p.volume() == doctest::Approx(1.0));
  CHECK((2.0 * g.cwiseQuotient(p.facet_measures()) - fam.solutions.front().b).cwiseAbs().maxCoeff() <= 1e-9);
  CHECK(fam.solutions.front().rank_defect == 0);
}

TEST_CASE("zero target entries go to the support sub-problem") {
  const auto fam = solve_inverse(fixtures::pentagon(), vec({0.25, 0.25, 0.25, 0.25, 0.0}));
  CHECK(fam.support == IndexSet{0, 1, 2, 3});
  REQUIRE_FALSE(fam.solutions.empty());
  const auto& s = fam.solutions.front();
  CHECK(s.rank_defect >= 1);
  CHECK((cone_volumes(fixtures::pentagon(), s.b) - vec({0.25, 0.25, 0.25, 0.25, 0.0})).cwiseAbs().maxCoeff() <= 1e-9);

  CHECK(code_of([] { solve_inverse(fixtures::square(), vec({0.5, 0.5, 0, 0})); }) == ErrorCode::DegenerateSupport);
  CHECK(code_of([] { solve_inverse(fixtures::square(), vec({0.5, 0.5, 0.5, 0.5})); }) == ErrorCode::NotNormalized);
  CHECK(code_of([] { solve_inverse(fixtures::square(), vec({0.75, 0.5, -0.25, 0})); }) == ErrorCode::NotPositive);
}

TEST_CASE("unsolvable targets") {
  const Eigen::VectorXd bad = vec({1.0 / 9 + 1e-3, 2.0 / 9 - 1e-3, 4.0 / 9, 2.0 / 9});
  try {
    solve_inverse(fixtures::trapezoid(), bad);
    FAIL("expected NoConvergence");
  } catch (const NoConvergenceError& e) {
    CHECK(e.best_residual() > 1e-8);
    CHECK(e.best_iterate().size() == 4);
  }
  const auto scan = feasibility_scan(fixtures::square(), {vec({0.4, 0.25, 0.2, 0.15}), Eigen::VectorXd::Constant(4, 0.25)});
  CHECK_FALSE(scan[0].solved);
  CHECK_FALSE(scan[0].in_relint_pscc);
  CHECK(scan[1].solved);
  CHECK(scan[1].in_relint_pscc);
}

TEST_CASE("scaling family") {
  const NormalMatrix sq = fixtures::square();
  const Eigen::VectorXd half = Eigen::VectorXd::Constant(4, 0.5);
  CHECK(scaling_family(sq, half, 1.0) == half);
  const Eigen::VectorXd b2 = scaling_family(sq, half, 2.0);
  CHECK(b2.isApprox(vec({0.25, 1, 0.25, 1})));
  CHECK((cone_volumes(sq, b2) - Eigen::VectorXd::Constant(4, 0.25)).cwiseAbs().maxCoeff() <= 1e-9);
  CHECK(code_of([] { scaling_family(fixtures::pentagon(), Eigen::VectorXd::Ones(5), 2.0); }) ==
        ErrorCode::Irreducible);
}

TEST_CASE("scaling family closure on reducible matrices") {
  Eigen::MatrixXd a(3, 3);
  a << 1, 0.4, 0,
       -0.3, 1, 0.2,
       0.1, 0, 1;
  // Square plus a segment pair: blocks of rank 2 and rank 1.
  Eigen::MatrixXd mixed(3, 6);
  mixed << 0, 0, 1, 0, 0, -1,
           1, 1, 0, 0, -1, 0,
           1, -1, 0, -1, 0, 0;
  for (const auto& u : {fixtures::square(), fixtures::cube(3), fixtures::parallelepiped(a),
                        canonicalize(mixed, Eigen::VectorXd::Ones(6)).normals}) {
    const Eigen::VectorXd b = normalize_to_unit_volume(u, Eigen::VectorXd::Ones(u.size()));
    const Eigen::VectorXd g = cone_volumes(u, b);
    const int d = static_cast<int>(irreducible_partition(u).size());
    for (int k = 0; k < 20; ++k) {
      const double lambda = 0.5 * std::pow(4.0, k / 19.0);
      for (int block = 0; block < d; ++block)
        CHECK(inverse_residual(u, scaling_family(u, b, lambda, block), g).norm() <= 1e-9);
    }
    CHECK(dimension_probe(u, b) == d - 1);
  }
}

TEST_CASE("dimension probe") {
  CHECK(dimension_probe(fixtures::square(), Eigen::VectorXd::Constant(4, 0.5)) == 1);
  CHECK(dimension_probe(fixtures::cube(3), Eigen::VectorXd::Constant(6, 0.5)) == 2);
  const auto fam = solve_inverse(fixtures::pentagon(), pentagon_target());
  CHECK(dimension_probe(fixtures::pentagon(), fam.solutions.front().b) == 0);
  CHECK(code_of([] { dimension_probe(fixtures::trapezoid(), vec({1, 0.2, 1, 0.2})); }) ==
        ErrorCode::OnTypeConeBoundary);
}

TEST_CASE("round trip from sampled polytopes") {
  std::mt19937_64 rng(53);
  const std::vector<NormalMatrix> mats = {fixtures::pentagon(), fixtures::trapezoid(), fixtures::square(),
                                          fixtures::simplex(3), fixtures::general_position(3, 5),
                                          fixtures::cube(3), fixtures::random_normals(2, 6, rng)};
  SolveOptions opts;
  opts.stop_at_first = true;
  int done = 0;
  while (done < 300) {
    const NormalMatrix& u = mats[done % mats.size()];
    const Eigen::VectorXd b = oracle::uniform_vector(u.size(), 0.3, 1.0, rng);
    const HPolytope p = build_polytope(u, b);
    if (static_cast<int>(p.facets().size()) != u.size()) continue;
    ++done;
    const Eigen::VectorXd g = cone_volume_vector(p).gamma / p.volume();
    const auto fam = solve_inverse(u, g, opts);
    REQUIRE_FALSE(fam.solutions.empty());
    const auto& s = fam.solutions.front();
    CHECK((cone_volumes(u, s.b) - g).cwiseAbs().maxCoeff() <= 1e-9);
    CHECK(s.rank_defect >= fam.expected_defect);
  }
}

TEST_CASE("solver is deterministic") {
  SolveOptions opts;
  opts.seed = 99;
  const auto a = solve_inverse(fixtures::square(), vec({0.3, 0.2, 0.2, 0.3}), opts);
  const auto b = solve_inverse(fixtures::square(), vec({0.3, 0.2, 0.2, 0.3}), opts);
  REQUIRE(a.solutions.size() == b.solutions.size());
  for (size_t k = 0; k < a.solutions.size(); ++k) CHECK(a.solutions[k].b == b.solutions[k].b);
}

TEST_CASE("closed-form rejections are not solvable") {
  std::mt19937_64 rng(61);
  SolveOptions opts;
  opts.residual_tol = 1e-8;
  int rejected = 0, solved = 0;
  while (rejected < 40) {
    Eigen::VectorXd g = oracle::dirichlet(4, rng);
    const std::array<double, 4> lab{g(0), g(1), g(2), g(3)};
    if (trapezoid_membership(lab)) continue;
    ++rejected;
    solved += feasibility_scan(fixtures::trapezoid(), {g}, opts).front().solved;
  }
  MESSAGE(solved << " of " << rejected << " closed-form rejections solved");
  CHECK(solved == 0);
}
