#include <cmath>
#include <random>
#include <set>

#include "conevol/fixtures.hpp"
#include "conevol/matroid.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace conevol;

namespace {

std::set<IndexSet> members(const std::vector<Flat>& fs) {
  std::set<IndexSet> out;
  for (const auto& f : fs) out.insert(f.members);
  return out;
}

std::set<std::vector<int>> indicator_set(const SccPolytope& p) {
  return {p.vertex_indicators.begin(), p.vertex_indicators.end()};
}

// Vertices as n * x rounded to integers; entries of P_scc vertices are multiples of 1/n.
std::set<std::vector<int>> scaled_points(const std::vector<Eigen::VectorXd>& pts, int n) {
  std::set<std::vector<int>> out;
  for (const auto& x : pts) {
    std::vector<int> chi(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      chi[i] = static_cast<int>(std::lround(n * x(i)));
      CHECK(std::abs(n * x(i) - chi[i]) <= 1e-9);
    }
    out.insert(chi);
  }
  return out;
}

std::vector<NormalMatrix> test_matrices() {
  std::mt19937_64 rng(31);
  Eigen::MatrixXd a(3, 3);
  a << 1, 0.3, 0,
       0, 1, 0.5,
       0.2, 0, 1;
  return {fixtures::square(),     fixtures::trapezoid(),           fixtures::pentagon(),
          fixtures::triangle(),   fixtures::simplex(3),            fixtures::cube(3),
          fixtures::parallelepiped(a), fixtures::general_position(2, 4),
          fixtures::general_position(3, 5), fixtures::trapezoid(-0.5, 0.25),
          fixtures::random_normals(3, 6, rng), fixtures::random_normals(4, 7, rng)};
}

}  // namespace

TEST_CASE("bases") {
  const auto trap = enumerate_bases(fixtures::trapezoid());
  CHECK(trap == std::vector<IndexSet>{{0, 1}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  CHECK(enumerate_bases(fixtures::general_position(2, 4)).size() == 6);
  CHECK(enumerate_bases(fixtures::square()) == std::vector<IndexSet>{{0, 1}, {0, 3}, {1, 2}, {2, 3}});
}

TEST_CASE("flats") {
  CHECK(members(enumerate_flats(fixtures::trapezoid())) == std::set<IndexSet>{{0, 2}, {1}, {3}});
  CHECK(members(enumerate_flats(fixtures::square())) == std::set<IndexSet>{{0, 2}, {1, 3}});
  for (const auto& f : enumerate_flats(fixtures::general_position(3, 5))) CHECK(f.rank == static_cast<int>(f.members.size()));
  CHECK(members(enumerate_flats(fixtures::general_position(2, 4))) == std::set<IndexSet>{{0}, {1}, {2}, {3}});
}

TEST_CASE("separators") {
  CHECK(enumerate_separators(fixtures::trapezoid()).empty());
  CHECK(enumerate_separators(fixtures::general_position(3, 5)).empty());
  CHECK(members(enumerate_separators(fixtures::cube(3))) == members(enumerate_flats(fixtures::cube(3))));
}

TEST_CASE("irreducible partitions") {
  CHECK(irreducible_partition(fixtures::cube(3)) == std::vector<IndexSet>{{0, 3}, {1, 4}, {2, 5}});
  CHECK(irreducible_partition(fixtures::trapezoid()).size() == 1);
  CHECK(irreducible_partition(fixtures::pentagon()).size() == 1);
}

TEST_CASE("P_scc of general position matrices is the scaled hypersimplex") {
  for (auto [n, m] : {std::pair{2, 4}, std::pair{3, 5}}) {
    const SccPolytope p = build_pscc(fixtures::general_position(n, m));
    CHECK(indicator_set(p) == oracle::k_subsets(m, n));
    CHECK(p.dim == m - 1);
  }
}

TEST_CASE("P_scc of a parallelepiped is an n-cube") {
  for (int n : {2, 3}) {
    const SccPolytope p = build_pscc(fixtures::cube(n));
    std::set<std::vector<int>> cube;
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<int> chi(2 * n, 0);
      for (int j = 0; j < n; ++j) chi[(mask >> j) & 1 ? j : n + j] = 1;
      cube.insert(chi);
    }
    CHECK(indicator_set(p) == cube);
    CHECK(p.dim == n);
    // Adjacent cube vertices differ in one block: distance sqrt(2)/n.
    const auto v = p.vertices();
    double shortest = 1e300;
    for (size_t i = 0; i < v.size(); ++i)
      for (size_t j = i + 1; j < v.size(); ++j) shortest = std::min(shortest, (v[i] - v[j]).norm());
    CHECK(shortest * n == doctest::Approx(std::sqrt(2.0)));
  }
}

TEST_CASE("P_scc of the trapezoid is a pyramid over a square") {
  const SccPolytope p = build_pscc(fixtures::trapezoid());
  CHECK(indicator_set(p) == std::set<std::vector<int>>{
                                {1, 1, 0, 0}, {1, 0, 0, 1}, {0, 1, 1, 0}, {0, 1, 0, 1}, {0, 0, 1, 1}});
  CHECK(p.dim == 3);
}

TEST_CASE("vertex and facet descriptions agree") {
  for (const auto& u : test_matrices()) {
    if (u.size() > 8) continue;
    const SccPolytope p = build_pscc(u);
    CHECK(scaled_points(pscc_vertices_exhaustive(p), u.dim()) == indicator_set(p));
    CHECK(scaled_points(pscc_vertices_by_lp(p, 64, 3), u.dim()).size() <= p.vertex_indicators.size());
    for (const auto& chi : p.vertex_indicators) CHECK(p.indicator_satisfies(chi));
  }
}

TEST_CASE("dim P_scc = m - d") {
  for (const auto& u : test_matrices()) {
    const SccPolytope p = build_pscc(u);
    Eigen::MatrixXd pts(u.size(), p.vertex_indicators.size());
    const auto v = p.vertices();
    for (size_t k = 0; k < v.size(); ++k) pts.col(k) = v[k];
    const int d = static_cast<int>(irreducible_partition(u).size());
    CHECK(affine_dimension(pts) == u.size() - d);
    CHECK(p.dim == u.size() - d);
  }
}

TEST_CASE("edges of P_scc are parallel to e_i - e_j") {
  for (const auto& u : test_matrices()) {
    if (u.size() > 6) continue;
    const SccPolytope p = build_pscc(u);
    const auto v = p.vertices();
    int edges = 0;
    for (size_t i = 0; i < v.size(); ++i) {
      for (size_t j = i + 1; j < v.size(); ++j) {
        if (!pscc_adjacent(p, v[i], v[j])) continue;
        ++edges;
        const Eigen::VectorXd diff = (v[i] - v[j]) * u.dim();
        int plus = 0, minus = 0;
        for (Eigen::Index k = 0; k < diff.size(); ++k) {
          if (std::abs(diff(k) - 1) <= 1e-9) ++plus;
          else if (std::abs(diff(k) + 1) <= 1e-9) ++minus;
          else CHECK(std::abs(diff(k)) <= 1e-9);
        }
        CHECK(plus == 1);
        CHECK(minus == 1);
      }
    }
    CHECK(edges >= static_cast<int>(v.size()) - 1);
  }
}

TEST_CASE("basis inequality |S cap B| <= rank S") {
  for (const auto& u : test_matrices()) {
    const auto data = analyze_matroid(u);
    for (const auto& b : data.bases) {
      for (const auto& f : data.flats) {
        int common = 0;
        for (int i : b) common += std::binary_search(f.members.begin(), f.members.end(), i);
        CHECK(common <= f.rank);
      }
    }
  }
}

TEST_CASE("SCC verdicts") {
  const NormalMatrix sq = fixtures::square();
  CHECK(scc_check(sq, Eigen::VectorXd::Constant(4, 0.25)).satisfies());
  const auto eq = scc_check(sq, vec({0.5, 0.25, 0.125, 0.125}));
  CHECK(eq.kind == SccVerdictKind::ViolatesEqualityCase);
  CHECK(eq.flat == IndexSet{0, 2});
  CHECK(brute_force_scc(sq, vec({0.5, 0.25, 0.125, 0.125})).kind == SccVerdictKind::ViolatesEqualityCase);

  const Eigen::VectorXd g = vec({1.0 / 9, 2.0 / 9, 4.0 / 9, 2.0 / 9});
  const auto trap = scc_check(fixtures::trapezoid(), g);
  CHECK(trap.kind == SccVerdictKind::ViolatesInequality);
  CHECK(trap.flat == IndexSet{0, 2});
  CHECK(brute_force_scc(fixtures::trapezoid(), g).violations == trap.violations);

  const NormalMatrix s = fixtures::simplex(3);
  CHECK(brute_force_scc(s, vec({0.3, 0.25, 0.25, 0.2})).satisfies());
  CHECK(scc_check(s, vec({0.3, 0.25, 0.25, 0.2})).satisfies());

  const NormalMatrix c = fixtures::cube(2);
  const Eigen::VectorXd off = vec({0.25 + 1e-3, 0.25, 0.25, 0.25 - 1e-3});
  CHECK_FALSE(scc_check(c, off).satisfies());
  CHECK_FALSE(brute_force_scc(c, off).satisfies());

  CHECK(code_of([&] { scc_check(sq, vec({0.5, 0.5, 0.5, 0.5})); }) == ErrorCode::NotNormalized);
  CHECK(code_of([&] { scc_check(sq, vec({0.5, 0.5, 0.0, 0.0})); }) == ErrorCode::NotPositive);
}

TEST_CASE("scc_check agrees with the subspace enumeration oracle") {
  const auto mats = test_matrices();
  std::mt19937_64 rng(77);
  int disagreements = 0, satisfied = 0;
  for (int trial = 0; trial < 240; ++trial) {
    const NormalMatrix& u = mats[trial % mats.size()];
    const auto data = analyze_matroid(u);
    Eigen::VectorXd g = oracle::dirichlet(u.size(), rng);
    // Half the draws sit on a separator equality so both verdicts get exercised.
    if (trial % 2 == 0 && !data.separators.empty()) {
      const auto v = build_pscc(u, data).vertices();
      Eigen::VectorXd w = oracle::dirichlet(static_cast<int>(v.size()), rng);
      g.setZero();
      for (size_t k = 0; k < v.size(); ++k) g += w(k) * v[k];
    }
    const auto a = scc_check(u, data, g);
    const auto b = brute_force_scc(u, g);
    satisfied += a.satisfies();
    if (a.kind != b.kind || a.violations != b.violations) ++disagreements;
  }
  CHECK(disagreements == 0);
  CHECK(satisfied > 0);
}

TEST_CASE("direct sum decomposition") {
  CHECK(pscc_direct_sum_check(fixtures::square()));
  CHECK(pscc_direct_sum_check(fixtures::cube(3)));
  CHECK(code_of([] { pscc_direct_sum_check(fixtures::trapezoid()); }) == ErrorCode::NotReducible);
}
