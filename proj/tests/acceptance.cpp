// Acceptance gate: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "conevol/errors.hpp"
#include "conevol/fixtures.hpp"
#include "conevol/inverse.hpp"
#include "conevol/matroid.hpp"
#include "conevol/planar.hpp"
#include "conevol/semialg.hpp"
#include "oracles.hpp"

using namespace conevol;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

std::set<std::vector<int>> indicators(const SccPolytope& p) {
  return {p.vertex_indicators.begin(), p.vertex_indicators.end()};
}

// 1. Cone volumes of the centered square; pyramid identity on random polytopes.
Verdict cone_volume_correctness() {
  Verdict v;
  const Eigen::VectorXd g = cone_volumes(fixtures::square(), Eigen::VectorXd::Constant(4, 0.5));
  const double sq_err = (g - Eigen::VectorXd::Constant(4, 0.25)).cwiseAbs().maxCoeff();
  v.require(sq_err <= 1e-12, "square error " + num(sq_err));
  std::mt19937_64 rng(1001);
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + trial % 2;
    const int m = n + 1 + static_cast<int>(rng() % (8 - n));
    const NormalMatrix u = fixtures::random_normals(n, m, rng);
    const Eigen::VectorXd b = oracle::uniform_vector(m, 0.05, 1.0, rng);
    const HPolytope p = build_polytope(u, b);
    const double ref = n == 2 ? oracle::shoelace(oracle::polygon_vertices(u.matrix(), b))
                              : oracle::polytope3_volume(u.matrix(), b);
    const double pyramid = b.dot(p.facet_measures()) / n;
    worst = std::max(worst, std::abs(ref - pyramid) / std::max(1.0, ref));
  }
  v.require(worst <= 1e-9, "pyramid identity error " + num(worst));
  v.detail = v.pass ? "square err " + num(sq_err) + ", pyramid worst " + num(worst) + " over 500" : v.detail;
  return v;
}

// 2. Closed-form trapezoid membership.
Verdict trapezoid_closed_form() {
  Verdict v;
  std::mt19937_64 rng(1002);
  std::uniform_real_distribution<double> slope(0.2, 2.0);
  int accepted = 0, triangles = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const NormalMatrix u = fixtures::trapezoid(-slope(rng), slope(rng));
    const Eigen::VectorXd b = normalize_to_unit_volume(u, oracle::uniform_vector(4, 0.05, 1.0, rng));
    const Eigen::VectorXd g = cone_volumes(u, b);
    const bool triangle = g.minCoeff() <= 1e-12;
    triangles += triangle;
    accepted += trapezoid_membership(relabel(trapezoid_labeling(u), g), triangle, 1e-9);
  }
  v.require(accepted == 1000, std::to_string(accepted) + "/1000 sampled vectors accepted");
  v.require(trapezoid_membership({1.0 / 9, 2.0 / 9, 4.0 / 9, 2.0 / 9}), "boundary point rejected");
  v.require(!trapezoid_membership({1.0 / 9 + 1e-3, 2.0 / 9 - 1e-3, 4.0 / 9, 2.0 / 9}), "perturbation accepted");
  if (v.pass) v.detail = "1000/1000 accepted (" + std::to_string(triangles) + " triangles), boundary in, perturbation out";
  return v;
}

// 3. P_scc vertex sets.
Verdict pscc_structure() {
  Verdict v;
  for (auto [n, m] : {std::pair{2, 4}, std::pair{3, 5}}) {
    const auto p = build_pscc(fixtures::general_position(n, m));
    v.require(indicators(p) == oracle::k_subsets(m, n), "hypersimplex (" + std::to_string(n) + "," + std::to_string(m) + ")");
  }
  for (int n : {2, 3}) {
    const auto p = build_pscc(fixtures::cube(n));
    std::set<std::vector<int>> cube;
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<int> chi(2 * n, 0);
      for (int j = 0; j < n; ++j) chi[(mask >> j) & 1 ? j : n + j] = 1;
      cube.insert(chi);
    }
    v.require(indicators(p) == cube && p.dim == n, std::to_string(n) + "-cube vertex set");
    // Edge length sqrt(2) between adjacent indicator vectors.
    const auto pts = p.vertices();
    for (size_t i = 0; i < pts.size(); ++i)
      for (size_t j = i + 1; j < pts.size(); ++j)
        if (pscc_adjacent(p, pts[i], pts[j]))
          v.require(std::abs((pts[i] - pts[j]).norm() * n - std::sqrt(2.0)) <= 1e-12, "cube edge length");
  }
  const auto t = build_pscc(fixtures::trapezoid());
  v.require(indicators(t) == std::set<std::vector<int>>{{1, 1, 0, 0}, {1, 0, 0, 1}, {0, 1, 1, 0}, {0, 1, 0, 1}, {0, 0, 1, 1}} &&
                t.dim == 3,
            "trapezoid pyramid");
  if (v.pass) v.detail = "hypersimplices (2,4),(3,5); 2- and 3-cubes with edge sqrt2; trapezoid 5 vertices dim 3";
  return v;
}

// 4. scc_check against the subspace-enumeration oracle.
Verdict scc_oracle_equivalence() {
  Verdict v;
  std::mt19937_64 rng(1004);
  std::vector<NormalMatrix> mats = {fixtures::square(), fixtures::trapezoid(), fixtures::pentagon(),
                                    fixtures::simplex(3), fixtures::cube(3), fixtures::general_position(2, 4),
                                    fixtures::general_position(3, 5), fixtures::trapezoid(-0.5, 0.25)};
  mats.push_back(fixtures::random_normals(3, 6, rng));
  mats.push_back(fixtures::random_normals(4, 7, rng));
  mats.push_back(fixtures::random_normals(4, 6, rng));
  int disagreements = 0, satisfied = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const NormalMatrix& u = mats[trial % mats.size()];
    const Eigen::VectorXd g = oracle::dirichlet(u.size(), rng);
    const auto a = scc_check(u, g);
    const auto b = brute_force_scc(u, g);
    satisfied += a.satisfies();
    disagreements += a.kind != b.kind || a.violations != b.violations;
  }
  v.require(disagreements == 0, std::to_string(disagreements) + " disagreements");
  if (v.pass) v.detail = "0/200 disagreements over " + std::to_string(mats.size()) + " matrices (" + std::to_string(satisfied) + " satisfy)";
  return v;
}

// 5. Translation formula and centroid translation.
Verdict translation_formula() {
  Verdict v;
  std::mt19937_64 rng(1005);
  double worst = 0.0;
  int centroid_ok = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 2;
    const NormalMatrix u = fixtures::random_normals(n, n + 1 + trial % 4, rng);
    // Every u_i must be a facet normal for the centroid vector to be positive.
    Eigen::VectorXd b;
    do {
      b = oracle::uniform_vector(u.size(), 0.3, 1.0, rng);
    } while (static_cast<int>(build_polytope(u, b).facets().size()) != u.size());
    const Eigen::VectorXd t = oracle::uniform_vector(n, -0.1, 0.1, rng);
    const HPolytope p = build_polytope(u, b);
    const Eigen::VectorXd direct = cone_volumes(u, b + u.matrix().transpose() * t);
    worst = std::max(worst, (translate_cone_volumes(p, t).gamma - direct).cwiseAbs().maxCoeff());
    const auto c = translate_cone_volumes(p, -p.centroid());
    centroid_ok += scc_check(u, c.gamma / c.total).satisfies();
  }
  v.require(worst <= 1e-9, "translation error " + num(worst));
  v.require(centroid_ok == 200, std::to_string(centroid_ok) + "/200 centroid vectors satisfy SCC");
  if (v.pass) v.detail = "worst error " + num(worst) + " over 200; 200/200 centroid vectors satisfy SCC";
  return v;
}

// 6. Pentagon inverse problem.
Verdict pentagon_inverse() {
  Verdict v;
  const NormalMatrix u = fixtures::pentagon();
  const auto fam = solve_inverse(u, vec({1.0 / 3, 1.0 / 3, 1.0 / 9, 1.0 / 9, 1.0 / 9}));
  const auto& s = fam.solutions.front();
  const double dev = (s.b - vec({0.66, 0.82, 0.15, 0.66, 0.79})).cwiseAbs().maxCoeff();
  v.require(dev <= 2e-2, "solution (" + num(s.b(0)) + "," + num(s.b(1)) + "," + num(s.b(2)) + "," + num(s.b(3)) +
                             "," + num(s.b(4)) + ") deviates " + num(dev) + " from the printed b");
  v.require(s.residual <= 1e-10, "residual " + num(s.residual));
  v.require(s.rank_defect == 0, "rank defect " + std::to_string(s.rank_defect));
  const auto hat = solve_inverse(u, vec({0.25, 0.25, 0.25, 0.25, 0.0}));
  v.require(hat.solutions.front().rank_defect >= 1, "gamma-hat family not detected");
  if (v.pass) v.detail = "max deviation " + num(dev) + ", residual " + num(s.residual) + ", defect 0; gamma-hat defect " +
                         std::to_string(hat.solutions.front().rank_defect);
  else v.detail += "; residual " + num(s.residual) + ", defect " + std::to_string(s.rank_defect) +
                   ", gamma-hat defect " + std::to_string(hat.solutions.front().rank_defect);
  return v;
}

// 7. Scaling families.
Verdict scaling_family_check() {
  Verdict v;
  double worst = 0.0;
  for (const auto& u : {fixtures::square(), fixtures::cube(3)}) {
    const Eigen::VectorXd b = normalize_to_unit_volume(u, Eigen::VectorXd::Ones(u.size()));
    const Eigen::VectorXd g = cone_volumes(u, b);
    const int d = static_cast<int>(irreducible_partition(u).size());
    for (double lambda : {0.5, 0.75, 1.0, 1.5, 2.0}) {
      const Eigen::VectorXd bl = scaling_family(u, b, lambda);
      worst = std::max(worst, inverse_residual(u, bl, g).norm());
      const int defect = dimension_probe(u, bl);
      v.require(defect == d - 1, "defect " + std::to_string(defect) + " != d-1 = " + std::to_string(d - 1));
    }
  }
  v.require(worst <= 1e-9, "residual " + num(worst));
  if (v.pass) v.detail = "worst residual " + num(worst) + "; defects 1 (square), 2 (3-cube)";
  return v;
}

// 8. Type cones and volume polynomials.
Verdict type_cones() {
  Verdict v;
  const double a2 = -1.0 / 3, a4 = 1.0 / 6;
  const NormalMatrix trap = fixtures::trapezoid(a2, a4);
  const auto types = sample_type_cones(trap, 200, 0);
  v.require(types.size() == 2, std::to_string(types.size()) + " trapezoid types");
  const Eigen::Vector4d target(-(a4 - a2), std::hypot(1.0, a2), 0.0, std::hypot(1.0, a4));
  double best = 1e300;
  for (const auto& t : types) {
    if (detect_type(trap, t.b).non_simple) continue;
    for (const auto& r : local_type_cone(trap, t.b)) {
      // Relative coefficient error after matching the scale on the b_2 coefficient.
      const Eigen::VectorXd scaled = r.coeffs * (target(1) / r.coeffs(1));
      if (r.coeffs(1) > 0) best = std::min(best, (scaled - target).cwiseAbs().maxCoeff() / target.cwiseAbs().maxCoeff());
    }
  }
  v.require(best <= 1e-9, "separating form error " + num(best));
  for (const auto& [name, u] : {std::pair{"square", fixtures::square()}, std::pair{"cube", fixtures::cube(3)},
                                std::pair{"simplex", fixtures::simplex(3)}}) {
    const auto k = sample_type_cones(u, 100, 0).size();
    v.require(k == 1, std::string(name) + " has " + std::to_string(k) + " types");
  }
  Eigen::MatrixXd a(3, 3);
  a << 1, 0.4, 0,
       -0.3, 1, 0.2,
       0.1, 0, 1;
  Eigen::MatrixXd an = a;
  for (int j = 0; j < 3; ++j) an.col(j).normalize();
  double poly_err = 0.0;
  for (const Eigen::MatrixXd& m : {Eigen::MatrixXd(Eigen::MatrixXd::Identity(3, 3)), a}) {
    Eigen::MatrixXd mn = m;
    for (int j = 0; j < 3; ++j) mn.col(j).normalize();
    const NormalMatrix u = fixtures::parallelepiped(m);
    Polynomial expect = Polynomial::constant(6, 1.0 / std::abs(mn.determinant()));
    for (int i = 0; i < 3; ++i) {
      Eigen::VectorXd c = Eigen::VectorXd::Zero(6);
      c(i) = c(i + 3) = 1.0;
      expect = expect * Polynomial::linear(c);
    }
    poly_err = std::max(poly_err, max_coefficient_difference(build_system(u, Eigen::VectorXd::Ones(6)).volume, expect));
  }
  v.require(poly_err <= 1e-9, "volume polynomial coefficient error " + num(poly_err));
  if (v.pass) v.detail = "trapezoid 2 types, form error " + num(best) + "; square/cube/simplex 1 type; polynomial error " + num(poly_err);
  return v;
}

// 9. Every gamma in relint P_scc of the trapezoid is a cone-volume vector.
Verdict inclusion() {
  Verdict v;
  const NormalMatrix u = fixtures::trapezoid();
  const auto verts = build_pscc(u).vertices();
  std::mt19937_64 rng(1009);
  int solved = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::VectorXd w = oracle::dirichlet(static_cast<int>(verts.size()), rng);
    Eigen::VectorXd g = Eigen::VectorXd::Zero(4);
    for (size_t k = 0; k < verts.size(); ++k) g += w(k) * verts[k];
    try {
      const auto fam = solve_inverse(u, g);
      const double r = fam.solutions.front().residual;
      worst = std::max(worst, r);
      solved += r <= 1e-10;
    } catch (const Error&) {
    }
  }
  v.require(solved == 100, std::to_string(solved) + "/100 solved");
  if (v.pass) v.detail = "100/100 solved, worst residual " + num(worst);
  return v;
}

// 10. Sparse witnesses exist exactly off the parallelepiped case.
Verdict dichotomy() {
  Verdict v;
  for (const auto& [name, u] : {std::pair{"trapezoid", fixtures::trapezoid()},
                                std::pair{"general position (2,4)", fixtures::general_position(2, 4)},
                                std::pair{"general position (3,5)", fixtures::general_position(3, 5)}}) {
    const auto w = sparse_vertex_witness(u);
    v.require(w && w->support_size < u.dim(), std::string(name) + " has no sparse witness");
  }
  Eigen::MatrixXd a(3, 3);
  a << 1, 0.4, 0,
       -0.3, 1, 0.2,
       0.1, 0, 1;
  const std::vector<NormalMatrix> paras = {fixtures::square(), fixtures::cube(3), fixtures::parallelepiped(a)};
  for (const auto& u : paras) v.require(!sparse_vertex_witness(u), "parallelepiped returned a witness");
  std::mt19937_64 rng(1010);
  int inside = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const NormalMatrix& u = paras[trial % paras.size()];
    const Eigen::VectorXd g = cone_volumes(u, oracle::uniform_vector(u.size(), 0.0, 1.0, rng));
    inside += build_pscc(u).contains(g / g.sum(), 1e-9);
  }
  v.require(inside == 200, std::to_string(inside) + "/200 parallelepiped vectors in P_scc");
  if (v.pass) v.detail = "witnesses for trapezoid and general position, none for parallelepipeds; 200/200 in P_scc";
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"cone-volume correctness (1e-12 square, 1e-9 pyramid)", cone_volume_correctness},
      {"trapezoid closed form (1000 samples, slack 1e-9)", trapezoid_closed_form},
      {"P_scc structure (exact vertex sets)", pscc_structure},
      {"SCC oracle equivalence (200 draws)", scc_oracle_equivalence},
      {"translation formula (1e-9, 200 cases)", translation_formula},
      {"pentagon inverse (2e-2 coordinates, residual 1e-10)", pentagon_inverse},
      {"scaling family (residual 1e-9, defect d-1)", scaling_family_check},
      {"type cones (form 1e-9, polynomial 1e-9)", type_cones},
      {"relint P_scc solvable (100 draws, residual 1e-10)", inclusion},
      {"sparse-witness dichotomy (hrep 1e-9)", dichotomy},
  };
  const auto start = std::chrono::steady_clock::now();
  int failed = 0;
  for (size_t k = 0; k < criteria.size(); ++k) {
    Verdict v;
    try {
      v = criteria[k].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    failed += !v.pass;
    std::printf("criterion %zu %s: %s  [%s]\n", k + 1, v.pass ? "PASS" : "FAIL", criteria[k].first.c_str(),
                v.detail.c_str());
    std::fflush(stdout);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%zu/%zu criteria passed in %.1f s\n", criteria.size() - failed, criteria.size(), secs);
  return failed == 0 ? 0 : 1;
}
