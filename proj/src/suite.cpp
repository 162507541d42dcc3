#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>

#include "conevol/cli.hpp"
#include "conevol/errors.hpp"
#include "conevol/fixtures.hpp"
#include "conevol/inverse.hpp"
#include "conevol/matroid.hpp"
#include "conevol/planar.hpp"
#include "conevol/semialg.hpp"

namespace conevol::cli {

namespace {

using Outcome = std::pair<bool, std::string>;

std::string vec_str(const Eigen::VectorXd& v, int prec = 4) {
  std::ostringstream os;
  os.precision(prec);
  os << "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? "," : "") << v(i);
  os << ")";
  return os.str();
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

std::set<IndexSet> flat_sets(const std::vector<Flat>& fs) {
  std::set<IndexSet> out;
  for (const auto& f : fs) out.insert(f.members);
  return out;
}

std::set<std::vector<int>> k_subset_indicators(int m, int k) {
  std::set<std::vector<int>> out;
  for_each_combination(m, k, [&](const IndexSet& s) {
    std::vector<int> chi(m, 0);
    for (int i : s) chi[i] = 1;
    out.insert(chi);
    return true;
  });
  return out;
}

CanonicalInput limit_trapezoid(double eps) {
  Eigen::MatrixXd raw(2, 4);
  raw << 0, 1, 0, -1,
         1, 1, -1, 1;
  return canonicalize(raw, vec({eps, 0.0, 0.0, 1.0 / eps + eps}));
}

Eigen::VectorXd pentagon_target() { return vec({1.0 / 3, 1.0 / 3, 1.0 / 9, 1.0 / 9, 1.0 / 9}); }

bool has_row(const std::vector<ConeRow>& rows, Eigen::VectorXd target, double tol) {
  target.normalize();
  for (const auto& r : rows)
    if ((r.coeffs - target).cwiseAbs().maxCoeff() <= tol) return true;
  return false;
}

}  // namespace

std::vector<SuiteRow> example_suite() {
  std::vector<SuiteRow> rows;
  auto add = [&](const std::string& module, const std::string& name,
                 const std::function<Outcome()>& fn) {
    SuiteRow r{module, name, false, ""};
    try {
      auto [ok, detail] = fn();
      r.pass = ok;
      r.detail = detail;
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    rows.push_back(std::move(r));
  };

  const NormalMatrix trap = fixtures::trapezoid();
  const NormalMatrix trap3 = fixtures::trapezoid(-1.0 / 3, 1.0 / 6);
  const NormalMatrix pent = fixtures::pentagon();
  const NormalMatrix sq = fixtures::square();
  const NormalMatrix cube3 = fixtures::cube(3);

  // polytope-core
  add("polytope", "limit trapezoid b_eps: gamma_2 = gamma_3 = 0", [] {
    const auto in = limit_trapezoid(0.1);
    const Eigen::VectorXd g = cone_volumes(in.normals, in.b);
    const bool ok = std::abs(g(1)) <= 1e-12 && std::abs(g(2)) <= 1e-12 &&
                    std::abs(g.sum() - 1.0) <= 1e-9;
    return Outcome{ok, "gamma = " + vec_str(g)};
  });
  add("polytope", "limit trapezoid tends to (1/2,0,0,1/2)", [] {
    double prev = 1e300;
    bool ok = true;
    std::string detail;
    for (double eps : {0.1, 0.01, 0.001}) {
      const auto in = limit_trapezoid(eps);
      const double dev = (cone_volumes(in.normals, in.b) - vec({0.5, 0, 0, 0.5})).norm();
      ok = ok && dev < prev;
      prev = dev;
      detail += (detail.empty() ? "" : ", ") + sci(dev);
    }
    return Outcome{ok && prev < 1e-5, "deviations " + detail};
  });
  add("polytope", "limit trapezoid: vertices on the lines of u_1 and u_3", [] {
    bool ok = true;
    for (double eps : {0.5, 0.1, 0.01}) {
      const auto in = limit_trapezoid(eps);
      const HPolytope p = build_polytope(in.normals, in.b);
      for (const auto& v : p.vertices()) {
        const double d1 = std::abs(in.normals.column(0).dot(v) - in.b(0));
        const double d3 = std::abs(in.normals.column(2).dot(v) - in.b(2));
        ok = ok && std::min(d1, d3) <= 1e-9;
      }
    }
    return Outcome{ok, ""};
  });
  add("polytope", "pentagon at printed b has gamma (1/3,1/3,1/9,1/9,1/9)", [&] {
    const Eigen::VectorXd g = cone_volumes(pent, vec({0.66, 0.82, 0.15, 0.66, 0.79}));
    const double err = (g - pentagon_target()).cwiseAbs().maxCoeff();
    return Outcome{err <= 2e-2, "gamma = " + vec_str(g, 3) + ", max error " + sci(err)};
  });
  add("polytope", "centroid translation lands in relint P_scc", [&] {
    const HPolytope p = build_polytope(pent, vec({1.0, 0.5, 0.7, 1.2, 1.1}));
    ConeVolumeVector g = translate_cone_volumes(p, -p.centroid());
    const Eigen::VectorXd gn = g.gamma / g.total;
    return Outcome{scc_check(pent, gn).satisfies(), "gamma = " + vec_str(gn)};
  });
  add("polytope", "parallelepipeds have no sparse vertex witness", [&] {
    const bool ok = !sparse_vertex_witness(sq) && !sparse_vertex_witness(cube3);
    return Outcome{ok, ""};
  });

  // matroid-scc
  add("matroid", "trapezoid: 5 bases, {u1,u3} excluded", [&] {
    const auto b = enumerate_bases(trap);
    const bool ok = b.size() == 5 && std::find(b.begin(), b.end(), IndexSet{0, 2}) == b.end();
    return Outcome{ok, std::to_string(b.size()) + " bases"};
  });
  add("matroid", "general position: every n-subset is a basis", [] {
    const bool ok = enumerate_bases(fixtures::general_position(2, 4)).size() == 6 &&
                    enumerate_bases(fixtures::general_position(3, 5)).size() == 10;
    return Outcome{ok, ""};
  });
  add("matroid", "trapezoid flats {u1,u3},{u2},{u4}; no separators", [&] {
    const auto d = analyze_matroid(trap);
    const bool ok = flat_sets(d.flats) == std::set<IndexSet>{{0, 2}, {1}, {3}} && d.separators.empty();
    return Outcome{ok, std::to_string(d.flats.size()) + " flats"};
  });
  add("matroid", "general position: flats are singletons; no separators", [] {
    const auto flats = flat_sets(enumerate_flats(fixtures::general_position(2, 4)));
    const bool ok = flats == std::set<IndexSet>{{0}, {1}, {2}, {3}} &&
                    enumerate_separators(fixtures::general_position(2, 4)).empty() &&
                    enumerate_separators(fixtures::general_position(3, 5)).empty();
    return Outcome{ok, ""};
  });
  add("matroid", "parallelepiped: separators equal flats", [&] {
    const auto d = analyze_matroid(cube3);
    return Outcome{flat_sets(d.flats) == flat_sets(d.separators),
                   std::to_string(d.flats.size()) + " flats"};
  });
  add("matroid", "irreducible partitions: cube d=3, trapezoid d=1, pentagon d=1", [&] {
    const auto p = irreducible_partition(cube3);
    const bool ok = p == std::vector<IndexSet>{{0, 3}, {1, 4}, {2, 5}} &&
                    irreducible_partition(trap).size() == 1 && irreducible_partition(pent).size() == 1;
    return Outcome{ok, ""};
  });
  add("matroid", "general position: P_scc = (1/n) hypersimplex", [] {
    bool ok = true;
    for (auto [n, m] : {std::pair{2, 4}, std::pair{3, 5}}) {
      const SccPolytope p = build_pscc(fixtures::general_position(n, m));
      const std::set<std::vector<int>> v(p.vertex_indicators.begin(), p.vertex_indicators.end());
      ok = ok && v == k_subset_indicators(m, n);
    }
    return Outcome{ok, ""};
  });
  add("matroid", "parallelepiped: P_scc is a cube", [&] {
    const SccPolytope p = build_pscc(cube3);
    return Outcome{p.vertex_indicators.size() == 8 && p.dim == 3 && pscc_direct_sum_check(cube3),
                   std::to_string(p.vertex_indicators.size()) + " vertices"};
  });
  add("matroid", "trapezoid: P_scc is a pyramid over a square", [&] {
    const SccPolytope p = build_pscc(trap);
    return Outcome{p.vertex_indicators.size() == 5 && p.dim == 3,
                   "dim " + std::to_string(p.dim)};
  });
  add("matroid", "trapezoid gamma (1/9,2/9,4/9,2/9) violates SCC on {u1,u3}", [&] {
    const Eigen::VectorXd g = vec({1.0 / 9, 2.0 / 9, 4.0 / 9, 2.0 / 9});
    const auto v = scc_check(trap, g);
    const auto o = brute_force_scc(trap, g);
    const bool ok = v.kind == SccVerdictKind::ViolatesInequality && v.flat == IndexSet{0, 2} &&
                    o.kind == v.kind && o.violations == v.violations;
    return Outcome{ok, to_string(v.kind)};
  });
  add("matroid", "simplex: gamma_i < 1/n satisfies SCC", [] {
    const NormalMatrix s = fixtures::simplex(3);
    const Eigen::VectorXd g = vec({0.3, 0.25, 0.25, 0.2});
    return Outcome{brute_force_scc(s, g).satisfies() && scc_check(s, g).satisfies(), ""};
  });
  add("matroid", "direct sum: cube splits, trapezoid is not reducible", [&] {
    bool refused = false;
    try {
      pscc_direct_sum_check(trap);
    } catch (const Error& e) {
      refused = e.code() == ErrorCode::NotReducible;
    }
    return Outcome{pscc_direct_sum_check(sq) && refused, ""};
  });

  // planar
  add("planar", "trapezoid normals are already counter-clockwise", [&] {
    const PlanarFan fan = order_ccw(trap3);
    return Outcome{fan.ordering == std::vector<int>{0, 1, 2, 3}, ""};
  });
  add("planar", "trapezoid type cone contains l2 b2 + l4 b4 - (a4 - a2) b1 >= 0", [&] {
    const double a2 = -1.0 / 3, a4 = 1.0 / 6;
    const Eigen::VectorXd target =
        vec({-(a4 - a2), std::hypot(1.0, a2), 0.0, std::hypot(1.0, a4)}).normalized();
    const TypeCone cone = planar_type_cone(order_ccw(trap3));
    bool found = false;
    for (Eigen::Index r = 0; r < cone.rows.rows(); ++r) {
      const Eigen::VectorXd row = cone.rows.row(r).transpose().normalized();
      found = found || (row - target).cwiseAbs().maxCoeff() <= 1e-9;
    }
    return Outcome{found, ""};
  });
  add("planar", "trapezoid type cone: one row vanishes on H", [&] {
    const double a2 = -1.0 / 3, a4 = 1.0 / 6;
    const double l2 = std::hypot(1.0, a2), l4 = std::hypot(1.0, a4);
    const TypeCone cone = planar_type_cone(order_ccw(trap3));
    const Eigen::VectorXd inside = cone.rows * Eigen::VectorXd::Ones(4);
    const Eigen::VectorXd on_h = cone.rows * vec({l2 + l4, a4 - a2, 1.0, a4 - a2});
    const bool ok = inside.minCoeff() > 1e-9 && on_h.minCoeff() >= -1e-12 &&
                    on_h.cwiseAbs().minCoeff() <= 1e-12;
    return Outcome{ok, ""};
  });
  add("planar", "pentagon edge lengths at the solved b give gamma_i = f_i b_i / 2", [&] {
    const auto fam = solve_inverse(pent, pentagon_target());
    const Eigen::VectorXd& b = fam.solutions.front().b;
    const Eigen::VectorXd g = stancu_lengths(order_ccw(pent), b).cwiseProduct(b) / 2.0;
    const double err = (g - pentagon_target()).cwiseAbs().maxCoeff();
    return Outcome{err <= 1e-9, "max error " + sci(err)};
  });
  add("planar", "trapezoid membership: boundary point accepted, perturbation rejected", [] {
    const bool in = trapezoid_membership({1.0 / 9, 2.0 / 9, 4.0 / 9, 2.0 / 9});
    const bool out = trapezoid_membership({1.0 / 9 + 1e-3, 2.0 / 9 - 1e-3, 4.0 / 9, 2.0 / 9});
    return Outcome{in && !out, ""};
  });

  // semialg
  add("semialg", "trapezoid: two types either side of H, non-simple on H", [&] {
    const auto t1 = detect_type(trap, vec({1, 1, 1, 1}));
    const auto t2 = detect_type(trap, vec({1, 0.2, 1, 0.2}));
    const auto th = detect_type(trap, vec({std::sqrt(2.0), 1, 1, 1}));
    return Outcome{t1.id != t2.id && !t1.non_simple && !t2.non_simple && th.non_simple, ""};
  });
  add("semialg", "trapezoid local type cone recovers the separating row", [&] {
    const double a2 = -1.0 / 3, a4 = 1.0 / 6;
    const auto rows = local_type_cone(trap3, vec({1, 1, 1, 1}));
    return Outcome{has_row(rows, vec({-(a4 - a2), std::hypot(1.0, a2), 0.0, std::hypot(1.0, a4)}), 1e-9),
                   std::to_string(rows.size()) + " rows"};
  });
  const std::vector<std::string> names = variable_names(5, false);
  auto pentagon_system = [&] { return build_system(pent, vec({1, 1, 0.5, 1, 1})); };
  add("semialg", "pentagon edge forms f2, f3, f5 as printed", [&] {
    const auto s = pentagon_system();
    const double r2 = std::sqrt(2.0);
    const bool ok = max_coefficient_difference(s.facets[1], Polynomial::linear(vec({1, 0, 1, 0, 0}))) <= 1e-12 &&
                    max_coefficient_difference(s.facets[2], Polynomial::linear(vec({0, 1, 0, 1, 0}))) <= 1e-12 &&
                    max_coefficient_difference(s.facets[4], Polynomial::linear(vec({r2, 0, 0, r2, -2}))) <= 1e-12;
    return Outcome{ok, ""};
  });
  add("semialg", "pentagon edge forms f1, f4 as printed", [&] {
    const auto s = pentagon_system();
    const double r2 = std::sqrt(2.0);
    const Polynomial f1 = Polynomial::linear(vec({-r2, 1, 0, 0, r2}));
    const Polynomial f4 = Polynomial::linear(vec({0, 0, 1, -r2, r2}));
    const bool ok = max_coefficient_difference(s.facets[0], f1) <= 1e-12 &&
                    max_coefficient_difference(s.facets[3], f4) <= 1e-12;
    return Outcome{ok, "computed f1 = " + to_string(s.facets[0], names) +
                           ", f4 = " + to_string(s.facets[3], names)};
  });
  add("semialg", "parallelepiped volume polynomial is prod (b_i + b_{n+i})", [&] {
    const auto s = build_system(cube3, Eigen::VectorXd::Ones(6));
    Polynomial expect = Polynomial::constant(6, 1.0);
    for (int i = 0; i < 3; ++i) {
      Eigen::VectorXd c = Eigen::VectorXd::Zero(6);
      c(i) = c(i + 3) = 1.0;
      expect = expect * Polynomial::linear(c);
    }
    const double diff = max_coefficient_difference(s.volume, expect);
    return Outcome{diff <= 1e-9, "max coefficient error " + sci(diff)};
  });
  add("semialg", "type counts: trapezoid 2, square 1, cube 1, simplex 1", [&] {
    const auto t = sample_type_cones(trap, 200, 0).size();
    const auto s = sample_type_cones(sq, 200, 0).size();
    const auto c = sample_type_cones(cube3, 100, 0).size();
    const auto x = sample_type_cones(fixtures::simplex(3), 200, 0).size();
    return Outcome{t == 2 && s == 1 && c == 1 && x == 1,
                   std::to_string(t) + ", " + std::to_string(s) + ", " + std::to_string(c) + ", " +
                       std::to_string(x)};
  });
  add("semialg", "trapezoid: only the trapezoid type has all facets", [&] {
    const auto kept = filter_full_facet_types(sample_type_cones(trap, 200, 0));
    bool ok = kept.size() == 1;
    if (ok) ok = detect_type(trap, vec({1, 1, 1, 1})).id == kept.front().type_id;
    return Outcome{ok, ""};
  });

  // inverse
  add("inverse", "pentagon solution near printed (0.66,0.82,0.15,0.66,0.79)", [&] {
    const auto fam = solve_inverse(pent, pentagon_target());
    const Eigen::VectorXd& b = fam.solutions.front().b;
    const double err = (b - vec({0.66, 0.82, 0.15, 0.66, 0.79})).cwiseAbs().maxCoeff();
    return Outcome{err <= 2e-2, "solution " + vec_str(b) + ", max deviation " + sci(err)};
  });
  add("inverse", "pentagon solution set is finite (one cluster, rank defect 0)", [&] {
    const auto fam = solve_inverse(pent, pentagon_target());
    const auto& s = fam.solutions.front();
    const bool ok = fam.solutions.size() == 1 && s.rank_defect == 0 && s.residual <= 1e-10;
    return Outcome{ok, std::to_string(fam.solutions.size()) + " solution(s)"};
  });
  add("inverse", "pentagon with gamma_5 = 0 has an infinite family", [&] {
    const auto fam = solve_inverse(pent, vec({0.25, 0.25, 0.25, 0.25, 0.0}));
    return Outcome{fam.solutions.front().rank_defect >= 1,
                   "rank defect " + std::to_string(fam.solutions.front().rank_defect)};
  });
  add("inverse", "simplex: unique b_i = n gamma_i / phi_i", [] {
    const NormalMatrix s = fixtures::simplex(2);
    const Eigen::VectorXd g = vec({0.5, 0.3, 0.2});
    const auto fam = solve_inverse(s, g);
    const HPolytope p = build_polytope(s, fam.solutions.front().b);
    const Eigen::VectorXd formula = 2.0 * g.cwiseQuotient(p.facet_measures());
    const bool ok = fam.solutions.size() == 1 &&
                    (formula - fam.solutions.front().b).cwiseAbs().maxCoeff() <= 1e-9;
    return Outcome{ok, ""};
  });
  add("inverse", "pentagon is irreducible: no scaling family", [&] {
    try {
      scaling_family(pent, Eigen::VectorXd::Ones(5), 2.0);
    } catch (const Error& e) {
      return Outcome{e.code() == ErrorCode::Irreducible, ""};
    }
    return Outcome{false, "no error raised"};
  });
  add("inverse", "trapezoid: perturbed boundary gamma is not solvable", [&] {
    const auto scan =
        feasibility_scan(trap, {vec({1.0 / 9 + 1e-3, 2.0 / 9 - 1e-3, 4.0 / 9, 2.0 / 9})});
    return Outcome{!scan.front().solved, "best residual " + sci(scan.front().residual)};
  });
  add("inverse", "square: gamma_1 + gamma_3 != 1/2 is not solvable", [&] {
    const auto scan = feasibility_scan(sq, {vec({0.4, 0.25, 0.2, 0.15})});
    return Outcome{!scan.front().solved, "best residual " + sci(scan.front().residual)};
  });

  // cli
  add("cli", "figure1-data splits samples into subsets A and B", [] {
    RunConfig cfg;
    cfg.command = "figure1-data";
    cfg.samples = 2000;
    std::ostringstream out, err;
    if (run(cfg, out, err) != 0) return Outcome{false, err.str()};
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    const bool header = line == "gamma1,gamma3,gamma2,subset";
    int a = 0, b = 0;
    while (std::getline(in, line)) {
      a += line.ends_with(",A");
      b += line.ends_with(",B");
    }
    return Outcome{header && a > 0 && b > 0, std::to_string(a) + " in A, " + std::to_string(b) + " in B"};
  });
  return rows;
}

}  // namespace conevol::cli
