#include "conevol/matroid.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "conevol/errors.hpp"

namespace conevol {

namespace {

constexpr double kRankTol = 1e-9;

std::uint64_t mask_of(const IndexSet& s) {
  std::uint64_t m = 0;
  for (int i : s) m |= (std::uint64_t{1} << i);
  return m;
}

IndexSet set_difference(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

IndexSet subset_of(const IndexSet& ground, const IndexSet& positions) {
  IndexSet out;
  out.reserve(positions.size());
  for (int p : positions) out.push_back(ground[p]);
  return out;
}

IndexSet all_indices(int m) {
  IndexSet out(m);
  for (int i = 0; i < m; ++i) out[i] = i;
  return out;
}

}  // namespace

LinearMatroid::LinearMatroid(const NormalMatrix& u) : LinearMatroid(u, all_indices(u.size())) {}

LinearMatroid::LinearMatroid(const NormalMatrix& u, IndexSet ground)
    : u_(u.matrix()), ground_(std::move(ground)) {
  std::sort(ground_.begin(), ground_.end());
  if (u_.cols() > 63) throw Error(ErrorCode::InvalidInput, "at most 63 normals are supported");
}

int LinearMatroid::rank_of(const IndexSet& subset) const {
  if (subset.empty()) return 0;
  const std::uint64_t key = mask_of(subset);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  const int r = numeric_rank(select_columns(u_, subset), kRankTol);
  cache_.emplace(key, r);
  return r;
}

IndexSet LinearMatroid::closure(const IndexSet& subset) const {
  const int r = rank_of(subset);
  IndexSet out;
  for (int j : ground_) {
    if (std::binary_search(subset.begin(), subset.end(), j)) {
      out.push_back(j);
      continue;
    }
    IndexSet ext = subset;
    ext.insert(std::upper_bound(ext.begin(), ext.end(), j), j);
    if (rank_of(ext) == r) out.push_back(j);
  }
  return out;
}

std::vector<Flat> flats_of(const LinearMatroid& mat) {
  const IndexSet& g = mat.ground();
  const int r = mat.rank();
  std::set<IndexSet> seen;
  for (int s = 1; s <= r - 1; ++s) {
    for_each_combination(static_cast<int>(g.size()), s, [&](const IndexSet& pos) {
      const IndexSet sub = subset_of(g, pos);
      const int rk = mat.rank_of(sub);
      if (rk >= 1 && rk <= r - 1) seen.insert(mat.closure(sub));
      return true;
    });
  }
  std::vector<Flat> out;
  for (const auto& s : seen) out.push_back({s, mat.rank_of(s)});
  return out;
}

std::vector<Flat> separators_of(const LinearMatroid& mat) {
  const int r = mat.rank();
  std::vector<Flat> out;
  for (const auto& f : flats_of(mat)) {
    const IndexSet rest = set_difference(mat.ground(), f.members);
    if (f.rank + mat.rank_of(rest) == r) out.push_back(f);
  }
  return out;
}

std::vector<IndexSet> bases_of(const LinearMatroid& mat) {
  const IndexSet& g = mat.ground();
  const int r = mat.rank();
  std::vector<IndexSet> out;
  for_each_combination(static_cast<int>(g.size()), r, [&](const IndexSet& pos) {
    const IndexSet sub = subset_of(g, pos);
    if (mat.rank_of(sub) == r) out.push_back(sub);
    return true;
  });
  return out;
}

std::vector<IndexSet> enumerate_bases(const NormalMatrix& u) {
  const int n = u.dim();
  std::vector<IndexSet> out;
  for_each_combination(u.size(), n, [&](const IndexSet& sub) {
    if (std::abs(u.columns(sub).determinant()) > kRankTol) out.push_back(sub);
    return true;
  });
  return out;
}

std::vector<Flat> enumerate_flats(const NormalMatrix& u) { return flats_of(LinearMatroid(u)); }

std::vector<Flat> enumerate_separators(const NormalMatrix& u) {
  return separators_of(LinearMatroid(u));
}

namespace {

void split_blocks(const NormalMatrix& u, const IndexSet& ground, std::vector<IndexSet>& out) {
  const LinearMatroid mat(u, ground);
  const auto seps = separators_of(mat);
  if (seps.empty()) {
    out.push_back(ground);
    return;
  }
  const IndexSet& s = seps.front().members;
  split_blocks(u, s, out);
  split_blocks(u, set_difference(ground, s), out);
}

}  // namespace

std::vector<IndexSet> irreducible_partition(const NormalMatrix& u) {
  std::vector<IndexSet> out;
  split_blocks(u, all_indices(u.size()), out);
  std::sort(out.begin(), out.end(),
            [](const IndexSet& a, const IndexSet& b) { return a.front() < b.front(); });
  return out;
}

MatroidData analyze_matroid(const NormalMatrix& u) {
  MatroidData d;
  const LinearMatroid mat(u);
  d.bases = enumerate_bases(u);
  d.flats = flats_of(mat);
  const int n = u.dim();
  for (const auto& f : d.flats) {
    const IndexSet rest = set_difference(mat.ground(), f.members);
    if (f.rank + mat.rank_of(rest) == n) d.separators.push_back(f);
  }
  d.partition = irreducible_partition(u);
  return d;
}

// ---------------------------------------------------------------------------

std::vector<Eigen::VectorXd> SccPolytope::vertices() const {
  std::vector<Eigen::VectorXd> out;
  for (const auto& chi : vertex_indicators) {
    Eigen::VectorXd v(m);
    for (int i = 0; i < m; ++i) v(i) = static_cast<double>(chi[i]) / n;
    out.push_back(v);
  }
  return out;
}

void SccPolytope::dense(Eigen::MatrixXd& a_eq, Eigen::VectorXd& b_eq, Eigen::MatrixXd& a_le,
                        Eigen::VectorXd& b_le) const {
  int n_eq = 0;
  for (const auto& c : constraints) n_eq += c.equality ? 1 : 0;
  const int n_le = static_cast<int>(constraints.size()) - n_eq;
  a_eq = Eigen::MatrixXd::Zero(n_eq, m);
  b_eq.resize(n_eq);
  a_le = Eigen::MatrixXd::Zero(n_le, m);
  b_le.resize(n_le);
  int ie = 0, il = 0;
  for (const auto& c : constraints) {
    const double rhs = static_cast<double>(c.rank) / n;
    if (c.equality) {
      for (int i : c.support) a_eq(ie, i) = 1.0;
      b_eq(ie++) = rhs;
    } else {
      for (int i : c.support) a_le(il, i) = 1.0;
      b_le(il++) = rhs;
    }
  }
}

bool SccPolytope::indicator_satisfies(const std::vector<int>& chi) const {
  for (int v : chi)
    if (v < 0) return false;
  for (const auto& c : constraints) {
    int s = 0;
    for (int i : c.support) s += chi[i];
    if (c.equality ? s != c.rank : s > c.rank) return false;
  }
  return true;
}

bool SccPolytope::contains(const Eigen::VectorXd& x, double tol) const {
  if (x.size() != m || x.minCoeff() < -tol) return false;
  for (const auto& c : constraints) {
    double s = 0.0;
    for (int i : c.support) s += x(i);
    const double rhs = static_cast<double>(c.rank) / n;
    if (c.equality ? std::abs(s - rhs) > tol : s > rhs + tol) return false;
  }
  return true;
}

SccPolytope build_pscc(const NormalMatrix& u) { return build_pscc(u, analyze_matroid(u)); }

SccPolytope build_pscc(const NormalMatrix& u, const MatroidData& data) {
  SccPolytope p;
  p.n = u.dim();
  p.m = u.size();
  for (const auto& b : data.bases) {
    std::vector<int> chi(p.m, 0);
    for (int i : b) chi[i] = 1;
    p.vertex_indicators.push_back(std::move(chi));
  }
  p.constraints.push_back({all_indices(p.m), p.n, true});
  for (const auto& s : data.separators) p.constraints.push_back({s.members, s.rank, true});
  for (const auto& f : data.flats) {
    const bool is_sep = std::find(data.separators.begin(), data.separators.end(), f) !=
                        data.separators.end();
    if (!is_sep) p.constraints.push_back({f.members, f.rank, false});
  }
  p.dim = p.m - data.d();
  for (const auto& chi : p.vertex_indicators) {
    if (!p.indicator_satisfies(chi)) {
      throw Error(ErrorCode::Internal, "basis indicator violates the H-description");
    }
  }
  // LP-vertex cross-validation: every vertex of the H-description reached by
  // an LP must be one of the basis indicators.
  const auto lp_vertices =
      pscc_vertices_by_lp(p, 32 + 4 * static_cast<int>(p.vertex_indicators.size()), 0x5cc);
  const auto vrep = p.vertices();
  for (const auto& x : lp_vertices) {
    const bool known = std::any_of(vrep.begin(), vrep.end(), [&](const Eigen::VectorXd& v) {
      return (v - x).cwiseAbs().maxCoeff() <= 1e-9;
    });
    if (!known) throw Error(ErrorCode::Internal, "H-description has a vertex outside the V-description");
  }
  return p;
}

std::vector<Eigen::VectorXd> pscc_vertices_by_lp(const SccPolytope& p, int objectives,
                                                 std::uint64_t seed) {
  Eigen::MatrixXd a_eq, a_le;
  Eigen::VectorXd b_eq, b_le;
  p.dense(a_eq, b_eq, a_le, b_le);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Eigen::VectorXd> out;
  for (int k = 0; k < objectives; ++k) {
    Eigen::VectorXd c(p.m);
    for (int i = 0; i < p.m; ++i) c(i) = normal(rng);
    const auto res = solve_lp(c, a_eq, b_eq, a_le, b_le);
    if (res.status != LpStatus::Optimal) continue;
    const bool dup = std::any_of(out.begin(), out.end(), [&](const Eigen::VectorXd& v) {
      return (v - res.x).cwiseAbs().maxCoeff() <= 1e-9;
    });
    if (!dup) out.push_back(res.x);
  }
  return out;
}

namespace {

// Double description: rays of {(x, t) : rows x - rhs t <= 0, x >= 0, t >= 0},
// grown one constraint at a time from the non-negative orthant.
struct DoubleDescription {
  struct Ray {
    Eigen::VectorXd y;
    std::vector<bool> zero;  // processed constraints tight at y
  };
  std::vector<Ray> rays;
  int processed = 0;

  void init(int dim, int constraints) {
    for (int k = 0; k < dim; ++k) {
      Ray r{Eigen::VectorXd::Unit(dim, k), std::vector<bool>(constraints, false)};
      for (int j = 0; j < dim; ++j) r.zero[j] = j != k;
      rays.push_back(std::move(r));
    }
    processed = dim;
  }

  bool adjacent(const Ray& a, const Ray& b) const {
    std::vector<bool> common(a.zero.size());
    for (int j = 0; j < processed; ++j) common[j] = a.zero[j] && b.zero[j];
    for (const auto& r : rays) {
      if (&r == &a || &r == &b) continue;
      bool contains = true;
      for (int j = 0; j < processed && contains; ++j) contains = !common[j] || r.zero[j];
      if (contains) return false;
    }
    return true;
  }

  void add(const Eigen::VectorXd& row, double tol) {
    const int idx = processed;
    std::vector<double> val(rays.size());
    for (std::size_t k = 0; k < rays.size(); ++k) val[k] = row.dot(rays[k].y);
    std::vector<Ray> next;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      if (val[k] > tol) continue;
      Ray r = rays[k];
      r.zero[idx] = val[k] >= -tol;
      next.push_back(std::move(r));
    }
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (val[i] <= tol) continue;
      for (std::size_t j = 0; j < rays.size(); ++j) {
        if (val[j] >= -tol || !adjacent(rays[i], rays[j])) continue;
        Ray r{val[i] * rays[j].y - val[j] * rays[i].y, std::vector<bool>(rays[i].zero.size())};
        r.y /= r.y.norm();
        for (int c = 0; c < idx; ++c) r.zero[c] = rays[i].zero[c] && rays[j].zero[c];
        r.zero[idx] = true;
        next.push_back(std::move(r));
      }
    }
    rays = std::move(next);
    ++processed;
  }
};

Eigen::MatrixXd stacked_rows(const SccPolytope& p, Eigen::VectorXd& rhs, int& n_eq) {
  Eigen::MatrixXd a_eq, a_le;
  Eigen::VectorXd b_eq, b_le;
  p.dense(a_eq, b_eq, a_le, b_le);
  n_eq = static_cast<int>(a_eq.rows());
  const Eigen::Index total = a_eq.rows() + a_le.rows() + p.m;
  Eigen::MatrixXd rows(total, p.m);
  rhs.resize(total);
  rows.topRows(a_eq.rows()) = a_eq;
  rhs.head(a_eq.rows()) = b_eq;
  rows.middleRows(a_eq.rows(), a_le.rows()) = a_le;
  rhs.segment(a_eq.rows(), a_le.rows()) = b_le;
  rows.bottomRows(p.m) = -Eigen::MatrixXd::Identity(p.m, p.m);
  rhs.tail(p.m).setZero();
  return rows;
}

}  // namespace

std::vector<Eigen::VectorXd> pscc_vertices_exhaustive(const SccPolytope& p) {
  Eigen::VectorXd rhs;
  int n_eq = 0;
  const Eigen::MatrixXd rows = stacked_rows(p, rhs, n_eq);
  // Drop the trailing -x <= 0 rows: the starting orthant already encodes them.
  const Eigen::Index general = rows.rows() - p.m;
  std::vector<Eigen::VectorXd> homog;
  for (Eigen::Index r = 0; r < general; ++r) {
    Eigen::VectorXd h(p.m + 1);
    h.head(p.m) = rows.row(r).transpose();
    h(p.m) = -rhs(r);
    homog.push_back(h);
    if (r < n_eq) homog.push_back(-h);
  }
  DoubleDescription dd;
  dd.init(p.m + 1, p.m + 1 + static_cast<int>(homog.size()));
  for (const auto& h : homog) dd.add(h / h.norm(), 1e-10);
  std::vector<Eigen::VectorXd> found;
  for (const auto& r : dd.rays) {
    if (r.y(p.m) <= 1e-10) {
      throw Error(ErrorCode::Internal, "P_scc description has an unbounded direction");
    }
    const Eigen::VectorXd x = r.y.head(p.m) / r.y(p.m);
    bool dup = false;
    for (const auto& v : found) dup = dup || (v - x).cwiseAbs().maxCoeff() <= 1e-9;
    if (!dup) found.push_back(x);
  }
  std::sort(found.begin(), found.end(), [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
  });
  return found;
}

bool pscc_adjacent(const SccPolytope& p, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                   double tol) {
  Eigen::VectorXd rhs;
  int n_eq = 0;
  const Eigen::MatrixXd rows = stacked_rows(p, rhs, n_eq);
  std::vector<int> tight;
  for (Eigen::Index r = 0; r < rows.rows(); ++r) {
    const bool at_x = std::abs(rows.row(r).dot(x) - rhs(r)) <= tol;
    const bool at_y = std::abs(rows.row(r).dot(y) - rhs(r)) <= tol;
    if (r < n_eq || (at_x && at_y)) tight.push_back(static_cast<int>(r));
  }
  Eigen::MatrixXd a(static_cast<Eigen::Index>(tight.size()), p.m);
  for (std::size_t k = 0; k < tight.size(); ++k) a.row(k) = rows.row(tight[k]);
  return numeric_rank(a, 1e-9) == p.m - 1;
}

bool pscc_direct_sum_check(const NormalMatrix& u) {
  const auto data = analyze_matroid(u);
  if (data.d() < 2) {
    throw Error(ErrorCode::NotReducible, "U is irreducible (d = 1); no direct-sum split exists");
  }
  const int m = u.size();
  std::set<std::vector<int>> sum{std::vector<int>(m, 0)};
  for (const auto& block : data.partition) {
    const auto block_bases = bases_of(LinearMatroid(u, block));
    std::set<std::vector<int>> next;
    for (const auto& partial : sum) {
      for (const auto& b : block_bases) {
        auto chi = partial;
        for (int i : b) chi[i] += 1;
        next.insert(chi);
      }
    }
    sum = std::move(next);
  }
  const SccPolytope whole = build_pscc(u, data);
  const std::set<std::vector<int>> vrep(whole.vertex_indicators.begin(),
                                        whole.vertex_indicators.end());
  return vrep == sum;
}

// ---------------------------------------------------------------------------

std::string to_string(SccVerdictKind kind) {
  switch (kind) {
    case SccVerdictKind::Satisfies: return "Satisfies";
    case SccVerdictKind::ViolatesInequality: return "ViolatesInequality";
    case SccVerdictKind::ViolatesEqualityCase: return "ViolatesEqualityCase";
  }
  return "Satisfies";
}

namespace {

void validate_gamma(const NormalMatrix& u, const Eigen::VectorXd& gamma, double tol) {
  if (gamma.size() != u.size()) {
    throw Error(ErrorCode::InvalidInput, "gamma has " + std::to_string(gamma.size()) +
                                             " entries, expected " + std::to_string(u.size()));
  }
  for (Eigen::Index i = 0; i < gamma.size(); ++i) {
    if (!(gamma(i) > 0.0)) {
      throw Error(ErrorCode::NotPositive, "gamma_" + std::to_string(i) + " is not positive");
    }
  }
  if (std::abs(gamma.sum() - 1.0) > tol) {
    throw Error(ErrorCode::NotNormalized,
                "gamma sums to " + std::to_string(gamma.sum()) + ", expected 1");
  }
}

SccVerdict finish(std::vector<SccViolation> v) {
  std::sort(v.begin(), v.end(),
            [](const SccViolation& a, const SccViolation& b) { return a.flat < b.flat; });
  SccVerdict out;
  out.violations = std::move(v);
  if (!out.violations.empty()) {
    out.kind = out.violations.front().kind;
    out.flat = out.violations.front().flat;
  }
  return out;
}

}  // namespace

SccVerdict scc_check(const NormalMatrix& u, const Eigen::VectorXd& gamma, double tol) {
  return scc_check(u, analyze_matroid(u), gamma, tol);
}

SccVerdict scc_check(const NormalMatrix& u, const MatroidData& data, const Eigen::VectorXd& gamma,
                     double tol) {
  validate_gamma(u, gamma, tol);
  const double n = u.dim();
  std::vector<SccViolation> v;
  for (const auto& f : data.flats) {
    double mass = 0.0;
    for (int i : f.members) mass += gamma(i);
    const double bound = f.rank / n;
    const bool is_sep = std::find(data.separators.begin(), data.separators.end(), f) !=
                        data.separators.end();
    if (is_sep) {
      if (std::abs(mass - bound) > tol)
        v.push_back({SccVerdictKind::ViolatesEqualityCase, f.members, mass, bound});
    } else if (mass >= bound - tol) {
      v.push_back({SccVerdictKind::ViolatesInequality, f.members, mass, bound});
    }
  }
  return finish(std::move(v));
}

SccVerdict brute_force_scc(const NormalMatrix& u, const Eigen::VectorXd& gamma, double tol) {
  validate_gamma(u, gamma, tol);
  const int n = u.dim();
  const int m = u.size();
  if (m > 20) throw Error(ErrorCode::InvalidInput, "brute-force SCC is limited to m <= 20");
  const Eigen::MatrixXd& um = u.matrix();
  std::set<IndexSet> seen;
  std::vector<SccViolation> v;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << m); ++mask) {
    IndexSet span_set;
    for (int i = 0; i < m; ++i)
      if (mask & (1u << i)) span_set.push_back(i);
    const Eigen::MatrixXd q = orthonormal_span(select_columns(um, span_set), 1e-9);
    const int dim = static_cast<int>(q.cols());
    if (dim == 0 || dim == n) continue;
    // Columns inside the subspace L = lin(span_set).
    const Eigen::MatrixXd proj = q * q.transpose();
    IndexSet inside, outside;
    for (int i = 0; i < m; ++i) {
      const Eigen::VectorXd ui = um.col(i);
      ((ui - proj * ui).norm() <= 1e-9 ? inside : outside).push_back(i);
    }
    if (!seen.insert(inside).second) continue;
    double mass = 0.0;
    for (int i : inside) mass += gamma(i);
    const double bound = static_cast<double>(dim) / n;
    // A complement containing the remaining normals exists iff lin(outside)
    // meets L only in 0.
    const Eigen::MatrixXd q_out = orthonormal_span(select_columns(um, outside), 1e-9);
    const Eigen::MatrixXd residual =
        (Eigen::MatrixXd::Identity(n, n) - proj) * q_out;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(residual);
    const double smallest = svd.singularValues().size() > 0
                                ? svd.singularValues()(svd.singularValues().size() - 1)
                                : 0.0;
    const bool complementary = q_out.cols() > 0 && smallest > 1e-9;
    if (complementary) {
      if (std::abs(mass - bound) > tol)
        v.push_back({SccVerdictKind::ViolatesEqualityCase, inside, mass, bound});
    } else if (mass >= bound - tol) {
      v.push_back({SccVerdictKind::ViolatesInequality, inside, mass, bound});
    }
  }
  return finish(std::move(v));
}

}  // namespace conevol
