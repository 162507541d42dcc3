#include "conevol/semialg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <map>
#include <random>
#include <numeric>
#include <sstream>
#include <thread>

#include "conevol/errors.hpp"
#include "conevol/planar.hpp"

namespace conevol {

namespace {

std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) < b(i) - 1e-12) return true;
    if (a(i) > b(i) + 1e-12) return false;
  }
  return false;
}

}  // namespace

TypeSignature detect_type(const HPolytope& p) {
  if (!(p.volume() > 0.0)) {
    throw Error(ErrorCode::ZeroVolume, "P(U,b) has volume 0; its type is undefined");
  }
  TypeSignature t;
  t.vertex_sets = p.vertex_constraints();
  for (auto& s : t.vertex_sets) std::sort(s.begin(), s.end());
  std::sort(t.vertex_sets.begin(), t.vertex_sets.end());
  std::string key;
  for (const auto& s : t.vertex_sets) {
    if (static_cast<int>(s.size()) > p.dim()) t.non_simple = true;
    for (std::size_t k = 0; k < s.size(); ++k) key += (k ? "," : "") + std::to_string(s[k]);
    key += ";";
  }
  t.id = fnv1a_hex(key);
  t.facets = p.facets();
  return t;
}

TypeSignature detect_type(const NormalMatrix& u, const Eigen::VectorXd& b, const Tolerances& tol) {
  return detect_type(build_polytope(u, b, tol));
}

std::vector<ConeRow> local_type_cone(const NormalMatrix& u, const Eigen::VectorXd& b,
                                     const Tolerances& tol) {
  const TypeSignature t = detect_type(u, b, tol);
  if (t.non_simple) {
    throw Error(ErrorCode::NonSimpleType,
                "P(U,b) is not simple; b lies on a wall between type cones");
  }
  const Eigen::MatrixXd& um = u.matrix();
  const int m = u.size();
  std::vector<ConeRow> rows;
  for (const auto& s : t.vertex_sets) {
    const Eigen::MatrixXd us = u.columns(s);
    // vertex v = U_S^{-T} b_S, so <u_j, v> = (U_S^{-1} u_j) . b_S
    const auto lu = us.partialPivLu();
    for (int j = 0; j < m; ++j) {
      if (std::binary_search(s.begin(), s.end(), j)) continue;
      const Eigen::VectorXd w = lu.solve(Eigen::VectorXd(um.col(j)));
      Eigen::VectorXd row = Eigen::VectorXd::Zero(m);
      row(j) = 1.0;
      for (std::size_t k = 0; k < s.size(); ++k) row(s[k]) -= w(k);
      row /= row.norm();
      rows.push_back({row, s, j});
    }
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ConeRow& a, const ConeRow& b) { return lex_less(a.coeffs, b.coeffs); });
  std::vector<ConeRow> out;
  for (auto& r : rows) {
    if (!out.empty() && (out.back().coeffs - r.coeffs).cwiseAbs().maxCoeff() <= 1e-9) continue;
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------

bool SemialgSystem::full_facet() const {
  return sample_facet_measures.size() == m && sample_facet_measures.minCoeff() > 1e-9;
}

Polynomial SemialgSystem::coupling(int i) const {
  const int nv = 2 * m;
  Polynomial f(nv);
  for (const auto& [e, c] : facets[i].terms()) {
    Exponent ext(nv, 0);
    std::copy(e.begin(), e.end(), ext.begin());
    f.add_term(ext, c);
  }
  Polynomial out = Polynomial::variable(nv, m + i);
  out -= f * Polynomial::variable(nv, i) * (1.0 / n);
  return out;
}

Eigen::VectorXd SemialgSystem::gamma_at(const Eigen::VectorXd& b) const {
  Eigen::VectorXd g(m);
  for (int i = 0; i < m; ++i) g(i) = facets[i].evaluate(b) * b(i) / n;
  return g;
}

namespace {

void build_planar(const NormalMatrix& u, const TypeSignature& t, SemialgSystem& s) {
  const int m = u.size();
  const NormalMatrix sub = u.restricted(t.facets);
  const PlanarFan fan = order_ccw(sub);
  const auto sub_forms = edge_length_forms(fan);
  s.facets.assign(m, Polynomial(m));
  for (std::size_t k = 0; k < t.facets.size(); ++k) {
    const auto& f = sub_forms[k];
    Eigen::VectorXd c = Eigen::VectorXd::Zero(m);
    c(t.facets[f.column]) += f.alpha;
    c(t.facets[f.next]) += f.beta;
    c(t.facets[f.prev]) += f.delta;
    s.facets[t.facets[k]] = Polynomial::linear(c);
  }
  s.volume = Polynomial(m);
  for (int i = 0; i < m; ++i) s.volume += s.facets[i] * Polynomial::variable(m, i) * 0.5;
  s.symbolic = true;
}

// Substitutes z_j = (b_j - b0_j) / scale into a polynomial in z.
Polynomial expand_scaled(const Eigen::VectorXd& coeffs, const std::vector<Exponent>& basis,
                         const Eigen::VectorXd& b0, double scale) {
  const int m = static_cast<int>(b0.size());
  std::vector<Polynomial> z;
  for (int j = 0; j < m; ++j) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(m);
    c(j) = 1.0 / scale;
    z.push_back(Polynomial::linear(c, -b0(j) / scale));
  }
  std::map<std::pair<int, int>, Polynomial> powers;
  auto power = [&](int j, int k) -> const Polynomial& {
    auto key = std::make_pair(j, k);
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    Polynomial p = Polynomial::constant(m, 1.0);
    for (int r = 0; r < k; ++r) p = p * z[j];
    return powers.emplace(key, std::move(p)).first->second;
  };
  Polynomial out(m);
  for (std::size_t t = 0; t < basis.size(); ++t) {
    if (coeffs(t) == 0.0) continue;
    Polynomial term = Polynomial::constant(m, coeffs(t));
    for (int j = 0; j < m; ++j)
      if (basis[t][j] > 0) term = term * power(j, basis[t][j]);
    out += term;
  }
  return out;
}

double evaluate_basis(const Exponent& e, const Eigen::VectorXd& z) {
  double v = 1.0;
  for (Eigen::Index j = 0; j < z.size(); ++j)
    for (int k = 0; k < e[j]; ++k) v *= z(j);
  return v;
}

void build_interpolated(const NormalMatrix& u, const Eigen::VectorXd& b0, const TypeSignature& t,
                        const BuildOptions& opts, SemialgSystem& s) {
  const int n = u.dim();
  const int m = u.size();
  const auto basis = monomials_up_to(m, n);
  const Eigen::Index nb = static_cast<Eigen::Index>(basis.size());
  Eigen::Index nf = 0;
  for (const auto& e : basis)
    if (std::accumulate(e.begin(), e.end(), 0) <= n - 1) ++nf;

  // Largest ball around b0 inside the type cone and the orthant.
  double radius = b0.minCoeff();
  for (const auto& r : s.cone_rows) radius = std::min(radius, r.coeffs.dot(b0));
  if (!(radius > 0.0)) {
    throw Error(ErrorCode::InterpolationIllConditioned,
                "sample lies on the boundary of its type cone");
  }

  const int n_train = static_cast<int>(2 * nb + 10);
  const int n_test = static_cast<int>(std::max<Eigen::Index>(10, nb / 2));
  std::mt19937_64 rng(opts.seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  double scale = 0.9 * radius / std::sqrt(static_cast<double>(m));
  for (int attempt = 0; attempt < 6; ++attempt, scale *= 0.5) {
    Eigen::MatrixXd zs(n_train + n_test, m);
    Eigen::VectorXd vol(n_train + n_test);
    Eigen::MatrixXd phi(n_train + n_test, m);
    bool type_changed = false;
    for (int k = 0; k < n_train + n_test && !type_changed; ++k) {
      for (int j = 0; j < m; ++j) zs(k, j) = unit(rng);
      const Eigen::VectorXd b = b0 + scale * zs.row(k).transpose();
      const HPolytope p = build_polytope(u, b, opts.tol);
      if (detect_type(p).id != t.id) type_changed = true;
      vol(k) = p.volume();
      phi.row(k) = p.facet_measures().transpose();
    }
    if (type_changed) continue;

    Eigen::MatrixXd design(n_train, nb);
    for (int k = 0; k < n_train; ++k)
      for (Eigen::Index c = 0; c < nb; ++c)
        design(k, c) = evaluate_basis(basis[c], zs.row(k).transpose());
    const auto qr_v = design.colPivHouseholderQr();
    const Eigen::MatrixXd design_f = design.leftCols(nf);
    const auto qr_f = design_f.colPivHouseholderQr();
    if (qr_v.rank() < nb || qr_f.rank() < nf) {
      throw Error(ErrorCode::InterpolationIllConditioned, "interpolation design is rank deficient");
    }
    const Eigen::VectorXd cv = qr_v.solve(vol.head(n_train));
    std::vector<Eigen::VectorXd> cf(m);
    for (int i = 0; i < m; ++i) {
      cf[i] = t.facets.end() != std::find(t.facets.begin(), t.facets.end(), i)
                  ? Eigen::VectorXd(qr_f.solve(phi.col(i).head(n_train)))
                  : Eigen::VectorXd::Zero(nf);
    }

    double worst = 0.0;
    for (int k = n_train; k < n_train + n_test; ++k) {
      Eigen::VectorXd row(nb);
      for (Eigen::Index c = 0; c < nb; ++c) row(c) = evaluate_basis(basis[c], zs.row(k).transpose());
      worst = std::max(worst, std::abs(row.dot(cv) - vol(k)) / std::max(1.0, std::abs(vol(k))));
      for (int i = 0; i < m; ++i) {
        const double pred = row.head(nf).dot(cf[i]);
        worst = std::max(worst, std::abs(pred - phi(k, i)) / std::max(1.0, std::abs(phi(k, i))));
      }
    }
    s.interpolation_residual = worst;
    if (worst > opts.residual_limit) {
      throw Error(ErrorCode::InterpolationIllConditioned,
                  "held-out interpolation residual " + std::to_string(worst) + " exceeds limit");
    }
    const std::vector<Exponent> basis_f(basis.begin(), basis.begin() + nf);
    s.volume = expand_scaled(cv, basis, b0, scale).pruned(1e-9);
    s.facets.clear();
    for (int i = 0; i < m; ++i) s.facets.push_back(expand_scaled(cf[i], basis_f, b0, scale).pruned(1e-9));
    s.symbolic = false;
    return;
  }
  throw Error(ErrorCode::InterpolationIllConditioned,
              "could not find a sampling box inside the type cone");
}

}  // namespace

SemialgSystem build_system(const NormalMatrix& u, const Eigen::VectorXd& b,
                           const BuildOptions& opts) {
  const HPolytope p = build_polytope(u, b, opts.tol);
  const TypeSignature t = detect_type(p);
  if (t.non_simple) {
    throw Error(ErrorCode::NonSimpleType,
                "P(U,b) is not simple; choose b inside a type cone");
  }
  SemialgSystem s;
  s.n = u.dim();
  s.m = u.size();
  s.type_id = t.id;
  s.sample = b;
  s.sample_facet_measures = p.facet_measures();
  s.sample_volume = p.volume();
  s.cone_rows = local_type_cone(u, b, opts.tol);
  if (s.n == 2) {
    build_planar(u, t, s);
  } else {
    build_interpolated(u, b, t, opts, s);
  }
  return s;
}

// ---------------------------------------------------------------------------

namespace {

struct TrialResult {
  bool ok = false;
  TypeSignature type;
  Eigen::VectorXd b;
};

TrialResult run_trial(const NormalMatrix& u, int trial, std::uint64_t seed, const Tolerances& tol) {
  const int m = u.size();
  TrialResult r;
  Eigen::VectorXd b(m);
  if (trial == 0) {
    b.setOnes();
  } else {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(trial));
    std::uniform_real_distribution<double> logu(std::log(1e-2), 0.0);
    for (int i = 0; i < m; ++i) b(i) = std::exp(logu(rng));
  }
  const double scale = b.maxCoeff();
  const double eps_list[] = {0.0, 0.05, 0.02, 0.01};
  for (double eps_rel : eps_list) {
    Eigen::VectorXd bb = b;
    const double eps = eps_rel * scale;
    double pw = eps;
    for (int i = 0; i < m; ++i, pw *= eps_rel) bb(i) += pw;
    const HPolytope p = build_polytope(u, bb, tol);
    if (!(p.volume() > 0.0)) continue;
    TypeSignature t = detect_type(p);
    if (t.non_simple) continue;
    r.ok = true;
    r.type = std::move(t);
    r.b = bb;
    return r;
  }
  return r;
}

}  // namespace

std::vector<TypeSample> sample_type_cones(const NormalMatrix& u, int trials, std::uint64_t seed,
                                          const Tolerances& tol) {
  if (trials < 1) throw Error(ErrorCode::InvalidInput, "trials must be at least 1");
  const unsigned workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  std::vector<TrialResult> results(trials);
  const int chunk = (trials + static_cast<int>(workers) - 1) / static_cast<int>(workers);
  std::vector<std::future<void>> jobs;
  for (int start = 0; start < trials; start += chunk) {
    const int stop = std::min(trials, start + chunk);
    jobs.push_back(std::async(std::launch::async, [&, start, stop] {
      for (int k = start; k < stop; ++k) results[k] = run_trial(u, k, seed, tol);
    }));
  }
  for (auto& j : jobs) j.get();

  std::map<std::string, TypeSample> by_id;
  for (int k = 0; k < trials; ++k) {
    const auto& r = results[k];
    if (!r.ok) continue;
    auto [it, inserted] = by_id.try_emplace(r.type.id);
    TypeSample& s = it->second;
    if (inserted) {
      s.type_id = r.type.id;
      s.b = r.b;
      s.full_facet = static_cast<int>(r.type.facets.size()) == u.size();
      s.first_trial = k;
    }
    ++s.hits;
  }
  std::vector<TypeSample> out;
  for (auto& [id, s] : by_id) out.push_back(std::move(s));
  return out;
}

std::vector<TypeSample> filter_full_facet_types(const std::vector<TypeSample>& samples) {
  std::vector<TypeSample> out;
  for (const auto& s : samples)
    if (s.full_facet) out.push_back(s);
  return out;
}

std::vector<SemialgSystem> filter_full_facet_types(const std::vector<SemialgSystem>& systems) {
  std::vector<SemialgSystem> out;
  for (const auto& s : systems)
    if (s.full_facet()) out.push_back(s);
  return out;
}

std::vector<std::string> variable_names(int m, bool with_gamma) {
  std::vector<std::string> names;
  for (int i = 1; i <= m; ++i) names.push_back("b" + std::to_string(i));
  if (with_gamma)
    for (int i = 1; i <= m; ++i) names.push_back("g" + std::to_string(i));
  return names;
}

std::string to_smtlib(const SemialgSystem& s) {
  const auto bnames = variable_names(s.m, false);
  const auto all = variable_names(s.m, true);
  std::ostringstream os;
  os << "; type " << s.type_id << ", n = " << s.n << ", m = " << s.m << "\n";
  os << "(set-logic QF_NRA)\n";
  for (const auto& v : all) os << "(declare-fun " << v << " () Real)\n";
  for (const auto& v : bnames) os << "(assert (>= " << v << " 0.0))\n";
  for (const auto& r : s.cone_rows) {
    os << "(assert (> " << to_smtlib(Polynomial::linear(r.coeffs), bnames) << " 0.0))\n";
  }
  os << "(assert (= " << to_smtlib(s.volume, bnames) << " 1.0))\n";
  for (int i = 0; i < s.m; ++i) {
    os << "(assert (= " << to_smtlib(s.coupling(i), all) << " 0.0))\n";
  }
  os << "(check-sat)\n";
  return os.str();
}

}  // namespace conevol
