#include "conevol/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>
#include <thread>

#include "conevol/errors.hpp"
#include "conevol/matroid.hpp"
#include "conevol/planar.hpp"
#include "conevol/semialg.hpp"

namespace conevol {

Eigen::VectorXd inverse_residual(const NormalMatrix& u, const Eigen::VectorXd& b,
                                 const Eigen::VectorXd& target, const Tolerances& tol) {
  return cone_volumes(u, b, tol) - target;
}

namespace {

bool planar_jacobian(const NormalMatrix& u, const Eigen::VectorXd& b, Eigen::MatrixXd& jac) {
  if (u.dim() != 2) return false;
  const PlanarFan fan = order_ccw(u);
  const auto forms = edge_length_forms(fan);
  const int m = u.size();
  for (const auto& f : forms)
    if (f(b) <= 1e-12) return false;
  jac = Eigen::MatrixXd::Zero(m, m);
  for (const auto& f : forms) {
    const int i = f.column;
    // gamma_i = f_i(b) b_i / 2
    jac(i, i) += 0.5 * (f.alpha * b(i) + f(b));
    jac(i, f.next) += 0.5 * f.beta * b(i);
    jac(i, f.prev) += 0.5 * f.delta * b(i);
  }
  return true;
}

}  // namespace

Eigen::MatrixXd cone_volume_jacobian(const NormalMatrix& u, const Eigen::VectorXd& b,
                                     const Tolerances& tol) {
  Eigen::MatrixXd jac;
  if (planar_jacobian(u, b, jac)) return jac;
  const int m = u.size();
  jac.resize(m, m);
  for (int j = 0; j < m; ++j) {
    const double h = 1e-6 * (1.0 + std::abs(b(j)));
    Eigen::VectorXd hi = b, lo = b;
    hi(j) += h;
    if (b(j) >= h) {
      lo(j) -= h;
      jac.col(j) = (cone_volumes(u, hi, tol) - cone_volumes(u, lo, tol)) / (2.0 * h);
    } else {
      jac.col(j) = (cone_volumes(u, hi, tol) - cone_volumes(u, b, tol)) / h;
    }
  }
  return jac;
}

namespace {

struct StartResult {
  Eigen::VectorXd b;
  double residual = std::numeric_limits<double>::infinity();
  bool converged = false;
};

StartResult newton(const NormalMatrix& u, Eigen::VectorXd b, const Eigen::VectorXd& target,
                   const SolveOptions& opts) {
  StartResult r;
  Eigen::VectorXd res = inverse_residual(u, b, target, opts.tol);
  double norm = res.norm();
  r.b = b;
  r.residual = norm;
  for (int it = 0; it < opts.max_iterations && norm > opts.residual_tol; ++it) {
    const Eigen::MatrixXd jac = cone_volume_jacobian(u, b, opts.tol);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd s = svd.singularValues();
    Eigen::VectorXd coef = svd.matrixU().transpose() * res;
    for (Eigen::Index k = 0; k < s.size(); ++k) coef(k) *= s(k) / (s(k) * s(k) + 1e-12);
    const Eigen::VectorXd step = -(svd.matrixV() * coef);

    double t = 1.0;
    bool accepted = false;
    while (t >= 1e-10) {
      const Eigen::VectorXd cand = (b + t * step).cwiseMax(0.0);
      const Eigen::VectorXd cres = inverse_residual(u, cand, target, opts.tol);
      const double cnorm = cres.norm();
      if (cnorm <= (1.0 - 1e-4 * t) * norm) {
        b = cand;
        res = cres;
        norm = cnorm;
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (norm < r.residual) {
      r.residual = norm;
      r.b = b;
    }
    if (!accepted) break;
  }
  r.converged = r.residual <= opts.residual_tol;
  return r;
}

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

std::vector<Eigen::VectorXd> start_points(const NormalMatrix& u, const SolveOptions& opts) {
  const auto types = filter_full_facet_types(sample_type_cones(u, opts.type_trials, opts.seed, opts.tol));
  std::vector<Eigen::VectorXd> reps;
  for (const auto& t : types) reps.push_back(normalize_to_unit_volume(u, t.b, opts.tol));
  if (reps.empty()) reps.push_back(normalize_to_unit_volume(u, Eigen::VectorXd::Ones(u.size()), opts.tol));
  std::vector<Eigen::VectorXd> out;
  for (int s = 0; s < opts.starts; ++s) {
    Eigen::VectorXd b = reps[s % reps.size()];
    if (s >= static_cast<int>(reps.size())) {
      std::mt19937_64 rng(opts.seed + 0x51ed27ULL + static_cast<std::uint64_t>(s));
      std::uniform_real_distribution<double> jitter(0.8, 1.2);
      for (Eigen::Index i = 0; i < b.size(); ++i) b(i) *= jitter(rng);
    }
    out.push_back(b);
  }
  return out;
}

SolutionFamily solve_full_support(const NormalMatrix& u, const Eigen::VectorXd& target,
                                  const SolveOptions& opts) {
  const auto starts = start_points(u, opts);
  const int k = static_cast<int>(starts.size());
  std::vector<StartResult> results(k);
  int ran = k;
  if (opts.stop_at_first) {
    ran = 0;
    for (int s = 0; s < k; ++s) {
      results[s] = newton(u, starts[s], target, opts);
      ++ran;
      if (results[s].converged) break;
    }
    results.resize(ran);
  } else {
    const int workers = static_cast<int>(std::max(1u, std::min(8u, std::thread::hardware_concurrency())));
    std::vector<std::future<void>> jobs;
    for (int w = 0; w < workers; ++w) {
      jobs.push_back(std::async(std::launch::async, [&, w] {
        for (int s = w; s < k; s += workers) results[s] = newton(u, starts[s], target, opts);
      }));
    }
    for (auto& j : jobs) j.get();
  }

  SolutionFamily fam;
  fam.starts_run = ran;
  std::vector<StartResult> good;
  const StartResult* best = nullptr;
  for (const auto& r : results) {
    if (!best || r.residual < best->residual) best = &r;
    if (r.converged) good.push_back(r);
  }
  fam.converged_starts = static_cast<int>(good.size());
  if (good.empty()) {
    throw NoConvergenceError("no start reached residual " + std::to_string(opts.residual_tol) +
                                 "; best residual " + std::to_string(best ? best->residual : NAN),
                             best ? best->residual : NAN,
                             best ? best->b : Eigen::VectorXd());
  }
  std::sort(good.begin(), good.end(), [](const StartResult& a, const StartResult& b) {
    if (a.residual != b.residual) return a.residual < b.residual;
    return lex_less(a.b, b.b);
  });
  for (const auto& r : good) {
    const bool dup = std::any_of(fam.solutions.begin(), fam.solutions.end(), [&](const Solution& s) {
      return (s.b - r.b).norm() <= 1e-6;
    });
    if (dup) continue;
    Solution sol;
    sol.b = r.b;
    sol.residual = r.residual;
    try {
      sol.rank_defect = dimension_probe(u, r.b, opts.tol);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::OnTypeConeBoundary) throw;
      sol.on_boundary = true;
      const Eigen::MatrixXd jac = cone_volume_jacobian(u, r.b, opts.tol);
      sol.rank_defect = u.size() - numeric_rank(jac, 1e-7);
    }
    fam.solutions.push_back(std::move(sol));
  }
  fam.expected_defect = analyze_matroid(u).d() - 1;
  return fam;
}

}  // namespace

SolutionFamily solve_inverse(const NormalMatrix& u, const Eigen::VectorXd& target,
                             const SolveOptions& opts) {
  const int m = u.size();
  if (target.size() != m) {
    throw Error(ErrorCode::InvalidInput, "gamma has " + std::to_string(target.size()) +
                                             " entries, expected " + std::to_string(m));
  }
  if (target.minCoeff() < 0.0) {
    throw Error(ErrorCode::NotPositive, "gamma has a negative entry");
  }
  if (std::abs(target.sum() - 1.0) > 1e-9) {
    throw Error(ErrorCode::NotNormalized,
                "gamma sums to " + std::to_string(target.sum()) + ", expected 1");
  }
  IndexSet support;
  for (int i = 0; i < m; ++i)
    if (target(i) > 0.0) support.push_back(i);
  if (static_cast<int>(support.size()) == m) {
    SolutionFamily fam = solve_full_support(u, target, opts);
    fam.support = support;
    return fam;
  }

  if (!positively_spans(u.columns(support))) {
    throw Error(ErrorCode::DegenerateSupport,
                "the normals with positive gamma do not positively span R^n");
  }
  const NormalMatrix sub = u.restricted(support);
  Eigen::VectorXd sub_target(support.size());
  for (std::size_t k = 0; k < support.size(); ++k) sub_target(k) = target(support[k]);
  SolutionFamily fam = solve_full_support(sub, sub_target, opts);
  fam.support = support;
  for (auto& sol : fam.solutions) {
    const HPolytope p = build_polytope(sub, sol.b, opts.tol);
    Eigen::VectorXd full(m);
    std::size_t k = 0;
    for (int i = 0; i < m; ++i) {
      if (k < support.size() && support[k] == i) {
        full(i) = sol.b(k++);
        continue;
      }
      double h = -std::numeric_limits<double>::infinity();
      for (const auto& v : p.vertices()) h = std::max(h, u.matrix().col(i).dot(v));
      full(i) = std::max(h, 0.0);
    }
    sol.b = full;
    sol.residual = inverse_residual(u, full, target, opts.tol).norm();
  }
  return fam;
}

Eigen::VectorXd scaling_family(const NormalMatrix& u, const Eigen::VectorXd& b, double lambda,
                               int block) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::InvalidInput, "lambda must be positive");
  const auto partition = irreducible_partition(u);
  const int d = static_cast<int>(partition.size());
  if (d < 2) throw Error(ErrorCode::Irreducible, "U is irreducible (d = 1); no scaling family");
  if (block < 0) block = d - 1;
  if (block >= d) throw Error(ErrorCode::InvalidInput, "block index out of range");
  const IndexSet& s = partition[block];
  const int n = u.dim();
  const int r = numeric_rank(u.columns(s), 1e-9);
  const double other = std::pow(lambda, -static_cast<double>(r) / (n - r));
  Eigen::VectorXd out = b * other;
  for (int i : s) out(i) = lambda * b(i);
  return out;
}

int dimension_probe(const NormalMatrix& u, const Eigen::VectorXd& b, const Tolerances& tol) {
  const HPolytope p = build_polytope(u, b, tol);
  const TypeSignature t = detect_type(p);
  if (t.non_simple || static_cast<int>(t.facets.size()) < u.size() ||
      p.facet_measures().minCoeff() <= 1e-9) {
    throw Error(ErrorCode::OnTypeConeBoundary,
                "b is on a type-cone wall; the Jacobian rank is not locally meaningful");
  }
  const Eigen::MatrixXd jac = cone_volume_jacobian(u, b, tol);
  return u.size() - numeric_rank(jac, 1e-7);
}

std::vector<ScanEntry> feasibility_scan(const NormalMatrix& u,
                                        const std::vector<Eigen::VectorXd>& gammas,
                                        const SolveOptions& opts) {
  SolveOptions o = opts;
  o.stop_at_first = true;
  const MatroidData data = analyze_matroid(u);
  std::vector<ScanEntry> out;
  for (const auto& g : gammas) {
    ScanEntry e;
    e.gamma = g;
    try {
      e.in_relint_pscc = scc_check(u, data, g).satisfies();
    } catch (const Error&) {
      e.in_relint_pscc = false;
    }
    try {
      const SolutionFamily fam = solve_inverse(u, g, o);
      e.solved = true;
      e.b = fam.solutions.front().b;
      e.residual = fam.solutions.front().residual;
    } catch (const NoConvergenceError& err) {
      e.solved = false;
      e.b = err.best_iterate();
      e.residual = err.best_residual();
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace conevol
