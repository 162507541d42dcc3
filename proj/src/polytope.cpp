#include "conevol/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "conevol/errors.hpp"

namespace conevol {

NormalMatrix::NormalMatrix(Eigen::MatrixXd columns, const Tolerances& tol)
    : columns_(std::move(columns)) {
  const int n = dim();
  const int m = size();
  if (n < 1) throw Error(ErrorCode::InvalidInput, "normal matrix needs at least one row");
  if (m < n + 1) {
    std::ostringstream os;
    os << "need at least n+1 = " << n + 1 << " normals to span R^" << n << ", got " << m;
    throw Error(ErrorCode::NotPositivelySpanning, os.str());
  }
  if (!columns_.allFinite()) throw Error(ErrorCode::InvalidInput, "normals contain non-finite values");
  for (int i = 0; i < m; ++i) {
    const double norm = columns_.col(i).norm();
    if (norm <= 1e-300) {
      throw Error(ErrorCode::ZeroColumn, "column " + std::to_string(i) + " is zero");
    }
    if (std::abs(norm - 1.0) > tol.normalization) {
      std::ostringstream os;
      os << "column " << i << " has norm " << norm << " (expected unit vectors; canonicalize first)";
      throw Error(ErrorCode::InvalidInput, os.str());
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if ((columns_.col(i) - columns_.col(j)).norm() <= tol.incidence) {
        throw Error(ErrorCode::DuplicateDirection,
                    "columns " + std::to_string(i) + " and " + std::to_string(j) +
                        " define the same direction");
      }
    }
  }
  if (numeric_rank(columns_, tol.incidence) < n) {
    throw Error(ErrorCode::NotPositivelySpanning, "normals do not span R^" + std::to_string(n));
  }
  for (int j = 0; j < m; ++j) {
    if (!in_positive_hull(columns_, -columns_.col(j), tol.incidence)) {
      throw Error(ErrorCode::NotPositivelySpanning,
                  "-u_" + std::to_string(j) + " is not in the positive hull of the normals");
    }
  }
}

NormalMatrix NormalMatrix::restricted(std::span<const int> idx) const {
  return NormalMatrix(select_columns(columns_, idx));
}

CanonicalInput canonicalize(const Eigen::MatrixXd& raw_normals, const Eigen::VectorXd& b,
                            const Tolerances& tol) {
  if (raw_normals.cols() != b.size()) {
    throw Error(ErrorCode::InvalidInput, "b has " + std::to_string(b.size()) +
                                             " entries but there are " +
                                             std::to_string(raw_normals.cols()) + " normals");
  }
  Eigen::MatrixXd unit = raw_normals;
  Eigen::VectorXd scaled = b;
  for (Eigen::Index i = 0; i < unit.cols(); ++i) {
    const double norm = unit.col(i).norm();
    if (!(norm > 1e-300)) {
      throw Error(ErrorCode::ZeroColumn, "column " + std::to_string(i) + " is zero");
    }
    unit.col(i) /= norm;
    scaled(i) /= norm;
  }
  return CanonicalInput{NormalMatrix(std::move(unit), tol), std::move(scaled)};
}

namespace {

struct FaceMeasure {
  double volume = 0.0;
  Eigen::VectorXd centroid;  // world coordinates
};

// Shared, read-only view of the vertex structure used by the recursion.
struct VertexData {
  const Eigen::MatrixXd& normals;
  const std::vector<Eigen::VectorXd>& vertices;
  const std::vector<IndexSet>& tight;
  double tol;
};

bool contains(const IndexSet& s, int j) { return std::binary_search(s.begin(), s.end(), j); }

Eigen::MatrixXd gather(const std::vector<Eigen::VectorXd>& pts, const IndexSet& idx) {
  Eigen::MatrixXd out(pts.front().size(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t c = 0; c < idx.size(); ++c) out.col(c) = pts[idx[c]];
  return out;
}

// Measure of the k-face spanned by `face` (vertex indices), which lies in the
// affine plane origin + span(chart). Pyramid decomposition around the vertex
// centroid; the sub-facets are found combinatorially from vertex/constraint
// incidence, so no tolerance is re-applied in projected coordinates.
FaceMeasure face_measure(const VertexData& data, const IndexSet& face,
                         const Eigen::MatrixXd& chart, const Eigen::VectorXd& origin) {
  const Eigen::Index k = chart.cols();
  const Eigen::MatrixXd world = gather(data.vertices, face);
  FaceMeasure out;
  out.centroid = world.rowwise().mean();
  if (k == 0) {
    out.volume = 1.0;
    return out;
  }
  const Eigen::MatrixXd local = chart.transpose() * (world.colwise() - origin);
  if (k == 1) {
    const double lo = local.minCoeff();
    const double hi = local.maxCoeff();
    out.volume = hi - lo;
    out.centroid = origin + chart.col(0) * (0.5 * (lo + hi));
    return out;
  }
  if (affine_dimension(local, data.tol) < k) return out;

  const Eigen::VectorXd apex = local.rowwise().mean();
  const Eigen::VectorXd apex_world = origin + chart * apex;
  std::set<IndexSet> seen;
  Eigen::VectorXd weighted = Eigen::VectorXd::Zero(origin.size());
  double total = 0.0;
  for (Eigen::Index j = 0; j < data.normals.cols(); ++j) {
    IndexSet sub;
    IndexSet local_idx;
    for (std::size_t c = 0; c < face.size(); ++c) {
      if (contains(data.tight[face[c]], static_cast<int>(j))) {
        sub.push_back(face[c]);
        local_idx.push_back(static_cast<int>(c));
      }
    }
    if (static_cast<Eigen::Index>(sub.size()) < k || sub.size() == face.size()) continue;
    if (!seen.insert(sub).second) continue;
    Eigen::MatrixXd sub_local(k, static_cast<Eigen::Index>(local_idx.size()));
    for (std::size_t c = 0; c < local_idx.size(); ++c) sub_local.col(c) = local.col(local_idx[c]);
    if (affine_dimension(sub_local, data.tol) != k - 1) continue;
    Eigen::VectorXd w = chart.transpose() * data.normals.col(j);
    const double r = w.norm();
    if (r < 1e-12) continue;
    w /= r;
    const double height = w.dot(sub_local.rowwise().mean() - apex);
    const Eigen::MatrixXd sub_chart = chart * orthonormal_complement(w);
    const Eigen::VectorXd sub_origin = gather(data.vertices, sub).rowwise().mean();
    const FaceMeasure facet = face_measure(data, sub, sub_chart, sub_origin);
    const double cone = height * facet.volume / static_cast<double>(k);
    const double kk = static_cast<double>(k);
    const Eigen::VectorXd cone_centroid = apex_world + kk / (kk + 1.0) * (facet.centroid - apex_world);
    total += cone;
    weighted += cone * cone_centroid;
  }
  out.volume = total;
  if (total > 0.0) out.centroid = weighted / total;
  return out;
}

}  // namespace

IndexSet HPolytope::facets() const {
  IndexSet out;
  for (int i = 0; i < size(); ++i)
    if (facet_measures_(i) > 0.0) out.push_back(i);
  return out;
}

HPolytope build_polytope(const NormalMatrix& u, const Eigen::VectorXd& b, const Tolerances& tol) {
  const int n = u.dim();
  const int m = u.size();
  if (b.size() != m) {
    throw Error(ErrorCode::InvalidInput, "b has " + std::to_string(b.size()) +
                                             " entries, expected " + std::to_string(m));
  }
  if (!b.allFinite()) throw Error(ErrorCode::InvalidInput, "b contains non-finite values");
  for (int i = 0; i < m; ++i) {
    if (b(i) < -tol.incidence) {
      throw Error(ErrorCode::InvalidInput,
                  "b_" + std::to_string(i) + " is negative; P(U,b) requires b >= 0");
    }
  }
  HPolytope p(u, b);
  p.incidence_tol_ = tol.incidence;
  const Eigen::MatrixXd& um = u.matrix();

  auto slack_ok = [&](const Eigen::VectorXd& x) {
    const Eigen::VectorXd s = um.transpose() * x - b;
    for (int i = 0; i < m; ++i)
      if (s(i) > tol.incidence * (1.0 + std::abs(b(i)))) return false;
    return true;
  };

  for_each_combination(m, n, [&](const IndexSet& sub) {
    const Eigen::MatrixXd a = select_columns(um, sub).transpose();
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (std::abs(lu.determinant()) < 1e-12) return true;
    Eigen::VectorXd rhs(n);
    for (int r = 0; r < n; ++r) rhs(r) = b(sub[r]);
    const Eigen::VectorXd x = lu.solve(rhs);
    if (!slack_ok(x)) return true;
    for (const auto& v : p.vertices_) {
      if ((v - x).norm() <= tol.incidence * (1.0 + v.norm())) return true;
    }
    p.vertices_.push_back(x);
    return true;
  });
  if (p.vertices_.empty()) {
    throw Error(ErrorCode::Internal, "no vertices found for a polytope containing the origin");
  }

  p.vertex_tight_.resize(p.vertices_.size());
  p.incidence_.assign(m, {});
  for (std::size_t v = 0; v < p.vertices_.size(); ++v) {
    const Eigen::VectorXd s = um.transpose() * p.vertices_[v] - b;
    for (int i = 0; i < m; ++i) {
      if (std::abs(s(i)) <= tol.incidence * (1.0 + std::abs(b(i)))) {
        p.vertex_tight_[v].push_back(i);
        p.incidence_[i].push_back(static_cast<int>(v));
      }
    }
  }

  Eigen::MatrixXd all(n, static_cast<Eigen::Index>(p.vertices_.size()));
  for (std::size_t v = 0; v < p.vertices_.size(); ++v) all.col(v) = p.vertices_[v];
  p.affine_dim_ = affine_dimension(all, tol.incidence);

  p.facet_measures_ = Eigen::VectorXd::Zero(m);
  for (int i = 0; i < m; ++i) p.facet_measures_(i) = facet_volume(p, i);

  if (p.affine_dim_ == n) {
    const VertexData data{um, p.vertices_, p.vertex_tight_, tol.incidence};
    IndexSet everything(p.vertices_.size());
    for (std::size_t v = 0; v < everything.size(); ++v) everything[v] = static_cast<int>(v);
    const FaceMeasure whole =
        face_measure(data, everything, Eigen::MatrixXd::Identity(n, n), Eigen::VectorXd::Zero(n));
    p.volume_ = whole.volume;
    p.centroid_ = whole.centroid;
  } else {
    p.volume_ = 0.0;
    p.centroid_ = all.rowwise().mean();
  }
  return p;
}

double facet_volume(const HPolytope& p, int i) {
  const int n = p.dim();
  if (i < 0 || i >= p.size()) throw Error(ErrorCode::InvalidInput, "facet index out of range");
  const IndexSet& face = p.incidence_[i];
  if (face.empty()) return 0.0;
  const Eigen::MatrixXd pts = gather(p.vertices_, face);
  if (affine_dimension(pts, p.incidence_tol_) != n - 1) return 0.0;
  const VertexData data{p.normals().matrix(), p.vertices_, p.vertex_tight_, p.incidence_tol_};
  const Eigen::VectorXd normal = p.normals().column(i);
  const Eigen::MatrixXd chart =
      n == 1 ? Eigen::MatrixXd(1, 0) : orthonormal_complement(normal);
  return face_measure(data, face, chart, pts.rowwise().mean()).volume;
}

ConeVolumeVector cone_volume_vector(const HPolytope& p) {
  ConeVolumeVector out;
  const double n = static_cast<double>(p.dim());
  out.gamma = p.rhs().cwiseProduct(p.facet_measures()) / n;
  out.gamma = out.gamma.cwiseMax(0.0);
  out.total = out.gamma.sum();
  return out;
}

Eigen::VectorXd cone_volumes(const NormalMatrix& u, const Eigen::VectorXd& b, const Tolerances& tol) {
  return cone_volume_vector(build_polytope(u, b, tol)).gamma;
}

Eigen::VectorXd normalize_to_unit_volume(const NormalMatrix& u, const Eigen::VectorXd& b,
                                         const Tolerances& tol) {
  const HPolytope p = build_polytope(u, b, tol);
  if (!(p.volume() > 0.0)) {
    throw Error(ErrorCode::ZeroVolume, "P(U,b) has volume 0 and cannot be rescaled to volume 1");
  }
  return b * std::pow(p.volume(), -1.0 / static_cast<double>(u.dim()));
}

ConeVolumeVector translate_cone_volumes(const HPolytope& p, const Eigen::VectorXd& t) {
  const Eigen::MatrixXd& um = p.normals().matrix();
  if (t.size() != p.dim()) throw Error(ErrorCode::InvalidInput, "translation has wrong dimension");
  const Eigen::VectorXd shifted = p.rhs() + um.transpose() * t;
  for (int i = 0; i < p.size(); ++i) {
    if (shifted(i) < -p.incidence_tol() * (1.0 + std::abs(p.rhs()(i)))) {
      throw Error(ErrorCode::OriginLeavesBody,
                  "origin leaves t + P: (b + U^T t)_" + std::to_string(i) + " < 0");
    }
  }
  const ConeVolumeVector base = cone_volume_vector(p);
  ConeVolumeVector out;
  const double n = static_cast<double>(p.dim());
  out.gamma = base.gamma + p.facet_measures().cwiseProduct(um.transpose() * t) / n;
  out.total = out.gamma.sum();
  return out;
}

std::vector<ContinuityStep> continuity_probe(const NormalMatrix& u, const Eigen::VectorXd& b,
                                             const Eigen::VectorXd& direction, int steps,
                                             const Tolerances& tol) {
  const Eigen::VectorXd base = cone_volumes(u, b, tol);
  std::vector<ContinuityStep> out;
  double h = 1.0;
  for (int s = 0; s < steps; ++s) {
    h /= 10.0;
    const Eigen::VectorXd moved = b + h * direction;
    out.push_back({h, (cone_volumes(u, moved, tol) - base).norm()});
  }
  return out;
}

std::optional<SparseWitness> sparse_vertex_witness(const NormalMatrix& u, const Tolerances& tol) {
  const int n = u.dim();
  const int m = u.size();
  const Eigen::MatrixXd& um = u.matrix();
  std::optional<IndexSet> found;
  for (int s = n + 1; s <= std::min(2 * n - 1, m) && !found; ++s) {
    for_each_combination(m, s, [&](const IndexSet& sub) {
      if (positively_spans(select_columns(um, sub), tol.incidence)) {
        found = sub;
        return false;
      }
      return true;
    });
  }
  if (!found) return std::nullopt;

  // P(S, 1) circumscribes the unit ball, so every u in S supports a facet.
  const NormalMatrix sub = u.restricted(*found);
  const HPolytope inner = build_polytope(sub, Eigen::VectorXd::Ones(sub.size()), tol);
  Eigen::VectorXd b(m);
  for (int i = 0; i < m; ++i) {
    double h = -std::numeric_limits<double>::infinity();
    for (const auto& v : inner.vertices()) h = std::max(h, um.col(i).dot(v));
    b(i) = h;
  }
  const HPolytope whole = build_polytope(u, b, tol);
  const IndexSet facets = whole.facets();
  std::size_t best = 0;
  std::size_t best_count = 0;
  for (std::size_t v = 0; v < whole.vertices().size(); ++v) {
    std::size_t count = 0;
    for (int i : whole.vertex_constraints()[v])
      if (std::binary_search(facets.begin(), facets.end(), i)) ++count;
    if (count > best_count) {
      best_count = count;
      best = v;
    }
  }
  Eigen::VectorXd moved = b - um.transpose() * whole.vertices()[best];
  moved = moved.cwiseMax(0.0);
  moved = normalize_to_unit_volume(u, moved, tol);

  SparseWitness w;
  w.positive_subset = *found;
  w.b = moved;
  w.gamma = cone_volume_vector(build_polytope(u, moved, tol));
  for (int i = 0; i < m; ++i)
    if (w.gamma.gamma(i) > tol.incidence) ++w.support_size;
  return w;
}

}  // namespace conevol
