#include "conevol/io.hpp"

#include <fstream>
#include <sstream>

#include "conevol/errors.hpp"

namespace conevol {

namespace {

Eigen::VectorXd number_array(const Json& j, const std::string& what) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidInput, "\"" + what + "\" must be an array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) {
      throw Error(ErrorCode::InvalidInput,
                  "\"" + what + "\"[" + std::to_string(i) + "] is not a number");
    }
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::string msg = "malformed JSON at byte " + std::to_string(e.byte);
    // Line and column of the offending byte.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    msg += " (line " + std::to_string(line) + ", column " + std::to_string(col) + "): " + e.what();
    throw Error(ErrorCode::InvalidInput, msg);
  }
}

}  // namespace

InputDocument parse_input(const std::string& text) {
  const Json j = parse_json(text);
  if (!j.is_object()) throw Error(ErrorCode::InvalidInput, "input must be a JSON object");
  if (!j.contains("normals")) throw Error(ErrorCode::InvalidInput, "missing \"normals\"");
  const Json& cols = j["normals"];
  if (!cols.is_array() || cols.empty()) {
    throw Error(ErrorCode::InvalidInput, "\"normals\" must be a non-empty array of vectors");
  }
  InputDocument doc;
  const Eigen::VectorXd first = number_array(cols[0], "normals[0]");
  doc.n = static_cast<int>(first.size());
  if (!j.contains("n")) throw Error(ErrorCode::InvalidInput, "missing \"n\"");
  if (!j["n"].is_number_integer()) throw Error(ErrorCode::InvalidInput, "\"n\" must be an integer");
  if (j["n"].get<int>() != doc.n) {
    throw Error(ErrorCode::InvalidInput, "\"n\" = " + std::to_string(j["n"].get<int>()) +
                                             " but normals have length " + std::to_string(doc.n));
  }
  const int m = static_cast<int>(cols.size());
  doc.normals.resize(doc.n, m);
  for (int i = 0; i < m; ++i) {
    const Eigen::VectorXd c = number_array(cols[i], "normals[" + std::to_string(i) + "]");
    if (c.size() != doc.n) {
      throw Error(ErrorCode::InvalidInput,
                  "normals[" + std::to_string(i) + "] has length " + std::to_string(c.size()) +
                      ", expected " + std::to_string(doc.n));
    }
    doc.normals.col(i) = c;
  }
  auto vec_field = [&](const char* key) -> std::optional<Eigen::VectorXd> {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    Eigen::VectorXd v = number_array(j[key], key);
    if (v.size() != m) {
      throw Error(ErrorCode::InvalidInput, std::string("\"") + key + "\" has " +
                                               std::to_string(v.size()) + " entries, expected " +
                                               std::to_string(m));
    }
    return v;
  };
  doc.b = vec_field("b");
  doc.gamma = vec_field("gamma");
  return doc;
}

InputDocument read_input_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot read input file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_input(ss.str());
}

Eigen::VectorXd parse_vector(const std::string& text, const std::string& what) {
  return number_array(parse_json(text), what);
}

Json to_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Json to_json(const Eigen::MatrixXd& m) {
  Json a = Json::array();
  for (Eigen::Index c = 0; c < m.cols(); ++c) a.push_back(to_json(Eigen::VectorXd(m.col(c))));
  return a;
}

Json to_json(const IndexSet& s) {
  Json a = Json::array();
  for (int i : s) a.push_back(i);
  return a;
}

Json to_json(const Polynomial& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) {
    Json t;
    t["c"] = round_significant(c, 12);
    t["e"] = e;
    terms.push_back(t);
  }
  Json out;
  out["terms"] = terms;
  return out;
}

Polynomial polynomial_from_json(const Json& j, int nvars) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array()) {
    throw Error(ErrorCode::InvalidInput, "polynomial must be {\"terms\": [...]}");
  }
  Polynomial p(nvars);
  for (const auto& t : j["terms"]) {
    const auto e = t.at("e").get<Exponent>();
    if (static_cast<int>(e.size()) != nvars) {
      throw Error(ErrorCode::InvalidInput, "exponent vector has the wrong length");
    }
    p.add_term(e, t.at("c").get<double>());
  }
  return p;
}

Json to_json(const HPolytope& p) {
  Json out;
  out["n"] = p.dim();
  out["m"] = p.size();
  out["normals"] = to_json(p.normals().matrix());
  out["b"] = to_json(p.rhs());
  Json verts = Json::array();
  for (const auto& v : p.vertices()) verts.push_back(to_json(v));
  out["vertices"] = verts;
  Json inc = Json::array();
  for (const auto& s : p.facet_incidence()) inc.push_back(to_json(s));
  out["facet_incidence"] = inc;
  out["facet_measures"] = to_json(p.facet_measures());
  out["volume"] = p.volume();
  const ConeVolumeVector g = cone_volume_vector(p);
  out["gamma"] = to_json(g.gamma);
  out["total"] = g.total;
  return out;
}

namespace {

Json flats_json(const std::vector<Flat>& flats) {
  Json a = Json::array();
  for (const auto& f : flats) {
    Json o;
    o["members"] = to_json(f.members);
    o["rank"] = f.rank;
    a.push_back(o);
  }
  return a;
}

}  // namespace

Json to_json(const MatroidData& d) {
  Json out;
  Json bases = Json::array();
  for (const auto& b : d.bases) bases.push_back(to_json(b));
  out["bases"] = bases;
  out["flats"] = flats_json(d.flats);
  out["separators"] = flats_json(d.separators);
  Json part = Json::array();
  for (const auto& s : d.partition) part.push_back(to_json(s));
  out["partition"] = part;
  out["d"] = d.d();
  return out;
}

Json to_json(const SccPolytope& p) {
  Json out;
  out["n"] = p.n;
  out["m"] = p.m;
  out["dim"] = p.dim;
  out["vertex_indicators"] = p.vertex_indicators;
  Json cons = Json::array();
  for (const auto& c : p.constraints) {
    Json o;
    o["support"] = to_json(c.support);
    o["relation"] = c.equality ? "=" : "<=";
    o["rank"] = c.rank;
    o["rhs"] = static_cast<double>(c.rank) / p.n;
    cons.push_back(o);
  }
  out["constraints"] = cons;
  return out;
}

Json to_json(const SccVerdict& v) {
  Json out;
  out["kind"] = to_string(v.kind);
  out["flat"] = v.satisfies() ? Json(nullptr) : to_json(v.flat);
  Json viol = Json::array();
  for (const auto& x : v.violations) {
    Json o;
    o["kind"] = to_string(x.kind);
    o["flat"] = to_json(x.flat);
    o["mass"] = x.mass;
    o["bound"] = x.bound;
    viol.push_back(o);
  }
  out["violations"] = viol;
  return out;
}

Json to_json(const TypeCone& c) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < c.rows.rows(); ++r) {
    Json o;
    o["coeffs"] = to_json(Eigen::VectorXd(c.rows.row(r).transpose()));
    o["vertex_line"] = c.provenance[r].first;
    o["constraint"] = c.provenance[r].second;
    rows.push_back(o);
  }
  Json out;
  out["rows"] = rows;
  return out;
}

Json to_json(const ConeRow& r) {
  Json o;
  o["coeffs"] = to_json(r.coeffs);
  o["vertex"] = to_json(r.vertex);
  o["constraint"] = r.constraint;
  return o;
}

Json to_json(const SemialgSystem& s) {
  Json out;
  out["type_id"] = s.type_id;
  out["n"] = s.n;
  out["m"] = s.m;
  out["variables"] = variable_names(s.m, true);
  out["sample"] = to_json(s.sample);
  out["symbolic"] = s.symbolic;
  out["full_facet"] = s.full_facet();
  if (!s.symbolic) out["interpolation_residual"] = s.interpolation_residual;
  Json rows = Json::array();
  for (const auto& r : s.cone_rows) rows.push_back(to_json(r));
  out["cone_rows"] = rows;
  out["volume_poly"] = to_json(s.volume);
  Json facets = Json::array();
  for (const auto& f : s.facets) facets.push_back(to_json(f));
  out["facet_polys"] = facets;
  Json coupling = Json::array();
  for (int i = 0; i < s.m; ++i) coupling.push_back(to_json(s.coupling(i)));
  out["coupling"] = coupling;
  return out;
}

Json to_json(const TypeSample& t) {
  Json o;
  o["type_id"] = t.type_id;
  o["full_facet"] = t.full_facet;
  o["hits"] = t.hits;
  o["first_trial"] = t.first_trial;
  o["b"] = to_json(t.b);
  return o;
}

Json to_json(const SolutionFamily& f) {
  Json out;
  out["support"] = to_json(f.support);
  out["expected_defect"] = f.expected_defect;
  out["starts_run"] = f.starts_run;
  out["converged_starts"] = f.converged_starts;
  Json sols = Json::array();
  for (const auto& s : f.solutions) {
    Json o;
    o["b"] = to_json(s.b);
    o["residual"] = s.residual;
    o["rank_defect"] = s.rank_defect;
    o["on_boundary"] = s.on_boundary;
    sols.push_back(o);
  }
  out["solutions"] = sols;
  return out;
}

}  // namespace conevol
