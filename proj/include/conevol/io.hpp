#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "conevol/inverse.hpp"
#include "conevol/matroid.hpp"
#include "conevol/planar.hpp"
#include "conevol/polynomial.hpp"
#include "conevol/polytope.hpp"
#include "conevol/semialg.hpp"

namespace conevol {

using Json = nlohmann::ordered_json;

/// {"n": int, "normals": [[f64; n]; m], "b": [f64; m]?, "gamma": [f64; m]?}
struct InputDocument {
  int n = 0;
  Eigen::MatrixXd normals;  ///< raw, n x m
  std::optional<Eigen::VectorXd> b;
  std::optional<Eigen::VectorXd> gamma;
};

/// Throws Error{InvalidInput} with a position-annotated message on malformed
/// JSON or schema violations.
InputDocument parse_input(const std::string& text);
InputDocument read_input_file(const std::string& path);
/// A bare JSON array of numbers.
Eigen::VectorXd parse_vector(const std::string& text, const std::string& what);

Json to_json(const Eigen::VectorXd& v);
Json to_json(const Eigen::MatrixXd& columns_as_rows);  ///< list of columns
Json to_json(const IndexSet& s);

/// {"terms": [{"c": f64, "e": [int]}]}, graded-lex, 12 significant digits.
Json to_json(const Polynomial& p);
Polynomial polynomial_from_json(const Json& j, int nvars);

Json to_json(const HPolytope& p);
Json to_json(const MatroidData& d);
Json to_json(const SccPolytope& p);
Json to_json(const SccVerdict& v);
Json to_json(const TypeCone& c);
Json to_json(const ConeRow& r);
Json to_json(const SemialgSystem& s);
Json to_json(const TypeSample& t);
Json to_json(const SolutionFamily& f);

}  // namespace conevol
