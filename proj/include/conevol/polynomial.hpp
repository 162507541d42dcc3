#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace conevol {

using Exponent = std::vector<int>;

/// Graded-lex order: total degree ascending, then exponent vectors in
/// descending lexicographic order (b_1 before b_2 within a degree).
struct GradedLexLess {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

/// Sparse real polynomial in a fixed number of variables.
class Polynomial {
 public:
  using TermMap = std::map<Exponent, double, GradedLexLess>;

  explicit Polynomial(int nvars = 0) : nvars_(nvars) {}

  static Polynomial constant(int nvars, double c);
  static Polynomial variable(int nvars, int i);
  /// sum_i coeffs(i) * b_i + c0
  static Polynomial linear(const Eigen::VectorXd& coeffs, double c0 = 0.0);

  int nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;

  /// Adds c * b^e; terms that cancel to exactly 0 are removed.
  void add_term(const Exponent& e, double c);
  double coefficient(const Exponent& e) const;

  double evaluate(const Eigen::VectorXd& x) const;
  Polynomial derivative(int i) const;
  /// Drops terms with |c| <= tol * max|c|.
  Polynomial pruned(double rel_tol) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(double s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
  friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  /// Max coefficient difference over the union of supports.
  friend double max_coefficient_difference(const Polynomial& a, const Polynomial& b);

 private:
  int nvars_;
  TermMap terms_;
};

/// All exponent vectors in `nvars` variables of total degree <= max_degree,
/// graded-lex ordered.
std::vector<Exponent> monomials_up_to(int nvars, int max_degree);

/// Human-readable rendering with the given variable names, e.g.
/// "0.5*b1*b2 - b3".
std::string to_string(const Polynomial& p, const std::vector<std::string>& names);

/// SMT-LIB prefix term, e.g. "(+ (* 0.5 b1 b2) (* -1 b3))".
std::string to_smtlib(const Polynomial& p, const std::vector<std::string>& names);

/// Decimal rendering with 12 significant digits, as used for serialization.
std::string format_coefficient(double c);
double round_significant(double c, int digits = 12);

}  // namespace conevol
