#include "conevol/polynomial.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <algorithm>
#include <numeric>
#include <sstream>

#include "conevol/errors.hpp"

namespace conevol {

namespace {

int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

void check_vars(int a, int b) {
  if (a != b) throw Error(ErrorCode::Internal, "polynomials over different variable counts");
}

}  // namespace

bool GradedLexLess::operator()(const Exponent& a, const Exponent& b) const {
  const int da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  return a > b;
}

Polynomial Polynomial::constant(int nvars, double c) {
  Polynomial p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(int nvars, int i) {
  Polynomial p(nvars);
  Exponent e(nvars, 0);
  e[i] = 1;
  p.add_term(e, 1.0);
  return p;
}

Polynomial Polynomial::linear(const Eigen::VectorXd& coeffs, double c0) {
  const int nv = static_cast<int>(coeffs.size());
  Polynomial p = constant(nv, c0);
  for (int i = 0; i < nv; ++i) {
    Exponent e(nv, 0);
    e[i] = 1;
    p.add_term(e, coeffs(i));
  }
  return p;
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
  return d;
}

void Polynomial::add_term(const Exponent& e, double c) {
  if (static_cast<int>(e.size()) != nvars_) {
    throw Error(ErrorCode::Internal, "exponent vector has the wrong length");
  }
  if (c == 0.0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

double Polynomial::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? 0.0 : it->second;
}

double Polynomial::evaluate(const Eigen::VectorXd& x) const {
  double s = 0.0;
  for (const auto& [e, c] : terms_) {
    double t = c;
    for (int i = 0; i < nvars_; ++i)
      for (int k = 0; k < e[i]; ++k) t *= x(i);
    s += t;
  }
  return s;
}

Polynomial Polynomial::derivative(int i) const {
  Polynomial out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponent d = e;
    d[i] -= 1;
    out.add_term(d, c * e[i]);
  }
  return out;
}

Polynomial Polynomial::pruned(double rel_tol) const {
  double mx = 0.0;
  for (const auto& [e, c] : terms_) mx = std::max(mx, std::abs(c));
  Polynomial out(nvars_);
  for (const auto& [e, c] : terms_)
    if (std::abs(c) > rel_tol * mx) out.terms_.emplace(e, c);
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_vars(nvars_, o.nvars_);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  check_vars(nvars_, o.nvars_);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  check_vars(a.nvars_, b.nvars_);
  Polynomial out(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Exponent e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

double max_coefficient_difference(const Polynomial& a, const Polynomial& b) {
  double d = 0.0;
  for (const auto& [e, c] : a.terms_) d = std::max(d, std::abs(c - b.coefficient(e)));
  for (const auto& [e, c] : b.terms_) d = std::max(d, std::abs(c - a.coefficient(e)));
  return d;
}

std::vector<Exponent> monomials_up_to(int nvars, int max_degree) {
  std::vector<Exponent> out;
  Exponent e(nvars, 0);
  // Enumerate all exponent vectors with sum <= max_degree by odometer.
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == nvars) {
      out.push_back(e);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[i] = k;
      rec(i + 1, left - k);
    }
    e[i] = 0;
  };
  rec(0, max_degree);
  std::sort(out.begin(), out.end(), GradedLexLess{});
  return out;
}

double round_significant(double c, int digits) {
  if (c == 0.0 || !std::isfinite(c)) return c;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, c);
  return std::strtod(buf, nullptr);
}

std::string format_coefficient(double c) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", c);
  return buf;
}

namespace {

std::string monomial_factors(const Exponent& e, const std::vector<std::string>& names,
                             const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (int k = 0; k < e[i]; ++k) {
      if (!out.empty()) out += sep;
      out += names.at(i);
    }
  }
  return out;
}

// SMT-LIB has no exponent notation: fixed-point with 12 significant digits.
std::string smt_decimal(double mag) {
  const int lead = mag > 0 ? static_cast<int>(std::floor(std::log10(mag))) : 0;
  const int decimals = std::clamp(11 - lead, 1, 60);
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(decimals);
  os << mag;
  std::string s = os.str();
  while (s.size() > 1 && s.back() == '0' && s[s.size() - 2] != '.') s.pop_back();
  return s;
}

}  // namespace

std::string to_string(const Polynomial& p, const std::vector<std::string>& names) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    const std::string mono = monomial_factors(e, names, "*");
    const double mag = std::abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (mono.empty()) {
      out += format_coefficient(mag);
    } else if (format_coefficient(mag) == "1") {
      out += mono;
    } else {
      out += format_coefficient(mag) + "*" + mono;
    }
    first = false;
  }
  return out;
}

std::string to_smtlib(const Polynomial& p, const std::vector<std::string>& names) {
  if (p.is_zero()) return "0.0";
  std::vector<std::string> parts;
  for (const auto& [e, c] : p.terms()) {
    std::string coef = smt_decimal(std::abs(c));
    if (c < 0) coef = "(- " + coef + ")";
    const std::string mono = monomial_factors(e, names, " ");
    parts.push_back(mono.empty() ? coef : "(* " + coef + " " + mono + ")");
  }
  if (parts.size() == 1) return parts.front();
  std::string out = "(+";
  for (const auto& s : parts) out += " " + s;
  return out + ")";
}

}  // namespace conevol
