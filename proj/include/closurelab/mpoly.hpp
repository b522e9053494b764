#pragma once

#include <map>
#include <string>
#include <vector>

#include "closurelab/frac.hpp"
#include "closurelab/rational.hpp"

namespace closurelab {

using Bindings = std::map<std::string, Rational>;

/// Sparse multivariate Laurent polynomial over Q with named variables (the ParamPoly type).
/// Variables are kept sorted; a variable is dropped as soon as no term uses it, so
/// structural equality is mathematical equality.
class MPoly {
 public:
  using Exponents = std::vector<int>;

  MPoly() = default;
  MPoly(const Rational& c);  // NOLINT
  MPoly(int c) : MPoly(Rational(c)) {}  // NOLINT

  static MPoly var(const std::string& name) { return monomial(name, 1); }
  static MPoly monomial(const std::string& name, int exponent, const Rational& c = Rational(1));
  /// Embeds a univariate polynomial as a polynomial in `name`.
  static MPoly from_poly(const Poly<Rational>& p, const std::string& name);

  const std::vector<std::string>& variables() const { return vars_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return vars_.empty(); }
  bool uses(const std::string& name) const;
  /// The constant term (zero when absent).
  Rational constant_term() const;

  int degree(const std::string& name) const;      // -1 for the zero polynomial
  int min_degree(const std::string& name) const;  // 0 when the variable is absent
  int total_degree() const;
  /// Coefficient of name^k as a polynomial in the remaining variables.
  MPoly coeff(const std::string& name, int k) const;

  /// Full evaluation; throws std::invalid_argument when a variable is unbound.
  Rational eval(const Bindings& at) const;
  /// Partial substitution of numbers for the bound variables only.
  MPoly subs(const Bindings& at) const;
  /// Substitutes a polynomial for a variable (only non-negative exponents of `name`).
  MPoly subs(const std::string& name, const MPoly& value) const;
  MPoly rename(const std::string& from, const std::string& to) const;

  MPoly operator-() const;
  friend MPoly operator+(const MPoly& a, const MPoly& b);
  friend MPoly operator-(const MPoly& a, const MPoly& b);
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
  MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
  friend bool operator==(const MPoly& a, const MPoly& b) { return a.vars_ == b.vars_ && a.terms_ == b.terms_; }

  /// Univariate view in `name`; every other variable must be bound in `at`.
  Poly<Rational> to_poly(const std::string& name, const Bindings& at = {}) const;
  /// Polynomial in `main` whose coefficients are rational functions of the single
  /// remaining variable `param` (used for symbolic work in g).
  Poly<RatFunc> to_poly_ratfunc(const std::string& main, const std::string& param) const;

  std::string str() const;

 private:
  MPoly(std::vector<std::string> vars, std::map<Exponents, Rational> terms);
  MPoly extend(const std::vector<std::string>& vars) const;
  void prune();

  std::vector<std::string> vars_;
  std::map<Exponents, Rational> terms_;
};

MPoly pow(const MPoly& p, int e);
inline bool is_zero(const MPoly& p) { return p.is_zero(); }
inline std::string to_string(const MPoly& p) { return p.str(); }

/// Embeds a univariate polynomial over Q(param) whose coefficients are polynomials
/// (throws std::domain_error on a genuine denominator).
MPoly from_poly_ratfunc(const Poly<RatFunc>& p, const std::string& main, const std::string& param);

}  // namespace closurelab
