#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "closurelab/poly.hpp"

namespace closurelab {

/// Reduced univariate rational function num/den over F: gcd(num, den) = 1, den monic.
template <ExactField F>
class Frac {
 public:
  using Scalar = F;

  Frac() : num_(), den_(F(1)) {}
  Frac(int c) : num_(F(c)), den_(F(1)) {}  // NOLINT
  Frac(const F& c) : num_(c), den_(F(1)) {}  // NOLINT
  Frac(const Rational& c)  // NOLINT
    requires(!std::same_as<F, Rational>)
      : num_(F(c)), den_(F(1)) {}
  Frac(Poly<F> p) : num_(std::move(p)), den_(F(1)) {}  // NOLINT
  Frac(Poly<F> n, Poly<F> d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

  static Frac var() { return Frac(Poly<F>::x()); }

  const Poly<F>& num() const { return num_; }
  const Poly<F>& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  bool is_constant() const { return is_polynomial() && num_.degree() <= 0; }
  /// Value of a constant fraction; throws when the fraction depends on the variable.
  F constant() const {
    if (!is_constant()) throw std::domain_error("Frac: not a constant");
    return num_.coeff(0);
  }

  template <class G>
  G eval(const G& at) const {
    return num_.template eval<G>(at) / den_.template eval<G>(at);
  }
  F operator()(const F& at) const {
    F d = den_(at);
    if (field_is_zero(d)) throw std::domain_error("Frac: evaluation at a pole");
    return num_(at) / d;
  }

  Frac derivative() const {
    return Frac(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
  }

  Frac operator-() const {
    Frac r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend Frac operator+(const Frac& a, const Frac& b) {
    if (a.den_ == b.den_) return Frac(a.num_ + b.num_, a.den_);
    return Frac(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Frac operator-(const Frac& a, const Frac& b) { return a + (-b); }
  friend Frac operator*(const Frac& a, const Frac& b) {
    if (a.is_zero() || b.is_zero()) return Frac();
    if (a.is_polynomial() && b.is_polynomial()) {
      Frac r;
      r.num_ = a.num_ * b.num_;
      return r;
    }
    return Frac(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Frac operator/(const Frac& a, const Frac& b) {
    if (b.is_zero()) throw std::domain_error("Frac: division by zero");
    return Frac(a.num_ * b.den_, a.den_ * b.num_);
  }
  Frac& operator+=(const Frac& o) { return *this = *this + o; }
  Frac& operator-=(const Frac& o) { return *this = *this - o; }
  Frac& operator*=(const Frac& o) { return *this = *this * o; }
  Frac& operator/=(const Frac& o) { return *this = *this / o; }

  friend bool operator==(const Frac& a, const Frac& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  std::string str(const std::string& var = "x") const {
    if (is_polynomial()) return num_.str(var);
    return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
  }

 private:
  void normalize() {
    if (den_.is_zero()) throw std::domain_error("Frac: zero denominator");
    if (num_.is_zero()) {
      den_ = Poly<F>(F(1));
      return;
    }
    if (den_.degree() > 0) {
      Poly<F> g = gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = num_.exact_div(g);
        den_ = den_.exact_div(g);
      }
    }
    F lc = den_.lead();
    if (!(lc == F(1))) {
      F inv = F(1) / lc;
      num_ *= inv;
      den_ *= inv;
    }
  }

  Poly<F> num_;
  Poly<F> den_;
};

template <ExactField F>
bool is_zero(const Frac<F>& f) {
  return f.is_zero();
}

/// Rational functions in one parameter over Q; the field used for symbolic work in g.
using RatFunc = Frac<Rational>;

inline std::string to_string(const RatFunc& f) { return f.str("g"); }

}  // namespace closurelab

namespace Eigen {
template <>
struct NumTraits<closurelab::RatFunc> : GenericNumTraits<closurelab::RatFunc> {
  using Real = closurelab::RatFunc;
  using NonInteger = closurelab::RatFunc;
  using Literal = closurelab::RatFunc;
  using Nested = closurelab::RatFunc;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 50,
    AddCost = 200,
    MulCost = 400
  };
  static inline int digits10() { return 0; }
  static inline int max_digits10() { return 0; }
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
};
}  // namespace Eigen
