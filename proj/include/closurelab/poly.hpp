#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "closurelab/field.hpp"

namespace closurelab {

/// Dense univariate polynomial over an exact field, coefficients stored low to high.
/// The zero polynomial has no stored coefficients and degree -1.
template <ExactField F>
class Poly {
 public:
  using Scalar = F;

  Poly() = default;
  Poly(const F& c) {  // NOLINT: constants promote implicitly
    if (!field_is_zero(c)) c_.push_back(c);
  }
  Poly(int c) : Poly(F(c)) {}  // NOLINT
  explicit Poly(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly monomial(const F& c, int k) {
    if (field_is_zero(c)) return {};
    std::vector<F> v(static_cast<std::size_t>(k) + 1, F(0));
    v.back() = c;
    return Poly(std::move(v));
  }
  static Poly x() { return monomial(F(1), 1); }
  /// c1 * x + c0
  static Poly linear(const F& c1, const F& c0) { return Poly(std::vector<F>{c0, c1}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  F coeff(int k) const { return (k < 0 || k > degree()) ? F(0) : c_[static_cast<std::size_t>(k)]; }
  F lead() const { return c_.empty() ? F(0) : c_.back(); }
  const std::vector<F>& coeffs() const { return c_; }

  template <class G>
  G eval(const G& at) const {
    G acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * at + G(*it);
    return acc;
  }
  F operator()(const F& at) const { return eval<F>(at); }

  Poly derivative(int times = 1) const {
    Poly p = *this;
    for (int t = 0; t < times; ++t) {
      if (p.c_.size() <= 1) return {};
      std::vector<F> d(p.c_.size() - 1, F(0));
      for (std::size_t k = 1; k < p.c_.size(); ++k) d[k - 1] = p.c_[k] * F(static_cast<int>(k));
      p = Poly(std::move(d));
    }
    return p;
  }

  /// Antiderivative vanishing at 0.
  Poly integral() const {
    if (c_.empty()) return {};
    std::vector<F> v(c_.size() + 1, F(0));
    for (std::size_t k = 0; k < c_.size(); ++k) v[k + 1] = c_[k] / F(static_cast<int>(k + 1));
    return Poly(std::move(v));
  }

  /// p(inner(x))
  Poly compose(const Poly& inner) const {
    Poly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * inner + Poly(*it);
    return acc;
  }

  Poly monic() const {
    if (c_.empty()) return {};
    F inv = F(1) / c_.back();
    Poly r = *this;
    for (auto& x : r.c_) x = x * inv;
    return r;
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] = c_[k] + o.c_[k];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] = c_[k] - o.c_[k];
    trim();
    return *this;
  }
  Poly& operator*=(const F& s) {
    if (field_is_zero(s)) {
      c_.clear();
      return *this;
    }
    for (auto& x : c_) x = x * s;
    trim();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.c_.empty() || b.c_.empty()) return {};
    std::vector<F> v(a.c_.size() + b.c_.size() - 1, F(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (field_is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] = v[i + j] + a.c_[i] * b.c_[j];
    }
    return Poly(std::move(v));
  }
  friend Poly operator*(Poly a, const F& s) { return a *= s; }
  friend Poly operator*(const F& s, Poly a) { return a *= s; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  /// Euclidean division; throws on division by the zero polynomial.
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw std::domain_error("Poly: division by zero polynomial");
    if (degree() < d.degree()) return {Poly{}, *this};
    std::vector<F> rem = c_;
    std::vector<F> quo(c_.size() - d.c_.size() + 1, F(0));
    const F inv = F(1) / d.lead();
    const std::size_t dn = d.c_.size();
    for (std::size_t k = quo.size(); k-- > 0;) {
      const F& top = rem[k + dn - 1];
      if (field_is_zero(top)) continue;
      F q = top * inv;
      quo[k] = q;
      for (std::size_t j = 0; j < dn; ++j) rem[k + j] = rem[k + j] - q * d.c_[j];
    }
    rem.resize(dn - 1);
    return {Poly(std::move(quo)), Poly(std::move(rem))};
  }

  /// Quotient when d divides *this exactly; throws std::domain_error otherwise.
  Poly exact_div(const Poly& d) const {
    auto [q, r] = divmod(d);
    if (!r.is_zero()) throw std::domain_error("Poly: inexact division");
    return q;
  }

  std::string str(const std::string& var = "x") const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t k = c_.size(); k-- > 0;) {
      if (field_is_zero(c_[k])) continue;
      std::string coef = to_string(c_[k]);
      if (!out.empty()) out += " + ";
      if (k == 0) {
        out += coef;
      } else {
        if (coef != "1") out += "(" + coef + ")*";
        out += var;
        if (k > 1) out += "^" + std::to_string(k);
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && field_is_zero(c_.back())) c_.pop_back();
  }
  std::vector<F> c_;
};

template <ExactField F>
bool is_zero(const Poly<F>& p) {
  return p.is_zero();
}

/// Monic greatest common divisor (zero only when both inputs are zero).
template <ExactField F>
Poly<F> gcd(Poly<F> a, Poly<F> b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.degree() == 0 || b.degree() == 0) return Poly<F>(F(1));
  a = a.monic();
  b = b.monic();
  while (!b.is_zero()) {
    if (b.degree() == 0) return Poly<F>(F(1));
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a;
}

template <ExactField F>
Poly<F> pow(const Poly<F>& p, int e) {
  Poly<F> r(F(1));
  for (int i = 0; i < e; ++i) r = r * p;
  return r;
}

}  // namespace closurelab
