#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "closurelab/errors.hpp"
#include "closurelab/frac.hpp"

namespace closurelab {

/// Differential operator sum_k f_k(eta) d^k/deta^k whose coefficients are
/// rational functions with denominators restricted to powers of one monic
/// polynomial xi (the denominator polynomial of the deformed system).
///
/// Each coefficient is stored as num / xi^e with xi not dividing num whenever e > 0.
/// That form is unique, so operator equality is structural and no gcd is ever needed.
template <ExactField F>
class DiffOp {
 public:
  struct Coeff {
    Poly<F> num;
    int e = 0;
    friend bool operator==(const Coeff&, const Coeff&) = default;
  };

  DiffOp() : xi_(F(1)) {}
  explicit DiffOp(Poly<F> xi) : xi_(xi.is_zero() ? Poly<F>(F(1)) : xi.monic()) {}

  /// Multiplication by the polynomial p.
  static DiffOp mul(const Poly<F>& p, const Poly<F>& xi = Poly<F>(F(1))) {
    DiffOp d(xi);
    if (!p.is_zero()) d.c_[0] = Coeff{p, 0};
    return d;
  }
  static DiffOp identity(const Poly<F>& xi = Poly<F>(F(1))) { return mul(Poly<F>(F(1)), xi); }
  /// d^k/deta^k.
  static DiffOp d(int k, const Poly<F>& xi = Poly<F>(F(1))) {
    DiffOp r(xi);
    r.c_[k] = Coeff{Poly<F>(F(1)), 0};
    return r;
  }
  /// Builds an operator from general rational-function coefficients; every
  /// denominator must be (a constant times) a power of xi.
  static DiffOp from_fracs(const std::map<int, Frac<F>>& coeffs, const Poly<F>& xi) {
    DiffOp r(xi);
    for (const auto& [k, f] : coeffs) {
      if (f.is_zero()) continue;
      int e = 0;
      Poly<F> den = f.den();
      while (den.degree() > 0) {
        if (r.xi_.degree() <= 0) throw AlgebraMismatch("DiffOp: denominator outside the xi powers");
        auto [q, rem] = den.divmod(r.xi_);
        if (!rem.is_zero()) throw AlgebraMismatch("DiffOp: denominator outside the xi powers");
        den = q;
        ++e;
      }
      Poly<F> num = f.num() * (F(1) / den.coeff(0));
      r.c_[k] = r.reduce(Coeff{num, e});
    }
    return r;
  }

  const Poly<F>& xi() const { return xi_; }
  bool is_zero() const { return c_.empty(); }
  int order() const { return c_.empty() ? -1 : c_.rbegin()->first; }
  const std::map<int, Coeff>& coeffs() const { return c_; }
  Coeff coeff(int k) const {
    auto it = c_.find(k);
    return it == c_.end() ? Coeff{} : it->second;
  }
  Frac<F> coeff_frac(int k) const {
    Coeff c = coeff(k);
    return Frac<F>(c.num, pow(xi_, c.e));
  }
  /// Largest power of xi in any denominator.
  int max_denominator_power() const {
    int e = 0;
    for (const auto& [k, c] : c_) e = std::max(e, c.e);
    return e;
  }
  /// Total number of stored numerator coefficients; a cheap size measure.
  std::size_t size() const {
    std::size_t s = 0;
    for (const auto& [k, c] : c_) s += c.num.coeffs().size();
    return s;
  }

  DiffOp operator-() const {
    DiffOp r = *this;
    for (auto& [k, c] : r.c_) c.num = -c.num;
    return r;
  }
  friend DiffOp operator+(const DiffOp& a, const DiffOp& b) {
    DiffOp r(common_xi(a, b));
    r.c_ = a.c_;
    for (const auto& [k, c] : b.c_) r.accumulate(k, c);
    r.finish();
    return r;
  }
  friend DiffOp operator-(const DiffOp& a, const DiffOp& b) { return a + (-b); }
  friend DiffOp operator*(const F& s, const DiffOp& a) {
    if (field_is_zero(s)) return DiffOp(a.xi_);
    DiffOp r = a;
    for (auto& [k, c] : r.c_) c.num *= s;
    return r;
  }
  friend DiffOp operator*(const DiffOp& a, const F& s) { return s * a; }

  /// Operator product a o b via the Leibniz rule d^k o f = sum_j C(k,j) f^(j) d^(k-j).
  friend DiffOp operator*(const DiffOp& a, const DiffOp& b) {
    DiffOp r(common_xi(a, b));
    if (a.is_zero() || b.is_zero()) return r;
    const int kmax = a.order();
    for (const auto& [l, bl] : b.c_) {
      // derivatives of b_l up to order kmax
      std::vector<Coeff> der{bl};
      for (int j = 1; j <= kmax; ++j) der.push_back(r.derive(der.back()));
      for (const auto& [k, ak] : a.c_) {
        F binom(1);
        for (int j = 0; j <= k; ++j) {
          if (j > 0) binom = binom * F(k - j + 1) / F(j);
          const Coeff& dj = der[static_cast<std::size_t>(j)];
          if (dj.num.is_zero()) continue;
          r.accumulate(k - j + l, Coeff{(ak.num * dj.num) * binom, ak.e + dj.e});
        }
      }
    }
    r.finish();
    return r;
  }
  friend bool operator==(const DiffOp& a, const DiffOp& b) {
    if (a.c_ != b.c_) return false;
    return a.c_.empty() || a.xi_ == b.xi_ || a.max_denominator_power() == 0;
  }

  /// Image of a polynomial as num / xi^e in lowest terms.
  Coeff apply_frac(const Poly<F>& p) const {
    DiffOp r(xi_);
    std::vector<Poly<F>> der{p};
    for (const auto& [k, c] : c_) {
      while (static_cast<int>(der.size()) <= k) der.push_back(der.back().derivative());
      const Poly<F>& dk = der[static_cast<std::size_t>(k)];
      if (dk.is_zero()) continue;
      r.accumulate(0, Coeff{c.num * dk, c.e});
    }
    r.finish();
    return r.coeff(0);
  }
  /// Image of a polynomial that must again be a polynomial.
  Poly<F> apply(const Poly<F>& p) const {
    Coeff c = apply_frac(p);
    if (c.e > 0) throw NonPolynomialImage("operator image is not a polynomial");
    return c.num;
  }

  std::string str(const std::string& var = "eta") const {
    if (c_.empty()) return "0";
    std::string out;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      if (!out.empty()) out += " + ";
      out += "[" + it->second.num.str(var) + "]";
      if (it->second.e > 0) out += "/xi^" + std::to_string(it->second.e);
      if (it->first > 0) out += "*d^" + std::to_string(it->first);
    }
    return out;
  }

 private:
  static Poly<F> common_xi(const DiffOp& a, const DiffOp& b) {
    if (a.xi_ == b.xi_) return a.xi_;
    if (b.max_denominator_power() == 0 && (b.xi_.degree() <= 0 || a.xi_.degree() > 0)) return a.xi_;
    if (a.max_denominator_power() == 0) return b.xi_;
    throw AlgebraMismatch("DiffOp: operators built over different denominator polynomials");
  }

  const Poly<F>& xi_pow(int e) const {
    while (static_cast<int>(pow_cache_.size()) <= e)
      pow_cache_.push_back(pow_cache_.empty() ? Poly<F>(F(1)) : pow_cache_.back() * xi_);
    return pow_cache_[static_cast<std::size_t>(e)];
  }

  Coeff derive(const Coeff& c) const {
    if (c.num.is_zero()) return c;
    if (c.e == 0) return Coeff{c.num.derivative(), 0};
    Poly<F> n = c.num.derivative() * xi_ - c.num * xi_.derivative() * F(c.e);
    return reduce(Coeff{n, c.e + 1});
  }

  Coeff reduce(Coeff c) const {
    if (c.num.is_zero()) return Coeff{};
    while (c.e > 0) {
      auto [q, rem] = c.num.divmod(xi_);
      if (!rem.is_zero()) break;
      c.num = std::move(q);
      --c.e;
    }
    return c;
  }

  /// Adds c to the coefficient of d^k without reducing.
  void accumulate(int k, const Coeff& c) {
    auto it = c_.find(k);
    if (it == c_.end()) {
      c_.emplace(k, c);
      return;
    }
    Coeff& t = it->second;
    int e = std::max(t.e, c.e);
    t.num = t.num * xi_pow(e - t.e) + c.num * xi_pow(e - c.e);
    t.e = e;
  }

  void finish() {
    for (auto it = c_.begin(); it != c_.end();) {
      it->second = reduce(std::move(it->second));
      if (it->second.num.is_zero())
        it = c_.erase(it);
      else
        ++it;
    }
  }

  Poly<F> xi_;
  std::map<int, Coeff> c_;
  mutable std::vector<Poly<F>> pow_cache_;
};

template <ExactField F>
DiffOp<F> commutator(const DiffOp<F>& a, const DiffOp<F>& b) {
  return a * b - b * a;
}

}  // namespace closurelab
