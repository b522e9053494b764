#pragma once

#include <map>
#include <string>

#include "closurelab/errors.hpp"
#include "closurelab/frac.hpp"

namespace closurelab {

/// How the unit half-shift acts on the working variable v. Shift indices are stored
/// doubled, so index s means the shift by s/2.
///   additive:       v -> v + s*step   (Wilson: step = -i/2, i.e. x -> x - i s/2)
///   multiplicative: v -> step^s * v   (Askey-Wilson: step = q^(1/2), z -> q^(s/2) z)
template <ExactField F>
struct ShiftRule {
  enum class Kind { Additive, Multiplicative } kind = Kind::Additive;
  F step = F(1);

  static ShiftRule wilson() { return {Kind::Additive, F(Rational(0)) - F(Rational(1, 2)) * imaginary_unit()}; }
  static ShiftRule askey_wilson(const F& q_half) { return {Kind::Multiplicative, q_half}; }

  /// The substitution v -> image of v under the doubled shift s, as a linear polynomial.
  Poly<F> image(int s) const {
    if (kind == Kind::Additive) return Poly<F>::linear(F(1), step * F(s));
    return Poly<F>::linear(field_pow(step, s), F(0));
  }
  friend bool operator==(const ShiftRule&, const ShiftRule&) = default;

 private:
  static F imaginary_unit() {
    if constexpr (requires { F::i(); })
      return F::i();
    else
      throw ConfigError("additive shifts by i need a coefficient field containing i");
  }
};

/// Difference operator sum_s f_s(v) T_s with rational-function coefficients.
template <ExactField F>
class ShiftOp {
 public:
  explicit ShiftOp(ShiftRule<F> rule) : rule_(std::move(rule)) {}

  static ShiftOp mul(const Frac<F>& f, const ShiftRule<F>& rule) {
    ShiftOp r(rule);
    if (!f.is_zero()) r.c_[0] = f;
    return r;
  }
  /// T_s with s a doubled shift index.
  static ShiftOp shift(int s, const ShiftRule<F>& rule) {
    ShiftOp r(rule);
    r.c_[s] = Frac<F>(1);
    return r;
  }

  const ShiftRule<F>& rule() const { return rule_; }
  const std::map<int, Frac<F>>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }

  /// f(v) -> f(shift_s v)
  Frac<F> shifted(const Frac<F>& f, int s) const {
    if (s == 0) return f;
    const Poly<F> arg = rule_.image(s);
    return Frac<F>(f.num().compose(arg), f.den().compose(arg));
  }

  friend ShiftOp operator+(const ShiftOp& a, const ShiftOp& b) {
    check(a, b);
    ShiftOp r = a;
    for (const auto& [s, f] : b.c_) r.c_[s] += f;
    r.prune();
    return r;
  }
  ShiftOp operator-() const {
    ShiftOp r = *this;
    for (auto& [s, f] : r.c_) f = -f;
    return r;
  }
  friend ShiftOp operator-(const ShiftOp& a, const ShiftOp& b) { return a + (-b); }
  /// (f T_a) o (g T_b) = f (g shifted by a) T_{a+b}
  friend ShiftOp operator*(const ShiftOp& a, const ShiftOp& b) {
    check(a, b);
    ShiftOp r(a.rule_);
    for (const auto& [sa, f] : a.c_)
      for (const auto& [sb, g] : b.c_) r.c_[sa + sb] += f * a.shifted(g, sa);
    r.prune();
    return r;
  }
  friend ShiftOp operator*(const ShiftOp& a, const F& c) {
    ShiftOp r = a;
    for (auto& [s, f] : r.c_) f = f * Frac<F>(c);
    r.prune();
    return r;
  }
  friend bool operator==(const ShiftOp& a, const ShiftOp& b) { return a.rule_ == b.rule_ && a.c_ == b.c_; }

  Frac<F> apply(const Frac<F>& p) const {
    Frac<F> out;
    for (const auto& [s, f] : c_) out += f * shifted(p, s);
    return out;
  }

 private:
  static void check(const ShiftOp& a, const ShiftOp& b) {
    if (!(a.rule_ == b.rule_)) throw AlgebraMismatch("ShiftOp: operators with different shift rules");
  }
  void prune() {
    std::erase_if(c_, [](const auto& kv) { return kv.second.is_zero(); });
  }

  ShiftRule<F> rule_;
  std::map<int, Frac<F>> c_;
};

}  // namespace closurelab
