#pragma once

#include <deque>
#include <variant>
#include <vector>

#include "closurelab/diffop.hpp"
#include "closurelab/shiftop.hpp"

namespace closurelab {

/// How the sinusoidal coordinate eta is expressed in the working variable v.
enum class EtaBinding { Identity, Square, Joukowski };  // eta = v, v^2, (v + 1/v)/2

/// A differential or a difference operator together with its eta binding.
template <ExactField F>
class OperatorExpr {
 public:
  OperatorExpr(DiffOp<F> d) : op_(std::move(d)) {}  // NOLINT
  OperatorExpr(ShiftOp<F> s, EtaBinding b) : op_(std::move(s)), binding_(b) {}

  bool is_diff() const { return std::holds_alternative<DiffOp<F>>(op_); }
  const DiffOp<F>& diff() const { return std::get<DiffOp<F>>(op_); }
  const ShiftOp<F>& shift() const { return std::get<ShiftOp<F>>(op_); }
  EtaBinding binding() const { return binding_; }

  friend OperatorExpr compose(const OperatorExpr& a, const OperatorExpr& b) {
    check(a, b);
    if (a.is_diff()) return OperatorExpr(a.diff() * b.diff());
    return OperatorExpr(a.shift() * b.shift(), a.binding_);
  }
  friend OperatorExpr operator+(const OperatorExpr& a, const OperatorExpr& b) {
    check(a, b);
    if (a.is_diff()) return OperatorExpr(a.diff() + b.diff());
    return OperatorExpr(a.shift() + b.shift(), a.binding_);
  }
  friend OperatorExpr operator-(const OperatorExpr& a, const OperatorExpr& b) {
    check(a, b);
    if (a.is_diff()) return OperatorExpr(a.diff() - b.diff());
    return OperatorExpr(a.shift() - b.shift(), a.binding_);
  }
  friend OperatorExpr commutator(const OperatorExpr& a, const OperatorExpr& b) { return compose(a, b) - compose(b, a); }
  friend bool operator==(const OperatorExpr& a, const OperatorExpr& b) {
    return a.binding_ == b.binding_ && a.op_ == b.op_;
  }

 private:
  static void check(const OperatorExpr& a, const OperatorExpr& b) {
    if (a.op_.index() != b.op_.index() || a.binding_ != b.binding_)
      throw AlgebraMismatch("OperatorExpr: operands live in different algebras");
  }

  std::variant<DiffOp<F>, ShiftOp<F>> op_;
  EtaBinding binding_ = EtaBinding::Identity;
};

/// Powers H^0, H^1, ... of one operator, computed once and reused.
template <class Op>
class PowerCache {
 public:
  explicit PowerCache(Op h) : h_(std::move(h)) {}
  const Op& H() const { return h_; }
  const Op& power(int j) {
    if (pows_.empty()) pows_.push_back(identity_like(h_));
    while (static_cast<int>(pows_.size()) <= j) pows_.push_back(pows_.back() * h_);
    return pows_[static_cast<std::size_t>(j)];
  }

 private:
  static Op identity_like(const Op& h) {
    if constexpr (requires { h.xi(); })
      return Op::identity(h.xi());
    else
      return Op::shift(0, h.rule());
  }
  Op h_;
  std::deque<Op> pows_;  // references stay valid as powers are appended
};

/// op o R(H) with R(z) = sum_j r_j z^j, using cached powers of H.
template <class Op, ExactField F>
Op right_mul_poly_of_H(const Op& op, const Poly<F>& R, PowerCache<Op>& cache) {
  Op acc = op - op;
  for (int j = 0; j <= R.degree(); ++j) {
    const F c = R.coeff(j);
    if (field_is_zero(c)) continue;
    acc = acc + op * cache.power(j) * c;
  }
  return acc;
}

}  // namespace closurelab
