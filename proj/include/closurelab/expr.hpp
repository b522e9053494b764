#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "closurelab/mpoly.hpp"

namespace closurelab {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parsed arithmetic expression over named symbols.
/// Grammar: + - * / with implicit multiplication, ^ with an integer exponent,
/// parentheses, rational literals, identifiers, and poch(x, k) for the rising
/// factorial (x)_k with a literal k >= 0.
class Expr {
 public:
  enum class Kind { Num, Var, Add, Sub, Mul, Div, Neg, Pow, Poch };

  static Expr parse(std::string_view text);

  Kind kind() const { return node_->kind; }
  /// Exact value; throws std::invalid_argument on an unbound symbol and
  /// std::domain_error on division by zero.
  Rational eval(const Bindings& at) const;
  /// Expansion as a Laurent polynomial. Division is allowed only by a monomial.
  MPoly expand() const;
  std::vector<std::string> symbols() const;

  /// Evaluation over any exact field; `lookup` supplies the value of each symbol.
  template <class F, class Lookup>
  F evaluate(const Lookup& lookup) const {
    return evaluate<F>(*node_, lookup);
  }

 private:
  struct Node {
    Kind kind;
    Rational value;
    std::string name;
    int exponent = 0;
    std::shared_ptr<const Node> lhs, rhs;
  };
  using NodePtr = std::shared_ptr<const Node>;
  explicit Expr(NodePtr n) : node_(std::move(n)) {}

  static Rational eval(const Node& n, const Bindings& at);
  template <class F, class Lookup>
  static F evaluate(const Node& n, const Lookup& lookup) {
    switch (n.kind) {
      case Kind::Num:
        return F(n.value);
      case Kind::Var:
        return lookup(n.name);
      case Kind::Add:
        return evaluate<F>(*n.lhs, lookup) + evaluate<F>(*n.rhs, lookup);
      case Kind::Sub:
        return evaluate<F>(*n.lhs, lookup) - evaluate<F>(*n.rhs, lookup);
      case Kind::Mul:
        return evaluate<F>(*n.lhs, lookup) * evaluate<F>(*n.rhs, lookup);
      case Kind::Div:
        return evaluate<F>(*n.lhs, lookup) / evaluate<F>(*n.rhs, lookup);
      case Kind::Neg:
        return -evaluate<F>(*n.lhs, lookup);
      case Kind::Pow: {
        F b = evaluate<F>(*n.lhs, lookup), r(1);
        int e = n.exponent < 0 ? -n.exponent : n.exponent;
        for (int i = 0; i < e; ++i) r = r * b;
        return n.exponent < 0 ? F(1) / r : r;
      }
      case Kind::Poch: {
        F x = evaluate<F>(*n.lhs, lookup), r(1);
        for (int i = 0; i < n.exponent; ++i) r = r * (x + F(Rational(i)));
        return r;
      }
    }
    throw std::logic_error("Expr: bad node");
  }
  static MPoly expand(const Node& n);
  static void collect(const Node& n, std::vector<std::string>& out);

  friend class ExprParser;
  NodePtr node_;
};

/// Shorthand for Expr::parse(text).expand().
MPoly parse_mpoly(std::string_view text);

}  // namespace closurelab
