#include "closurelab/expr.hpp"

#include <algorithm>
#include <cctype>

namespace closurelab {

class ExprParser {
 public:
  using Node = Expr::Node;
  using NodePtr = Expr::NodePtr;
  using Kind = Expr::Kind;

  explicit ExprParser(std::string_view s) : s_(s) {}

  NodePtr parse_all() {
    NodePtr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at position " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }

  static NodePtr make(Kind k, NodePtr l = nullptr, NodePtr r = nullptr) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      char c = peek();
      if (c == '+') {
        ++pos_;
        lhs = make(Kind::Add, lhs, term());
      } else if (c == '-') {
        ++pos_;
        lhs = make(Kind::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        lhs = make(Kind::Mul, lhs, unary());
      } else if (c == '/') {
        ++pos_;
        lhs = make(Kind::Div, lhs, unary());
      } else if (c == '(' || ident_start(c) || std::isdigit(static_cast<unsigned char>(c))) {
        lhs = make(Kind::Mul, lhs, power());
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    char c = peek();
    if (c == '-') {
      ++pos_;
      return make(Kind::Neg, unary());
    }
    if (c == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  int integer_literal() {
    skip();
    bool neg = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      neg = s_[pos_] == '-';
      ++pos_;
    }
    bool paren = false;
    if (peek() == '(') {
      paren = true;
      ++pos_;
      skip();
      if (pos_ < s_.size() && s_[pos_] == '-') {
        neg = !neg;
        ++pos_;
      }
    }
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    int v = std::stoi(std::string(s_.substr(start, pos_ - start)));
    if (paren) {
      if (peek() != ')') fail("expected ')'");
      ++pos_;
    }
    return neg ? -v : v;
  }

  NodePtr power() {
    NodePtr base = primary();
    if (peek() == '^') {
      ++pos_;
      auto n = std::make_shared<Node>();
      n->kind = Kind::Pow;
      n->lhs = base;
      n->exponent = integer_literal();
      return n;
    }
    return base;
  }

  NodePtr primary() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      auto n = std::make_shared<Node>();
      n->kind = Kind::Num;
      n->value = Rational::parse(s_.substr(start, pos_ - start));
      return n;
    }
    if (ident_start(c)) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      if (name == "poch") {
        if (peek() != '(') fail("expected '(' after poch");
        ++pos_;
        NodePtr x = expr();
        if (peek() != ',') fail("expected ',' in poch");
        ++pos_;
        int k = integer_literal();
        if (k < 0) fail("poch needs k >= 0");
        if (peek() != ')') fail("expected ')'");
        ++pos_;
        auto n = std::make_shared<Node>();
        n->kind = Kind::Poch;
        n->lhs = x;
        n->exponent = k;
        return n;
      }
      auto n = std::make_shared<Node>();
      n->kind = Kind::Var;
      n->name = std::move(name);
      return n;
    }
    fail(c == '\0' ? "unexpected end of input" : "unexpected character");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

Expr Expr::parse(std::string_view text) { return Expr(ExprParser(text).parse_all()); }

Rational Expr::eval(const Bindings& at) const { return eval(*node_, at); }

Rational Expr::eval(const Node& n, const Bindings& at) {
  switch (n.kind) {
    case Kind::Num:
      return n.value;
    case Kind::Var: {
      auto it = at.find(n.name);
      if (it == at.end()) throw std::invalid_argument("unbound symbol: " + n.name);
      return it->second;
    }
    case Kind::Add:
      return eval(*n.lhs, at) + eval(*n.rhs, at);
    case Kind::Sub:
      return eval(*n.lhs, at) - eval(*n.rhs, at);
    case Kind::Mul:
      return eval(*n.lhs, at) * eval(*n.rhs, at);
    case Kind::Div:
      return eval(*n.lhs, at) / eval(*n.rhs, at);
    case Kind::Neg:
      return -eval(*n.lhs, at);
    case Kind::Pow: {
      Rational b = eval(*n.lhs, at);
      if (b.is_zero() && n.exponent < 0) throw std::domain_error("zero to a negative power");
      return pow(b, n.exponent);
    }
    case Kind::Poch: {
      Rational x = eval(*n.lhs, at), r(1);
      for (int i = 0; i < n.exponent; ++i) r *= x + Rational(i);
      return r;
    }
  }
  throw std::logic_error("Expr: bad node");
}

namespace {

/// Inverse of a single-term Laurent polynomial; throws when p has several terms.
MPoly monomial_inverse(const MPoly& p) {
  if (p.terms().size() != 1) throw std::domain_error("Expr::expand: division by a non-monomial");
  const auto& [e, c] = *p.terms().begin();
  MPoly r(Rational(1) / c);
  for (std::size_t i = 0; i < e.size(); ++i) r *= MPoly::monomial(p.variables()[i], -e[i]);
  return r;
}

}  // namespace

MPoly Expr::expand() const { return expand(*node_); }

MPoly Expr::expand(const Node& n) {
  switch (n.kind) {
    case Kind::Num:
      return MPoly(n.value);
    case Kind::Var:
      return MPoly::var(n.name);
    case Kind::Add:
      return expand(*n.lhs) + expand(*n.rhs);
    case Kind::Sub:
      return expand(*n.lhs) - expand(*n.rhs);
    case Kind::Mul:
      return expand(*n.lhs) * expand(*n.rhs);
    case Kind::Div:
      return expand(*n.lhs) * monomial_inverse(expand(*n.rhs));
    case Kind::Neg:
      return -expand(*n.lhs);
    case Kind::Pow: {
      MPoly b = expand(*n.lhs);
      return n.exponent >= 0 ? pow(b, n.exponent) : pow(monomial_inverse(b), -n.exponent);
    }
    case Kind::Poch: {
      MPoly x = expand(*n.lhs), r(1);
      for (int i = 0; i < n.exponent; ++i) r *= x + MPoly(i);
      return r;
    }
  }
  throw std::logic_error("Expr: bad node");
}

void Expr::collect(const Node& n, std::vector<std::string>& out) {
  if (n.kind == Kind::Var) out.push_back(n.name);
  if (n.lhs) collect(*n.lhs, out);
  if (n.rhs) collect(*n.rhs, out);
}

std::vector<std::string> Expr::symbols() const {
  std::vector<std::string> out;
  collect(*node_, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MPoly parse_mpoly(std::string_view text) { return Expr::parse(text).expand(); }

}  // namespace closurelab
