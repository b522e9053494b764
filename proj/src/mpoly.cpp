#include "closurelab/mpoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace closurelab {

MPoly::MPoly(const Rational& c) {
  if (!c.is_zero()) terms_.emplace(Exponents{}, c);
}

MPoly::MPoly(std::vector<std::string> vars, std::map<Exponents, Rational> terms)
    : vars_(std::move(vars)), terms_(std::move(terms)) {
  prune();
}

MPoly MPoly::monomial(const std::string& name, int exponent, const Rational& c) {
  if (c.is_zero()) return {};
  if (exponent == 0) return MPoly(c);
  return MPoly({name}, {{Exponents{exponent}, c}});
}

MPoly MPoly::from_poly(const Poly<Rational>& p, const std::string& name) {
  std::map<Exponents, Rational> t;
  for (int k = 0; k <= p.degree(); ++k)
    if (!p.coeff(k).is_zero()) t.emplace(Exponents{k}, p.coeff(k));
  return MPoly({name}, std::move(t));
}

void MPoly::prune() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second.is_zero())
      it = terms_.erase(it);
    else
      ++it;
  }
  std::vector<bool> used(vars_.size(), false);
  for (const auto& [e, c] : terms_)
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) used[i] = true;
  if (std::all_of(used.begin(), used.end(), [](bool u) { return u; })) return;
  std::vector<std::string> nv;
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (used[i]) nv.push_back(vars_[i]);
  std::map<Exponents, Rational> nt;
  for (const auto& [e, c] : terms_) {
    Exponents ne;
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (used[i]) ne.push_back(e[i]);
    nt.emplace(std::move(ne), c);
  }
  vars_ = std::move(nv);
  terms_ = std::move(nt);
}

MPoly MPoly::extend(const std::vector<std::string>& vars) const {
  if (vars == vars_) return *this;
  std::vector<int> pos(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i)
    pos[i] = static_cast<int>(std::find(vars.begin(), vars.end(), vars_[i]) - vars.begin());
  MPoly r;
  r.vars_ = vars;
  for (const auto& [e, c] : terms_) {
    Exponents ne(vars.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) ne[static_cast<std::size_t>(pos[i])] = e[i];
    r.terms_.emplace(std::move(ne), c);
  }
  return r;
}

namespace {

std::vector<std::string> merged(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

int index_of(const std::vector<std::string>& vars, const std::string& name) {
  auto it = std::find(vars.begin(), vars.end(), name);
  return it == vars.end() ? -1 : static_cast<int>(it - vars.begin());
}

}  // namespace

bool MPoly::uses(const std::string& name) const { return index_of(vars_, name) >= 0; }

Rational MPoly::constant_term() const {
  auto it = terms_.find(Exponents(vars_.size(), 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

int MPoly::degree(const std::string& name) const {
  if (terms_.empty()) return -1;
  int i = index_of(vars_, name);
  if (i < 0) return 0;
  int d = INT32_MIN;
  for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<std::size_t>(i)]);
  return d;
}

int MPoly::min_degree(const std::string& name) const {
  int i = index_of(vars_, name);
  if (i < 0 || terms_.empty()) return 0;
  int d = INT32_MAX;
  for (const auto& [e, c] : terms_) d = std::min(d, e[static_cast<std::size_t>(i)]);
  return d;
}

int MPoly::total_degree() const {
  if (terms_.empty()) return -1;
  int d = 0;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

MPoly MPoly::coeff(const std::string& name, int k) const {
  int i = index_of(vars_, name);
  if (i < 0) return k == 0 ? *this : MPoly();
  std::map<Exponents, Rational> t;
  for (const auto& [e, c] : terms_) {
    if (e[static_cast<std::size_t>(i)] != k) continue;
    Exponents ne = e;
    ne[static_cast<std::size_t>(i)] = 0;
    t.emplace(std::move(ne), c);
  }
  return MPoly(vars_, std::move(t));
}

Rational MPoly::eval(const Bindings& at) const {
  std::vector<Rational> vals;
  for (const auto& v : vars_) {
    auto it = at.find(v);
    if (it == at.end()) throw std::invalid_argument("unbound variable: " + v);
    vals.push_back(it->second);
  }
  Rational sum(0);
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) t *= pow(vals[i], e[i]);
    sum += t;
  }
  return sum;
}

MPoly MPoly::subs(const Bindings& at) const {
  std::map<Exponents, Rational> t;
  for (const auto& [e, c] : terms_) {
    Exponents ne = e;
    Rational coef = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      auto it = at.find(vars_[i]);
      if (it == at.end() || e[i] == 0) continue;
      coef *= pow(it->second, e[i]);
      ne[i] = 0;
    }
    auto [pos, inserted] = t.emplace(ne, coef);
    if (!inserted) pos->second += coef;
  }
  return MPoly(vars_, std::move(t));
}

MPoly MPoly::subs(const std::string& name, const MPoly& value) const {
  int i = index_of(vars_, name);
  if (i < 0) return *this;
  MPoly result;
  std::map<int, MPoly> powers;
  for (const auto& [e, c] : terms_) {
    int k = e[static_cast<std::size_t>(i)];
    if (k < 0) throw std::domain_error("MPoly::subs: negative exponent of " + name);
    Exponents ne = e;
    ne[static_cast<std::size_t>(i)] = 0;
    auto it = powers.find(k);
    if (it == powers.end()) it = powers.emplace(k, pow(value, k)).first;
    result += MPoly(vars_, {{ne, c}}) * it->second;
  }
  return result;
}

MPoly MPoly::rename(const std::string& from, const std::string& to) const {
  int i = index_of(vars_, from);
  if (i < 0) return *this;
  MPoly r;
  for (const auto& [e, c] : terms_) {
    Exponents ne = e;
    int k = ne[static_cast<std::size_t>(i)];
    ne[static_cast<std::size_t>(i)] = 0;
    r += MPoly(vars_, {{ne, c}}) * monomial(to, k);
  }
  return r;
}

MPoly MPoly::operator-() const {
  MPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

MPoly operator+(const MPoly& a, const MPoly& b) {
  auto vars = merged(a.vars_, b.vars_);
  MPoly r = a.extend(vars);
  MPoly bb = b.extend(vars);
  for (const auto& [e, c] : bb.terms_) {
    auto [pos, inserted] = r.terms_.emplace(e, c);
    if (!inserted) pos->second += c;
  }
  r.prune();
  return r;
}

MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }

MPoly operator*(const MPoly& a, const MPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  auto vars = merged(a.vars_, b.vars_);
  MPoly aa = a.extend(vars), bb = b.extend(vars);
  std::map<MPoly::Exponents, Rational> t;
  for (const auto& [ea, ca] : aa.terms_)
    for (const auto& [eb, cb] : bb.terms_) {
      MPoly::Exponents e(vars.size());
      for (std::size_t i = 0; i < vars.size(); ++i) e[i] = ea[i] + eb[i];
      Rational c = ca * cb;
      auto [pos, inserted] = t.emplace(std::move(e), c);
      if (!inserted) pos->second += c;
    }
  return MPoly(std::move(vars), std::move(t));
}

MPoly pow(const MPoly& p, int e) {
  if (e < 0) throw std::domain_error("MPoly pow: negative exponent");
  MPoly r(1), b = p;
  while (e > 0) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

Poly<Rational> MPoly::to_poly(const std::string& name, const Bindings& at) const {
  int i = index_of(vars_, name);
  if (i >= 0 && min_degree(name) < 0) throw std::domain_error("MPoly::to_poly: negative power of " + name);
  int deg = std::max(degree(name), 0);
  std::vector<Rational> c(static_cast<std::size_t>(deg) + 1, Rational(0));
  for (int k = 0; k <= deg; ++k) c[static_cast<std::size_t>(k)] = coeff(name, k).eval(at);
  return Poly<Rational>(std::move(c));
}

Poly<RatFunc> MPoly::to_poly_ratfunc(const std::string& main, const std::string& param) const {
  int deg = std::max(degree(main), 0);
  if (uses(main) && min_degree(main) < 0) throw std::domain_error("MPoly: negative power of " + main);
  std::vector<RatFunc> c;
  for (int k = 0; k <= deg; ++k) {
    MPoly ck = coeff(main, k);
    for (const auto& v : ck.variables())
      if (v != param) throw std::invalid_argument("MPoly: unexpected variable " + v);
    if (ck.uses(param) && ck.min_degree(param) < 0) {
      int shift = -ck.min_degree(param);
      Poly<Rational> n = (ck * monomial(param, shift)).to_poly(param);
      c.emplace_back(n, Poly<Rational>::monomial(Rational(1), shift));
    } else {
      c.emplace_back(ck.to_poly(param));
    }
  }
  return Poly<RatFunc>(std::move(c));
}

MPoly from_poly_ratfunc(const Poly<RatFunc>& p, const std::string& main, const std::string& param) {
  MPoly r;
  for (int k = 0; k <= p.degree(); ++k) {
    const RatFunc& c = p.coeff(k);
    if (c.is_zero()) continue;
    if (!c.is_polynomial()) throw std::domain_error("from_poly_ratfunc: coefficient has a denominator");
    r += MPoly::from_poly(c.num(), param) * MPoly::monomial(main, k);
  }
  return r;
}

std::string MPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  // highest total degree first, for readability
  std::vector<std::pair<Exponents, Rational>> ts(terms_.rbegin(), terms_.rend());
  for (const auto& [e, c] : ts) {
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_[i];
      if (e[i] != 1) mono += "^" + (e[i] < 0 ? "(" + std::to_string(e[i]) + ")" : std::to_string(e[i]));
    }
    Rational a = c;
    bool neg = a.sign() < 0;
    if (neg) a = -a;
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    if (mono.empty())
      out += a.str();
    else if (a.is_one())
      out += mono;
    else
      out += a.str() + "*" + mono;
  }
  return out;
}

}  // namespace closurelab
