#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "closurelab/diffop.hpp"
#include "closurelab/errors.hpp"
#include "closurelab/linsolve.hpp"
#include "closurelab/mpoly.hpp"

namespace closurelab {

enum class Family { L, J, W, AW };
enum class VirtualType { I, II };
enum class Source { Builtin, Plugin };

std::string to_string(Family f);
std::string to_string(VirtualType t);
std::string to_string(Source s);
/// Accepts L, J, W, AW (case-insensitive); throws ConfigError otherwise.
Family parse_family(std::string_view text);
bool has_differential_operator(Family f);

struct MultiIndexEntry {
  int d = 1;
  VirtualType type = VirtualType::I;
  friend bool operator==(const MultiIndexEntry&, const MultiIndexEntry&) = default;
};

/// Degrees and types of the virtual-state seeds of a multi-step deformation.
class MultiIndex {
 public:
  MultiIndex() = default;
  /// Sorts type I before type II, ascending degree; throws ConfigError on d < 1 or repeats.
  explicit MultiIndex(std::vector<MultiIndexEntry> entries);
  /// Parses "1I,2I", "1II", "" or "{}".
  static MultiIndex parse(std::string_view text);

  const std::vector<MultiIndexEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  int M() const { return static_cast<int>(entries_.size()); }
  int M_I() const;
  int M_II() const;
  /// sum d_j - M(M-1)/2 + 2 M_I M_II: the number of missing low degrees.
  int ell() const;
  /// "{1^I,2^I}"
  std::string str() const;
  /// "1I,2I"; empty string for the undeformed system.
  std::string key() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<MultiIndexEntry> entries_;
};

/// A parameter sample of one family together with its derived symbols:
/// J: a = g+h, b = g-h; W and AW: s1 = a1+a2, s2 = a1 a2, t1 = a3+a4, t2 = a3 a4, b1..b4;
/// AW additionally qh = q^(1/2), which must be rational.
class ParamSet {
 public:
  /// Throws ConfigError on missing or unknown parameters.
  static ParamSet make(Family family, const Bindings& given);
  /// Default sample used when nothing is given on the command line.
  static ParamSet default_sample(Family family);

  Family family() const { return family_; }
  const Bindings& values() const { return values_; }
  const Bindings& given() const { return given_; }
  Rational get(const std::string& name) const;
  /// Checks the admissible range for closure order 2L; returns an empty string when valid.
  std::string range_violation(int L) const;

 private:
  Family family_ = Family::L;
  Bindings given_;
  Bindings values_;
};

/// Primary parameter names of a family, in canonical order.
std::vector<std::string> primary_parameters(Family f);

/// E_n as a Laurent polynomial in the family's derived symbols (n may be negative).
MPoly energy_expr(Family f, int n);
/// Virtual-state energy of type t and degree v.
MPoly virtual_energy_expr(Family f, VirtualType t, int v);

template <class F>
using Env = std::map<std::string, F>;

/// Value of a Laurent polynomial with every variable replaced from env.
template <ExactField F>
F eval_in(const MPoly& p, const Env<F>& env) {
  F acc(0);
  const auto& vars = p.variables();
  for (const auto& [exps, c] : p.terms()) {
    F term(c);
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (exps[i] == 0) continue;
      auto it = env.find(vars[i]);
      if (it == env.end()) throw std::invalid_argument("unbound symbol: " + vars[i]);
      term = term * field_pow(it->second, exps[i]);
    }
    acc = acc + term;
  }
  return acc;
}

/// Env holding g, h, a, b for the differential-operator families.
template <ExactField F>
Env<F> lj_env(Family f, const F& g, const F& h = F(0)) {
  Env<F> env{{"g", g}};
  if (f == Family::J) {
    env["h"] = h;
    env["a"] = g + h;
    env["b"] = g - h;
  }
  return env;
}

inline Env<Rational> rational_env(const ParamSet& ps) { return ps.values(); }

/// Generalized Laguerre polynomial L_n^(alpha)(x), explicit sum.
template <ExactField F>
Poly<F> laguerre(int n, const F& alpha) {
  if (n < 0) return {};
  std::vector<F> c(static_cast<std::size_t>(n) + 1, F(0));
  for (int k = 0; k <= n; ++k) {
    F num(1), den(1);
    for (int i = 0; i < n - k; ++i) num = num * (alpha + F(k + 1 + i));
    for (int i = 1; i <= n - k; ++i) den = den * F(i);
    for (int i = 1; i <= k; ++i) den = den * F(i);
    F v = num / den;
    c[static_cast<std::size_t>(k)] = (k % 2) ? -v : v;
  }
  return Poly<F>(std::move(c));
}

/// Jacobi polynomial P_n^(alpha,beta)(x), explicit sum in powers of (x-1)/2.
template <ExactField F>
Poly<F> jacobi(int n, const F& alpha, const F& beta) {
  if (n < 0) return {};
  const Poly<F> y = Poly<F>::linear(F(Rational(1, 2)), F(Rational(-1, 2)));
  Poly<F> acc, ypow(F(1));
  for (int k = 0; k <= n; ++k) {
    F num(1), den(1);
    for (int i = 0; i < k; ++i) num = num * (F(n + 1 + i) + alpha + beta);
    for (int i = 0; i < n - k; ++i) num = num * (alpha + F(k + 1 + i));
    for (int i = 1; i <= k; ++i) den = den * F(i);
    for (int i = 1; i <= n - k; ++i) den = den * F(i);
    acc += ypow * (num / den);
    ypow = ypow * y;
  }
  return acc;
}

/// Eigenpolynomial P_n of the undeformed system: L_n^(g-1/2)(eta) or P_n^(g-1/2,h-1/2)(eta).
template <ExactField F>
Poly<F> classical_poly(Family f, const Env<F>& env, int n) {
  const F half(Rational(1, 2));
  if (f == Family::L) return laguerre<F>(n, env.at("g") - half);
  if (f == Family::J) return jacobi<F>(n, env.at("g") - half, env.at("h") - half);
  throw ConfigError("classical_poly: only L and J have differential eigenpolynomials");
}

/// c2(eta): the coefficient of d^2/deta^2 in -H/4.
template <ExactField F>
Poly<F> second_order_coeff(Family f) {
  if (f == Family::L) return Poly<F>::x();
  if (f == Family::J) return Poly<F>(std::vector<F>{F(1), F(0), F(-1)});
  throw ConfigError("second_order_coeff: not a differential family");
}

/// -4(eta d^2 + (g+1/2-eta) d) for L, -4((1-eta^2) d^2 + (h-g-(g+h+1)eta) d) for J.
template <ExactField F>
DiffOp<F> classical_H(Family f, const Env<F>& env) {
  using Op = DiffOp<F>;
  const F g = env.at("g");
  Poly<F> c1;
  if (f == Family::L) {
    c1 = Poly<F>::linear(F(-1), g + F(Rational(1, 2)));
  } else if (f == Family::J) {
    const F h = env.at("h");
    c1 = Poly<F>::linear(-(g + h + F(1)), h - g);
  } else {
    throw ConfigError("classical_H: not a differential family");
  }
  return F(-4) * (Op::mul(second_order_coeff<F>(f)) * Op::d(2) + Op::mul(c1) * Op::d(1));
}

/// h_n / h_{n-1} of the undeformed system, with the Gamma functions cancelled.
template <ExactField F>
F classical_h_step(Family f, const Env<F>& env, int n) {
  const F half(Rational(1, 2)), N(n), g = env.at("g");
  if (f == Family::L) return (N + g - half) / N;
  if (f == Family::J) {
    const F h = env.at("h"), a = g + h;
    return (N + g - half) * (N + h - half) * (F(2 * n - 2) + a) / (N * (F(2 * n) + a) * (N + a - F(1)));
  }
  throw ConfigError("classical_h_step: not available for this family");
}

/// Seed polynomial of a one-step deformation: L: L_d^(g-1/2)(-eta) (I), L_d^(1/2-g)(eta) (II);
/// J: P_d^(g-1/2,1/2-h)(eta) (I), P_d^(1/2-g,h-1/2)(eta) (II).
template <ExactField F>
Poly<F> seed_polynomial(Family f, VirtualType t, int d, const Env<F>& env) {
  const F half(Rational(1, 2)), g = env.at("g");
  if (f == Family::L) {
    if (t == VirtualType::I) return laguerre<F>(d, g - half).compose(Poly<F>::linear(F(-1), F(0)));
    return laguerre<F>(d, half - g);
  }
  if (f == Family::J) {
    const F h = env.at("h");
    if (t == VirtualType::I) return jacobi<F>(d, g - half, half - h);
    return jacobi<F>(d, half - g, h - half);
  }
  throw ConfigError("seed_polynomial: not a differential family");
}

/// Eigenpolynomial of the one-step deformation with seed xi, built from the classical P.
/// The d = 1 cases reproduce the worked-example formulas exactly.
template <ExactField F>
Poly<F> one_step_polynomial(Family f, VirtualType t, const Poly<F>& xi, const Poly<F>& p,
                            const Env<F>& env) {
  const Poly<F> eta = Poly<F>::x();
  const Poly<F> dp = p.derivative(), dxi = xi.derivative();
  const Poly<F> wr = xi * dp - dxi * p;
  const F half(Rational(1, 2)), g = env.at("g");
  if (f == Family::L) {
    if (t == VirtualType::I) return xi * dp - (xi + dxi) * p;
    return eta * wr + xi * p * (g - half);
  }
  if (f == Family::J) {
    const F h = env.at("h"), quarter(Rational(-1, 4));
    if (t == VirtualType::I)
      return (xi * p * (F(1) - F(2) * h) - Poly<F>::linear(F(2), F(2)) * wr) * quarter;
    return (xi * p * (F(2) * g - F(1)) - Poly<F>::linear(F(-2), F(2)) * wr) * quarter;
  }
  throw ConfigError("one_step_polynomial: not a differential family");
}

/// One deformed (or undeformed, D = {}) system: energies, eigenpolynomials, the
/// denominator polynomial Xi_D and the similarity-transformed Hamiltonian.
template <ExactField F>
class DeformedFamily {
 public:
  using Generator = std::function<Poly<F>(int)>;

  DeformedFamily(Family family, Env<F> env, MultiIndex D, Poly<F> xi, Generator gen, Source source)
      : family_(family), env_(std::move(env)), D_(std::move(D)), xi_(std::move(xi)), gen_(std::move(gen)),
        source_(source) {}

  Family family() const { return family_; }
  const Env<F>& env() const { return env_; }
  const MultiIndex& D() const { return D_; }
  int ell() const { return D_.ell(); }
  /// Xi_D normalized so that its antiderivative is X_min.
  const Poly<F>& xi() const { return xi_; }
  Source source() const { return source_; }

  F energy(int n) const { return eval_in(energy_expr(family_, n), env_); }
  F virtual_energy(VirtualType t, int v) const { return eval_in(virtual_energy_expr(family_, t, v), env_); }

  /// P_{D,n}; the zero polynomial for n < 0.
  const Poly<F>& P(int n) const {
    static const Poly<F> zero;
    if (n < 0) return zero;
    auto it = cache_.find(n);
    if (it == cache_.end()) it = cache_.emplace(n, gen_(n)).first;
    return it->second;
  }

  /// h_{D,n} / h_{D,n-l}.
  F h_ratio(int n, int l) const {
    F r(1);
    for (int m = n - l + 1; m <= n; ++m) r = r * classical_h_step(family_, env_, m);
    for (const auto& e : D_.entries()) {
      const F ev = virtual_energy(e.type, e.d);
      r = r * (energy(n) - ev) / (energy(n - l) - ev);
    }
    return r;
  }

  bool has_H() const { return H_.has_value(); }
  const DiffOp<F>& H() const {
    if (!H_) throw ConfigError("family has no differential Hamiltonian");
    return *H_;
  }
  void set_H(DiffOp<F> h) { H_ = std::move(h); }

  /// Throws EigenValidationFailed unless H P_{D,n} = E_n P_{D,n} for n = 0..n_max and the
  /// degrees are ell + n.
  void validate(int n_max) const {
    for (int n = 0; n <= n_max; ++n) {
      const Poly<F>& p = P(n);
      if (p.degree() != ell() + n)
        throw DegreeMismatch("deg P_" + std::to_string(n) + " = " + std::to_string(p.degree()) + ", expected " +
                             std::to_string(ell() + n));
      if (!H_) continue;
      typename DiffOp<F>::Coeff img = H_->apply_frac(p);
      if (img.e != 0 || !(img.num == p * energy(n)))
        throw EigenValidationFailed("H P_" + std::to_string(n) + " != E_" + std::to_string(n) + " P_" +
                                    std::to_string(n) + " for " + to_string(family_) + " " + D_.str());
    }
  }

 private:
  Family family_;
  Env<F> env_;
  MultiIndex D_;
  Poly<F> xi_;
  Generator gen_;
  Source source_;
  std::optional<DiffOp<F>> H_;
  mutable std::map<int, Poly<F>> cache_;
};

/// The unique operator -4(c2 d^2 + N1/Xi d + N0/Xi), deg N1 <= deg Xi + 1, deg N0 <= deg Xi,
/// satisfying the eigen-equations for n = 0, 1, 2 (further n are added while the solution
/// is not unique). Throws EigenValidationFailed when no such operator exists or it is not unique.
template <ExactField F>
DiffOp<F> ansatz_H(const DeformedFamily<F>& df) {
  const Poly<F> m = df.xi().degree() > 0 ? df.xi().monic() : Poly<F>(F(1));
  const int dx = m.degree();
  const int n1 = dx + 2, n0 = dx + 1, unknowns = n1 + n0;
  const Poly<F> c2 = second_order_coeff<F>(df.family());
  RowReducer<F> red(unknowns);
  int n = 0;
  auto add_rows = [&](int k) {
    const Poly<F>& p = df.P(k);
    const Poly<F> dp = p.derivative(), d2p = dp.derivative();
    std::vector<Poly<F>> cols;
    for (int i = 0; i < n1; ++i) cols.push_back(Poly<F>::monomial(F(-4), i) * dp);
    for (int i = 0; i < n0; ++i) cols.push_back(Poly<F>::monomial(F(-4), i) * p);
    const Poly<F> rhs = m * p * df.energy(k) + c2 * m * d2p * F(4);
    int top = rhs.degree();
    for (const auto& c : cols) top = std::max(top, c.degree());
    for (int deg = 0; deg <= top; ++deg) {
      RowVec<F> row(unknowns);
      for (int u = 0; u < unknowns; ++u) row(u) = cols[static_cast<std::size_t>(u)].coeff(deg);
      red.add(row, rhs.coeff(deg));
    }
  };
  for (; n <= 2; ++n) add_rows(n);
  while (red.rank() < unknowns && !red.inconsistent() && n <= 6) add_rows(n++);
  auto sol = red.solution();
  if (!sol.consistent) throw EigenValidationFailed("ansatz: no operator of the expected form has these eigenpolynomials");
  if (!sol.kernel.empty()) throw EigenValidationFailed("ansatz: eigen-equations do not fix the operator");
  std::vector<F> c1(static_cast<std::size_t>(n1)), c0(static_cast<std::size_t>(n0));
  for (int i = 0; i < n1; ++i) c1[static_cast<std::size_t>(i)] = sol.particular(i);
  for (int i = 0; i < n0; ++i) c0[static_cast<std::size_t>(i)] = sol.particular(n1 + i);
  std::map<int, Frac<F>> coeffs{{2, Frac<F>(c2 * F(-4))},
                                {1, Frac<F>(Poly<F>(c1) * F(-4), m)},
                                {0, Frac<F>(Poly<F>(c0) * F(-4), m)}};
  return DiffOp<F>::from_fracs(coeffs, m);
}

/// Conjugation data in the sinusoidal coordinate: S = (d eta/dx)^2, u = eta' Psi'/Psi and
/// the potential U, all as rational functions of eta.
template <ExactField F>
struct ConjugationData {
  Frac<F> S, u, U;
};

/// Psi^{-1} (-d^2/dx^2 + U) Psi rewritten in eta:
/// -S d^2 - (S'/2 + 2u) d + U - u' + u S'/(2S) - u^2/S. Coefficients must reduce to
/// powers of xi in the denominators; otherwise RouteDisagreement.
template <ExactField F>
DiffOp<F> conjugation_H(const ConjugationData<F>& c, const Poly<F>& xi) {
  using Fr = Frac<F>;
  const Fr dS = c.S.derivative();
  const Fr half(F(Rational(1, 2)));
  std::map<int, Fr> coeffs{{2, -c.S},
                           {1, -(half * dS + Fr(2) * c.u)},
                           {0, c.U - c.u.derivative() + c.u * dS / (Fr(2) * c.S) - c.u * c.u / c.S}};
  const Poly<F> m = xi.degree() > 0 ? xi.monic() : Poly<F>(F(1));
  try {
    return DiffOp<F>::from_fracs(coeffs, m);
  } catch (const AlgebraMismatch& e) {
    throw RouteDisagreement(std::string("conjugation route: ") + e.what());
  }
}

/// Printed potentials and ground-state prefactors (classical systems and the {1^I} examples).
template <ExactField F>
std::optional<ConjugationData<F>> builtin_conjugation(Family f, const MultiIndex& D, const Env<F>& env) {
  using Fr = Frac<F>;
  const Fr eta = Fr::var(), one(1), two(2), four(4), half(F(Rational(1, 2)));
  const Fr g(env.at("g"));
  const bool classical = D.empty();
  const bool one_I = D.M() == 1 && D.entries()[0].d == 1 && D.entries()[0].type == VirtualType::I;
  if (!classical && !one_I) return std::nullopt;
  if (f == Family::L) {
    if (classical)
      return ConjugationData<F>{four * eta, -two * eta + two * g, eta + g * (g - one) / eta - (two * g + one)};
    const Fr xi = eta + g + half;
    return ConjugationData<F>{four * eta, -two * eta + two * (g + one) - four * eta / xi,
                              eta + g * (g + one) / eta - two * g - Fr(3) + four / xi -
                                  four * (two * g + one) / (xi * xi)};
  }
  if (f == Family::J) {
    const Fr h(env.at("h")), a = g + h, b = g - h;
    const Fr S = four * (one - eta * eta);
    if (classical)
      return ConjugationData<F>{S, -two * g * (one + eta) + two * h * (one - eta),
                                two * g * (g - one) / (one - eta) + two * h * (h - one) / (one + eta) - a * a};
    const Fr xi = a - one + (b + two) * eta;
    return ConjugationData<F>{
        S, -two * (g + one) * (one + eta) + two * (h - one) * (one - eta) - four * (b + two) * (one - eta * eta) / xi,
        two * g * (g + one) / (one - eta) + two * (h - one) * (h - Fr(2)) / (one + eta) - a * a +
            Fr(8) * (a - one) / xi - Fr(8) * (two * g + one) * (two * h - Fr(3)) / (xi * xi)};
  }
  return std::nullopt;
}

enum class HRoute { Ansatz, Conjugation };

/// Similarity-transformed Hamiltonian by the requested route.
template <ExactField F>
DiffOp<F> build_H_tilde(const DeformedFamily<F>& df, HRoute route) {
  if (route == HRoute::Ansatz) return ansatz_H(df);
  auto c = builtin_conjugation<F>(df.family(), df.D(), df.env());
  if (!c) throw ConfigError("conjugation route: no printed potential for " + df.D().str());
  return conjugation_H(*c, df.xi());
}

/// Built-in systems: the undeformed L/J systems and the one-step deformations {1^I}, {1^II}.
/// The Hamiltonian comes from the ansatz route, is cross-checked against the conjugation
/// route when printed data exist, and is validated on P_0..P_{validate_to}.
template <ExactField F>
DeformedFamily<F> builtin_deformed(Family f, const Env<F>& env, const MultiIndex& D, int validate_to = 5) {
  if (!has_differential_operator(f))
    throw ConfigError(to_string(f) + ": operator-level systems require a plugin");
  if (D.M() > 1 || (D.M() == 1 && D.entries()[0].d != 1))
    throw ConfigError(to_string(f) + " " + D.str() + ": not built in, supply a plugin");
  typename DeformedFamily<F>::Generator gen;
  Poly<F> xi(F(1));
  if (D.empty()) {
    gen = [f, env](int n) { return classical_poly<F>(f, env, n); };
  } else {
    const VirtualType t = D.entries()[0].type;
    xi = seed_polynomial<F>(f, t, 1, env);
    gen = [f, t, xi, env](int n) { return one_step_polynomial<F>(f, t, xi, classical_poly<F>(f, env, n), env); };
  }
  DeformedFamily<F> df(f, env, D, xi, std::move(gen), Source::Builtin);
  DiffOp<F> h = ansatz_H(df);
  if (D.empty() && !(h == classical_H<F>(f, env)))
    throw RouteDisagreement("ansatz route differs from the classical operator");
  if (auto c = builtin_conjugation<F>(f, D, env)) {
    if (!(conjugation_H(*c, xi) == h)) throw RouteDisagreement("ansatz and conjugation routes disagree for " + D.str());
  }
  df.set_H(std::move(h));
  df.validate(validate_to);
  return df;
}

}  // namespace closurelab
