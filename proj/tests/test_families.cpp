#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "closurelab/families.hpp"

using namespace closurelab;

namespace {

using P = Poly<Rational>;
const Rational half(1, 2);

Env<Rational> l_env(const Rational& g) { return lj_env<Rational>(Family::L, g); }
Env<Rational> j_env(const Rational& g, const Rational& h) { return lj_env<Rational>(Family::J, g, h); }

}  // namespace

TEST_CASE("multi-index parsing and ell") {
  MultiIndex D = MultiIndex::parse("{2I, 1I}");
  CHECK(D.str() == "{1^I,2^I}");
  CHECK(D.key() == "1I,2I");
  CHECK(D.ell() == 2);
  CHECK(MultiIndex::parse("1I,1II").ell() == 3);
  CHECK(MultiIndex::parse("").empty());
  CHECK(MultiIndex::parse("{}").ell() == 0);
  CHECK(MultiIndex::parse("3II").ell() == 3);
  CHECK_THROWS_AS(MultiIndex::parse("1III"), ConfigError);
  CHECK_THROWS_AS(MultiIndex::parse("1I,1I"), ConfigError);
  CHECK_THROWS_AS(MultiIndex::parse("0I"), ConfigError);
}

TEST_CASE("parameter sets and energies") {
  ParamSet l = ParamSet::make(Family::L, {{"g", Rational(7, 3)}});
  CHECK(eval_in(energy_expr(Family::L, 3), rational_env(l)) == Rational(12));
  CHECK(eval_in(virtual_energy_expr(Family::L, VirtualType::I, 1), rational_env(l)) ==
        Rational(-4) * (Rational(7, 3) + Rational(3, 2)));
  ParamSet j = ParamSet::make(Family::J, {{"g", Rational(2)}, {"h", Rational(3)}});
  CHECK(j.get("a") == Rational(5));
  CHECK(j.get("b") == Rational(-1));
  CHECK(eval_in(energy_expr(Family::J, 2), rational_env(j)) == Rational(4 * 2 * 7));
  CHECK_THROWS_AS(ParamSet::make(Family::J, {{"g", Rational(2)}}), ConfigError);
  CHECK_THROWS_AS(ParamSet::make(Family::L, {{"g", Rational(2)}, {"x", Rational(1)}}), ConfigError);
  CHECK_THROWS_AS(ParamSet::make(Family::AW, {{"a1", Rational(1, 3)}, {"a2", Rational(1, 5)}, {"a3", Rational(1, 7)},
                                              {"a4", Rational(1, 11)}, {"q", Rational(1, 2)}}),
                  ConfigError);
  ParamSet aw = ParamSet::default_sample(Family::AW);
  CHECK(aw.get("qh") == Rational(3, 4));
  CHECK(aw.range_violation(4).empty());
  // E_n for Askey-Wilson at n = 0 vanishes and E_1 = (1/q - 1)(1 - b4)
  CHECK(eval_in(energy_expr(Family::AW, 0), rational_env(aw)).is_zero());
  CHECK(eval_in(energy_expr(Family::AW, 1), rational_env(aw)) ==
        (Rational(16, 9) - Rational(1)) * (Rational(1) - aw.get("b4")));
  ParamSet w = ParamSet::default_sample(Family::W);
  CHECK(w.get("b1") == w.get("a1") + w.get("a2") + w.get("a3") + w.get("a4"));
  CHECK(ParamSet::make(Family::J, {{"g", Rational(1)}, {"h", Rational(1)}}).range_violation(2) != "");
}

TEST_CASE("laguerre matches the three-term recurrence") {
  for (Rational g : {Rational(2), Rational(7, 3), Rational(7, 2)}) {
    const Rational al = g - half;
    P prev, cur(Rational(1));
    for (int n = 0; n <= 8; ++n) {
      CHECK(laguerre<Rational>(n, al) == cur);
      // (n+1) L_{n+1} = (2n+1+al-x) L_n - (n+al) L_{n-1}
      P next = (P::linear(Rational(-1), Rational(2 * n + 1) + al) * cur - prev * (Rational(n) + al)) *
               (Rational(1) / Rational(n + 1));
      prev = cur;
      cur = next;
    }
  }
}

TEST_CASE("jacobi matches the three-term recurrence") {
  for (auto [al, be] : {std::pair(Rational(3, 2), Rational(5, 2)), std::pair(Rational(2), Rational(7, 2))}) {
    P prev, cur(Rational(1));
    for (int n = 0; n <= 8; ++n) {
      CHECK(jacobi<Rational>(n, al, be) == cur);
      const Rational s = Rational(2 * n) + al + be;
      const Rational c1 = Rational(2 * (n + 1)) * (Rational(n + 1) + al + be) * s;
      const Rational c2 = s + Rational(1);
      P next;
      if (n == 0) {
        next = P::linear((al + be + Rational(2)) * half, (al - be) * half);
      } else {
        next = (P::linear(c2 * (s + Rational(2)) * s, c2 * (al * al - be * be)) * cur -
                prev * (Rational(2) * (Rational(n) + al) * (Rational(n) + be) * (s + Rational(2)))) *
               (Rational(1) / c1);
      }
      prev = cur;
      cur = next;
    }
  }
}

TEST_CASE("classical systems solve the eigen-equations and the routes agree") {
  for (Rational g : {Rational(2), Rational(7, 3), Rational(3), Rational(7, 2)}) {
    auto df = builtin_deformed<Rational>(Family::L, l_env(g), MultiIndex{}, 8);
    CHECK(df.H() == classical_H<Rational>(Family::L, l_env(g)));
    CHECK(build_H_tilde(df, HRoute::Conjugation) == df.H());
  }
  auto dj = builtin_deformed<Rational>(Family::J, j_env(Rational(5, 2), Rational(4)), MultiIndex{}, 8);
  CHECK(build_H_tilde(dj, HRoute::Conjugation) == dj.H());
}

TEST_CASE("laguerre one-step deformation {1^I}") {
  const Rational g(7, 3);
  auto df = builtin_deformed<Rational>(Family::L, l_env(g), MultiIndex::parse("1I"), 8);
  const P eta = P::x();
  CHECK(df.xi() == eta + P(g + half));
  CHECK(df.P(0) == -(eta + P(g + Rational(3, 2))));
  CHECK(df.ell() == 1);
  for (int n = 1; n <= 6; ++n) {
    const Rational N(n);
    CHECK(df.h_ratio(n, 1) == (N + g - half) * (N + g + Rational(3, 2)) / (N * (N + g + half)));
  }
  // the conjugated Hamiltonian agrees with the ansatz solution
  CHECK(build_H_tilde(df, HRoute::Conjugation) == df.H());
  CHECK(df.H().max_denominator_power() == 1);
}

TEST_CASE("laguerre {1^II} and jacobi one-step deformations") {
  const Rational g(7, 3);
  auto d2 = builtin_deformed<Rational>(Family::L, l_env(g), MultiIndex::parse("1II"), 8);
  // dX/deta of X = -eta(eta+2g-3)/2
  CHECK(d2.xi() == P::linear(Rational(-1), Rational(3, 2) - g));
  for (auto [g0, h0] : {std::pair(Rational(2), Rational(3)), std::pair(Rational(3), Rational(7, 2))}) {
    for (const char* key : {"1I", "1II"}) {
      auto dj = builtin_deformed<Rational>(Family::J, j_env(g0, h0), MultiIndex::parse(key), 8);
      CHECK(dj.ell() == 1);
    }
    auto dj = builtin_deformed<Rational>(Family::J, j_env(g0, h0), MultiIndex::parse("1I"), 3);
    const Rational a = g0 + h0, b = g0 - h0;
    // dX/deta of X = eta((b+2)eta + 2(a-1))/4
    CHECK(dj.xi() == P::linear((b + Rational(2)) * half, (a - Rational(1)) * half));
  }
}

TEST_CASE("symbolic laguerre {1^I} over rational functions of g") {
  const RatFunc g = RatFunc::var();
  auto df = builtin_deformed<RatFunc>(Family::L, lj_env<RatFunc>(Family::L, g), MultiIndex::parse("1I"), 5);
  const RatFunc h(Rational(1, 2));
  CHECK(df.xi() == Poly<RatFunc>::linear(RatFunc(1), g + h));
  CHECK(df.h_ratio(2, 1) == (RatFunc(2) + g - h) * (RatFunc(2) + g + RatFunc(Rational(3, 2))) /
                                (RatFunc(2) * (RatFunc(2) + g + h)));
}

TEST_CASE("multi-step systems are not built in") {
  CHECK_THROWS_AS(builtin_deformed<Rational>(Family::L, l_env(Rational(2)), MultiIndex::parse("1I,2I")), ConfigError);
  CHECK_THROWS_AS(builtin_deformed<Rational>(Family::W, {}, MultiIndex{}), ConfigError);
}
