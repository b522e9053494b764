#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "closurelab/expr.hpp"
#include "closurelab/frac.hpp"
#include "closurelab/gaussian.hpp"
#include "closurelab/interpolate.hpp"
#include "closurelab/linsolve.hpp"
#include "closurelab/mpoly.hpp"

using namespace closurelab;

namespace {

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-40, 40), den(1, 17);
  return Rational(num(rng), den(rng));
}

Poly<Rational> random_poly(std::mt19937_64& rng, int deg) {
  std::vector<Rational> c;
  for (int k = 0; k <= deg; ++k) c.push_back(random_rational(rng));
  return Poly<Rational>(c);
}

}  // namespace

TEST_CASE("rational canonical form and parsing") {
  Rational r(6, -4);
  CHECK(r.num() == -3);
  CHECK(r.den() == 2);
  CHECK(r.str() == "-3/2");
  CHECK(Rational::parse("10/4") == Rational(5, 2));
  CHECK(Rational::parse("-7").str() == "-7");
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("x"), std::invalid_argument);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
  Rational s;
  CHECK(exact_sqrt(Rational(49, 4), s));
  CHECK(s == Rational(7, 2));
  CHECK_FALSE(exact_sqrt(Rational(2), s));
  CHECK(pow(Rational(2, 3), -2) == Rational(9, 4));
}

TEST_CASE("rational field axioms on random samples") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    Rational a = random_rational(rng), b = random_rational(rng), c = random_rational(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + (-a) == Rational(0));
    if (!a.is_zero()) CHECK(a * (Rational(1) / a) == Rational(1));
  }
}

TEST_CASE("poly arithmetic, division and gcd") {
  using P = Poly<Rational>;
  P x = P::x();
  P p = (x + P(Rational(3, 2))) * (x - P(2));
  CHECK(p.degree() == 2);
  CHECK(p(Rational(2)) == Rational(0));
  CHECK((p - p).is_zero());
  CHECK((p - p).degree() == -1);
  auto [q, r] = p.divmod(x - P(2));
  CHECK(r.is_zero());
  CHECK(q == x + P(Rational(3, 2)));
  CHECK(gcd(p, (x - P(2)) * (x + P(5))) == x - P(2));
  CHECK(p.integral().derivative() == p);
  CHECK(p.compose(x + P(1))(Rational(1)) == p(Rational(2)));
}

TEST_CASE("frac normalization preserves values") {
  std::mt19937_64 rng(5);
  using P = Poly<Rational>;
  for (int t = 0; t < 40; ++t) {
    P common = random_poly(rng, 1);
    if (common.degree() < 1) continue;
    P n = random_poly(rng, 2) * common, d = random_poly(rng, 2) * common;
    if (d.is_zero()) continue;
    Frac<Rational> f(n, d);
    CHECK(f.den().lead() == Rational(1));
    CHECK(f.den().degree() <= 2);
    for (int k = 0; k < 3; ++k) {
      Rational at = random_rational(rng);
      if (d(at).is_zero()) continue;
      CHECK(f(at) == n(at) / d(at));
    }
  }
  RatFunc g = RatFunc::var();
  RatFunc h = (g * g - RatFunc(1)) / (g - RatFunc(1));
  CHECK(h == g + RatFunc(1));
  CHECK(h.is_polynomial());
}

TEST_CASE("gaussian rationals") {
  GaussRational i = GaussRational::i();
  CHECK(i * i == GaussRational(-1));
  GaussRational z(Rational(1), Rational(2));
  CHECK(z / z == GaussRational(1));
  CHECK((z * z.conj()).is_real());
}

TEST_CASE("param poly arithmetic") {
  MPoly eta = MPoly::var("eta"), g = MPoly::var("g");
  MPoly lhs = (eta + g + MPoly(Rational(1, 2))) * (MPoly(2) * eta);
  CHECK(lhs == MPoly(2) * eta * eta + (MPoly(2) * g + MPoly(1)) * eta);
  MPoly r = parse_mpoly("3z^2+2(10g+11)z+2(2g+1)(6g+13)") * MPoly(64);
  CHECK(r == parse_mpoly("192z^2 + 1280 g z + 1408 z + 1536 g^2 + 4096 g + 1664"));
  CHECK((r - r).is_zero());
  CHECK((r - r).terms().empty());
  CHECK(r.degree("z") == 2);
  CHECK(r.coeff("z", 0).eval({{"g", Rational(1)}}) == Rational(128 * 3 * 19));
  CHECK(parse_mpoly("(q^-1 - q)^2") == parse_mpoly("q^(-2) - 2 + q^2"));
  CHECK(parse_mpoly("poch(n+1, 2)") == parse_mpoly("(n+1)(n+2)"));
}

TEST_CASE("expression evaluation") {
  Expr e = Expr::parse("(n+1)(b+2)/(poch(a+2n, 4))");
  Bindings at{{"n", Rational(1)}, {"a", Rational(5)}, {"b", Rational(-1)}};
  CHECK(e.eval(at) == Rational(2, 7 * 8 * 9 * 10));
  CHECK_THROWS_AS(Expr::parse("(1+"), ParseError);
  CHECK_THROWS_AS(Expr::parse("z").eval({}), std::invalid_argument);
  CHECK_THROWS_AS(Expr::parse("1/(g+1)").expand(), std::domain_error);
}

TEST_CASE("solve_linear_exact") {
  SUBCASE("identity") {
    Mat<Rational> m = Mat<Rational>::Identity(3, 3);
    Vec<Rational> rhs = Vec<Rational>::Zero(3);
    rhs(0) = Rational(1);
    auto s = solve_linear_exact(m, rhs);
    CHECK(s.consistent);
    CHECK(s.kernel.empty());
    CHECK(s.particular == rhs);
  }
  SUBCASE("underdetermined x+y=1") {
    Mat<Rational> m(1, 2);
    m << Rational(1), Rational(1);
    Vec<Rational> rhs(1);
    rhs << Rational(1);
    auto s = solve_linear_exact(m, rhs);
    REQUIRE(s.consistent);
    CHECK(s.particular(0) == Rational(1));
    CHECK(s.particular(1) == Rational(0));
    REQUIRE(s.kernel.size() == 1);
    CHECK(s.kernel[0](0) == Rational(-1));
    CHECK(s.kernel[0](1) == Rational(1));
  }
  SUBCASE("inconsistent") {
    Mat<Rational> m(2, 1);
    m << Rational(1), Rational(2);
    Vec<Rational> rhs(2);
    rhs << Rational(1), Rational(1);
    CHECK_FALSE(solve_linear_exact(m, rhs).consistent);
  }
  SUBCASE("random systems satisfy M x = rhs and M k = 0") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
      Mat<Rational> m(4, 6);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 6; ++j) m(i, j) = (i == 3) ? m(0, j) + m(1, j) : random_rational(rng);
      Vec<Rational> rhs(4);
      for (int i = 0; i < 3; ++i) rhs(i) = random_rational(rng);
      rhs(3) = rhs(0) + rhs(1);
      auto s = solve_linear_exact(m, rhs);
      REQUIRE(s.consistent);
      CHECK(s.rank == 3);
      CHECK(s.kernel.size() == 3);
      Vec<Rational> res = m * s.particular;
      CHECK(res == rhs);
      for (const auto& k : s.kernel) CHECK((m * k).isZero());
    }
  }
  SUBCASE("rational function entries") {
    RatFunc g = RatFunc::var();
    Mat<RatFunc> m(2, 2);
    m << g, RatFunc(1), RatFunc(1), g;
    Vec<RatFunc> rhs(2);
    rhs << RatFunc(1), RatFunc(0);
    auto s = solve_linear_exact(m, rhs);
    REQUIRE(s.consistent);
    CHECK(s.particular(0) == g / (g * g - RatFunc(1)));
  }
}

TEST_CASE("bareiss determinant") {
  Mat<Rational> m(3, 3);
  m << Rational(2), Rational(0), Rational(1), Rational(1), Rational(3), Rational(2), Rational(1),
      Rational(1), Rational(2);
  CHECK(determinant_bareiss(m) == Rational(6));
  m(2, 2) = Rational(1);
  CHECK(determinant_bareiss(m) == Rational(0));
}

TEST_CASE("interpolation") {
  auto p = interpolate_param({{Rational(0), Rational(2)}, {Rational(1), Rational(3)}}, 1, "g");
  CHECK(p == parse_mpoly("g+2"));
  auto c = interpolate_univariate(
      {{Rational(0), Rational(5)}, {Rational(1), Rational(5)}, {Rational(2), Rational(5)}}, 2);
  CHECK(c == Poly<Rational>(Rational(5)));
  // z^0 coefficient of the order-4 Laguerre R_{-1}
  MPoly target = parse_mpoly("128(2g+1)(6g+13)");
  std::vector<Sample> s;
  for (int g = 2; g <= 5; ++g) s.emplace_back(Rational(g), target.eval({{"g", Rational(g)}}));
  CHECK(interpolate_param(s, 2, "g") == target);
  CHECK_THROWS_AS(interpolate_param(s, 1, "g"), SampleMismatch);

  std::mt19937_64 rng(9);
  for (int t = 0; t < 20; ++t) {
    Poly<Rational> q = random_poly(rng, 4);
    std::vector<Sample> pts;
    for (int k = 0; k < 7; ++k) pts.emplace_back(Rational(k, 3), q(Rational(k, 3)));
    CHECK(interpolate_univariate(pts, 5) == q);
  }

  MPoly biv = parse_mpoly("a^2 b - 3 a + b^3/2 + 1");
  std::vector<Rational> xs{Rational(1), Rational(2), Rational(3), Rational(5)};
  std::vector<Rational> ys{Rational(0), Rational(1), Rational(4), Rational(7), Rational(9)};
  std::vector<std::vector<Rational>> vals;
  for (auto& x : xs) {
    vals.emplace_back();
    for (auto& y : ys) vals.back().push_back(biv.eval({{"a", x}, {"b", y}}));
  }
  CHECK(interpolate_grid(xs, ys, vals, 2, 3, "a", "b") == biv);
}
