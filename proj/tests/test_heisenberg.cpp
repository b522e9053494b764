#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "closurelab/heisenberg.hpp"

using namespace closurelab;

namespace {

using P = Poly<Rational>;
const P one(Rational(1));

HeisenbergSetup setup(Family f, const Rational& g, const Rational& h, const char* D, const P& Y, int n_max = 6) {
  return heisenberg_setup(builtin_deformed<Rational>(f, lj_env<Rational>(f, g, h), MultiIndex::parse(D)), Y, n_max);
}

std::vector<Rational> rats(std::initializer_list<std::pair<int, int>> v) {
  std::vector<Rational> out;
  for (auto [p, q] : v) out.emplace_back(p, q);
  return out;
}

}  // namespace

TEST_CASE("laguerre {1^I} ladder examples") {
  const Rational g(7, 3);
  const auto s = setup(Family::L, g, Rational(0), "1I", one);
  CHECK(s.L == 2);
  const auto below = ladder_apply(s, 4, 0);
  CHECK(below.shift == -2);
  CHECK(below.image.is_zero());
  CHECK(below.matches());
  const auto down = ladder_apply(s, 3, 1);
  CHECK(down.shift == -1);
  CHECK(down.proportional);
  CHECK(down.coefficient == -(Rational(2) * g + Rational(1)) * (Rational(2) * g + Rational(5)) / Rational(2));
  const auto up = ladder_apply(s, 2, 0);
  CHECK(up.shift == 1);
  CHECK(up.proportional);
  CHECK(up.coefficient == -(Rational(2) * g + Rational(3)));
  CHECK(up.image == s.inst.df.P(1) * up.coefficient);
}

TEST_CASE("laguerre {1^I} ladder coefficients") {
  const auto s = setup(Family::L, Rational(7, 3), Rational(0), "1I", one, 2);
  const SpectralData sd = spectral_at_level(s, 0);
  CHECK(ladder_coefficients(sd, 1) == rats({{-1, 6}, {-1, 48}, {1, 96}, {1, 768}, {1, 6144}}));
  CHECK(ladder_coefficients(sd, 2) == rats({{2, 3}, {1, 6}, {-1, 96}, {-1, 384}, {-1, 1536}}));
  CHECK(ladder_coefficients(sd, 3) == rats({{2, 3}, {-1, 6}, {-1, 96}, {1, 384}, {-1, 1536}}));
  CHECK(ladder_coefficients(sd, 4) == rats({{-1, 6}, {1, 48}, {1, 96}, {-1, 768}, {1, 6144}}));
}

TEST_CASE("R_{-1}/R_0 against r_{n,0}") {
  const Rational g(7, 3);
  const auto s = setup(Family::L, g, Rational(0), "1I", one, 3);
  const Rational r00 = (Rational(2) * g + Rational(1)) * (Rational(6) * g + Rational(13)) / Rational(8);
  CHECK(-s.inst.cd.Rm1(Rational(0)) / s.inst.cd.R[0](Rational(0)) == r00);
  CHECK(all_pass(check_r0_relation(s, 3)));

  const auto c = setup(Family::L, g, Rational(0), "", one, 5);
  for (int n = 0; n <= 5; ++n) {
    const Rational En(4 * n);
    CHECK(-c.inst.cd.Rm1(En) / c.inst.cd.R[0](En) == (Rational(4 * n) + Rational(2) * g + Rational(1)) / Rational(2));
  }
  CHECK(all_pass(check_r0_relation(c, 5)));

  const auto j = setup(Family::J, Rational(2), Rational(3), "1I", one, 3);
  const Expr r0 = known_closed_forms(Family::J, MultiIndex::parse("1I")).at(0);
  const Bindings at{{"n", Rational(2)}, {"a", Rational(5)}, {"b", Rational(-1)}, {"g", Rational(2)}, {"h", Rational(3)}};
  const Rational E2 = j.inst.df.energy(2);
  CHECK(-j.inst.cd.Rm1(E2) / j.inst.cd.R[0](E2) == r0.eval(at));
}

TEST_CASE("full ladder and series suites for built-in systems") {
  struct Case {
    Family f;
    Rational g, h;
    const char* D;
    P Y;
  };
  const P eta = P::x();
  const std::vector<Case> cases{
      {Family::L, Rational(7, 3), Rational(0), "", one},       {Family::L, Rational(7, 3), Rational(0), "1I", one},
      {Family::L, Rational(7, 3), Rational(0), "1II", one},    {Family::L, Rational(7, 3), Rational(0), "1I", eta},
      {Family::J, Rational(2), Rational(3), "", one},          {Family::J, Rational(2), Rational(3), "1I", one},
      {Family::J, Rational(2), Rational(3), "1II", one},       {Family::J, Rational(5, 2), Rational(7, 2), "1I", eta}};
  for (const auto& c : cases) {
    CAPTURE(to_string(c.f));
    CAPTURE(std::string(c.D));
    CAPTURE(c.Y.degree());
    const auto s = setup(c.f, c.g, c.h, c.D, c.Y);
    CHECK(all_pass(check_r0_relation(s, 6)));
    CHECK(all_pass(ladder_suite(s, 6)));
    for (int n = 0; n <= 6; ++n) CHECK(all_pass(heisenberg_series_check(s, n, s.inst.cd.K + 2)));
    CHECK(all_pass(commutation_check(s, 6)));
    CHECK(all_pass(round_trip_check(s, 6)));
    if (s.inst.cd.K == 2) CHECK(all_pass(k2_specialization(s, 6)));
    for (int n = 0; n <= 6; ++n) CHECK(all_pass(appendix_a_checks(spectral_at_level(s, n))));
  }
}

TEST_CASE("a wrong coefficient breaks the ladder") {
  const auto s = setup(Family::L, Rational(7, 3), Rational(0), "1I", one, 2);
  auto a = ladder_apply(s, 2, 1);
  CHECK(a.matches());
  a.expected = a.expected + Rational(1);
  CHECK_FALSE(a.matches());
  CHECK_THROWS_AS(ladder_coefficients(spectral_at_level(s, 0), 5), ConfigError);
}
