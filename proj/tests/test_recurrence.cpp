#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "closurelab/recurrence.hpp"

using namespace closurelab;

namespace {
using P = Poly<Rational>;
const Rational half(1, 2);
}  // namespace

TEST_CASE("building X from Xi and Y") {
  const Rational g(7, 3);
  const P eta = P::x(), xi = P::linear(Rational(1), g + half);
  CHECK(build_X(xi, P(Rational(1))) == eta * P::linear(Rational(1), Rational(2) * g + Rational(1)) * half);
  CHECK(build_X(xi, eta) == eta * eta * P::linear(Rational(1, 3), (Rational(2) * g + Rational(1)) / Rational(4)));
  CHECK(build_X(P(Rational(1)), P(Rational(1))) == eta);
}

TEST_CASE("classical laguerre three-term table") {
  const Rational g(5, 2);
  auto df = builtin_deformed<Rational>(Family::L, lj_env<Rational>(Family::L, g), MultiIndex{});
  auto tab = build_table(df, P::x(), 8);
  for (const auto& [n, row] : tab.rows) {
    CHECK(row.ok());
    CHECK(row.at(1) == Rational(-(n + 1)));
    CHECK(row.at(0) == Rational(2 * n) + g + half);
    CHECK(row.at(-1) == (n == 0 ? Rational(0) : -(Rational(n) + g - half)));
  }
  CHECK(all_pass(check_h_symmetry(df, tab)));
  CHECK(all_pass(check_span_and_leading(df, tab)));
}

TEST_CASE("laguerre {1^I} table matches the printed closed forms") {
  const Rational g(7, 3);
  auto df = builtin_deformed<Rational>(Family::L, lj_env<Rational>(Family::L, g), MultiIndex::parse("1I"));
  const P X = build_X(df.xi(), P(Rational(1)));
  auto row0 = expand_in_basis(df, X, 0);
  CHECK(row0.ok());
  CHECK(row0.at(2) == Rational(1));
  CHECK(row0.at(1) == -(Rational(2) * g + Rational(3)));
  CHECK(row0.at(0) == (Rational(2) * g + Rational(1)) * (Rational(6) * g + Rational(13)) / Rational(8));
  CHECK(row0.at(-1) == Rational(0));
  CHECK(row0.at(-2) == Rational(0));
  auto tab = build_table(df, X, 8);
  CHECK(all_pass(check_span_and_leading(df, tab)));
  CHECK(all_pass(check_h_symmetry(df, tab)));
  auto cf = closed_form_compare(df, tab, known_closed_forms(Family::L, MultiIndex::parse("1I")));
  CHECK(cf.size() == 45);
  CHECK(all_pass(cf));
  // r_{2,-1} = -(2g+3)(2g+7)/2
  CHECK(tab.rows.at(2).at(-1) == -(Rational(2) * g + Rational(3)) * (Rational(2) * g + Rational(7)) / Rational(2));
}

TEST_CASE("laguerre {1^I} table symbolically in g") {
  const RatFunc g = RatFunc::var();
  auto df = builtin_deformed<RatFunc>(Family::L, lj_env<RatFunc>(Family::L, g), MultiIndex::parse("1I"), 3);
  auto tab = build_table(df, build_X(df.xi(), Poly<RatFunc>(RatFunc(1))), 8);
  CHECK(all_pass(check_span_and_leading(df, tab)));
  CHECK(all_pass(check_h_symmetry(df, tab)));
  CHECK(all_pass(closed_form_compare(df, tab, known_closed_forms(Family::L, MultiIndex::parse("1I")))));
}

TEST_CASE("jacobi {1^I} table matches the printed closed forms") {
  for (auto [g, h] : {std::pair(Rational(2), Rational(3)), std::pair(Rational(5, 2), Rational(4)),
                      std::pair(Rational(3), Rational(7, 2))}) {
    auto df = builtin_deformed<Rational>(Family::J, lj_env<Rational>(Family::J, g, h), MultiIndex::parse("1I"));
    auto tab = build_table(df, build_X(df.xi(), P(Rational(1))), 5);
    CHECK(all_pass(check_span_and_leading(df, tab)));
    CHECK(all_pass(check_h_symmetry(df, tab)));
    CHECK(all_pass(closed_form_compare(df, tab, known_closed_forms(Family::J, MultiIndex::parse("1I")))));
  }
}

TEST_CASE("type II systems and larger Y keep the span property") {
  auto env = lj_env<Rational>(Family::J, Rational(5, 2), Rational(4));
  auto dj = builtin_deformed<Rational>(Family::J, env, MultiIndex::parse("1II"));
  auto tj = build_table(dj, build_X(dj.xi(), P::x()), 6);
  CHECK(tj.L == 3);
  CHECK(all_pass(check_span_and_leading(dj, tj)));
  CHECK(all_pass(check_h_symmetry(dj, tj)));
  auto dl = builtin_deformed<Rational>(Family::L, lj_env<Rational>(Family::L, Rational(3)), MultiIndex::parse("1II"));
  auto tl = build_table(dl, build_X(dl.xi(), P::x() * P::x()), 6);
  CHECK(all_pass(check_h_symmetry(dl, tl)));
  CHECK(all_pass(check_span_and_leading(dl, tl)));
}

TEST_CASE("a wrong X leaves a nonzero remainder") {
  auto df = builtin_deformed<Rational>(Family::L, lj_env<Rational>(Family::L, Rational(2)), MultiIndex::parse("1I"));
  auto tab = build_table(df, P::x(), 4);
  bool any_remainder = false;
  for (const auto& [n, row] : tab.rows) any_remainder = any_remainder || !row.ok();
  CHECK(any_remainder);
}
