#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "closurelab/appendix_b.hpp"
#include "closurelab/closure.hpp"
#include "closurelab/expr.hpp"
#include "closurelab/spectral.hpp"

using namespace closurelab;

namespace {

using P = Poly<Rational>;
const P one(Rational(1));
const P eta = P::x();

std::vector<MPoly> consts(std::initializer_list<int> v) {
  std::vector<MPoly> out;
  for (int x : v) out.emplace_back(x);
  return out;
}

ClosureInstance<Rational> at_g(const Rational& g, const char* D, const P& Y) {
  return solve_instance(builtin_deformed<Rational>(Family::L, lj_env<Rational>(Family::L, g), MultiIndex::parse(D)), Y);
}

}  // namespace

TEST_CASE("degree bounds") {
  const auto lj = degree_bounds(Family::L, 4);
  CHECK(lj.R == std::vector<int>{2, 1, 1, 0});
  CHECK(lj.Rm1 == 2);
  const auto w = degree_bounds(Family::W, 4);
  CHECK(w.R == std::vector<int>{4, 3, 2, 1});
  CHECK(w.Rm1 == 4);
}

TEST_CASE("classical laguerre closure of order 2") {
  const auto t = closure_symbolic_L(MultiIndex{}, one);
  CHECK(t.consistent);
  CHECK(t.R == consts({16, 0}));
  CHECK(t.Rm1 == parse_mpoly("-8*(z+2g+1)"));
}

TEST_CASE("laguerre {1^I}, Y=1: both routes give the printed data") {
  const auto sym = closure_symbolic_L(MultiIndex::parse("1I"), one);
  const auto smp = closure_sampled_L(MultiIndex::parse("1I"), one);
  const MPoly rm1 = parse_mpoly("64*(3z^2+2*(10g+11)*z+2*(2g+1)*(6g+13))");
  for (const auto* t : {&sym, &smp}) {
    CHECK(t->consistent);
    CHECK(t->kernel_dim == 0);
    CHECK(t->R == consts({-1024, 0, 80, 0}));
    CHECK(t->Rm1 == rm1);
  }
  CHECK(sym.mode == "symbolic");
  CHECK(smp.mode == "sampled");
  CHECK(all_pass(certify_symbolic_L(smp)));
  CHECK(all_pass(check_table_at_random_points(smp, 3, 7)));
}

TEST_CASE("laguerre {1^I}, Y=eta (K=6)") {
  const auto t = closure_sampled_L(MultiIndex::parse("1I"), eta);
  CHECK(t.K == 6);
  CHECK(t.R == consts({147456, 0, -12544, 0, 224, 0}));
  CHECK(t.Rm1 == parse_mpoly("-1536*(10z^3+3*(26g+33)*z^2+2*(84g^2+240g+139)*z+2*(2g+1)*(2g+5)*(10g+27))"));
  CHECK(all_pass(certify_symbolic_L(t)));
}

TEST_CASE("laguerre {1^I}, Y=eta^2 (K=8)") {
  const auto t = closure_sampled_L(MultiIndex::parse("1I"), eta * eta);
  CHECK(t.K == 8);
  CHECK(t.R == consts({-37748736, 0, 3358720, 0, -69888, 0, 480, 0}));
  CHECK(t.Rm1 == parse_mpoly("24576*(105z^4+20*(50g+67)*z^3+60*(52g^2+152g+107)*z^2+32*(6g+5)*(18g^2+77g+94)*z"
                             "+8*(2g+1)*(2g+5)*(2g+7)*(14g+45))"));
  CHECK(all_pass(certify_symbolic_L(t)));
}

TEST_CASE("laguerre {1^II}, Y=1") {
  const auto t = closure_symbolic_L(MultiIndex::parse("1II"), one);
  CHECK(t.R == consts({-1024, 0, 80, 0}));
  CHECK(t.Rm1 == parse_mpoly("-64*(3z^2+2*(10g-9)*z+2*(2g-3)*(6g+1))"));
}

TEST_CASE("jacobi {1^I} and {1^II}, Y=1") {
  const std::vector<MPoly> R{parse_mpoly("-1024*(z+a^2-1)*(z+a^2-4)"), parse_mpoly("-1024*(z+a^2-5/2)"),
                             parse_mpoly("80*(z+a^2-33/5)"), MPoly(40)};
  const MPoly rm1 =
      parse_mpoly("128*(b+2)*(z^2-((b+2)^2+3a^2-10a+1)*z+2*(a-1)*(a-2)*((b+2)^2-2a^2-a-3))");
  const auto t1 = closure_sampled_J(MultiIndex::parse("1I"), one);
  CHECK(t1.consistent);
  CHECK(t1.R == R);
  CHECK(t1.Rm1 == rm1);
  CHECK(all_pass(check_table_at_random_points(t1, 3, 11)));
  const auto t2 = closure_sampled_J(MultiIndex::parse("1II"), one);
  CHECK(t2.R == R);
  CHECK(t2.Rm1 == rm1.subs("b", -MPoly::var("b")));
  const auto refs = ReferenceTable::load(ReferenceTable::default_path());
  CHECK(reference_verdict(refs.find(Family::J, MultiIndex::parse("1II")), t2) == ReferenceVerdict::Match);
}

TEST_CASE("conjectured R for L=2 agrees with the solved closures") {
  CHECK(conjectured_R_symmetric(alpha_conjecture(Family::L, 2)).R == consts({-1024, 0, 80, 0}));
  const auto w = conjectured_R_symmetric(alpha_conjecture(Family::W, 2)).R;
  CHECK(w[3] == MPoly(10));
  CHECK(w[2] == parse_mpoly("5*(4z+(b1-1)^2)-33"));
}

TEST_CASE("operator identity at a sample and a perturbation breaks it") {
  auto inst = at_g(Rational(7, 3), "1I", one);
  CHECK(inst.cd.consistent);
  CHECK(verify_closure_identity(inst.ads, inst.hpow, inst.cd));
  CHECK(respects_bounds(inst.cd, inst.bounds));
  auto bad = inst.cd;
  bad.R[2] = P(Rational(81));
  CHECK_FALSE(verify_closure_identity(inst.ads, inst.hpow, bad));
  auto inst2 = at_g(Rational(7, 3), "1II", one);
  CHECK(verify_closure_identity(inst2.ads, inst2.hpow, inst2.cd));
}

TEST_CASE("no closure below order 2L") {
  auto inst = at_g(Rational(5, 2), "1I", one);
  const auto ads = ad_powers(inst.df.H(), inst.X, 3);
  const auto cd = solve_closure(ads, inst.hpow, degree_bounds(Family::L, 3));
  CHECK_FALSE(cd.consistent);
}

TEST_CASE("an interpolated table with a wrong entry fails certification") {
  auto t = closure_sampled_L(MultiIndex::parse("1I"), one);
  t.Rm1 += MPoly::var("g");
  CHECK_FALSE(all_pass(certify_symbolic_L(t)));
  CHECK_FALSE(all_pass(check_table_at_random_points(t, 2, 3)));
}

TEST_CASE("seed from the environment") {
  CHECK(seed_from_env(5) == (std::getenv("CLOSURELAB_SEED") ? seed_from_env(0) : 5));
}
