#include "closurelab/closure.hpp"

#include <cstdlib>
#include <functional>
#include <random>

#include "closurelab/interpolate.hpp"

namespace closurelab {

DegreeBounds degree_bounds(Family f, int K) {
  DegreeBounds b;
  const bool lj = has_differential_operator(f);
  for (int i = 0; i < K; ++i) b.R.push_back(lj ? (K - i) / 2 : K - i);
  b.Rm1 = lj ? K / 2 : K;
  return b;
}

ClosureTable table_from(const ClosureData<Rational>& cd, Family f, const MultiIndex& D, const Poly<Rational>& Y) {
  ClosureTable t{f, D, Y, cd.K, {}, MPoly::from_poly(cd.Rm1, "z"), cd.consistent, cd.kernel_dim, "sample", 0, 1};
  for (const auto& r : cd.R) t.R.push_back(MPoly::from_poly(r, "z"));
  return t;
}

ClosureTable table_from(const ClosureData<RatFunc>& cd, Family f, const MultiIndex& D, const Poly<Rational>& Y) {
  ClosureTable t{f, D, Y, cd.K, {}, from_poly_ratfunc(cd.Rm1, "z", "g"), cd.consistent, cd.kernel_dim, "symbolic", 0, 0};
  for (const auto& r : cd.R) t.R.push_back(from_poly_ratfunc(r, "z", "g"));
  return t;
}

ClosureTable closure_symbolic_L(const MultiIndex& D, const Poly<Rational>& Y) {
  const RatFunc g = RatFunc::var();
  auto df = builtin_deformed<RatFunc>(Family::L, lj_env<RatFunc>(Family::L, g), D);
  std::vector<RatFunc> yc;
  for (const auto& c : Y.coeffs()) yc.emplace_back(c);
  auto inst = solve_instance(std::move(df), Poly<RatFunc>(yc));
  return table_from(inst.cd, Family::L, D, Y);
}

namespace {

// Solved data of one sample as a flat list of polynomials in z: R_0..R_{K-1}, R_{-1}.
std::vector<Poly<Rational>> flatten(const ClosureData<Rational>& cd) {
  std::vector<Poly<Rational>> out = cd.R;
  out.push_back(cd.Rm1);
  return out;
}

ClosureData<Rational> solve_at(Family f, const Env<Rational>& env, const MultiIndex& D, const Poly<Rational>& Y) {
  return solve_instance(builtin_deformed<Rational>(f, env, D, 3), Y).cd;
}

ClosureTable assemble(Family f, const MultiIndex& D, const Poly<Rational>& Y, int K, const std::vector<MPoly>& flat) {
  ClosureTable t;
  t.family = f;
  t.D = D;
  t.Y = Y;
  t.K = K;
  t.R.assign(flat.begin(), flat.end() - 1);
  t.Rm1 = flat.back();
  t.consistent = true;
  t.mode = "sampled";
  return t;
}

Rational l_sample(int k) {
  static const Rational defaults[] = {Rational(2), Rational(7, 3), Rational(3), Rational(7, 2)};
  if (k < 4) return defaults[k];
  return Rational(4) + Rational(k - 4, 3);
}

}  // namespace

ClosureTable closure_sampled_L(const MultiIndex& D, const Poly<Rational>& Y) {
  std::vector<Rational> gs;
  std::vector<std::vector<Poly<Rational>>> sols;
  int K = 0, kernel = 0;
  for (int bound = 2; bound <= 64; bound *= 2) {
    while (static_cast<int>(sols.size()) < bound + 2) {
      gs.push_back(l_sample(static_cast<int>(gs.size())));
      auto cd = solve_at(Family::L, lj_env<Rational>(Family::L, gs.back()), D, Y);
      if (!cd.consistent) {
        ClosureTable t = table_from(cd, Family::L, D, Y);
        t.mode = "sampled";
        return t;
      }
      K = cd.K;
      kernel = std::max(kernel, cd.kernel_dim);
      sols.push_back(flatten(cd));
    }
    try {
      std::vector<MPoly> flat;
      for (std::size_t p = 0; p < sols[0].size(); ++p) {
        int top = -1;
        for (const auto& s : sols) top = std::max(top, s[p].degree());
        MPoly acc;
        for (int j = 0; j <= top; ++j) {
          std::vector<Sample> pts;
          for (std::size_t k = 0; k < sols.size(); ++k) pts.emplace_back(gs[k], sols[k][p].coeff(j));
          acc += interpolate_param(pts, bound, "g") * MPoly::monomial("z", j);
        }
        flat.push_back(acc);
      }
      ClosureTable t = assemble(Family::L, D, Y, K, flat);
      t.kernel_dim = kernel;
      t.interpolation_bound = bound;
      t.samples_used = static_cast<int>(sols.size());
      return t;
    } catch (const SampleMismatch&) {
    }
  }
  throw SampleMismatch("closure data is not polynomial in g of degree <= 64");
}

ClosureTable closure_sampled_J(const MultiIndex& D, const Poly<Rational>& Y) {
  const int L = D.ell() + Y.degree() + 1;
  const int a0 = std::max(4, 2 * L);
  auto a_at = [&](int i) { return Rational(a0 + i) + Rational(1, 3); };
  auto b_at = [](int j) { return Rational(1, 5) + Rational(j); };
  std::map<std::pair<int, int>, std::vector<Poly<Rational>>> sols;
  int K = 0, kernel = 0;
  for (int bound = 2; bound <= 32; bound *= 2) {
    const int m = bound + 2;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        if (sols.count({i, j})) continue;
        const Rational a = a_at(i), b = b_at(j);
        const Rational half(1, 2);
        auto cd = solve_at(Family::J, lj_env<Rational>(Family::J, (a + b) * half, (a - b) * half), D, Y);
        if (!cd.consistent) {
          ClosureTable t = table_from(cd, Family::J, D, Y);
          t.mode = "sampled";
          return t;
        }
        K = cd.K;
        kernel = std::max(kernel, cd.kernel_dim);
        sols[{i, j}] = flatten(cd);
      }
    std::vector<Rational> as, bs;
    for (int i = 0; i < m; ++i) as.push_back(a_at(i));
    for (int j = 0; j < m; ++j) bs.push_back(b_at(j));
    try {
      std::vector<MPoly> flat;
      const std::size_t count = sols.begin()->second.size();
      for (std::size_t p = 0; p < count; ++p) {
        int top = -1;
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j) top = std::max(top, sols[{i, j}][p].degree());
        MPoly acc;
        for (int d = 0; d <= top; ++d) {
          std::vector<std::vector<Rational>> vals(static_cast<std::size_t>(m));
          for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) vals[static_cast<std::size_t>(i)].push_back(sols[{i, j}][p].coeff(d));
          acc += interpolate_grid(as, bs, vals, bound, bound, "a", "b") * MPoly::monomial("z", d);
        }
        flat.push_back(acc);
      }
      ClosureTable t = assemble(Family::J, D, Y, K, flat);
      t.kernel_dim = kernel;
      t.interpolation_bound = bound;
      t.samples_used = m * m;
      return t;
    } catch (const SampleMismatch&) {
    }
  }
  throw SampleMismatch("closure data is not polynomial in (a, b) of degree <= 32");
}

CheckList certify_symbolic_L(const ClosureTable& t) {
  if (t.family != Family::L) throw ConfigError("certify_symbolic_L: Laguerre tables only");
  const RatFunc g = RatFunc::var();
  auto df = builtin_deformed<RatFunc>(Family::L, lj_env<RatFunc>(Family::L, g), t.D, 3);
  std::vector<RatFunc> yc;
  for (const auto& c : t.Y.coeffs()) yc.emplace_back(c);
  const Poly<RatFunc> X = build_X(df.xi(), Poly<RatFunc>(yc));
  const auto ads = ad_powers(df.H(), X, t.K);
  PowerCache<DiffOp<RatFunc>> hpow(df.H());
  ClosureData<RatFunc> cd;
  cd.K = t.K;
  cd.consistent = t.consistent;
  for (const auto& r : t.R) cd.R.push_back(r.to_poly_ratfunc("z", "g"));
  cd.Rm1 = t.Rm1.to_poly_ratfunc("z", "g");
  return {{"operator identity over Q(g)", verify_closure_identity(ads, hpow, cd), {}},
          {"degree bounds over Q(g)", respects_bounds(cd, degree_bounds(Family::L, t.K)), {}}};
}

CheckList check_table_at_random_points(const ClosureTable& t, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(0, 600), den(1, 7);
  CheckList out;
  for (int k = 0; k < count; ++k) {
    Env<Rational> env;
    Bindings at;
    if (t.family == Family::L) {
      const Rational g = Rational(2) + Rational(num(rng), 100 * den(rng));
      env = lj_env<Rational>(Family::L, g);
      at = {{"g", g}};
    } else {
      const int L = t.K / 2;
      const Rational a = Rational(std::max(4, 2 * L)) + Rational(num(rng), 100 * den(rng));
      const Rational b = Rational(-1) + Rational(num(rng), 200 * den(rng));
      const Rational half(1, 2);
      env = lj_env<Rational>(Family::J, (a + b) * half, (a - b) * half);
      at = {{"a", a}, {"b", b}};
    }
    auto cd = solve_at(t.family, env, t.D, t.Y);
    bool same = cd.consistent && cd.K == t.K;
    for (int i = 0; same && i < t.K; ++i)
      same = MPoly::from_poly(cd.R[static_cast<std::size_t>(i)], "z") == t.R[static_cast<std::size_t>(i)].subs(at);
    same = same && MPoly::from_poly(cd.Rm1, "z") == t.Rm1.subs(at);
    CheckResult c{"fresh sample " + std::to_string(k), same, {}};
    for (const auto& [name, v] : at) c.values[name] = v.str();
    out.push_back(c);
  }
  return out;
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
  if (const char* s = std::getenv("CLOSURELAB_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw ConfigError("CLOSURELAB_SEED must be a non-negative integer");
    }
  }
  return fallback;
}

}  // namespace closurelab
