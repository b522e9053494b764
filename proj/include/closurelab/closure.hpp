#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "closurelab/checks.hpp"
#include "closurelab/families.hpp"
#include "closurelab/opexpr.hpp"
#include "closurelab/recurrence.hpp"

namespace closurelab {

/// Maximal degrees of R_0..R_{K-1} and R_{-1} in z.
struct DegreeBounds {
  std::vector<int> R;
  int Rm1 = 0;
};

/// L/J: deg R_i <= [(K-i)/2], deg R_{-1} <= [K/2]; W/AW: deg R_i <= K-i, deg R_{-1} <= K.
DegreeBounds degree_bounds(Family f, int K);

/// The data of (ad H)^K X = sum_{i<K} (ad H)^i X R_i(H) + R_{-1}(H).
template <ExactField F>
struct ClosureData {
  int K = 0;
  std::vector<Poly<F>> R;
  Poly<F> Rm1;
  /// False when no closure of this order and these degree bounds exists.
  bool consistent = false;
  /// Dimension of the solution space of the linear system (0 means unique).
  int kernel_dim = 0;
};

/// [(ad H)^0 X, ..., (ad H)^K X]; throws CoefficientBlowup when an operator exceeds max_size
/// stored coefficients (0 disables the guard).
template <ExactField F>
std::vector<DiffOp<F>> ad_powers(const DiffOp<F>& H, const Poly<F>& X, int K, std::size_t max_size = 0) {
  std::vector<DiffOp<F>> out{DiffOp<F>::mul(X, H.xi())};
  for (int i = 1; i <= K; ++i) {
    out.push_back(commutator(H, out.back()));
    if (max_size && out.back().size() > max_size)
      throw CoefficientBlowup("(ad H)^" + std::to_string(i) + " X has " + std::to_string(out.back().size()) +
                              " coefficients; use sampled mode");
  }
  return out;
}

namespace detail {

/// Appends the rows "sum_u x_u T_u = target" coefficient-wise, after bringing every
/// derivative order to a common power of xi.
template <ExactField F>
void add_operator_rows(RowReducer<F>& red, const std::vector<DiffOp<F>>& terms, const DiffOp<F>& target) {
  const Poly<F>& xi = target.xi();
  std::vector<Poly<F>> xi_pows{Poly<F>(F(1))};
  auto xpow = [&](int e) -> const Poly<F>& {
    while (static_cast<int>(xi_pows.size()) <= e) xi_pows.push_back(xi_pows.back() * xi);
    return xi_pows[static_cast<std::size_t>(e)];
  };
  int max_order = target.order();
  for (const auto& t : terms) max_order = std::max(max_order, t.order());
  const int n = static_cast<int>(terms.size());
  for (int k = 0; k <= max_order; ++k) {
    int e = target.coeff(k).e;
    for (const auto& t : terms) e = std::max(e, t.coeff(k).e);
    auto lift = [&](const DiffOp<F>& op) {
      const auto c = op.coeff(k);
      return c.num.is_zero() ? Poly<F>() : c.num * xpow(e - c.e);
    };
    std::vector<Poly<F>> cols;
    int top = -1;
    for (const auto& t : terms) {
      cols.push_back(lift(t));
      top = std::max(top, cols.back().degree());
    }
    const Poly<F> rhs = lift(target);
    top = std::max(top, rhs.degree());
    for (int d = 0; d <= top; ++d) {
      RowVec<F> row(n);
      bool nonzero = !field_is_zero(rhs.coeff(d));
      for (int u = 0; u < n; ++u) {
        row(u) = cols[static_cast<std::size_t>(u)].coeff(d);
        nonzero = nonzero || !field_is_zero(row(u));
      }
      if (nonzero) red.add(row, rhs.coeff(d));
    }
  }
}

}  // namespace detail

/// Solves the closure relation for all coefficients r_i^(j) of the R's at once. When
/// fixed_R is given, R_0..R_{K-1} are taken from it and only R_{-1} is solved for (used to
/// test whether a given set of R's lies in the solution space).
template <ExactField F>
ClosureData<F> solve_closure(const std::vector<DiffOp<F>>& ads, PowerCache<DiffOp<F>>& hpow, const DegreeBounds& b,
                             const std::vector<Poly<F>>* fixed_R = nullptr) {
  const int K = static_cast<int>(ads.size()) - 1;
  std::vector<DiffOp<F>> terms;
  std::vector<std::pair<int, int>> index;  // (i, j) with i = -1 for R_{-1}
  DiffOp<F> target = ads[static_cast<std::size_t>(K)];
  for (int i = 0; i < K; ++i) {
    if (fixed_R) {
      target = target - right_mul_poly_of_H(ads[static_cast<std::size_t>(i)], (*fixed_R)[static_cast<std::size_t>(i)], hpow);
      continue;
    }
    for (int j = 0; j <= b.R[static_cast<std::size_t>(i)]; ++j) {
      terms.push_back(ads[static_cast<std::size_t>(i)] * hpow.power(j));
      index.emplace_back(i, j);
    }
  }
  for (int j = 0; j <= b.Rm1; ++j) {
    terms.push_back(hpow.power(j));
    index.emplace_back(-1, j);
  }
  RowReducer<F> red(static_cast<int>(terms.size()));
  detail::add_operator_rows(red, terms, target);
  auto sol = red.solution();
  ClosureData<F> cd;
  cd.K = K;
  cd.consistent = sol.consistent;
  cd.kernel_dim = static_cast<int>(sol.kernel.size());
  std::vector<std::vector<F>> rc(static_cast<std::size_t>(K));
  std::vector<F> mc;
  if (fixed_R) cd.R = *fixed_R;
  for (std::size_t u = 0; u < index.size(); ++u) {
    auto [i, j] = index[u];
    const F v = sol.consistent ? sol.particular(static_cast<Eigen::Index>(u)) : F(0);
    auto& dst = i < 0 ? mc : rc[static_cast<std::size_t>(i)];
    if (static_cast<int>(dst.size()) <= j) dst.resize(static_cast<std::size_t>(j) + 1, F(0));
    dst[static_cast<std::size_t>(j)] = v;
  }
  if (!fixed_R)
    for (int i = 0; i < K; ++i) cd.R.push_back(Poly<F>(rc[static_cast<std::size_t>(i)]));
  cd.Rm1 = Poly<F>(mc);
  return cd;
}

/// Structural operator equality of both sides of the closure relation.
template <ExactField F>
bool verify_closure_identity(const std::vector<DiffOp<F>>& ads, PowerCache<DiffOp<F>>& hpow, const ClosureData<F>& cd) {
  const int K = static_cast<int>(ads.size()) - 1;
  if (static_cast<int>(cd.R.size()) != K) return false;
  DiffOp<F> rhs = right_mul_poly_of_H(hpow.power(0), cd.Rm1, hpow);
  for (int i = 0; i < K; ++i)
    rhs = rhs + right_mul_poly_of_H(ads[static_cast<std::size_t>(i)], cd.R[static_cast<std::size_t>(i)], hpow);
  return rhs == ads[static_cast<std::size_t>(K)];
}

/// Every solved degree within its bound.
template <ExactField F>
bool respects_bounds(const ClosureData<F>& cd, const DegreeBounds& b) {
  for (std::size_t i = 0; i < cd.R.size(); ++i)
    if (cd.R[i].degree() > b.R[i]) return false;
  return cd.Rm1.degree() <= b.Rm1;
}

/// Everything needed to solve and check one closure instance.
template <ExactField F>
struct ClosureInstance {
  DeformedFamily<F> df;
  Poly<F> X;
  std::vector<DiffOp<F>> ads;
  PowerCache<DiffOp<F>> hpow;
  ClosureData<F> cd;
  DegreeBounds bounds;
};

/// X from (Xi, Y), K = 2 deg X, the nested commutators and the solved closure data.
template <ExactField F>
ClosureInstance<F> solve_instance(DeformedFamily<F> df, const Poly<F>& Y, std::size_t max_size = 0) {
  Poly<F> X = build_X(df.xi(), Y);
  const int K = 2 * X.degree();
  auto ads = ad_powers(df.H(), X, K, max_size);
  PowerCache<DiffOp<F>> hpow(df.H());
  DegreeBounds b = degree_bounds(df.family(), K);
  ClosureData<F> cd = solve_closure(ads, hpow, b);
  return ClosureInstance<F>{std::move(df), std::move(X), std::move(ads), std::move(hpow), std::move(cd), std::move(b)};
}

/// Closure data as polynomials in z and the family parameters.
struct ClosureTable {
  Family family = Family::L;
  MultiIndex D;
  Poly<Rational> Y;
  int K = 0;
  std::vector<MPoly> R;
  MPoly Rm1;
  bool consistent = false;
  int kernel_dim = 0;
  /// "symbolic", "sampled" or "sample" (a single parameter point).
  std::string mode;
  /// Degree bound per parameter that the interpolation settled on (sampled mode).
  int interpolation_bound = 0;
  int samples_used = 0;
};

/// Conversions of solved data into tables.
ClosureTable table_from(const ClosureData<Rational>& cd, Family f, const MultiIndex& D, const Poly<Rational>& Y);
ClosureTable table_from(const ClosureData<RatFunc>& cd, Family f, const MultiIndex& D, const Poly<Rational>& Y);

/// Laguerre, coefficients as rational functions of g throughout.
ClosureTable closure_symbolic_L(const MultiIndex& D, const Poly<Rational>& Y);
/// Laguerre, solved at rational g samples and interpolated in g.
ClosureTable closure_sampled_L(const MultiIndex& D, const Poly<Rational>& Y);
/// Jacobi, solved on a tensor grid in (a, b) and interpolated.
ClosureTable closure_sampled_J(const MultiIndex& D, const Poly<Rational>& Y);

/// Laguerre table (polynomial in z and g) checked as an exact operator identity over Q(g),
/// together with the degree bounds. With kernel 0 at some sample the solution over Q(g) is
/// unique, so a certified interpolated table is the symbolic closure.
CheckList certify_symbolic_L(const ClosureTable& t);

/// Solves at `count` fresh random admissible parameter points and compares with the table.
CheckList check_table_at_random_points(const ClosureTable& t, int count, std::uint64_t seed);

/// Seed from CLOSURELAB_SEED, or the given default.
std::uint64_t seed_from_env(std::uint64_t fallback = 20240601);

}  // namespace closurelab
