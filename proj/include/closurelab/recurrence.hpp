#pragma once

#include <map>
#include <string>

#include "closurelab/checks.hpp"
#include "closurelab/expr.hpp"
#include "closurelab/families.hpp"

namespace closurelab {

/// X(eta) = int_0^eta Xi(y) Y(y) dy.
template <ExactField F>
Poly<F> build_X(const Poly<F>& xi, const Poly<F>& Y) {
  return (xi * Y).integral();
}

/// Coefficients r_{n,k}, -L <= k <= L, of X P_n = sum_k r_{n,k} P_{n+k}.
template <ExactField F>
struct RecurrenceRow {
  int n = 0;
  std::map<int, F> r;
  /// Whatever is left after eliminating the admissible basis elements; zero when X P_n lies in their span.
  Poly<F> remainder;
  bool ok() const { return remainder.is_zero(); }
  F at(int k) const {
    auto it = r.find(k);
    return it == r.end() ? F(0) : it->second;
  }
};

template <ExactField F>
struct RecurrenceTable {
  Poly<F> X;
  int L = 0;
  std::map<int, RecurrenceRow<F>> rows;
};

/// Expands X P_{D,n} against P_{D,n+L}, ..., P_{D,max(0,n-L)} by leading-term elimination.
template <ExactField F>
RecurrenceRow<F> expand_in_basis(const DeformedFamily<F>& df, const Poly<F>& X, int n) {
  const int L = X.degree();
  RecurrenceRow<F> row;
  row.n = n;
  Poly<F> t = X * df.P(n);
  for (int k = L; k >= -L; --k) {
    const int m = n + k;
    if (m < 0) {
      row.r[k] = F(0);
      continue;
    }
    const Poly<F>& b = df.P(m);
    const F c = t.coeff(b.degree()) / b.lead();
    row.r[k] = c;
    if (!field_is_zero(c)) t -= b * c;
  }
  row.remainder = t;
  return row;
}

template <ExactField F>
RecurrenceTable<F> build_table(const DeformedFamily<F>& df, const Poly<F>& X, int n_max) {
  RecurrenceTable<F> tab;
  tab.X = X;
  tab.L = X.degree();
  for (int n = 0; n <= n_max; ++n) tab.rows.emplace(n, expand_in_basis(df, X, n));
  return tab;
}

/// Zero remainder for every row and r_{n,L} = c^X c^P_n / c^P_{n+L}.
template <ExactField F>
CheckList check_span_and_leading(const DeformedFamily<F>& df, const RecurrenceTable<F>& tab) {
  CheckList out;
  for (const auto& [n, row] : tab.rows) {
    out.push_back({"span n=" + std::to_string(n), row.ok(), {{"remainder", row.remainder.str("eta")}}});
    const F lead = tab.X.lead() * df.P(n).lead() / df.P(n + tab.L).lead();
    out.push_back({"leading r n=" + std::to_string(n), row.at(tab.L) == lead,
                   {{"r", to_string(row.at(tab.L))}, {"expected", to_string(lead)}}});
  }
  return out;
}

/// r_{n,-l} = (h_{D,n}/h_{D,n-l}) r_{n-l,l} for l = 1..L, and r_{n,-l} = 0 when l > n.
template <ExactField F>
CheckList check_h_symmetry(const DeformedFamily<F>& df, const RecurrenceTable<F>& tab) {
  CheckList out;
  for (const auto& [n, row] : tab.rows) {
    for (int l = 1; l <= tab.L; ++l) {
      const std::string id = "h-symmetry n=" + std::to_string(n) + " l=" + std::to_string(l);
      if (l > n) {
        out.push_back({id, field_is_zero(row.at(-l)), {{"r", to_string(row.at(-l))}}});
        continue;
      }
      const F rhs = df.h_ratio(n, l) * tab.rows.at(n - l).at(l);
      out.push_back({id, row.at(-l) == rhs, {{"r", to_string(row.at(-l))}, {"expected", to_string(rhs)}}});
    }
  }
  return out;
}

/// Compares every r_{n,k} with a closed form in n and the family parameters (r = 0 when n+k < 0).
template <ExactField F>
CheckList closed_form_compare(const DeformedFamily<F>& df, const RecurrenceTable<F>& tab,
                              const std::map<int, Expr>& formulas) {
  CheckList out;
  for (const auto& [n, row] : tab.rows) {
    for (const auto& [k, e] : formulas) {
      // below the ground state the coefficient vanishes by convention, whatever the formula gives
      if (n + k < 0) {
        out.push_back({"closed form n=" + std::to_string(n) + " k=" + std::to_string(k), field_is_zero(row.at(k)),
                       {{"r", to_string(row.at(k))}, {"expected", "0"}}});
        continue;
      }
      const F nn(n);
      auto lookup = [&](const std::string& name) -> F {
        if (name == "n") return nn;
        auto it = df.env().find(name);
        if (it == df.env().end()) throw std::invalid_argument("closed form uses unknown symbol " + name);
        return it->second;
      };
      const F expected = e.template evaluate<F>(lookup);
      out.push_back({"closed form n=" + std::to_string(n) + " k=" + std::to_string(k), row.at(k) == expected,
                     {{"r", to_string(row.at(k))}, {"expected", to_string(expected)}}});
    }
  }
  return out;
}

/// Printed closed forms of r_{n,k} for X = X_min; empty when none are known for (f, D).
std::map<int, Expr> known_closed_forms(Family f, const MultiIndex& D);

}  // namespace closurelab
