#pragma once

#include <string>
#include <vector>

#include "closurelab/checks.hpp"
#include "closurelab/closure.hpp"
#include "closurelab/recurrence.hpp"
#include "closurelab/spectral.hpp"

namespace closurelab {

/// Everything the ladder checks need for one solved instance at a parameter sample.
struct HeisenbergSetup {
  ClosureInstance<Rational> inst;
  RecurrenceTable<Rational> table;
  AlphaConjecture conjecture;
  Bindings at;
  int L = 0;
};

/// Solves the closure for a built-in deformed family and expands X P_{D,n} for n <= n_max + 1.
HeisenbergSetup heisenberg_setup(DeformedFamily<Rational> df, const Poly<Rational>& Y, int n_max);

/// R_i(E_n) with the conjectured alpha_j(E_n), diagonalized in closed form.
SpectralData spectral_at_level(const HeisenbergSetup& s, int n);

/// Coefficients of a^(j) = sum_i (ad H)^(i-1) X p_ij (P^-1)_j1 + R_{-1} alpha_j^-1 (P^-1)_j1:
/// entries 0..K-1 multiply (ad H)^i X, entry K multiplies R_{-1}. Scalars evaluated at level n.
std::vector<Rational> ladder_coefficients(const SpectralData& sd, int j);

/// a^(j) acting on P_{D,n}.
struct LadderAction {
  int j = 0, n = 0, shift = 0;
  Poly<Rational> image;
  /// image = coefficient * P_{D,n+shift} (image = 0 when n+shift < 0)
  bool proportional = false;
  Rational coefficient;
  /// r_{n,shift} from the recurrence table.
  Rational expected;
  bool matches() const { return proportional && coefficient == expected; }
};

LadderAction ladder_apply(const HeisenbergSetup& s, int j, int n);

/// -R_{-1}(E_n)/R_0(E_n) = r_{n,0}.
CheckList check_r0_relation(const HeisenbergSetup& s, int n_max);

/// a^(j) P_{D,n} = r_{n,shift} P_{D,n+shift} for all j and n <= n_max, and the fundamental
/// ladders a^(L), a^(L+1) move by exactly one step.
CheckList ladder_suite(const HeisenbergSetup& s, int n_max);

/// t^m/m! coefficients of e^{iHt} X e^{-iHt} P_{D,n}: (ad H)^m X P_{D,n} computed by applying H
/// directly against sum_j alpha_j^m a^(j) P_{D,n} (plus -R_{-1}/R_0 P_{D,n} at m = 0); for m <= K
/// the nested commutators are applied as operators as well.
CheckList heisenberg_series_check(const HeisenbergSetup& s, int n, int m_max);

/// H(a^(j) P_{D,n}) = (E_n + alpha_j(E_n)) a^(j) P_{D,n}, alpha_j(E_n) > 0 exactly for j <= L.
CheckList commutation_check(const HeisenbergSetup& s, int n_max);

/// a^(L+1) a^(L) P_{D,n} = r_{n,1} r_{n+1,-1} P_{D,n} with a positive product.
CheckList round_trip_check(const HeisenbergSetup& s, int n_max);

/// For K = 2: alpha_+- = (R_1 +- sqrt(R_1^2 + 4 R_0))/2 against the conjectured pair, and
/// a^(+-) = +-([H,eta] - (eta + R_{-1}/R_0) alpha_-+)/(alpha_+ - alpha_-) against a^(1), a^(2).
CheckList k2_specialization(const HeisenbergSetup& s, int n_max);

}  // namespace closurelab
