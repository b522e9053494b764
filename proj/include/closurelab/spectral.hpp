#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "closurelab/checks.hpp"
#include "closurelab/families.hpp"
#include "closurelab/linsolve.hpp"
#include "closurelab/mpoly.hpp"

namespace closurelab {

/// u + v s with s^2 = disc, where u, v and disc are polynomials in z and the family parameters.
/// The symbol s is never evaluated numerically; expressions are compared in this normal form.
class SqrtExt {
 public:
  SqrtExt() = default;
  SqrtExt(MPoly u, MPoly v, MPoly disc) : u_(std::move(u)), v_(std::move(v)), disc_(std::move(disc)) {}
  static SqrtExt rational(MPoly u) { return SqrtExt(std::move(u), MPoly(), MPoly()); }

  const MPoly& u() const { return u_; }
  const MPoly& v() const { return v_; }
  const MPoly& disc() const { return disc_; }
  bool is_rational() const { return v_.is_zero(); }

  friend SqrtExt operator+(const SqrtExt& a, const SqrtExt& b);
  friend SqrtExt operator-(const SqrtExt& a, const SqrtExt& b);
  friend SqrtExt operator*(const SqrtExt& a, const SqrtExt& b);
  SqrtExt operator-() const { return SqrtExt(-u_, -v_, disc_); }
  /// Equal normal forms; the discriminants must agree when both have an s-part.
  friend bool operator==(const SqrtExt& a, const SqrtExt& b);

  /// Substitutes z (or any variable) by a polynomial in u, v and disc.
  SqrtExt subs(const std::string& name, const MPoly& value) const;
  /// u + v r where r is a claimed square root of disc; throws AlgebraMismatch unless r^2 = disc.
  MPoly with_root(const MPoly& root) const;

  std::string str() const;

 private:
  static MPoly common_disc(const SqrtExt& a, const SqrtExt& b);
  MPoly u_, v_, disc_;
};

/// Exact sign of u + v sqrt(d) for rationals with d >= 0 (throws DegenerateSpectrum when d < 0
/// and v != 0, since the value is not real).
int surd_sign(const Rational& u, const Rational& v, const Rational& d);

/// Conjectured eigenvalues alpha_1 > ... > alpha_2L of the companion matrix for K = 2L,
/// written with m = L+1-j (j <= L) and m = j-L (j > L):
///   L:  +-4m
///   J:  4m^2 +- 4m s,                          s^2 = z + a^2
///   W:  m^2 +- m s,                            s^2 = 4z + (b1-1)^2
///   AW: ((q^-m - 2 + q^m) z' +- (q^-m - q^m) s)/2, z' = z+1+b4/q, s^2 = z'^2 - 4 b4/q
struct AlphaConjecture {
  Family family = Family::L;
  int L = 1;
  MPoly disc;
  std::vector<SqrtExt> alphas;
  /// The square-root-free value of s at z = E_n: 2n+a, 2n+b1-1 or q^-n - b4 q^(n-1).
  MPoly root_at(int n) const;
};

AlphaConjecture alpha_conjecture(Family f, int L);

/// E_n written in the symbols the conjecture uses (a for J, b1 for W, q and b4 for AW).
MPoly energy_in_alpha_symbols(Family f, int n);

/// alpha_j(E_n) as polynomials in the parameters, with s replaced by its closed form.
std::vector<MPoly> alphas_at_level(const AlphaConjecture& ac, int n);

/// The values substituted for the conjecture's symbols from a parameter sample.
Bindings alpha_bindings(const ParamSet& ps);

/// Printed pair sums and products alpha_j + alpha_{2L+1-j}, alpha_j alpha_{2L+1-j} for
/// j = 1..L (entry j-1, m = L+1-j), in z and the family symbols. The L product (-16 m^2) follows from alpha = +-4m.
struct PairForms {
  std::vector<MPoly> sum, product;
};
PairForms printed_pair_forms(Family f, int L);

/// Pair sums and products of the conjectured alphas against the printed forms, identically in z.
CheckList pairing_identities(Family f, int L);

/// R_0..R_{K-1} with x^K - sum R_i x^i = prod_j (x - alpha_j), expanded with s kept symbolic;
/// sqrt_free reports whether every s-part cancelled.
struct ConjecturedR {
  std::vector<MPoly> R;
  bool sqrt_free = true;
};
ConjecturedR conjectured_R_symmetric(const AlphaConjecture& ac);
/// The same polynomials as a product of the printed quadratic pair factors.
std::vector<MPoly> conjectured_R_pairing(Family f, int L);

/// alpha_j(E_n) = E_{n+L+1-j} - E_n (j <= L) and E_{n-(j-L)} - E_n (j > L), symbolically in
/// the parameters, together with root_at(n)^2 = disc(E_n).
CheckList spacing_symbolic(Family f, int L, int n_max);
/// The same identities at a parameter sample, plus the sign of each closed-form root.
CheckList spacing_at_sample(Family f, int L, const ParamSet& ps, int n_max);
/// alpha_1 > ... > alpha_L > 0 > alpha_{L+1} > ... > alpha_2L at the default z grid and at E_0..E_n_max.
CheckList ordering_at_sample(Family f, int L, const ParamSet& ps, int n_max);
/// Twelve rational z >= 0 used for ordering checks.
std::vector<Rational> default_z_grid();

using RatMatrix = Mat<Rational>;

/// Companion matrix: ones on the subdiagonal, last column R_0..R_{K-1}.
RatMatrix companion_matrix(const std::vector<Rational>& R);

/// Closed-form diagonalization of the companion matrix for given exact eigenvalues.
struct SpectralData {
  int K = 0;
  std::vector<Rational> R;
  std::vector<Rational> alphas;
  RatMatrix P, P_inv;
  Rational det_P;
};

/// p_ij = alpha_j^(K-i) - sum_{k=1}^{K-i} R_{K-k} alpha_j^(K-i-k),
/// (P^-1)_ji = alpha_j^(i-1) / prod_{k != j}(alpha_j - alpha_k), |P| = prod_{i<j}(alpha_i - alpha_j).
/// Throws DegenerateSpectrum on a repeated or zero eigenvalue and EigenValidationFailed when
/// some alpha_j is not a root of x^K - sum R_i x^i.
SpectralData eigen_closed_form(const std::vector<Rational>& R, const std::vector<Rational>& alphas);

/// A p_j = alpha_j p_j, p_Kj = 1, P P^-1 = I, Bareiss |P| = Vandermonde product,
/// sum_j alpha_j^-1 (P^-1)_j1 = R_0^-1, and the scalar recursion for R^[n] against
/// P diag(alpha^n) P^-1 e_1 for n <= K + extra, including R^[K] = R.
CheckList appendix_a_checks(const SpectralData& sd, int extra = 3);

/// R_0..R_{K-1} from distinct nonzero roots: R_i = (-1)^(K-i+1) e_{K-i}(alpha).
std::vector<Rational> R_from_roots(const std::vector<Rational>& alphas);

/// K distinct nonzero random rationals sorted decreasingly.
std::vector<Rational> random_spectrum(int K, std::mt19937_64& rng);

}  // namespace closurelab
