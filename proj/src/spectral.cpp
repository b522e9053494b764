#include "closurelab/spectral.hpp"

#include <algorithm>
#include <set>

namespace closurelab {

namespace {

const MPoly Z = MPoly::var("z");

std::string itos(int v) { return std::to_string(v); }

// m for index j (1-based) of a 2L list, and the sign of the square-root part
int pair_m(int L, int j) { return j <= L ? L + 1 - j : j - L; }
int branch(int L, int j) { return j <= L ? 1 : -1; }
int shift_of(int L, int j) { return j <= L ? L + 1 - j : -(j - L); }

MPoly qpow(int e) { return MPoly::monomial("q", e); }

// q^-m - 2 + q^m = (q^(-m/2) - q^(m/2))^2
MPoly aw_c(int m) { return qpow(-m) - MPoly(2) + qpow(m); }
// q^-m + 2 + q^m = (q^(-m/2) + q^(m/2))^2
MPoly aw_d(int m) { return qpow(-m) + MPoly(2) + qpow(m); }
MPoly aw_zprime() { return Z + MPoly(1) + MPoly::var("b4") * qpow(-1); }

}  // namespace

MPoly SqrtExt::common_disc(const SqrtExt& a, const SqrtExt& b) {
  if (a.v_.is_zero()) return b.v_.is_zero() && b.disc_.is_zero() ? a.disc_ : b.disc_;
  if (b.v_.is_zero()) return a.disc_;
  if (!(a.disc_ == b.disc_)) throw AlgebraMismatch("SqrtExt: different square roots in one expression");
  return a.disc_;
}

SqrtExt operator+(const SqrtExt& a, const SqrtExt& b) {
  return SqrtExt(a.u_ + b.u_, a.v_ + b.v_, SqrtExt::common_disc(a, b));
}

SqrtExt operator-(const SqrtExt& a, const SqrtExt& b) { return a + (-b); }

SqrtExt operator*(const SqrtExt& a, const SqrtExt& b) {
  const MPoly d = SqrtExt::common_disc(a, b);
  return SqrtExt(a.u_ * b.u_ + a.v_ * b.v_ * d, a.u_ * b.v_ + a.v_ * b.u_, d);
}

bool operator==(const SqrtExt& a, const SqrtExt& b) {
  if (!(a.u_ == b.u_) || !(a.v_ == b.v_)) return false;
  return a.v_.is_zero() || a.disc_ == b.disc_;
}

SqrtExt SqrtExt::subs(const std::string& name, const MPoly& value) const {
  return SqrtExt(u_.subs(name, value), v_.subs(name, value), disc_.subs(name, value));
}

MPoly SqrtExt::with_root(const MPoly& root) const {
  if (v_.is_zero()) return u_;
  if (!(root * root == disc_)) throw AlgebraMismatch("claimed root " + root.str() + " does not square to " + disc_.str());
  return u_ + v_ * root;
}

std::string SqrtExt::str() const {
  if (v_.is_zero()) return u_.str();
  return "(" + u_.str() + ") + (" + v_.str() + ")*sqrt(" + disc_.str() + ")";
}

int surd_sign(const Rational& u, const Rational& v, const Rational& d) {
  if (v.is_zero() || d.is_zero()) return u.sign();
  if (d.sign() < 0) throw DegenerateSpectrum("square root of a negative number");
  const int su = u.sign(), sv = v.sign();
  if (su >= 0 && sv >= 0) return 1;
  if (su <= 0 && sv <= 0) return -1;
  // opposite signs: compare u^2 with v^2 d
  const int cmp = (u * u - v * v * d).sign();
  return su > 0 ? cmp : -cmp;
}

MPoly AlphaConjecture::root_at(int n) const {
  switch (family) {
    case Family::L: return MPoly();
    case Family::J: return MPoly(2 * n) + MPoly::var("a");
    case Family::W: return MPoly(2 * n) + MPoly::var("b1") - MPoly(1);
    case Family::AW: return qpow(-n) - MPoly::var("b4") * qpow(n - 1);
  }
  return {};
}

AlphaConjecture alpha_conjecture(Family f, int L) {
  if (L < 1) throw ConfigError("alpha_conjecture: L must be at least 1");
  AlphaConjecture ac;
  ac.family = f;
  ac.L = L;
  switch (f) {
    case Family::L: break;
    case Family::J: ac.disc = Z + MPoly::var("a") * MPoly::var("a"); break;
    case Family::W: ac.disc = MPoly(4) * Z + pow(MPoly::var("b1") - MPoly(1), 2); break;
    case Family::AW: ac.disc = aw_zprime() * aw_zprime() - MPoly(4) * MPoly::var("b4") * qpow(-1); break;
  }
  for (int j = 1; j <= 2 * L; ++j) {
    const int m = pair_m(L, j), sg = branch(L, j);
    const MPoly M(m);
    switch (f) {
      case Family::L: ac.alphas.push_back(SqrtExt::rational(MPoly(4 * m * sg))); break;
      case Family::J: ac.alphas.emplace_back(MPoly(4 * m * m), MPoly(4 * m * sg), ac.disc); break;
      case Family::W: ac.alphas.emplace_back(MPoly(m * m), MPoly(m * sg), ac.disc); break;
      case Family::AW: {
        const MPoly half(Rational(1, 2));
        ac.alphas.emplace_back(half * aw_c(m) * aw_zprime(), half * MPoly(sg) * (qpow(-m) - qpow(m)), ac.disc);
        break;
      }
    }
  }
  return ac;
}

MPoly energy_in_alpha_symbols(Family f, int n) {
  const MPoly e = energy_expr(f, n);
  if (f == Family::J) return e.subs("g", MPoly::var("a") - MPoly::var("h"));
  return e;
}

std::vector<MPoly> alphas_at_level(const AlphaConjecture& ac, int n) {
  const MPoly En = energy_in_alpha_symbols(ac.family, n);
  const MPoly root = ac.root_at(n);
  std::vector<MPoly> out;
  for (const auto& a : ac.alphas) out.push_back(a.subs("z", En).with_root(root));
  return out;
}

Bindings alpha_bindings(const ParamSet& ps) { return ps.values(); }

PairForms printed_pair_forms(Family f, int L) {
  PairForms pf;
  for (int m = L; m >= 1; --m) {
    const MPoly M(m), M2(m * m);
    switch (f) {
      case Family::L:
        pf.sum.push_back(MPoly());
        pf.product.push_back(MPoly(-16 * m * m));
        break;
      case Family::J:
        pf.sum.push_back(MPoly(8 * m * m));
        pf.product.push_back(MPoly(16 * m * m) * (M2 - Z - MPoly::var("a") * MPoly::var("a")));
        break;
      case Family::W:
        pf.sum.push_back(MPoly(2 * m * m));
        pf.product.push_back(M2 * (M2 - MPoly(4) * Z - pow(MPoly::var("b1") - MPoly(1), 2)));
        break;
      case Family::AW:
        pf.sum.push_back(aw_c(m) * aw_zprime());
        pf.product.push_back(aw_c(m) * (aw_d(m) * qpow(-1) * MPoly::var("b4") - aw_zprime() * aw_zprime()));
        break;
    }
  }
  return pf;
}

CheckList pairing_identities(Family f, int L) {
  const AlphaConjecture ac = alpha_conjecture(f, L);
  const PairForms pf = printed_pair_forms(f, L);
  CheckList out;
  for (int j = 1; j <= 2 * L; ++j) {
    const int partner = 2 * L + 1 - j;
    // the printed forms are indexed by m = L+1-j, which is the same for j and its partner
    const std::size_t idx = static_cast<std::size_t>(L - pair_m(L, std::min(j, partner)));
    const SqrtExt s = ac.alphas[static_cast<std::size_t>(j - 1)] + ac.alphas[static_cast<std::size_t>(partner - 1)];
    const SqrtExt p = ac.alphas[static_cast<std::size_t>(j - 1)] * ac.alphas[static_cast<std::size_t>(partner - 1)];
    const std::string tag = to_string(f) + " L=" + itos(L) + " j=" + itos(j);
    out.push_back({"pair sum " + tag, s.is_rational() && s.u() == pf.sum[idx],
                   {{"computed", s.str()}, {"printed", pf.sum[idx].str()}}});
    // the L product is not printed separately; it is checked against -16 m^2 all the same
    out.push_back({"pair product " + tag, p.is_rational() && p.u() == pf.product[idx],
                   {{"computed", p.str()}, {"printed", pf.product[idx].str()}}});
  }
  return out;
}

ConjecturedR conjectured_R_symmetric(const AlphaConjecture& ac) {
  const std::size_t K = ac.alphas.size();
  std::vector<SqrtExt> c{SqrtExt::rational(MPoly(1))};
  for (const auto& a : ac.alphas) {
    std::vector<SqrtExt> next(c.size() + 1, SqrtExt::rational(MPoly()));
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] = next[k + 1] + c[k];
      next[k] = next[k] - a * c[k];
    }
    c = std::move(next);
  }
  ConjecturedR out;
  for (std::size_t i = 0; i < K; ++i) {
    out.sqrt_free = out.sqrt_free && c[i].is_rational();
    out.R.push_back(-c[i].u());
  }
  return out;
}

std::vector<MPoly> conjectured_R_pairing(Family f, int L) {
  const PairForms pf = printed_pair_forms(f, L);
  std::vector<MPoly> c{MPoly(1)};
  for (std::size_t m = 0; m < pf.sum.size(); ++m) {
    const std::vector<MPoly> quad{pf.product[m], -pf.sum[m], MPoly(1)};
    std::vector<MPoly> next(c.size() + 2);
    for (std::size_t a = 0; a < c.size(); ++a)
      for (std::size_t b = 0; b < 3; ++b) next[a + b] += c[a] * quad[b];
    c = std::move(next);
  }
  std::vector<MPoly> R;
  for (int i = 0; i < 2 * L; ++i) R.push_back(-c[static_cast<std::size_t>(i)]);
  return R;
}

CheckList spacing_symbolic(Family f, int L, int n_max) {
  const AlphaConjecture ac = alpha_conjecture(f, L);
  CheckList out;
  for (int n = 0; n <= n_max; ++n) {
    const std::string tag = to_string(f) + " L=" + itos(L) + " n=" + itos(n);
    const MPoly En = energy_in_alpha_symbols(f, n);
    if (f != Family::L) {
      const MPoly root = ac.root_at(n), d = ac.disc.subs("z", En);
      out.push_back({"square-root-free " + tag, root * root == d, {{"root", root.str()}, {"disc(E_n)", d.str()}}});
    }
    std::vector<MPoly> vals;
    try {
      vals = alphas_at_level(ac, n);
    } catch (const AlgebraMismatch& e) {
      out.push_back({"spacing " + tag, false, {{"error", e.what()}}});
      continue;
    }
    for (int j = 1; j <= 2 * L; ++j) {
      const MPoly expected = energy_in_alpha_symbols(f, n + shift_of(L, j)) - En;
      const MPoly& got = vals[static_cast<std::size_t>(j - 1)];
      out.push_back({"spacing " + tag + " j=" + itos(j), got == expected,
                     {{"alpha_j(E_n)", got.str()}, {"E_shifted - E_n", expected.str()}}});
    }
  }
  return out;
}

CheckList spacing_at_sample(Family f, int L, const ParamSet& ps, int n_max) {
  const AlphaConjecture ac = alpha_conjecture(f, L);
  const Bindings at = alpha_bindings(ps);
  CheckList out;
  for (int n = 0; n <= n_max; ++n) {
    const std::string tag = to_string(f) + " L=" + itos(L) + " n=" + itos(n);
    const Rational En = eval_in(energy_expr(f, n), at);
    Bindings atz = at;
    atz["z"] = En;
    Rational root;
    if (f != Family::L) {
      root = ac.root_at(n).eval(at);
      const Rational d = ac.disc.eval(atz);
      out.push_back({"root " + tag, root * root == d && root.sign() > 0,
                     {{"root", root.str()}, {"disc(E_n)", d.str()}}});
    }
    for (int j = 1; j <= 2 * L; ++j) {
      const SqrtExt& a = ac.alphas[static_cast<std::size_t>(j - 1)];
      const Rational got = a.u().eval(atz) + (a.v().is_zero() ? Rational(0) : a.v().eval(atz) * root);
      const Rational expected = eval_in(energy_expr(f, n + shift_of(L, j)), at) - En;
      const bool sign_ok = j <= L ? got.sign() > 0 : got.sign() < 0;
      out.push_back({"spacing " + tag + " j=" + itos(j), got == expected && sign_ok,
                     {{"alpha_j(E_n)", got.str()}, {"E_shifted - E_n", expected.str()}}});
    }
  }
  return out;
}

std::vector<Rational> default_z_grid() {
  return {Rational(0),    Rational(1, 7), Rational(1, 3), Rational(1, 2), Rational(1), Rational(3, 2),
          Rational(2),    Rational(3),    Rational(5),    Rational(8),    Rational(13), Rational(50)};
}

CheckList ordering_at_sample(Family f, int L, const ParamSet& ps, int n_max) {
  const AlphaConjecture ac = alpha_conjecture(f, L);
  const Bindings at = alpha_bindings(ps);
  std::vector<std::pair<std::string, Rational>> points;
  for (const auto& z : default_z_grid()) points.emplace_back("z=" + z.str(), z);
  for (int n = 0; n <= n_max; ++n) points.emplace_back("z=E_" + itos(n), eval_in(energy_expr(f, n), at));
  CheckList out;
  for (const auto& [label, z] : points) {
    Bindings atz = at;
    atz["z"] = z;
    const Rational d = ac.disc.is_zero() ? Rational(0) : ac.disc.eval(atz);
    std::vector<std::pair<Rational, Rational>> uv;
    for (const auto& a : ac.alphas) uv.emplace_back(a.u().eval(atz), a.v().is_zero() ? Rational(0) : a.v().eval(atz));
    const std::string tag = to_string(f) + " L=" + itos(L) + " " + label;
    try {
      bool ok = true;
      for (std::size_t j = 0; j + 1 < uv.size(); ++j)
        ok = ok && surd_sign(uv[j].first - uv[j + 1].first, uv[j].second - uv[j + 1].second, d) > 0;
      const auto& last_pos = uv[static_cast<std::size_t>(L - 1)];
      const auto& first_neg = uv[static_cast<std::size_t>(L)];
      ok = ok && surd_sign(last_pos.first, last_pos.second, d) > 0 && surd_sign(first_neg.first, first_neg.second, d) < 0;
      out.push_back({"ordering " + tag, ok, {{"disc", d.str()}}});
    } catch (const DegenerateSpectrum& e) {
      out.push_back({"ordering " + tag, false, {{"disc", d.str()}, {"error", e.what()}}});
    }
  }
  return out;
}

RatMatrix companion_matrix(const std::vector<Rational>& R) {
  const int K = static_cast<int>(R.size());
  RatMatrix A = RatMatrix::Constant(K, K, Rational(0));
  for (int i = 0; i < K; ++i) {
    A(i, K - 1) = R[static_cast<std::size_t>(i)];
    if (i >= 1) A(i, i - 1) = Rational(1);
  }
  return A;
}

std::vector<Rational> R_from_roots(const std::vector<Rational>& alphas) {
  std::vector<Rational> c{Rational(1)};
  for (const auto& a : alphas) {
    std::vector<Rational> next(c.size() + 1, Rational(0));
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= a * c[k];
    }
    c = std::move(next);
  }
  std::vector<Rational> R;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) R.push_back(-c[i]);
  return R;
}

SpectralData eigen_closed_form(const std::vector<Rational>& R, const std::vector<Rational>& alphas) {
  const int K = static_cast<int>(R.size());
  if (static_cast<int>(alphas.size()) != K) throw ConfigError("eigen_closed_form: need K eigenvalues");
  std::set<Rational> seen;
  for (const auto& a : alphas) {
    if (a.is_zero()) throw DegenerateSpectrum("zero eigenvalue");
    if (!seen.insert(a).second) throw DegenerateSpectrum("repeated eigenvalue " + a.str());
  }
  for (const auto& a : alphas) {
    Rational v = pow(a, K);
    for (int i = 0; i < K; ++i) v -= R[static_cast<std::size_t>(i)] * pow(a, i);
    if (!v.is_zero()) throw EigenValidationFailed(a.str() + " is not a root of the characteristic polynomial");
  }
  SpectralData sd;
  sd.K = K;
  sd.R = R;
  sd.alphas = alphas;
  sd.P = RatMatrix::Constant(K, K, Rational(0));
  sd.P_inv = RatMatrix::Constant(K, K, Rational(0));
  for (int j = 1; j <= K; ++j) {
    const Rational& a = alphas[static_cast<std::size_t>(j - 1)];
    for (int i = 1; i <= K; ++i) {
      Rational p = pow(a, K - i);
      for (int k = 1; k <= K - i; ++k) p -= R[static_cast<std::size_t>(K - k)] * pow(a, K - i - k);
      sd.P(i - 1, j - 1) = p;
    }
    Rational den(1);
    for (int k = 1; k <= K; ++k)
      if (k != j) den *= a - alphas[static_cast<std::size_t>(k - 1)];
    for (int i = 1; i <= K; ++i) sd.P_inv(j - 1, i - 1) = pow(a, i - 1) / den;
  }
  sd.det_P = Rational(1);
  for (int i = 0; i < K; ++i)
    for (int j = i + 1; j < K; ++j) sd.det_P *= alphas[static_cast<std::size_t>(i)] - alphas[static_cast<std::size_t>(j)];
  return sd;
}

CheckList appendix_a_checks(const SpectralData& sd, int extra) {
  const int K = sd.K;
  const RatMatrix A = companion_matrix(sd.R);
  const std::string tag = " K=" + itos(K);
  CheckList out;
  bool eig = true, last_one = true;
  for (int j = 0; j < K; ++j) {
    for (int i = 0; i < K; ++i) {
      Rational s(0);
      for (int k = 0; k < K; ++k) s += A(i, k) * sd.P(k, j);
      eig = eig && s == sd.alphas[static_cast<std::size_t>(j)] * sd.P(i, j);
    }
    last_one = last_one && sd.P(K - 1, j) == Rational(1);
  }
  out.push_back({"A p_j = alpha_j p_j" + tag, eig, {}});
  out.push_back({"p_Kj = 1" + tag, last_one, {}});
  bool ident = true;
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j) {
      Rational s(0);
      for (int k = 0; k < K; ++k) s += sd.P(i, k) * sd.P_inv(k, j);
      ident = ident && s == Rational(i == j ? 1 : 0);
    }
  out.push_back({"P P^-1 = I" + tag, ident, {}});
  const Rational det = determinant_bareiss(sd.P);
  out.push_back({"|P| = Vandermonde product" + tag, det == sd.det_P, {{"bareiss", det.str()}, {"product", sd.det_P.str()}}});
  Rational sum(0);
  for (int j = 0; j < K; ++j) sum += sd.P_inv(j, 0) / sd.alphas[static_cast<std::size_t>(j)];
  const Rational inv_r0 = Rational(1) / sd.R[0];
  out.push_back({"sum alpha_j^-1 (P^-1)_j1 = 1/R_0" + tag, sum == inv_r0, {{"sum", sum.str()}, {"1/R_0", inv_r0.str()}}});
  // R^[n] by the scalar recursion, by A times R^[n-1], and by the eigen-decomposition
  std::vector<Rational> r(static_cast<std::size_t>(K), Rational(0));
  r[0] = Rational(1);
  bool rec = true, mat = true, init = true;
  for (int n = 0; n <= K + extra; ++n) {
    for (int i = 0; i < K; ++i) {
      Rational e(0);
      for (int j = 0; j < K; ++j) e += sd.P(i, j) * pow(sd.alphas[static_cast<std::size_t>(j)], n) * sd.P_inv(j, 0);
      rec = rec && e == r[static_cast<std::size_t>(i)];
    }
    if (n == K)
      for (int i = 0; i < K; ++i) init = init && r[static_cast<std::size_t>(i)] == sd.R[static_cast<std::size_t>(i)];
    std::vector<Rational> next(static_cast<std::size_t>(K));
    for (int i = 0; i < K; ++i) {
      next[static_cast<std::size_t>(i)] = sd.R[static_cast<std::size_t>(i)] * r[static_cast<std::size_t>(K - 1)];
      if (i >= 1) next[static_cast<std::size_t>(i)] += r[static_cast<std::size_t>(i - 1)];
      Rational m(0);
      for (int k = 0; k < K; ++k) m += A(i, k) * r[static_cast<std::size_t>(k)];
      mat = mat && m == next[static_cast<std::size_t>(i)];
    }
    r = std::move(next);
  }
  out.push_back({"R^[n] recursion = P diag(alpha^n) P^-1 e_1, n <= K+" + itos(extra) + tag, rec, {}});
  out.push_back({"R^[n+1] = A R^[n]" + tag, mat, {}});
  out.push_back({"R^[K] = R" + tag, init, {}});
  return out;
}

std::vector<Rational> random_spectrum(int K, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-40, 40), den(1, 7);
  std::set<Rational> picked;
  while (static_cast<int>(picked.size()) < K) {
    const Rational r(num(rng), den(rng));
    if (!r.is_zero()) picked.insert(r);
  }
  return {picked.rbegin(), picked.rend()};
}

}  // namespace closurelab
