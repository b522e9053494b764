#include "closurelab/heisenberg.hpp"

namespace closurelab {

namespace {

std::string itos(int v) { return std::to_string(v); }

int shift_of(int L, int j) { return j <= L ? L + 1 - j : -(j - L); }

std::string tag(const HeisenbergSetup& s) {
  return to_string(s.inst.df.family()) + " " + s.inst.df.D().str() + " K=" + itos(s.inst.cd.K);
}

// (ad H)^i X P_{D,n} for i = 0..K-1, by applying the nested commutators
std::vector<Poly<Rational>> commutator_images(const HeisenbergSetup& s, int n) {
  std::vector<Poly<Rational>> out;
  for (int i = 0; i < s.inst.cd.K; ++i) out.push_back(s.inst.ads[static_cast<std::size_t>(i)].apply(s.inst.df.P(n)));
  return out;
}

Poly<Rational> ladder_image(const HeisenbergSetup& s, const SpectralData& sd, int j, int n,
                            const std::vector<Poly<Rational>>& comps) {
  const auto c = ladder_coefficients(sd, j);
  Poly<Rational> img;
  for (int i = 0; i < sd.K; ++i) img += comps[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(i)];
  const Rational rm1 = s.inst.cd.Rm1(s.inst.df.energy(n));
  img += s.inst.df.P(n) * (rm1 * c[static_cast<std::size_t>(sd.K)]);
  return img;
}

LadderAction classify(const HeisenbergSetup& s, Poly<Rational> img, int j, int n) {
  LadderAction a;
  a.j = j;
  a.n = n;
  a.shift = shift_of(s.L, j);
  a.image = std::move(img);
  const int target = n + a.shift;
  a.expected = s.table.rows.count(n) ? s.table.rows.at(n).at(a.shift) : Rational(0);
  if (target < 0) {
    a.proportional = a.image.is_zero();
    a.coefficient = Rational(0);
    return a;
  }
  const Poly<Rational>& p = s.inst.df.P(target);
  if (a.image.degree() > p.degree()) return a;
  a.coefficient = a.image.coeff(p.degree()) / p.lead();
  a.proportional = a.image == p * a.coefficient;
  return a;
}

}  // namespace

HeisenbergSetup heisenberg_setup(DeformedFamily<Rational> df, const Poly<Rational>& Y, int n_max) {
  HeisenbergSetup s{solve_instance(std::move(df), Y), {}, {}, {}, 0};
  if (!s.inst.cd.consistent) throw EigenValidationFailed("closure system is inconsistent for " + tag(s));
  s.L = s.inst.X.degree();
  s.table = build_table(s.inst.df, s.inst.X, n_max + 1);
  s.conjecture = alpha_conjecture(s.inst.df.family(), s.L);
  s.at = s.inst.df.env();
  return s;
}

SpectralData spectral_at_level(const HeisenbergSetup& s, int n) {
  const Rational En = s.inst.df.energy(n);
  std::vector<Rational> R;
  for (const auto& r : s.inst.cd.R) R.push_back(r(En));
  std::vector<Rational> alphas;
  for (const auto& a : alphas_at_level(s.conjecture, n)) alphas.push_back(a.eval(s.at));
  return eigen_closed_form(R, alphas);
}

std::vector<Rational> ladder_coefficients(const SpectralData& sd, int j) {
  if (j < 1 || j > sd.K) throw ConfigError("ladder index j must lie in 1..K");
  const Rational pinv = sd.P_inv(j - 1, 0);
  std::vector<Rational> c;
  for (int i = 0; i < sd.K; ++i) c.push_back(sd.P(i, j - 1) * pinv);
  c.push_back(pinv / sd.alphas[static_cast<std::size_t>(j - 1)]);
  return c;
}

LadderAction ladder_apply(const HeisenbergSetup& s, int j, int n) {
  const SpectralData sd = spectral_at_level(s, n);
  return classify(s, ladder_image(s, sd, j, n, commutator_images(s, n)), j, n);
}

CheckList check_r0_relation(const HeisenbergSetup& s, int n_max) {
  CheckList out;
  for (int n = 0; n <= n_max; ++n) {
    const Rational En = s.inst.df.energy(n);
    const Rational lhs = -s.inst.cd.Rm1(En) / s.inst.cd.R[0](En);
    const Rational r = s.table.rows.at(n).at(0);
    out.push_back({"-R_{-1}/R_0 = r_{n,0} " + tag(s) + " n=" + itos(n), lhs == r, {{"lhs", lhs.str()}, {"r", r.str()}}});
  }
  return out;
}

CheckList ladder_suite(const HeisenbergSetup& s, int n_max) {
  CheckList out;
  for (int n = 0; n <= n_max; ++n) {
    const SpectralData sd = spectral_at_level(s, n);
    const auto comps = commutator_images(s, n);
    for (int j = 1; j <= 2 * s.L; ++j) {
      const LadderAction a = classify(s, ladder_image(s, sd, j, n, comps), j, n);
      std::string status = a.proportional ? "ok" : "NotProportional";
      out.push_back({"ladder " + tag(s) + " j=" + itos(j) + " n=" + itos(n), a.matches(),
                     {{"status", status}, {"shift", itos(a.shift)}, {"coefficient", a.coefficient.str()},
                      {"r", a.expected.str()}}});
      if (j == s.L || j == s.L + 1) {
        const bool fundamental = a.shift == (j == s.L ? 1 : -1);
        out.push_back({"fundamental ladder " + tag(s) + " j=" + itos(j) + " n=" + itos(n), fundamental && a.matches(), {}});
      }
    }
  }
  return out;
}

CheckList heisenberg_series_check(const HeisenbergSetup& s, int n, int m_max) {
  const auto& df = s.inst.df;
  const SpectralData sd = spectral_at_level(s, n);
  const auto comps = commutator_images(s, n);
  std::vector<Poly<Rational>> lad;
  for (int j = 1; j <= sd.K; ++j) lad.push_back(ladder_image(s, sd, j, n, comps));
  const Rational En = df.energy(n);
  // H^l (X P_n), l = 0..m_max
  std::vector<Poly<Rational>> hx{s.inst.X * df.P(n)};
  for (int l = 1; l <= m_max; ++l) hx.push_back(df.H().apply(hx.back()));
  CheckList out;
  for (int m = 0; m <= m_max; ++m) {
    Poly<Rational> lhs;
    Rational binom(1);
    for (int l = 0; l <= m; ++l) {
      lhs += hx[static_cast<std::size_t>(l)] * (binom * pow(-En, m - l));
      binom = binom * Rational(m - l) / Rational(l + 1);
    }
    Poly<Rational> rhs;
    for (int j = 0; j < sd.K; ++j) rhs += lad[static_cast<std::size_t>(j)] * pow(sd.alphas[static_cast<std::size_t>(j)], m);
    if (m == 0) rhs -= df.P(n) * (s.inst.cd.Rm1(En) / s.inst.cd.R[0](En));
    bool ok = lhs == rhs;
    if (m <= sd.K) ok = ok && s.inst.ads[static_cast<std::size_t>(m)].apply(df.P(n)) == lhs;
    out.push_back({"series " + tag(s) + " n=" + itos(n) + " m=" + itos(m), ok, {}});
  }
  return out;
}

CheckList commutation_check(const HeisenbergSetup& s, int n_max) {
  CheckList out;
  for (int n = 0; n <= n_max; ++n) {
    const SpectralData sd = spectral_at_level(s, n);
    const auto comps = commutator_images(s, n);
    const Rational En = s.inst.df.energy(n);
    for (int j = 1; j <= sd.K; ++j) {
      const Poly<Rational> img = ladder_image(s, sd, j, n, comps);
      const Rational a = sd.alphas[static_cast<std::size_t>(j - 1)];
      const bool eig = s.inst.df.H().apply(img) == img * (En + a);
      const bool sign = j <= s.L ? a.sign() > 0 : a.sign() < 0;
      out.push_back({"H a^(j) P_n = (E_n + alpha_j) a^(j) P_n " + tag(s) + " j=" + itos(j) + " n=" + itos(n),
                     eig && sign, {{"alpha_j(E_n)", a.str()}}});
    }
  }
  return out;
}

CheckList round_trip_check(const HeisenbergSetup& s, int n_max) {
  CheckList out;
  for (int n = 0; n <= n_max; ++n) {
    const LadderAction up = ladder_apply(s, s.L, n);
    const LadderAction down = ladder_apply(s, s.L + 1, n + 1);
    const Poly<Rational> back = down.image * up.coefficient;
    const Rational prod = s.table.rows.at(n).at(1) * s.table.rows.at(n + 1).at(-1);
    const bool ok = up.matches() && down.matches() && back == s.inst.df.P(n) * prod && prod.sign() > 0;
    out.push_back({"round trip " + tag(s) + " n=" + itos(n), ok, {{"r_{n,1} r_{n+1,-1}", prod.str()}}});
  }
  return out;
}

CheckList k2_specialization(const HeisenbergSetup& s, int n_max) {
  CheckList out;
  if (s.inst.cd.K != 2) return out;
  const auto& df = s.inst.df;
  for (int n = 0; n <= n_max; ++n) {
    const Rational En = df.energy(n);
    const Rational R1 = s.inst.cd.R[1](En), R0 = s.inst.cd.R[0](En), Rm1 = s.inst.cd.Rm1(En);
    Rational root;
    const bool rational_root = exact_sqrt(R1 * R1 + Rational(4) * R0, root);
    const Rational ap = (R1 + root) / Rational(2), am = (R1 - root) / Rational(2);
    const SpectralData sd = spectral_at_level(s, n);
    out.push_back({"alpha_+- from R_1, R_0 " + tag(s) + " n=" + itos(n),
                   rational_root && ap == sd.alphas[0] && am == sd.alphas[1],
                   {{"alpha_+", ap.str()}, {"alpha_-", am.str()}}});
    const Poly<Rational>& p = df.P(n);
    const Poly<Rational> comm = s.inst.ads[1].apply(p), xp = s.inst.X * p;
    const Rational ratio = Rm1 / R0, gap = ap - am;
    const Poly<Rational> plus = (comm - xp * am - p * (ratio * am)) * (Rational(1) / gap);
    const Poly<Rational> minus = (comm - xp * ap - p * (ratio * ap)) * (Rational(-1) / gap);
    const auto comps = commutator_images(s, n);
    out.push_back({"a^(+) = a^(1) " + tag(s) + " n=" + itos(n), plus == ladder_image(s, sd, 1, n, comps), {}});
    out.push_back({"a^(-) = a^(2) " + tag(s) + " n=" + itos(n), minus == ladder_image(s, sd, 2, n, comps), {}});
  }
  return out;
}

}  // namespace closurelab
