#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "closurelab/appendix_b.hpp"
#include "closurelab/closure.hpp"
#include "closurelab/errors.hpp"
#include "closurelab/expr.hpp"
#include "closurelab/heisenberg.hpp"
#include "closurelab/interpolate.hpp"
#include "closurelab/plugin.hpp"
#include "closurelab/recurrence.hpp"
#include "closurelab/report.hpp"
#include "closurelab/spectral.hpp"

using namespace closurelab;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Options {
  std::string family;
  std::string D;
  std::string Y = "1";
  std::string X;
  std::vector<std::string> params;
  int n_max = 6;
  std::optional<int> K;
  std::string mode;
  std::string plugin;
  std::string report_path;
  bool json = false;
  std::string alphas;
  std::string R;
  int random = 0;
};

const char* kPluginRequired = "operator-level: plugin required";

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

// Polynomial in eta with exact coefficients, e.g. "eta^2 - 1/3*eta + 2".
Poly<Rational> parse_eta_poly(const std::string& text, const char* what) {
  MPoly p;
  try {
    p = parse_mpoly(text);
  } catch (const ParseError& e) {
    throw ConfigError(std::string(what) + ": " + e.what());
  }
  for (const auto& v : p.variables())
    if (v != "eta") throw ConfigError(std::string(what) + " may only use the symbol eta, found " + v);
  if (p.min_degree("eta") < 0) throw ConfigError(std::string(what) + " must be a polynomial");
  return p.to_poly("eta");
}

std::vector<Rational> parse_list(const std::string& text, const char* what) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(Rational::parse(item));
    } catch (const std::exception&) {
      throw ConfigError(std::string(what) + ": bad rational '" + item + "'");
    }
  }
  if (out.empty()) throw ConfigError(std::string(what) + ": empty list");
  return out;
}

Bindings parse_params(const std::vector<std::string>& items) {
  Bindings b;
  for (const auto& it : items) {
    const auto eq = it.find('=');
    if (eq == std::string::npos) throw ConfigError("--params expects k=v, got '" + it + "'");
    try {
      b[it.substr(0, eq)] = Rational::parse(it.substr(eq + 1));
    } catch (const std::exception&) {
      throw ConfigError("--params: bad rational in '" + it + "'");
    }
  }
  return b;
}

Family family_of(const Options& o) { return parse_family(o.family.empty() ? "L" : o.family); }

ParamSet sample_for(Family f, const Options& o, int L) {
  ParamSet ps = o.params.empty() ? ParamSet::default_sample(f) : ParamSet::make(f, parse_params(o.params));
  if (auto v = ps.range_violation(L); !v.empty()) throw ConfigError("parameters outside the admissible range: " + v);
  return ps;
}

json bindings_json(const Bindings& b) {
  json j = json::object();
  for (const auto& [k, v] : b) j[k] = v.str();
  return j;
}

json config_echo(const std::string& cmd, const Options& o) {
  json c{{"subcommand", cmd}, {"n_max", o.n_max}};
  if (!o.family.empty()) c["family"] = o.family;
  if (!o.D.empty()) c["D"] = o.D;
  c["Y"] = o.Y;
  if (!o.X.empty()) c["X"] = o.X;
  if (!o.params.empty()) c["params"] = o.params;
  if (o.K) c["K"] = *o.K;
  if (!o.mode.empty()) c["mode"] = o.mode;
  if (!o.plugin.empty()) c["plugin"] = o.plugin;
  if (!o.alphas.empty()) c["alphas"] = o.alphas;
  if (!o.R.empty()) c["R"] = o.R;
  if (o.random) c["random"] = o.random;
  return c;
}

bool builtin_available(Family f, const MultiIndex& D) {
  return has_differential_operator(f) && (D.empty() || (D.M() == 1 && D.entries()[0].d == 1));
}

struct LoadedPlugin {
  DeformedFamily<Rational> df;
  ParamSet ps;
};

LoadedPlugin load_plugin(const std::string& path, int validate_to = 5) {
  const json doc = read_json(path);
  return {family_from_plugin_json(doc, validate_to), plugin_parameters(doc)};
}

void check_plugin_matches(const LoadedPlugin& p, const Options& o) {
  if (!o.family.empty() && parse_family(o.family) != p.df.family())
    throw ConfigError("--family " + o.family + " does not match the plugin family " + to_string(p.df.family()));
  if (!o.D.empty() && !(MultiIndex::parse(o.D) == p.df.D()))
    throw ConfigError("--D " + o.D + " does not match the plugin multi-index " + p.df.D().str());
}

json table_json(const ClosureTable& t) {
  json R = json::array(), rec = json::array();
  for (const auto& r : t.R) {
    R.push_back(r.str());
    rec.push_back(mpoly_to_json(r));
  }
  return {{"K", t.K},        {"mode", t.mode},       {"consistent", t.consistent}, {"kernel_dim", t.kernel_dim},
          {"R", R},          {"R_-1", t.Rm1.str()}, {"R_records", rec},            {"R_-1_record", mpoly_to_json(t.Rm1)}};
}

template <ExactField F>
Poly<F> lift(const Poly<Rational>& p) {
  std::vector<F> c;
  for (const auto& x : p.coeffs()) c.emplace_back(x);
  return Poly<F>(c);
}

// Solves one instance, verifies the operator identity and degree bounds, and tabulates the result.
template <ExactField F>
ClosureTable solve_verified(DeformedFamily<F> df, const Poly<Rational>& Y, std::optional<int> K_override, Report& rep) {
  const Family f = df.family();
  const MultiIndex D = df.D();
  ClosureInstance<F> inst = solve_instance(std::move(df), lift<F>(Y));
  if (K_override && *K_override != inst.cd.K) {
    if (*K_override < 1) throw ConfigError("--K must be positive");
    inst.ads = ad_powers(inst.df.H(), inst.X, *K_override);
    inst.bounds = degree_bounds(f, *K_override);
    inst.cd = solve_closure(inst.ads, inst.hpow, inst.bounds);
  }
  const int K = inst.cd.K;
  rep.add("closure", CheckResult{"closure of order K=" + std::to_string(K) + " exists", inst.cd.consistent,
                                 {{"kernel_dim", std::to_string(inst.cd.kernel_dim)}}});
  if (inst.cd.consistent) {
    rep.add("closure", CheckResult{"operator identity (ad H)^K X = sum (ad H)^i X R_i(H) + R_-1(H)",
                                   verify_closure_identity(inst.ads, inst.hpow, inst.cd), {}});
    rep.add("closure", CheckResult{"degree bounds on R_i and R_-1", respects_bounds(inst.cd, inst.bounds), {}});
  }
  return table_from(inst.cd, f, D, Y);
}

void compare_with_conjecture(const ClosureTable& t, const Bindings& at, Report& rep) {
  if (!t.consistent || t.K % 2) {
    rep.skip("conjecture", "R_i against the conjectured spectrum", "no closure of even order to compare");
    return;
  }
  const auto cr = conjectured_R_symmetric(alpha_conjecture(t.family, t.K / 2));
  for (int i = 0; i < t.K; ++i) {
    const MPoly want = at.empty() ? cr.R[static_cast<std::size_t>(i)] : cr.R[static_cast<std::size_t>(i)].subs(at);
    const MPoly& got = t.R[static_cast<std::size_t>(i)];
    rep.add("conjecture", CheckResult{"R_" + std::to_string(i) + " from prod (x - alpha_j)", got == want,
                                      {{"solved", got.str()}, {"conjectured", want.str()}}});
  }
}

void compare_with_reference(const ClosureTable& t, const Bindings& at, Report& rep) {
  const ReferenceTable refs = ReferenceTable::load(ReferenceTable::default_path());
  const ReferenceRow* row = refs.find_if_present(t.family, t.D, y_key(t.Y));
  if (!row) {
    rep.skip("reference", "stored R_-1 row", "no stored row for " + to_string(t.family) + " " + t.D.str());
    return;
  }
  const ReferenceVerdict v = reference_verdict(*row, t, at);
  rep.add("reference", CheckResult{row->id + " R_-1 against the stored row", v != ReferenceVerdict::Mismatch,
                                   {{"verdict", to_string(v)}}});
  if (v == ReferenceVerdict::MatchesErratum) rep.notice(row->id + ": matches the recorded erratum (" + row->erratum->note + ")");
}

// Spectral-level checks that need no operator: conjectured R, pairing, spacing and ordering.
void spectral_level(Family f, int L, const ParamSet& ps, int n_max, Report& rep) {
  const auto ac = alpha_conjecture(f, L);
  const auto sym = conjectured_R_symmetric(ac);
  rep.add("spectral", CheckResult{"square roots cancel in prod (x - alpha_j)", sym.sqrt_free, {}});
  rep.add("spectral", CheckResult{"symmetric-function and pair-product routes agree", sym.R == conjectured_R_pairing(f, L), {}});
  rep.add("spectral", pairing_identities(f, L));
  rep.add("spectral", spacing_symbolic(f, L, n_max));
  rep.add("spectral", spacing_at_sample(f, L, ps, n_max));
  rep.add("spectral", ordering_at_sample(f, L, ps, n_max));
  json R = json::array();
  for (const auto& r : sym.R) R.push_back(r.str());
  rep.set_data("conjectured_R", R);
}

int levels(const Options& o) {
  if (o.n_max < 0) throw ConfigError("--n-max must be non-negative");
  return o.n_max;
}

Report cmd_verify_closure(const Options& o) {
  Report rep("verify-closure", config_echo("verify-closure", o));
  const Poly<Rational> Y = parse_eta_poly(o.Y, "--Y");
  if (!o.plugin.empty()) {
    LoadedPlugin p = load_plugin(o.plugin);
    check_plugin_matches(p, o);
    const int L = p.df.ell() + Y.degree() + 1;
    if (auto v = p.ps.range_violation(L); !v.empty()) throw ConfigError("plugin sample outside the admissible range: " + v);
    rep.set_data("parameters", bindings_json(p.ps.values()));
    const ClosureTable t = solve_verified(p.df, Y, o.K, rep);
    rep.set_data("closure", table_json(t));
    compare_with_conjecture(t, p.ps.values(), rep);
    compare_with_reference(t, p.ps.values(), rep);
    return rep;
  }
  const Family f = family_of(o);
  const MultiIndex D = MultiIndex::parse(o.D);
  const int L = D.ell() + Y.degree() + 1;
  if (!has_differential_operator(f)) {
    const ParamSet ps = sample_for(f, o, L);
    rep.set_data("parameters", bindings_json(ps.values()));
    spectral_level(f, L, ps, levels(o), rep);
    const ReferenceTable refs = ReferenceTable::load(ReferenceTable::default_path());
    if (const ReferenceRow* row = refs.find_if_present(f, D, y_key(Y))) {
      for (const auto& c : refs.self_check())
        if (c.id.rfind(row->id + " ", 0) == 0) rep.add("reference", c);
    } else {
      rep.skip("reference", "stored R_-1 row", "no stored row for " + to_string(f) + " " + D.str());
    }
    rep.notice(kPluginRequired);
    return rep;
  }
  if (!builtin_available(f, D)) throw ConfigError(to_string(f) + " " + D.str() + ": not built in, supply --plugin");
  if (!o.params.empty() || o.mode == "sample" || o.K) {
    const ParamSet ps = sample_for(f, o, L);
    rep.set_data("parameters", bindings_json(ps.values()));
    const ClosureTable t = solve_verified(builtin_deformed<Rational>(f, rational_env(ps), D), Y, o.K, rep);
    rep.set_data("closure", table_json(t));
    if (o.K && *o.K != 2 * L) {
      rep.skip("conjecture", "R_i against the conjectured spectrum", "K overridden");
      rep.skip("reference", "stored R_-1 row", "K overridden");
      return rep;
    }
    compare_with_conjecture(t, ps.values(), rep);
    compare_with_reference(t, ps.values(), rep);
    return rep;
  }
  ClosureTable t;
  if (f == Family::L && o.mode == "symbolic") {
    const RatFunc g = RatFunc::var();
    t = solve_verified(builtin_deformed<RatFunc>(f, lj_env<RatFunc>(f, g), D), Y, std::nullopt, rep);
  } else {
    if (f == Family::J && o.mode == "symbolic") rep.notice("J: symbolic results are obtained by exact interpolation over an (a,b) grid");
    t = f == Family::L ? closure_sampled_L(D, Y) : closure_sampled_J(D, Y);
    rep.add("closure", CheckResult{"closure of order K=" + std::to_string(t.K) + " exists", t.consistent,
                                   {{"kernel_dim", std::to_string(t.kernel_dim)}}});
    const ParamSet ps = ParamSet::default_sample(f);
    Report inner("", json::object());
    solve_verified(builtin_deformed<Rational>(f, rational_env(ps), D), Y, std::nullopt, inner);
    for (const auto& e : inner.entries())
      if (e.id.rfind("closure of order", 0) != 0)
        rep.add("closure", CheckResult{e.id + " at the default sample", e.status == Status::Pass, e.values});
    const std::uint64_t seed = seed_from_env();
    rep.set_data("seed", std::to_string(seed));
    if (t.consistent) rep.add("interpolation", check_table_at_random_points(t, 3, seed));
    if (t.consistent && f == Family::L) rep.add("interpolation", certify_symbolic_L(t));
  }
  rep.set_data("closure", table_json(t));
  compare_with_conjecture(t, {}, rep);
  compare_with_reference(t, {}, rep);
  return rep;
}

template <ExactField F>
void run_recurrence(const DeformedFamily<F>& df, const Poly<F>& X, bool minimal, int n_max, Report& rep) {
  const auto tab = build_table(df, X, n_max);
  for (auto c : check_span_and_leading(df, tab)) {
    if (!c.pass && c.id.rfind("span", 0) == 0) c.values["error"] = "NonzeroRemainder";
    rep.add("expansion", c);
  }
  rep.add("h-symmetry", check_h_symmetry(df, tab));
  const auto forms = minimal ? known_closed_forms(df.family(), df.D()) : std::map<int, Expr>{};
  if (forms.empty())
    rep.skip("closed-form", "r_{n,k} closed forms", minimal ? "none recorded for this system" : "X is not X_min");
  else
    rep.add("closed-form", closed_form_compare(df, tab, forms));
  json rows = json::object();
  for (const auto& [n, row] : tab.rows) {
    json r = json::object();
    for (const auto& [k, v] : row.r) r[std::to_string(k)] = to_string(v);
    rows[std::to_string(n)] = r;
  }
  rep.set_data("X", X.str("eta"));
  rep.set_data("r", rows);
}

Report cmd_recurrence(const Options& o) {
  Report rep("recurrence", config_echo("recurrence", o));
  const Poly<Rational> Y = parse_eta_poly(o.Y, "--Y");
  const int n_max = levels(o);
  std::optional<Poly<Rational>> X;
  if (!o.X.empty()) X = parse_eta_poly(o.X, "--X");
  const bool minimal = !X && Y == Poly<Rational>(Rational(1));
  if (!o.X.empty()) rep.notice("X overridden: expansion failures are expected when X is not built from Xi_D");
  if (!o.plugin.empty()) {
    LoadedPlugin p = load_plugin(o.plugin);
    check_plugin_matches(p, o);
    rep.set_data("parameters", bindings_json(p.ps.values()));
    run_recurrence(p.df, X ? *X : build_X(p.df.xi(), Y), minimal, n_max, rep);
    return rep;
  }
  const Family f = family_of(o);
  const MultiIndex D = MultiIndex::parse(o.D);
  if (!has_differential_operator(f)) throw ConfigError(std::string(to_string(f)) + ": " + kPluginRequired);
  if (!builtin_available(f, D)) throw ConfigError(to_string(f) + " " + D.str() + ": not built in, supply --plugin");
  if (f == Family::L && o.params.empty() && o.mode != "sampled" && o.mode != "sample") {
    const RatFunc g = RatFunc::var();
    auto df = builtin_deformed<RatFunc>(f, lj_env<RatFunc>(f, g), D);
    run_recurrence(df, X ? lift<RatFunc>(*X) : build_X(df.xi(), lift<RatFunc>(Y)), minimal, n_max, rep);
    return rep;
  }
  const ParamSet ps = sample_for(f, o, D.ell() + Y.degree() + 1);
  rep.set_data("parameters", bindings_json(ps.values()));
  auto df = builtin_deformed<Rational>(f, rational_env(ps), D);
  run_recurrence(df, X ? *X : build_X(df.xi(), Y), minimal, n_max, rep);
  return rep;
}

json matrix_json(const RatMatrix& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    out.push_back(row);
  }
  return out;
}

void diagonalize(const std::string& id, const std::vector<Rational>& R, const std::vector<Rational>& alphas, Report& rep,
                 bool echo) {
  try {
    const SpectralData sd = eigen_closed_form(R, alphas);
    for (auto c : appendix_a_checks(sd)) {
      c.id = id + ": " + c.id;
      rep.add("eigen", c);
    }
    if (echo) rep.set_data("eigen", {{"P", matrix_json(sd.P)}, {"P_inv", matrix_json(sd.P_inv)}, {"det_P", sd.det_P.str()}});
  } catch (const DegenerateSpectrum& e) {
    rep.add("eigen", CheckResult{id + ": distinct non-zero eigenvalues", false, {{"error", "DegenerateSpectrum"}, {"message", e.what()}}});
  } catch (const EigenValidationFailed& e) {
    rep.add("eigen", CheckResult{id + ": alphas are roots of the characteristic polynomial", false,
                                 {{"error", "EigenValidationFailed"}, {"message", e.what()}}});
  }
}

std::vector<Rational> at_level(const std::vector<MPoly>& R, const Bindings& at, const Rational& En) {
  std::vector<Rational> out;
  Bindings b = at;
  b["z"] = En;
  for (const auto& r : R) out.push_back(r.eval(b));
  return out;
}

Report cmd_spectrum(const Options& o) {
  Report rep("spectrum", config_echo("spectrum", o));
  if (!o.alphas.empty()) {
    const auto alphas = parse_list(o.alphas, "--alphas");
    std::vector<Rational> R;
    if (!o.R.empty()) {
      R = parse_list(o.R, "--R");
      if (R.size() != alphas.size()) throw ConfigError("--R and --alphas must have the same length");
    } else {
      std::vector<Rational> distinct = alphas;
      std::sort(distinct.begin(), distinct.end());
      if (std::adjacent_find(distinct.begin(), distinct.end()) == distinct.end() &&
          std::find(distinct.begin(), distinct.end(), Rational(0)) == distinct.end())
        R = R_from_roots(alphas);
      else
        R.assign(alphas.size(), Rational(0));
    }
    json rj = json::array();
    for (const auto& r : R) rj.push_back(r.str());
    rep.set_data("R", rj);
    diagonalize("given spectrum", R, alphas, rep, true);
    return rep;
  }
  if (o.random > 0) {
    const std::uint64_t seed = seed_from_env();
    rep.set_data("seed", std::to_string(seed));
    std::mt19937_64 rng(seed);
    for (int t = 0; t < o.random; ++t) {
      const int K = 2 + t % 7;
      const auto a = random_spectrum(K, rng);
      diagonalize("random spectrum " + std::to_string(t) + " K=" + std::to_string(K), R_from_roots(a), a, rep, false);
    }
    return rep;
  }
  const Poly<Rational> Y = parse_eta_poly(o.Y, "--Y");
  const int n_max = levels(o);
  std::optional<LoadedPlugin> plugin;
  if (!o.plugin.empty()) {
    plugin = load_plugin(o.plugin);
    check_plugin_matches(*plugin, o);
  }
  const Family f = plugin ? plugin->df.family() : family_of(o);
  const MultiIndex D = plugin ? plugin->df.D() : MultiIndex::parse(o.D);
  const int L = D.ell() + Y.degree() + 1;
  ParamSet ps = plugin ? plugin->ps : sample_for(f, o, L);
  if (auto v = ps.range_violation(L); !v.empty()) throw ConfigError("parameters outside the admissible range: " + v);
  rep.set_data("parameters", bindings_json(ps.values()));
  spectral_level(f, L, ps, n_max, rep);
  const auto ac = alpha_conjecture(f, L);
  const Bindings ab = alpha_bindings(ps);
  auto conjectured_alphas = [&](int n) {
    std::vector<Rational> out;
    for (const auto& a : alphas_at_level(ac, n)) out.push_back(a.eval(ab));
    return out;
  };
  std::vector<MPoly> R;
  if (plugin || builtin_available(f, D)) {
    Report inner("", json::object());
    const ClosureTable t = plugin ? solve_verified(plugin->df, Y, std::nullopt, inner)
                                  : solve_verified(builtin_deformed<Rational>(f, rational_env(ps), D), Y, std::nullopt, inner);
    for (const auto& e : inner.entries()) rep.add("closure", CheckResult{e.id, e.status == Status::Pass, e.values});
    if (!t.consistent) return rep;
    compare_with_conjecture(t, ps.values(), rep);
    R = t.R;
  } else {
    rep.notice(kPluginRequired);
    rep.notice("R_i(E_n) below are the conjectured ones");
    for (const auto& r : conjectured_R_symmetric(ac).R) R.push_back(r.subs(ab));
  }
  for (int n = 0; n <= n_max; ++n) {
    const Rational En = energy_expr(f, n).eval(ps.values());
    diagonalize("n=" + std::to_string(n), at_level(R, {}, En), conjectured_alphas(n), rep, n == 0);
  }
  return rep;
}

Report cmd_heisenberg(const Options& o) {
  Report rep("heisenberg", config_echo("heisenberg", o));
  const Poly<Rational> Y = parse_eta_poly(o.Y, "--Y");
  const int n_max = levels(o);
  std::optional<DeformedFamily<Rational>> df;
  if (!o.plugin.empty()) {
    LoadedPlugin p = load_plugin(o.plugin);
    check_plugin_matches(p, o);
    rep.set_data("parameters", bindings_json(p.ps.values()));
    df = p.df;
  } else {
    const Family f = family_of(o);
    const MultiIndex D = MultiIndex::parse(o.D);
    if (!has_differential_operator(f)) throw ConfigError(std::string(to_string(f)) + ": " + kPluginRequired);
    if (!builtin_available(f, D)) throw ConfigError(to_string(f) + " " + D.str() + ": not built in, supply --plugin");
    const ParamSet ps = sample_for(f, o, D.ell() + Y.degree() + 1);
    rep.set_data("parameters", bindings_json(ps.values()));
    df = builtin_deformed<Rational>(f, rational_env(ps), D);
  }
  const HeisenbergSetup s = heisenberg_setup(*df, Y, n_max);
  const int K = s.inst.cd.K;
  rep.add("r0", check_r0_relation(s, n_max));
  rep.add("ladder", ladder_suite(s, n_max));
  for (int n = 0; n <= n_max; ++n) rep.add("series", heisenberg_series_check(s, n, K + 2));
  rep.add("commutation", commutation_check(s, n_max));
  rep.add("round-trip", round_trip_check(s, n_max));
  if (K == 2) rep.add("K=2", k2_specialization(s, n_max));
  for (int n = 0; n <= n_max; ++n) {
    for (auto c : appendix_a_checks(spectral_at_level(s, n))) {
      c.id = "n=" + std::to_string(n) + ": " + c.id;
      rep.add("eigen", c);
    }
  }
  json coeffs = json::object();
  const SpectralData sd0 = spectral_at_level(s, 0);
  for (int j = 1; j <= K; ++j) {
    json c = json::array();
    for (const auto& x : ladder_coefficients(sd0, j)) c.push_back(x.str());
    coeffs[std::to_string(j)] = c;
  }
  rep.set_data("ladder_coefficients_n0", coeffs);
  return rep;
}

// Plugins from a file or every *.json in a directory, keyed like the reference rows.
std::map<std::string, std::string> collect_plugins(const std::string& where) {
  std::map<std::string, std::string> out;
  if (where.empty()) return out;
  std::vector<std::string> paths;
  if (fs::is_directory(where)) {
    for (const auto& e : fs::directory_iterator(where))
      if (e.path().extension() == ".json") paths.push_back(e.path().string());
    std::sort(paths.begin(), paths.end());
  } else {
    paths.push_back(where);
  }
  for (const auto& p : paths) {
    const json doc = read_json(p);
    const ParamSet ps = plugin_parameters(doc);
    std::string key;
    try {
      for (const auto& d : doc.at("D"))
        key += (key.empty() ? "" : ",") + std::to_string(d.at("d").get<int>()) + d.at("type").get<std::string>();
    } catch (const json::exception& e) {
      throw SchemaError(p + ": " + e.what());
    }
    out[to_string(ps.family()) + ":" + MultiIndex::parse(key).str()] = p;
  }
  return out;
}

struct RowOutcome {
  CheckList checks;
  std::vector<std::string> notices;
};

RowOutcome regenerate(const ReferenceRow& row, const std::string& plugin_path) {
  RowOutcome out;
  const Poly<Rational> Y = parse_eta_poly(row.Y, "row Y");
  ClosureTable t;
  Bindings at;
  if (row.status == RowStatus::Builtin) {
    t = row.family == Family::L ? closure_sampled_L(row.D, Y) : closure_sampled_J(row.D, Y);
    if (t.consistent && row.family == Family::L)
      for (const auto& c : certify_symbolic_L(t)) out.checks.push_back({row.id + " " + c.id, c.pass, c.values});
  } else {
    LoadedPlugin p = load_plugin(plugin_path);
    at = p.ps.values();
    Report inner("", json::object());
    t = solve_verified(p.df, Y, std::nullopt, inner);
    for (const auto& e : inner.entries()) out.checks.push_back({row.id + " " + e.id, e.status == Status::Pass, e.values});
  }
  if (!t.consistent) {
    out.checks.push_back({row.id + " regenerated", false, {{"error", "no closure of order " + std::to_string(t.K)}}});
    return out;
  }
  const ReferenceVerdict v = reference_verdict(row, t, at);
  std::map<std::string, std::string> values{{"verdict", to_string(v)}, {"mode", t.mode}};
  for (const auto& [k, x] : at) values[k] = x.str();
  out.checks.push_back({row.id + " regenerated", v != ReferenceVerdict::Mismatch, values});
  if (v == ReferenceVerdict::MatchesErratum) out.notices.push_back(row.id + ": matches the recorded erratum (" + row.erratum->note + ")");
  return out;
}

Report cmd_appendix_b(const Options& o) {
  Report rep("appendix-b", config_echo("appendix-b", o));
  const ReferenceTable refs = ReferenceTable::load(ReferenceTable::default_path());
  std::optional<Family> only;
  if (!o.family.empty()) only = parse_family(o.family);
  const auto plugins = collect_plugins(o.plugin);
  CheckList self;
  for (const auto& c : refs.self_check()) self.push_back(c);
  rep.add("self-check", self);
  // independent rows run concurrently; results are merged in table order
  std::vector<std::pair<const ReferenceRow*, std::future<RowOutcome>>> jobs;
  for (const auto& row : refs.rows()) {
    if (only && row.family != *only) continue;
    if (row.status == RowStatus::ReferenceOnly) {
      jobs.emplace_back(&row, std::future<RowOutcome>());
      continue;
    }
    std::string path;
    if (row.status == RowStatus::Plugin) {
      auto it = plugins.find(to_string(row.family) + ":" + row.D.str());
      if (it == plugins.end() || row.Y != "1") {
        jobs.emplace_back(&row, std::future<RowOutcome>());
        continue;
      }
      path = it->second;
    }
    jobs.emplace_back(&row, std::async(std::launch::async, regenerate, std::cref(row), path));
  }
  for (auto& [row, fut] : jobs) {
    if (!fut.valid()) {
      rep.skip("regenerate", row->id,
               row->status == RowStatus::ReferenceOnly ? std::string("reference only; ") + kPluginRequired : "plugin required");
      continue;
    }
    RowOutcome r = fut.get();
    rep.add("regenerate", r.checks);
    for (const auto& n : r.notices) rep.notice(n);
  }
  for (const auto& [K, names] : refs.names_only()) {
    if (only && *only != Family::L) break;
    for (const auto& D : names)
      rep.skip("extension", "L:" + D.str() + " K=" + std::to_string(K), "no stored values; extension target");
  }
  return rep;
}

Report cmd_plugin_validate(const Options& o) {
  Report rep("plugin-validate", config_echo("plugin-validate", o));
  if (o.plugin.empty()) throw ConfigError("plugin-validate needs --plugin");
  LoadedPlugin p = load_plugin(o.plugin, levels(o));
  check_plugin_matches(p, o);
  rep.add("load", CheckResult{"schema, eigen-equations n<=" + std::to_string(o.n_max) + ", X_min span and h-symmetry", true,
                              {{"family", to_string(p.df.family())}, {"D", p.df.D().str()}, {"ell", std::to_string(p.df.ell())},
                               {"xi", p.df.xi().str("eta")}}});
  rep.set_data("parameters", bindings_json(p.ps.values()));
  const Poly<Rational> Y = parse_eta_poly(o.Y, "--Y");
  const ClosureTable t = solve_verified(p.df, Y, std::nullopt, rep);
  rep.set_data("closure", table_json(t));
  compare_with_conjecture(t, p.ps.values(), rep);
  compare_with_reference(t, p.ps.values(), rep);
  return rep;
}

void emit(const Report& rep, const Options& o) {
  const std::string body = rep.to_json().dump(2) + "\n";
  if (!o.report_path.empty()) {
    std::ofstream out(o.report_path);
    if (!out) throw ConfigError("cannot write " + o.report_path);
    out << body;
  }
  std::cout << (o.json ? body : rep.text());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of closure relations for multi-indexed orthogonal polynomials"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sc) {
    sc->add_option("--family", o.family, "L, J, W or AW");
    sc->add_option("--D", o.D, "multi-index, comma list like 1I,2I");
    sc->add_option("--Y", o.Y, "polynomial in eta, e.g. eta^2-1/3*eta");
    sc->add_option("--params", o.params, "parameter bindings k=v with exact rationals")->expected(1, -1);
    sc->add_option("--n-max", o.n_max, "largest level n");
    sc->add_option("--mode", o.mode, "symbolic or sampled")->check(CLI::IsMember({"symbolic", "sampled", "sample"}));
    sc->add_option("--plugin", o.plugin, "plugin file (appendix-b: file or directory)");
    sc->add_option("--report", o.report_path, "write the JSON report to this path");
    sc->add_flag("--json", o.json, "print the JSON report instead of text");
  };
  auto* vc = app.add_subcommand("verify-closure", "solve and verify the closure relation of order K=2L");
  common(vc);
  vc->add_option("--K", o.K, "closure order override (sample mode)");
  auto* rc = app.add_subcommand("recurrence", "expand X P_{D,n} in the P_{D,m} basis");
  common(rc);
  rc->add_option("--X", o.X, "polynomial in eta replacing X (negative control)");
  auto* sp = app.add_subcommand("spectrum", "eigen-decomposition of the closure companion matrix");
  common(sp);
  sp->add_option("--alphas", o.alphas, "explicit eigenvalues, comma list");
  sp->add_option("--R", o.R, "explicit R_0..R_{K-1} for --alphas, comma list");
  sp->add_option("--random", o.random, "number of random distinct rational spectra");
  auto* hc = app.add_subcommand("heisenberg", "ladder operators and the Heisenberg series");
  common(hc);
  auto* ab = app.add_subcommand("appendix-b", "self-check and regenerate the stored R_-1 rows");
  common(ab);
  auto* pv = app.add_subcommand("plugin-validate", "load, validate and solve a plugin system");
  common(pv);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc_ = app.exit(e);
    return rc_ == 0 ? 0 : 2;
  }
  try {
    Report rep = vc->parsed()   ? cmd_verify_closure(o)
                 : rc->parsed() ? cmd_recurrence(o)
                 : sp->parsed() ? cmd_spectrum(o)
                 : hc->parsed() ? cmd_heisenberg(o)
                 : ab->parsed() ? cmd_appendix_b(o)
                                : cmd_plugin_validate(o);
    emit(rep, o);
    return rep.exit_code();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  } catch (const TableMissing& e) {
    std::cerr << "table missing: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
