#include "closurelab/plugin.hpp"

#include <fstream>

#include "closurelab/recurrence.hpp"

namespace closurelab {

using nlohmann::json;

Poly<Rational> poly_from_json(const json& j) {
  if (!j.is_array()) throw SchemaError("polynomial record must be an array of {e, c}");
  Poly<Rational> p;
  for (const auto& t : j) {
    const int e = t.at("e").get<int>();
    if (e < 0) throw SchemaError("negative exponent in polynomial record");
    p += Poly<Rational>::monomial(Rational::parse(t.at("c").get<std::string>()), e);
  }
  return p;
}

json poly_to_json(const Poly<Rational>& p) {
  json out = json::array();
  for (int k = 0; k <= p.degree(); ++k)
    if (!p.coeff(k).is_zero()) out.push_back({{"e", k}, {"c", p.coeff(k).str()}});
  return out;
}

ParamSet plugin_parameters(const json& doc) {
  const Family f = parse_family(doc.at("family").get<std::string>());
  Bindings given;
  for (const auto& [k, v] : doc.at("parameters").items()) given[k] = Rational::parse(v.get<std::string>());
  return ParamSet::make(f, given);
}

DeformedFamily<Rational> family_from_plugin_json(const json& doc, int validate_to) {
  try {
    for (const char* forbidden : {"energy", "energies", "E"})
      if (doc.contains(forbidden)) throw SchemaError("plugins may not override energies");
    const ParamSet ps = plugin_parameters(doc);
    const Family f = ps.family();
    if (!has_differential_operator(f))
      throw SchemaError(to_string(f) + " plugins need a difference-operator Hamiltonian, which is not supported");
    std::vector<MultiIndexEntry> entries;
    for (const auto& e : doc.at("D")) {
      const std::string t = e.at("type").get<std::string>();
      if (t != "I" && t != "II") throw SchemaError("multi-index type must be I or II");
      entries.push_back({e.at("d").get<int>(), t == "I" ? VirtualType::I : VirtualType::II});
    }
    const MultiIndex D(entries);
    const Poly<Rational> xi = poly_from_json(doc.at("xi"));
    if (xi.is_zero()) throw SchemaError("xi must be a nonzero polynomial");
    const Env<Rational> env = rational_env(ps);
    const json& rule = doc.at("P");
    const std::string kind = rule.at("rule").get<std::string>();
    DeformedFamily<Rational>::Generator gen;
    if (kind == "explicit") {
      std::vector<Poly<Rational>> polys;
      for (const auto& p : rule.at("polys")) polys.push_back(poly_from_json(p));
      gen = [polys](int n) {
        if (n >= static_cast<int>(polys.size()))
          throw SchemaError("plugin lists P_{D,n} only for n < " + std::to_string(polys.size()));
        return polys[static_cast<std::size_t>(n)];
      };
      validate_to = std::min(validate_to, static_cast<int>(polys.size()) - 1);
    } else if (kind == "classical-combination") {
      std::vector<Poly<Rational>> A;
      for (const auto& p : rule.at("coefficients")) A.push_back(poly_from_json(p));
      if (A.empty()) throw SchemaError("classical-combination needs at least one coefficient");
      const Poly<Rational> den = rule.contains("divide_by") ? poly_from_json(rule.at("divide_by")) : Poly<Rational>(1);
      if (den.is_zero()) throw SchemaError("divide_by must be nonzero");
      gen = [f, env, A, den](int n) {
        Poly<Rational> p = classical_poly<Rational>(f, env, n), acc;
        for (const auto& a : A) {
          acc += a * p;
          p = p.derivative();
        }
        auto [q, r] = acc.divmod(den);
        if (!r.is_zero()) throw SchemaError("divide_by does not divide the combination for n = " + std::to_string(n));
        return q;
      };
    } else {
      throw SchemaError("unknown P rule '" + kind + "'");
    }
    DeformedFamily<Rational> df(f, env, D, xi, std::move(gen), Source::Plugin);
    df.set_H(ansatz_H(df));
    df.validate(validate_to);
    const auto tab = build_table(df, build_X(xi, Poly<Rational>(1)), validate_to);
    for (const auto& c : check_span_and_leading(df, tab))
      if (!c.pass) throw EigenValidationFailed("plugin " + D.str() + ": " + c.id + " fails");
    for (const auto& c : check_h_symmetry(df, tab))
      if (!c.pass) throw EigenValidationFailed("plugin " + D.str() + ": " + c.id + " fails");
    return df;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("plugin: ") + e.what());
  } catch (const ConfigError& e) {
    throw SchemaError(std::string("plugin: ") + e.what());
  }
}

DeformedFamily<Rational> load_family_plugin(const std::string& path, int validate_to) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open plugin " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw SchemaError("plugin " + path + ": " + e.what());
  }
  return family_from_plugin_json(doc, validate_to);
}

}  // namespace closurelab
