#include "closurelab/appendix_b.hpp"

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>

#include "json.hpp"

namespace closurelab {

using nlohmann::json;

std::string to_string(RowStatus s) {
  switch (s) {
    case RowStatus::Builtin: return "builtin";
    case RowStatus::Plugin: return "plugin";
    case RowStatus::ReferenceOnly: return "reference-only";
  }
  return "?";
}

std::string fnv1a64(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::string derived_key(const ReferenceRow& r) {
  std::string subs;
  for (const auto& [k, v] : r.derived->substitute) subs += (subs.empty() ? "" : ",") + k + "=" + v;
  return r.id + "|" + r.derived->from + "|" + std::to_string(r.derived->sign) + "|" + subs;
}

RowStatus parse_status(const std::string& s) {
  if (s == "builtin") return RowStatus::Builtin;
  if (s == "plugin") return RowStatus::Plugin;
  if (s == "reference-only") return RowStatus::ReferenceOnly;
  throw SchemaError("unknown row status '" + s + "'");
}

MPoly terms_to_mpoly(const json& terms) {
  MPoly acc;
  for (const auto& t : terms) {
    MPoly m(Rational::parse(t.at("c").get<std::string>()));
    for (const auto& [name, e] : t.at("m").items()) m *= MPoly::monomial(name, e.get<int>());
    acc += m;
  }
  return acc;
}

}  // namespace

std::string ReferenceTable::default_path() {
  if (const char* dir = std::getenv("CLOSURELAB_DATA_DIR")) return std::string(dir) + "/appendix_b.json";
#ifdef CLOSURELAB_DATA_DIR
  return std::string(CLOSURELAB_DATA_DIR) + "/appendix_b.json";
#else
  return "data/appendix_b.json";
#endif
}

ReferenceTable ReferenceTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open reference table " + path);
  ReferenceTable t;
  try {
    json doc = json::parse(in);
    if (doc.at("format").get<int>() != 1) throw SchemaError("unsupported reference table format");
    for (const auto& e : doc.at("entries")) {
      ReferenceRow r;
      r.id = e.at("id").get<std::string>();
      r.family = parse_family(e.at("family").get<std::string>());
      r.D = MultiIndex::parse(e.at("D").get<std::string>());
      r.Y = e.value("Y", std::string("1"));
      r.K = e.at("K").get<int>();
      r.status = parse_status(e.at("status").get<std::string>());
      r.printed = e.at("printed").get<std::string>();
      if (e.contains("multiplier")) r.multiplier = e.at("multiplier").get<std::string>();
      if (e.contains("derived")) {
        const auto& d = e.at("derived");
        DerivedRow dr;
        dr.from = d.at("from").get<std::string>();
        dr.sign = d.at("sign").get<int>();
        for (const auto& [k, v] : d.at("substitute").items()) dr.substitute[k] = v.get<std::string>();
        r.derived = dr;
      }
      if (r.printed.empty() == !r.derived) throw SchemaError(r.id + ": exactly one of printed and derived is required");
      r.expanded = terms_to_mpoly(e.at("expanded"));
      r.checksum = e.at("fnv1a64").get<std::string>();
      if (e.contains("erratum")) {
        const auto& x = e.at("erratum");
        Erratum er;
        er.note = x.at("note").get<std::string>();
        if (x.contains("replace"))
          er.replace = std::make_pair(x.at("replace").at(0).get<std::string>(), x.at("replace").at(1).get<std::string>());
        er.expanded = terms_to_mpoly(x.at("expanded"));
        r.erratum = std::move(er);
      }
      t.rows_.push_back(std::move(r));
    }
    if (doc.contains("names_only"))
      for (const auto& [K, list] : doc.at("names_only").at("L").items())
        for (const auto& name : list) t.names_only_[std::stoi(K)].push_back(MultiIndex::parse(name.get<std::string>()));
  } catch (const json::exception& e) {
    throw SchemaError(std::string("reference table: ") + e.what());
  }
  return t;
}

const ReferenceRow* ReferenceTable::find_if_present(Family f, const MultiIndex& D, const std::string& Y) const {
  for (const auto& r : rows_)
    if (r.family == f && r.D == D && r.Y == Y) return &r;
  return nullptr;
}

const ReferenceRow& ReferenceTable::find(Family f, const MultiIndex& D, const std::string& Y) const {
  if (const auto* r = find_if_present(f, D, Y)) return *r;
  throw TableMissing("no stored R_{-1} row for " + to_string(f) + " " + D.str() + " Y=" + Y);
}

Rational ReferenceTable::printed_value(const ReferenceRow& row, const Bindings& at) const {
  if (row.derived) {
    const ReferenceRow& base = find(row.family, MultiIndex::parse(row.derived->from), row.Y);
    Bindings moved = at;
    for (const auto& [name, value] : row.derived->substitute) moved[name] = Expr::parse(value).eval(at);
    return Rational(row.derived->sign) * printed_value(base, moved);
  }
  Rational v = Expr::parse(row.printed).eval(at);
  if (row.multiplier) v = v / Expr::parse(*row.multiplier).eval(at);
  return v;
}

std::vector<std::string> reference_symbols(Family f) {
  switch (f) {
    case Family::L: return {"g"};
    case Family::J: return {"a", "b"};
    case Family::W: return {"b1", "b2", "b3", "s1", "s2", "t1", "t2"};
    case Family::AW: return {"b1", "b3", "b4", "qh", "s1", "s2", "t1", "t2"};
  }
  return {};
}

CheckList ReferenceTable::self_check() const {
  CheckList out;
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(1, 97), den(2, 13);
  for (const auto& row : rows_) {
    const std::string key = row.derived ? derived_key(row) : row.printed;
    const std::string sum = fnv1a64(key);
    out.push_back({row.id + " checksum", sum == row.checksum, {{"computed", sum}, {"stored", row.checksum}}});
    for (int k = 0; k < 3; ++k) {
      Bindings at{{"z", Rational(num(rng), den(rng))}};
      for (const auto& s : reference_symbols(row.family)) at[s] = Rational(num(rng), den(rng)) - Rational(3);
      if (row.family == Family::AW) {
        // keep qh away from 0 and +-1, where the multiplier has poles
        at["qh"] = Rational(num(rng), 101) + Rational(1, 7);
        at["q"] = at["qh"] * at["qh"];
      }
      const Rational p = printed_value(row, at), e = row.expanded.eval(at);
      CheckResult c{row.id + " printed vs expanded #" + std::to_string(k + 1), p == e,
                    {{"printed", p.str()}, {"expanded", e.str()}}};
      out.push_back(std::move(c));
      if (row.erratum && row.erratum->replace) {
        const auto& [from, to] = *row.erratum->replace;
        std::string edited = row.printed;
        const auto pos = edited.find(from);
        const bool found = pos != std::string::npos && edited.find(from, pos + 1) == std::string::npos;
        Rational v;
        if (found) v = Expr::parse(edited.replace(pos, from.size(), to)).eval(at);
        const Rational w = row.erratum->expanded.eval(at);
        out.push_back({row.id + " erratum edit vs corrected expansion #" + std::to_string(k + 1), found && v == w,
                       {{"edited", found ? v.str() : "edit not applicable"}, {"corrected", w.str()}}});
      }
    }
  }
  return out;
}

std::string y_key(const Poly<Rational>& Y) {
  if (Y.degree() == 0 && Y.coeff(0) == Rational(1)) return "1";
  if (Y.degree() >= 1 && Y.lead() == Rational(1) && Y == Poly<Rational>::monomial(Rational(1), Y.degree()))
    return Y.degree() == 1 ? "eta" : "eta^" + std::to_string(Y.degree());
  return Y.str("eta");
}

CheckList compare_reference(const ReferenceRow& row, const ClosureTable& solved, const Bindings& at) {
  CheckList out;
  const MPoly expected = at.empty() ? row.expanded : row.expanded.subs(at);
  const MPoly got = at.empty() ? solved.Rm1 : solved.Rm1.subs(at);
  const int top = std::max(expected.degree("z"), got.degree("z"));
  for (int j = 0; j <= top; ++j) {
    const MPoly e = expected.coeff("z", j), g = got.coeff("z", j);
    out.push_back({row.id + " R_{-1} z^" + std::to_string(j), e == g, {{"solved", g.str()}, {"stored", e.str()}}});
  }
  return out;
}

std::string to_string(ReferenceVerdict v) {
  switch (v) {
    case ReferenceVerdict::Match: return "match";
    case ReferenceVerdict::MatchesErratum: return "matches-erratum";
    case ReferenceVerdict::Mismatch: return "mismatch";
  }
  return "?";
}

ReferenceVerdict reference_verdict(const ReferenceRow& row, const ClosureTable& solved, const Bindings& at) {
  if (all_pass(compare_reference(row, solved, at))) return ReferenceVerdict::Match;
  if (row.erratum) {
    ReferenceRow fixed = row;
    fixed.expanded = row.erratum->expanded;
    if (all_pass(compare_reference(fixed, solved, at))) return ReferenceVerdict::MatchesErratum;
  }
  return ReferenceVerdict::Mismatch;
}

}  // namespace closurelab
