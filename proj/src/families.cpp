#include "closurelab/families.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "closurelab/expr.hpp"

namespace closurelab {

std::string to_string(Family f) {
  switch (f) {
    case Family::L: return "L";
    case Family::J: return "J";
    case Family::W: return "W";
    case Family::AW: return "AW";
  }
  return "?";
}

std::string to_string(VirtualType t) { return t == VirtualType::I ? "I" : "II"; }
std::string to_string(Source s) { return s == Source::Builtin ? "builtin" : "plugin"; }

Family parse_family(std::string_view text) {
  std::string up(text);
  for (auto& c : up) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (up == "L") return Family::L;
  if (up == "J") return Family::J;
  if (up == "W") return Family::W;
  if (up == "AW") return Family::AW;
  throw ConfigError("unknown family '" + std::string(text) + "' (expected L, J, W or AW)");
}

bool has_differential_operator(Family f) { return f == Family::L || f == Family::J; }

MultiIndex::MultiIndex(std::vector<MultiIndexEntry> entries) : entries_(std::move(entries)) {
  std::set<std::pair<int, int>> seen;
  for (const auto& e : entries_) {
    if (e.d < 1) throw ConfigError("multi-index degrees must be >= 1");
    if (!seen.emplace(static_cast<int>(e.type), e.d).second)
      throw ConfigError("repeated multi-index entry " + std::to_string(e.d) + to_string(e.type));
  }
  std::sort(entries_.begin(), entries_.end(), [](const auto& x, const auto& y) {
    return std::pair(static_cast<int>(x.type), x.d) < std::pair(static_cast<int>(y.type), y.d);
  });
}

MultiIndex MultiIndex::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '{' && c != '}' && c != '^') s += c;
  std::vector<MultiIndexEntry> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t end = s.find(',', pos);
    if (end == std::string::npos) end = s.size();
    std::string item = s.substr(pos, end - pos);
    pos = end + 1;
    if (item.empty()) continue;
    std::size_t k = 0;
    while (k < item.size() && std::isdigit(static_cast<unsigned char>(item[k]))) ++k;
    std::string digits = item.substr(0, k), type = item.substr(k);
    if (digits.empty() || (type != "I" && type != "II"))
      throw ConfigError("bad multi-index entry '" + item + "' (expected e.g. 1I or 2II)");
    out.push_back({std::stoi(digits), type == "I" ? VirtualType::I : VirtualType::II});
  }
  return MultiIndex(std::move(out));
}

int MultiIndex::M_I() const {
  return static_cast<int>(std::count_if(entries_.begin(), entries_.end(),
                                        [](const auto& e) { return e.type == VirtualType::I; }));
}
int MultiIndex::M_II() const { return M() - M_I(); }

int MultiIndex::ell() const {
  int s = 0;
  for (const auto& e : entries_) s += e.d;
  return s - M() * (M() - 1) / 2 + 2 * M_I() * M_II();
}

std::string MultiIndex::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(entries_[i].d) + "^" + to_string(entries_[i].type);
  }
  return out + "}";
}

std::string MultiIndex::key() const {
  std::string out;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(entries_[i].d) + to_string(entries_[i].type);
  }
  return out;
}

std::vector<std::string> primary_parameters(Family f) {
  switch (f) {
    case Family::L: return {"g"};
    case Family::J: return {"g", "h"};
    case Family::W: return {"a1", "a2", "a3", "a4"};
    case Family::AW: return {"a1", "a2", "a3", "a4", "q"};
  }
  return {};
}

ParamSet ParamSet::make(Family family, const Bindings& given) {
  ParamSet ps;
  ps.family_ = family;
  ps.given_ = given;
  const auto names = primary_parameters(family);
  for (const auto& [k, v] : given)
    if (std::find(names.begin(), names.end(), k) == names.end())
      throw ConfigError("parameter '" + k + "' does not belong to family " + to_string(family));
  for (const auto& n : names)
    if (!given.count(n)) throw ConfigError("missing parameter '" + n + "' for family " + to_string(family));
  Bindings& v = ps.values_;
  v = given;
  if (family == Family::J) {
    v["a"] = v["g"] + v["h"];
    v["b"] = v["g"] - v["h"];
  }
  if (family == Family::W || family == Family::AW) {
    const Rational a1 = v["a1"], a2 = v["a2"], a3 = v["a3"], a4 = v["a4"];
    v["s1"] = a1 + a2;
    v["s2"] = a1 * a2;
    v["t1"] = a3 + a4;
    v["t2"] = a3 * a4;
    v["b1"] = a1 + a2 + a3 + a4;
    v["b2"] = a1 * a2 + a1 * a3 + a1 * a4 + a2 * a3 + a2 * a4 + a3 * a4;
    v["b3"] = a1 * a2 * a3 + a1 * a2 * a4 + a1 * a3 * a4 + a2 * a3 * a4;
    v["b4"] = a1 * a2 * a3 * a4;
  }
  if (family == Family::AW) {
    Rational root;
    if (!exact_sqrt(v["q"], root)) throw ConfigError("q must be the square of a rational");
    v["qh"] = root;
  }
  return ps;
}

ParamSet ParamSet::default_sample(Family family) {
  switch (family) {
    case Family::L: return make(family, {{"g", Rational(7, 3)}});
    case Family::J: return make(family, {{"g", Rational(2)}, {"h", Rational(3)}});
    case Family::W:
      return make(family, {{"a1", Rational(3, 2)}, {"a2", Rational(7, 3)}, {"a3", Rational(5, 2)}, {"a4", Rational(11, 4)}});
    case Family::AW:
      return make(family, {{"a1", Rational(1, 3)}, {"a2", Rational(1, 5)}, {"a3", Rational(1, 7)}, {"a4", Rational(2, 11)},
                           {"q", Rational(9, 16)}});
  }
  throw ConfigError("unknown family");
}

Rational ParamSet::get(const std::string& name) const {
  auto it = values_.find(name);
  if (it == values_.end()) throw ConfigError("parameter '" + name + "' not set");
  return it->second;
}

std::string ParamSet::range_violation(int L) const {
  switch (family_) {
    case Family::L:
      if (get("g") <= Rational(0)) return "g must be positive";
      return "";
    case Family::J:
      if (get("a") <= Rational(2 * L - 1)) return "a = g+h must exceed 2L-1 = " + std::to_string(2 * L - 1);
      return "";
    case Family::W:
      for (const char* n : {"a1", "a2", "a3", "a4"})
        if (get(n) <= Rational(0)) return std::string(n) + " must be positive";
      if (get("b1") <= Rational(2 * L)) return "b1 must exceed 2L = " + std::to_string(2 * L);
      return "";
    case Family::AW: {
      const Rational q = get("q");
      if (q <= Rational(0) || q >= Rational(1)) return "q must lie in (0,1)";
      for (const char* n : {"a1", "a2", "a3", "a4"})
        if (abs(get(n)) >= Rational(1)) return std::string(n) + " must satisfy |a| < 1";
      if (get("b4") >= pow(q, 2 * L)) return "b4 must be below q^(2L)";
      return "";
    }
  }
  return "";
}

MPoly energy_expr(Family f, int n) {
  const MPoly N(n);
  switch (f) {
    case Family::L: return MPoly(4 * n);
    case Family::J: return MPoly(4) * N * (N + MPoly::var("g") + MPoly::var("h"));
    case Family::W: return N * (N + MPoly::var("b1") - MPoly(1));
    case Family::AW:
      return (MPoly::monomial("q", -n) - MPoly(1)) * (MPoly(1) - MPoly::var("b4") * MPoly::monomial("q", n - 1));
  }
  return {};
}

MPoly virtual_energy_expr(Family f, VirtualType t, int v) {
  const bool one = t == VirtualType::I;
  const MPoly V(v);
  switch (f) {
    case Family::L: return MPoly(-4) * (MPoly::var("g") + (one ? V + MPoly(Rational(1, 2)) : -V - MPoly(Rational(1, 2))));
    case Family::J: {
      const MPoly g = MPoly::var("g"), h = MPoly::var("h"), half(Rational(1, 2));
      if (one) return MPoly(-4) * (g + V + half) * (h - V - half);
      return MPoly(-4) * (g - V - half) * (h + V + half);
    }
    case Family::W: {
      const MPoly s1 = MPoly::var("s1"), t1 = MPoly::var("t1");
      if (one) return -((s1 - V - MPoly(1)) * (t1 + V));
      return -((t1 - V - MPoly(1)) * (s1 + V));
    }
    case Family::AW: {
      const MPoly s2 = MPoly::var("s2"), t2 = MPoly::var("t2");
      if (one) return -((MPoly(1) - s2 * MPoly::monomial("q", -v - 1)) * (MPoly(1) - t2 * MPoly::monomial("q", v)));
      return -((MPoly(1) - t2 * MPoly::monomial("q", -v - 1)) * (MPoly(1) - s2 * MPoly::monomial("q", v)));
    }
  }
  return {};
}

}  // namespace closurelab
