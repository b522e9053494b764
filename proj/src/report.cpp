#include "closurelab/report.hpp"

#include <sstream>

#include "closurelab/errors.hpp"

namespace closurelab {

nlohmann::json mpoly_to_json(const MPoly& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [exps, c] : p.terms()) terms.push_back({{"exponents", exps}, {"coefficient", c.str()}});
  return {{"variables", p.variables()}, {"terms", terms}};
}

MPoly mpoly_from_json(const nlohmann::json& j) {
  try {
    const auto vars = j.at("variables").get<std::vector<std::string>>();
    MPoly out;
    for (const auto& t : j.at("terms")) {
      const auto exps = t.at("exponents").get<std::vector<int>>();
      if (exps.size() != vars.size()) throw SchemaError("ParamPoly term has the wrong number of exponents");
      MPoly term(Rational::parse(t.at("coefficient").get<std::string>()));
      for (std::size_t i = 0; i < vars.size(); ++i) term *= MPoly::monomial(vars[i], exps[i]);
      out += term;
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("ParamPoly record: ") + e.what());
  }
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Skip:
      return "skip";
  }
  return "?";
}

Report::Report(std::string command, nlohmann::json config) : command_(std::move(command)), config_(std::move(config)) {}

void Report::add(const std::string& group, const CheckResult& c) {
  entries_.push_back({group, c.id, c.pass ? Status::Pass : Status::Fail, c.values});
}

void Report::add(const std::string& group, const CheckList& checks) {
  for (const auto& c : checks) add(group, c);
}

void Report::skip(const std::string& group, const std::string& id, const std::string& reason) {
  entries_.push_back({group, id, Status::Skip, {{"reason", reason}}});
}

void Report::notice(const std::string& text) { notices_.push_back(text); }

void Report::set_data(const std::string& key, nlohmann::json value) { data_[key] = std::move(value); }

int Report::count(Status s) const {
  int n = 0;
  for (const auto& e : entries_) n += e.status == s;
  return n;
}

nlohmann::json Report::to_json() const {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& e : entries_)
    checks.push_back({{"group", e.group}, {"id", e.id}, {"status", to_string(e.status)}, {"values", e.values}});
  return {{"tool", kToolVersion},
          {"command", command_},
          {"config", config_},
          {"checks", checks},
          {"notices", notices_},
          {"data", data_},
          {"summary",
           {{"pass", count(Status::Pass)}, {"fail", count(Status::Fail)}, {"skip", count(Status::Skip)}}},
          {"exit_code", exit_code()}};
}

std::string Report::text() const {
  std::ostringstream os;
  for (const auto& e : entries_) {
    os << (e.status == Status::Pass ? "PASS" : e.status == Status::Fail ? "FAIL" : "SKIP") << "  [" << e.group << "] "
       << e.id;
    if (e.status != Status::Pass)
      for (const auto& [k, v] : e.values) os << "  " << k << "=" << v;
    os << "\n";
  }
  for (const auto& n : notices_) os << "note: " << n << "\n";
  os << command_ << ": " << count(Status::Pass) << " pass, " << count(Status::Fail) << " fail, "
     << count(Status::Skip) << " skip\n";
  return os.str();
}

}  // namespace closurelab
