#pragma once

#include <string>
#include <vector>

#include "closurelab/checks.hpp"
#include "closurelab/mpoly.hpp"

#include "json.hpp"

namespace closurelab {

inline constexpr const char* kToolVersion = "closurelab 1.0.0";

/// ParamPoly record: {"variables": [...], "terms": [{"exponents": [...], "coefficient": "p/q"}, ...]}.
nlohmann::json mpoly_to_json(const MPoly& p);
MPoly mpoly_from_json(const nlohmann::json& j);

enum class Status { Pass, Fail, Skip };
std::string to_string(Status s);

struct ReportEntry {
  std::string group;
  std::string id;
  Status status = Status::Pass;
  std::map<std::string, std::string> values;
};

/// Check results of one command, kept in insertion order. Nothing time- or host-dependent
/// goes into the output, so identical runs give identical bytes.
class Report {
 public:
  Report(std::string command, nlohmann::json config);

  void add(const std::string& group, const CheckResult& c);
  void add(const std::string& group, const CheckList& checks);
  void skip(const std::string& group, const std::string& id, const std::string& reason);
  void notice(const std::string& text);
  /// Solved data echoed under "data" (R lists, tables).
  void set_data(const std::string& key, nlohmann::json value);

  const std::vector<ReportEntry>& entries() const { return entries_; }
  int count(Status s) const;
  /// 0 when nothing failed, 1 otherwise.
  int exit_code() const { return count(Status::Fail) ? 1 : 0; }

  nlohmann::json to_json() const;
  /// One line per entry, then notices and the summary.
  std::string text() const;

 private:
  std::string command_;
  nlohmann::json config_;
  std::vector<ReportEntry> entries_;
  std::vector<std::string> notices_;
  nlohmann::json data_ = nlohmann::json::object();
};

}  // namespace closurelab
