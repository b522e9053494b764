#pragma once

#include <map>
#include <string>
#include <vector>

namespace closurelab {

/// One exact check: an id, a verdict and the compared values rendered as strings.
struct CheckResult {
  std::string id;
  bool pass = false;
  std::map<std::string, std::string> values;
};

using CheckList = std::vector<CheckResult>;

inline bool all_pass(const CheckList& checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

inline void append(CheckList& to, const CheckList& from) { to.insert(to.end(), from.begin(), from.end()); }

}  // namespace closurelab
