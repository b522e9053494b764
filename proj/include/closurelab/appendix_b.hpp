#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "closurelab/checks.hpp"
#include "closurelab/closure.hpp"
#include "closurelab/expr.hpp"
#include "closurelab/families.hpp"

namespace closurelab {

/// How a stored R_{-1} row can be reproduced.
enum class RowStatus { Builtin, Plugin, ReferenceOnly };

std::string to_string(RowStatus s);

/// A row obtained from another one by substituting symbols and flipping the sign.
struct DerivedRow {
  std::string from;
  std::map<std::string, std::string> substitute;
  int sign = 1;
};

/// Recorded disagreement between a printed row and the solved closure.
struct Erratum {
  std::string note;
  /// Minimal textual edit of the printed form (absent for rows inheriting an erratum).
  std::optional<std::pair<std::string, std::string>> replace;
  MPoly expanded;
};

/// One transcribed R_{-1}(z) row.
struct ReferenceRow {
  std::string id;
  Family family = Family::L;
  MultiIndex D;
  /// Y as written in the data file ("1", "eta", "eta^2").
  std::string Y = "1";
  int K = 0;
  RowStatus status = RowStatus::Builtin;
  /// Factored form as transcribed; empty for derived rows.
  std::string printed;
  /// Present when printed = R_{-1} * multiplier (AW rows, which use qh = q^(1/2)).
  std::optional<std::string> multiplier;
  std::optional<DerivedRow> derived;
  /// Independently expanded form stored next to the printed one.
  MPoly expanded;
  std::string checksum;
  std::optional<Erratum> erratum;
};

/// FNV-1a 64-bit hash as 16 lowercase hex digits.
std::string fnv1a64(const std::string& text);

class ReferenceTable {
 public:
  /// Loads the JSON data file; throws SchemaError on malformed content.
  static ReferenceTable load(const std::string& path);
  /// CLOSURELAB_DATA_DIR/appendix_b.json, where the environment variable overrides the build default.
  static std::string default_path();

  const std::vector<ReferenceRow>& rows() const { return rows_; }
  /// Throws TableMissing when no row matches.
  const ReferenceRow& find(Family f, const MultiIndex& D, const std::string& Y = "1") const;
  const ReferenceRow* find_if_present(Family f, const MultiIndex& D, const std::string& Y = "1") const;
  /// Multi-indices listed without values, by K.
  const std::map<int, std::vector<MultiIndex>>& names_only() const { return names_only_; }

  /// Value of the row from its printed (or derived) form.
  Rational printed_value(const ReferenceRow& row, const Bindings& at) const;

  /// Checksum, then printed form against expanded form at three rational points; rows with
  /// an erratum also check the edited printed form against the stored corrected expansion.
  CheckList self_check() const;

 private:
  std::vector<ReferenceRow> rows_;
  std::map<int, std::vector<MultiIndex>> names_only_;
};

/// Symbols the rows of a family are written in (besides z).
std::vector<std::string> reference_symbols(Family f);

/// "1", "eta", "eta^2", ... for the monomials Y the data file uses; general Y get a coefficient list.
std::string y_key(const Poly<Rational>& Y);

/// Solved R_{-1} against the stored row, coefficient by coefficient. Symbolic tables are
/// compared as polynomials; tables at one sample (mode "sample") after substituting `at`.
CheckList compare_reference(const ReferenceRow& row, const ClosureTable& solved, const Bindings& at = {});

enum class ReferenceVerdict { Match, MatchesErratum, Mismatch };
std::string to_string(ReferenceVerdict v);

/// Match against the printed row, else against its erratum when one is recorded.
ReferenceVerdict reference_verdict(const ReferenceRow& row, const ClosureTable& solved, const Bindings& at = {});

}  // namespace closurelab
