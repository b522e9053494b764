#pragma once

#include <stdexcept>

namespace closurelab {

// Fatal conditions. Outcomes that are part of a normal report (inconsistent systems,
// nonzero remainders, non-proportional ladder images) are status fields instead.

struct AlgebraMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonPolynomialImage : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegreeMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EigenValidationFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct RouteDisagreement : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateSpectrum : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TableMissing : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CoefficientBlowup : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace closurelab
