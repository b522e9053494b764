#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "closurelab/mpoly.hpp"

namespace closurelab {

/// An extra sample disagrees with the interpolant: the degree bound was too small.
struct SampleMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Sample = std::pair<Rational, Rational>;

/// Newton interpolation through the first bound+1 samples; the remaining samples are
/// checked against the interpolant and a disagreement throws SampleMismatch.
Poly<Rational> interpolate_univariate(const std::vector<Sample>& samples, int degree_bound);

/// interpolate_univariate, embedded as a polynomial in `var`.
MPoly interpolate_param(const std::vector<Sample>& samples, int degree_bound, const std::string& var);

/// Tensor-grid interpolation of values[i][j] = f(xs[i], ys[j]) with per-variable bounds.
MPoly interpolate_grid(const std::vector<Rational>& xs, const std::vector<Rational>& ys,
                       const std::vector<std::vector<Rational>>& values, int bound_x, int bound_y,
                       const std::string& x_name, const std::string& y_name);

}  // namespace closurelab
