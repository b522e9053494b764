#include "closurelab/interpolate.hpp"

namespace closurelab {

Poly<Rational> interpolate_univariate(const std::vector<Sample>& samples, int degree_bound) {
  const std::size_t need = static_cast<std::size_t>(degree_bound) + 1;
  if (degree_bound < 0 || samples.size() < need)
    throw std::invalid_argument("interpolation needs at least degree_bound + 1 samples");
  for (std::size_t i = 0; i < samples.size(); ++i)
    for (std::size_t j = i + 1; j < samples.size(); ++j)
      if (samples[i].first == samples[j].first) throw std::invalid_argument("repeated interpolation point");

  // divided differences
  std::vector<Rational> coef(need);
  for (std::size_t i = 0; i < need; ++i) coef[i] = samples[i].second;
  for (std::size_t level = 1; level < need; ++level)
    for (std::size_t i = need - 1; i >= level; --i)
      coef[i] = (coef[i] - coef[i - 1]) / (samples[i].first - samples[i - level].first);

  Poly<Rational> result;
  for (std::size_t k = need; k-- > 0;) {
    result = result * Poly<Rational>::linear(Rational(1), -samples[k].first) + Poly<Rational>(coef[k]);
  }
  for (std::size_t i = need; i < samples.size(); ++i)
    if (!(result(samples[i].first) == samples[i].second))
      throw SampleMismatch("sample at " + samples[i].first.str() + " disagrees with degree-" +
                           std::to_string(degree_bound) + " interpolant");
  return result;
}

MPoly interpolate_param(const std::vector<Sample>& samples, int degree_bound, const std::string& var) {
  return MPoly::from_poly(interpolate_univariate(samples, degree_bound), var);
}

MPoly interpolate_grid(const std::vector<Rational>& xs, const std::vector<Rational>& ys,
                       const std::vector<std::vector<Rational>>& values, int bound_x, int bound_y,
                       const std::string& x_name, const std::string& y_name) {
  if (values.size() != xs.size()) throw std::invalid_argument("grid shape mismatch");
  std::vector<Poly<Rational>> in_y;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (values[i].size() != ys.size()) throw std::invalid_argument("grid shape mismatch");
    std::vector<Sample> s;
    for (std::size_t j = 0; j < ys.size(); ++j) s.emplace_back(ys[j], values[i][j]);
    in_y.push_back(interpolate_univariate(s, bound_y));
  }
  MPoly result;
  for (int k = 0; k <= bound_y; ++k) {
    std::vector<Sample> s;
    for (std::size_t i = 0; i < xs.size(); ++i) s.emplace_back(xs[i], in_y[i].coeff(k));
    result += interpolate_param(s, bound_x, x_name) * MPoly::monomial(y_name, k);
  }
  return result;
}

}  // namespace closurelab
