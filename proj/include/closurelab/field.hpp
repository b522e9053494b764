#pragma once

#include <concepts>
#include <string>

#include "closurelab/rational.hpp"

namespace closurelab {

/// Scalar types usable as coefficients: exact, with field division.
/// Models: Rational, RatFunc (rational functions in the parameter g), GaussRational.
template <class F>
concept ExactField = std::regular<F> && requires(const F a, const F b) {
  { a + b } -> std::convertible_to<F>;
  { a - b } -> std::convertible_to<F>;
  { a * b } -> std::convertible_to<F>;
  { a / b } -> std::convertible_to<F>;
  { -a } -> std::convertible_to<F>;
  { is_zero(a) } -> std::convertible_to<bool>;
  { to_string(a) } -> std::convertible_to<std::string>;
  F(1);
  F(Rational(1, 2));
};

/// Unqualified dispatch so that is_zero overloads declared later are found by ADL.
template <class T>
bool field_is_zero(const T& x) {
  return is_zero(x);
}

template <ExactField F>
F field_pow(const F& base, int exponent) {
  if (exponent < 0) return field_pow(F(1) / base, -exponent);
  F result(1), b = base;
  while (exponent > 0) {
    if (exponent & 1) result = result * b;
    exponent >>= 1;
    if (exponent) b = b * b;
  }
  return result;
}

}  // namespace closurelab
