#pragma once

#include <string>

#include "closurelab/rational.hpp"

namespace closurelab {

/// Exact element re + im*i of Q(i); the coefficient field of the Wilson shift algebra.
class GaussRational {
 public:
  GaussRational() = default;
  GaussRational(int re) : re_(re) {}  // NOLINT
  GaussRational(const Rational& re) : re_(re) {}  // NOLINT
  GaussRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussRational i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }
  GaussRational conj() const { return {re_, -im_}; }
  Rational norm() const { return re_ * re_ + im_ * im_; }

  GaussRational operator-() const { return {-re_, -im_}; }
  friend GaussRational operator+(const GaussRational& a, const GaussRational& b) {
    return {a.re_ + b.re_, a.im_ + b.im_};
  }
  friend GaussRational operator-(const GaussRational& a, const GaussRational& b) {
    return {a.re_ - b.re_, a.im_ - b.im_};
  }
  friend GaussRational operator*(const GaussRational& a, const GaussRational& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend GaussRational operator/(const GaussRational& a, const GaussRational& b) {
    Rational n = b.norm();
    if (n.is_zero()) throw std::domain_error("GaussRational: division by zero");
    GaussRational t = a * b.conj();
    return {t.re_ / n, t.im_ / n};
  }
  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  std::string str() const {
    if (im_.is_zero()) return re_.str();
    std::string s = re_.is_zero() ? "" : re_.str() + (im_.sign() > 0 ? "+" : "");
    return s + im_.str() + "*i";
  }

 private:
  Rational re_, im_;
};

inline bool is_zero(const GaussRational& x) { return x.is_zero(); }
inline std::string to_string(const GaussRational& x) { return x.str(); }

}  // namespace closurelab
