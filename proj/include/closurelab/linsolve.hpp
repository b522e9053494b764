#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <optional>
#include <vector>

#include "closurelab/field.hpp"

namespace closurelab {

template <class F>
using Mat = Eigen::Matrix<F, Eigen::Dynamic, Eigen::Dynamic>;
template <class F>
using Vec = Eigen::Matrix<F, Eigen::Dynamic, 1>;
template <class F>
using RowVec = Eigen::Matrix<F, 1, Eigen::Dynamic>;

template <ExactField F>
struct LinearSolution {
  bool consistent = false;
  Vec<F> particular;           // free variables set to zero
  std::vector<Vec<F>> kernel;  // basis of the null space
  int rank = 0;
};

/// Incremental Gauss-Jordan elimination for systems with many redundant rows:
/// each added row is reduced against the current pivots and kept only when it
/// contributes a new pivot, so memory stays at rank x (unknowns + 1).
template <ExactField F>
class RowReducer {
 public:
  explicit RowReducer(int unknowns) : n_(unknowns) {}

  int unknowns() const { return n_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  bool inconsistent() const { return inconsistent_; }

  /// Adds the equation coeffs . x = rhs.
  void add(RowVec<F> row, const F& rhs) {
    RowVec<F> aug(n_ + 1);
    aug.head(n_) = row;
    aug(n_) = rhs;
    add_augmented(std::move(aug));
  }

  void add_augmented(RowVec<F> aug) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const F& f = aug(pivots_[r]);
      if (is_zero(f)) continue;
      F factor = f;
      for (int c = 0; c <= n_; ++c)
        if (!is_zero(rows_[r](c))) aug(c) = aug(c) - factor * rows_[r](c);
    }
    int p = -1;
    for (int c = 0; c < n_; ++c)
      if (!is_zero(aug(c))) {
        p = c;
        break;
      }
    if (p < 0) {
      if (!is_zero(aug(n_))) inconsistent_ = true;
      return;
    }
    F inv = F(1) / aug(p);
    for (int c = 0; c <= n_; ++c)
      if (!is_zero(aug(c))) aug(c) = aug(c) * inv;
    for (auto& other : rows_) {
      const F f = other(p);
      if (is_zero(f)) continue;
      for (int c = 0; c <= n_; ++c)
        if (!is_zero(aug(c))) other(c) = other(c) - f * aug(c);
    }
    rows_.push_back(std::move(aug));
    pivots_.push_back(p);
  }

  LinearSolution<F> solution() const {
    LinearSolution<F> s;
    s.rank = rank();
    s.consistent = !inconsistent_;
    if (!s.consistent) return s;
    s.particular = Vec<F>::Constant(n_, F(0));
    std::vector<int> pivot_row(static_cast<std::size_t>(n_), -1);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      pivot_row[static_cast<std::size_t>(pivots_[r])] = static_cast<int>(r);
      s.particular(pivots_[r]) = rows_[r](n_);
    }
    for (int free = 0; free < n_; ++free) {
      if (pivot_row[static_cast<std::size_t>(free)] >= 0) continue;
      Vec<F> k = Vec<F>::Constant(n_, F(0));
      k(free) = F(1);
      for (std::size_t r = 0; r < rows_.size(); ++r) k(pivots_[r]) = -rows_[r](free);
      s.kernel.push_back(std::move(k));
    }
    return s;
  }

 private:
  int n_;
  bool inconsistent_ = false;
  std::vector<RowVec<F>> rows_;
  std::vector<int> pivots_;
};

/// Exact solution of M x = rhs: a particular solution plus a null-space basis.
/// Inconsistency is reported through `consistent`, not thrown.
template <ExactField F>
LinearSolution<F> solve_linear_exact(const Mat<F>& M, const Vec<F>& rhs) {
  RowReducer<F> red(static_cast<int>(M.cols()));
  for (Eigen::Index r = 0; r < M.rows(); ++r) red.add(M.row(r), rhs(r));
  return red.solution();
}

/// Fraction-free (Bareiss) determinant; every intermediate division is exact.
template <ExactField F>
F determinant_bareiss(Mat<F> M) {
  const Eigen::Index n = M.rows();
  if (n != M.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (n == 0) return F(1);
  F sign(1), prev(1);
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (is_zero(M(k, k))) {
      Eigen::Index swap = -1;
      for (Eigen::Index r = k + 1; r < n; ++r)
        if (!is_zero(M(r, k))) {
          swap = r;
          break;
        }
      if (swap < 0) return F(0);
      M.row(k).swap(M.row(swap));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j) M(i, j) = (M(i, j) * M(k, k) - M(i, k) * M(k, j)) / prev;
    prev = M(k, k);
  }
  return sign * M(n - 1, n - 1);
}

}  // namespace closurelab
