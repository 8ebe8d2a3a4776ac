#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace weyl::linalg {

// Dense Gauss-Jordan elimination over an exact field. T needs + - * /,
// isZero() and value semantics; works for Scalar and RationalFunction.

template <class T>
using Matrix = std::vector<std::vector<T>>;

/// Brings `a` to reduced row echelon form in place; returns pivot columns.
/// Zero rows are dropped.
template <class T>
std::vector<std::size_t> reduceRowEchelon(Matrix<T>& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
    std::size_t pick = row;
    while (pick < a.size() && a[pick][col].isZero()) ++pick;
    if (pick == a.size()) continue;
    std::swap(a[row], a[pick]);
    T inv = a[row][col];
    for (std::size_t c = col; c < cols; ++c) {
      if (!a[row][c].isZero()) a[row][c] = a[row][c] / inv;
    }
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][col].isZero()) continue;
      T factor = a[r][col];
      for (std::size_t c = col; c < cols; ++c) {
        if (!a[row][c].isZero()) a[r][c] = a[r][c] - factor * a[row][c];
      }
    }
    pivots.push_back(col);
    ++row;
  }
  a.resize(row);
  return pivots;
}

template <class T>
std::size_t rank(Matrix<T> a, std::size_t cols) {
  return reduceRowEchelon(a, cols).size();
}

/// Basis of {v : a v = 0}, one vector per free column.
template <class T>
Matrix<T> nullspace(Matrix<T> a, std::size_t cols, const T& zero, const T& one) {
  auto pivots = reduceRowEchelon(a, cols);
  std::vector<bool> isPivot(cols, false);
  for (auto p : pivots) isPivot[p] = true;
  Matrix<T> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (isPivot[free]) continue;
    std::vector<T> v(cols, zero);
    v[free] = one;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      if (!a[r][free].isZero()) v[pivots[r]] = zero - a[r][free];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Some x with a x = b (free unknowns set to zero), or nullopt if inconsistent.
template <class T>
std::optional<std::vector<T>> solve(const Matrix<T>& a, const std::vector<T>& b, std::size_t unknowns, const T& zero) {
  Matrix<T> aug;
  aug.reserve(a.size());
  for (std::size_t r = 0; r < a.size(); ++r) {
    std::vector<T> row = a[r];
    row.push_back(b[r]);
    aug.push_back(std::move(row));
  }
  auto pivots = reduceRowEchelon(aug, unknowns + 1);
  if (!pivots.empty() && pivots.back() == unknowns) return std::nullopt;
  std::vector<T> x(unknowns, zero);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][unknowns];
  return x;
}

}  // namespace weyl::linalg
