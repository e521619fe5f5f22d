/*
 * Copyright 2026 The puresig Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef PURESIG_LINALG_EXACT_HPP
#define PURESIG_LINALG_EXACT_HPP
#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "puresig/scalar.hpp"

namespace puresig {

template <class F>
using DenseMatrix = std::vector<std::vector<F>>;

/// Row-reduces m in place (exact field F) and returns the rank.
template <class F>
std::size_t row_reduce(DenseMatrix<F>& m, std::vector<std::size_t>* pivot_cols = nullptr) {
  using T = ScalarTraits<F>;
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && T::is_zero(m[p][c])) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    F inv = F(T::from_int(1)) / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] = F(m[r][j] * inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || T::is_zero(m[i][c])) continue;
      F f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= F(f * m[r][j]);
    }
    if (pivot_cols) pivot_cols->push_back(c);
    ++r;
  }
  return r;
}

template <class F>
std::size_t exact_rank(DenseMatrix<F> m) {
  return row_reduce(m);
}

/// Solves A x = b exactly. Returns nullopt when inconsistent; free variables are set to 0.
template <class F>
std::optional<std::vector<F>> exact_solve(const DenseMatrix<F>& A, const std::vector<F>& b) {
  using T = ScalarTraits<F>;
  const std::size_t rows = A.size();
  const std::size_t cols = rows ? A[0].size() : 0;
  DenseMatrix<F> aug(rows, std::vector<F>(cols + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) aug[i][j] = A[i][j];
    aug[i][cols] = b[i];
  }
  std::vector<std::size_t> piv;
  std::size_t r = row_reduce(aug, &piv);
  if (r > 0 && piv[r - 1] == cols) return std::nullopt;
  std::vector<F> x(cols, T::from_int(0));
  for (std::size_t i = 0; i < r; ++i) x[piv[i]] = aug[i][cols];
  return x;
}

}  // namespace puresig

#endif
