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

#ifndef PURESIG_SMALL_MATRIX_HPP
#define PURESIG_SMALL_MATRIX_HPP
#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <ostream>
#include <vector>

#include "puresig/errors.hpp"
#include "puresig/scalar.hpp"

namespace puresig {

using CMatrix = Eigen::MatrixXcd;

/// Minimal dense matrix for exact scalars, where Eigen's numerical kernels do not apply.
template <class S>
class SmallMatrix {
 public:
  using T = ScalarTraits<S>;

  SmallMatrix() = default;
  SmallMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows * cols), T::from_int(0)) {
    if (rows < 0 || cols < 0) throw DomainError("matrix dimensions must be nonnegative");
  }

  static SmallMatrix identity(int n) {
    SmallMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T::from_int(1);
    return m;
  }

  /// Row-major initializer.
  static SmallMatrix from_rows(const std::vector<std::vector<S>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r ? static_cast<int>(rows[0].size()) : 0;
    SmallMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
      if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != c) throw DomainError("ragged matrix rows");
      for (int j = 0; j < c; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    return m;
  }

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  S& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * cols_ + j)]; }
  const S& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * cols_ + j)]; }

  SmallMatrix& operator+=(const SmallMatrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  SmallMatrix& operator-=(const SmallMatrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  friend SmallMatrix operator+(SmallMatrix a, const SmallMatrix& b) { return a += b; }
  friend SmallMatrix operator-(SmallMatrix a, const SmallMatrix& b) { return a -= b; }
  friend SmallMatrix operator*(const S& c, SmallMatrix a) {
    for (auto& x : a.a_) x = S(c * x);
    return a;
  }
  friend SmallMatrix operator*(const SmallMatrix& a, const SmallMatrix& b) {
    if (a.cols_ != b.rows_) throw DomainError("matrix product: shape mismatch");
    SmallMatrix c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i) {
      for (int k = 0; k < a.cols_; ++k) {
        const S& aik = a(i, k);
        if (T::is_zero(aik)) continue;
        for (int j = 0; j < b.cols_; ++j) c(i, j) += S(aik * b(k, j));
      }
    }
    return c;
  }
  friend bool operator==(const SmallMatrix& a, const SmallMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  friend bool operator!=(const SmallMatrix& a, const SmallMatrix& b) { return !(a == b); }

  bool is_zero() const {
    for (const auto& x : a_) {
      if (!T::is_zero(x)) return false;
    }
    return true;
  }

  bool is_diagonal() const {
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) {
        if (i != j && !T::is_zero((*this)(i, j))) return false;
      }
    }
    return true;
  }

  CMatrix to_complex() const {
    CMatrix m(rows_, cols_);
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) m(i, j) = T::to_complex((*this)(i, j));
    }
    return m;
  }

  friend std::ostream& operator<<(std::ostream& os, const SmallMatrix& m) {
    for (int i = 0; i < m.rows_; ++i) {
      for (int j = 0; j < m.cols_; ++j) os << (j ? " " : "") << m(i, j);
      os << "\n";
    }
    return os;
  }

 private:
  void check_same(const SmallMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("matrix sum: shape mismatch");
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<S> a_;
};

using ExactMatrix = SmallMatrix<GaussRational>;

}  // namespace puresig

#endif
