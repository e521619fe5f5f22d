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

#ifndef PURESIG_LIE_HPP
#define PURESIG_LIE_HPP
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "puresig/errors.hpp"
#include "puresig/linalg_exact.hpp"
#include "puresig/tensor.hpp"

namespace puresig {

/// A letter e_i or a bracket [left, right]. Shared, immutable nodes.
class BracketTree {
 public:
  static BracketTree leaf(int letter) {
    if (letter < 1) throw DomainError("bracket leaf letter must be >= 1");
    BracketTree t;
    t.letter_ = letter;
    t.degree_ = 1;
    return t;
  }

  static BracketTree bracket(const BracketTree& left, const BracketTree& right) {
    BracketTree t;
    t.left_ = std::make_shared<const BracketTree>(left);
    t.right_ = std::make_shared<const BracketTree>(right);
    t.degree_ = left.degree_ + right.degree_;
    return t;
  }

  bool is_leaf() const noexcept { return letter_ != 0; }
  int letter() const noexcept { return letter_; }
  int degree() const noexcept { return degree_; }
  const BracketTree& left() const { return *left_; }
  const BracketTree& right() const { return *right_; }

  int max_letter() const { return is_leaf() ? letter_ : std::max(left_->max_letter(), right_->max_letter()); }

  std::string to_string() const {
    if (is_leaf()) return "e" + std::to_string(letter_);
    return "[" + left_->to_string() + "," + right_->to_string() + "]";
  }

 private:
  BracketTree() = default;
  int letter_ = 0;
  int degree_ = 0;
  std::shared_ptr<const BracketTree> left_;
  std::shared_ptr<const BracketTree> right_;
};

/// [x, y] = x (x) y - y (x) x truncated at N.
template <class S>
GradedTensor<S> commutator(const GradedTensor<S>& x, const GradedTensor<S>& y, int N) {
  return tensor_mul(x, y, N) - tensor_mul(y, x, N);
}

/// Expands a bracket tree into the tensor algebra over R^d (homogeneous, exact).
template <class S = Rational>
GradedTensor<S> expand_bracket(const BracketTree& t, int d) {
  if (t.max_letter() > d) {
    throw DomainError("letter e" + std::to_string(t.max_letter()) + " out of range for d=" + std::to_string(d));
  }
  const int N = t.degree();
  if (t.is_leaf()) return GradedTensor<S>::letter(d, N, t.letter());
  auto l = expand_bracket<S>(t.left(), d).with_trunc(N);
  auto r = expand_bracket<S>(t.right(), d).with_trunc(N);
  return commutator(l, r, N);
}

/// All Lyndon words of length exactly m over {1..d}, in lexicographic order (Duval).
inline std::vector<Word> lyndon_words(int d, int m) {
  if (d < 1 || m < 1) throw DomainError("lyndon_words: need d >= 1 and m >= 1");
  std::vector<Word> out;
  Word w{1};
  while (!w.empty()) {
    if (static_cast<int>(w.size()) == m) out.push_back(w);
    const std::size_t n = w.size();
    while (static_cast<int>(w.size()) < m) w.push_back(w[w.size() - n]);
    while (!w.empty() && w.back() == d) w.pop_back();
    if (!w.empty()) ++w.back();
  }
  return out;
}

inline bool is_lyndon(const Word& w) {
  // A word is Lyndon iff it is strictly smaller than each of its proper suffixes.
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (!std::lexicographical_compare(w.begin(), w.end(), w.begin() + static_cast<std::ptrdiff_t>(i), w.end())) {
      return false;
    }
  }
  return !w.empty();
}

/// Standard bracketing P(w) = [P(u), P(v)] where v is the longest proper Lyndon suffix of w.
inline BracketTree standard_bracketing(const Word& w) {
  if (w.empty()) throw DomainError("standard_bracketing: empty word");
  if (w.size() == 1) return BracketTree::leaf(w[0]);
  for (std::size_t i = 1; i < w.size(); ++i) {
    Word v(w.begin() + static_cast<std::ptrdiff_t>(i), w.end());
    if (is_lyndon(v)) {
      Word u(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
      return BracketTree::bracket(standard_bracketing(u), standard_bracketing(v));
    }
  }
  throw DomainError("standard_bracketing: no Lyndon suffix (input not Lyndon)");
}

/// Necklace count (1/m) sum_{e | m} mu(e) d^{m/e}.
inline std::uint64_t dim_free_lie(int d, int m) {
  if (d < 1 || m < 1) throw DomainError("dim_free_lie: need d >= 1 and m >= 1");
  auto mobius = [](int n) {
    int mu = 1;
    for (int p = 2; p * p <= n; ++p) {
      if (n % p == 0) {
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
      }
    }
    if (n > 1) mu = -mu;
    return mu;
  };
  std::int64_t total = 0;
  for (int e = 1; e <= m; ++e) {
    if (m % e != 0) continue;
    total += mobius(e) * static_cast<std::int64_t>(pow_dim(d, m / e));
  }
  return static_cast<std::uint64_t>(total / m);
}

struct HallBasis {
  int dim = 0;
  int degree = 0;
  std::vector<Word> lyndon;
  std::vector<BracketTree> elements;

  std::size_t size() const { return elements.size(); }
};

/// Lyndon-bracketed Hall basis of L_m(R^d) in lexicographic order of the Lyndon words.
inline HallBasis hall_basis(int d, int m) {
  HallBasis b;
  b.dim = d;
  b.degree = m;
  b.lyndon = lyndon_words(d, m);
  for (const auto& w : b.lyndon) b.elements.push_back(standard_bracketing(w));
  return b;
}

/// The three degree-4 elements [[e1,[e1,e2]],e1], [[[e1,e2],e2],e2], [e1,[[e1,e2],e2]].
inline std::vector<BracketTree> deg4_reference_elements() {
  auto e1 = BracketTree::leaf(1), e2 = BracketTree::leaf(2);
  auto b12 = BracketTree::bracket(e1, e2);
  auto b112 = BracketTree::bracket(e1, b12);
  auto b122 = BracketTree::bracket(b12, e2);
  return {BracketTree::bracket(b112, e1), BracketTree::bracket(b122, e2), BracketTree::bracket(e1, b122)};
}

/// Right-normed bracketing D(i1...im) = [e_i1,[e_i2,[...,e_im]]], extended linearly.
template <class S>
GradedTensor<S> right_bracketing(const GradedTensor<S>& x) {
  int m = x.require_homogeneous("right_bracketing");
  const int d = x.dim();
  GradedTensor<S> acc(d, m);
  if (m == 0) return acc;
  std::vector<typename GradedTensor<S>::Level> levels(static_cast<std::size_t>(m) + 1);
  auto& out = levels[static_cast<std::size_t>(m)];
  x.for_each_term([&](const Word& w, const S& c) {
    // Build [w_j,[...,w_m]] from the right as a list of (word, sign) pairs.
    std::vector<std::pair<Word, int>> cur{{Word{w.back()}, 1}};
    for (int j = m - 2; j >= 0; --j) {
      std::vector<std::pair<Word, int>> next;
      next.reserve(cur.size() * 2);
      for (const auto& [u, s] : cur) {
        Word a{w[static_cast<std::size_t>(j)]};
        a.insert(a.end(), u.begin(), u.end());
        Word b = u;
        b.push_back(w[static_cast<std::size_t>(j)]);
        next.emplace_back(std::move(a), s);
        next.emplace_back(std::move(b), -s);
      }
      cur = std::move(next);
    }
    for (const auto& [u, s] : cur) out.emplace_back(pack_word(u, d), s > 0 ? c : S(-c));
  });
  return GradedTensor<S>::from_levels(d, x.trunc(), std::move(levels));
}

/// Dynkin-Specht-Wever test: a homogeneous x of degree m is a Lie element iff D(x) = m x.
template <class S>
bool dynkin_check(const GradedTensor<S>& x) {
  int m = x.require_homogeneous("dynkin_check");
  if (m == 0) return x.is_zero();
  return right_bracketing(x) == ScalarTraits<S>::from_int(m) * x;
}

/// Lie polynomial with coordinates over the Lyndon Hall basis, degree by degree.
class LiePoly {
 public:
  LiePoly(int dim, int max_degree) : dim_(dim), coeffs_(static_cast<std::size_t>(max_degree)) {
    if (dim < 1 || max_degree < 1) throw DomainError("LiePoly: need d >= 1 and degree >= 1");
    for (int n = 1; n <= max_degree; ++n) {
      coeffs_[static_cast<std::size_t>(n - 1)].assign(dim_free_lie(dim, n), Rational(0));
    }
  }

  /// Coordinates of a Lie element given as a tensor; throws DomainError if x is not Lie.
  static LiePoly from_tensor(const GradedTensor<Rational>& x) {
    if (!x.level(0).empty()) throw DomainError("Lie polynomial cannot have a degree-0 part");
    int top = std::max(1, x.max_degree());
    LiePoly p(x.dim(), top);
    for (int n = 1; n <= top; ++n) {
      if (x.level(n).empty()) continue;
      HallBasis basis = hall_basis(x.dim(), n);
      GradedTensor<Rational> residual = project(x, n).with_trunc(n);
      for (std::size_t i = 0; i < basis.size(); ++i) {
        Rational c = residual.coeff(basis.lyndon[i]);
        if (sgn(c) == 0) continue;
        residual = residual - c * expand_bracket(basis.elements[i], x.dim());
        p.coeffs_[static_cast<std::size_t>(n - 1)][i] = c;
      }
      if (!residual.is_zero()) {
        throw DomainError("input is not a Lie polynomial (degree " + std::to_string(n) + " component)");
      }
    }
    p.trim();
    return p;
  }

  int dim() const noexcept { return dim_; }
  /// Highest degree with a nonzero coordinate (0 for the zero polynomial).
  int degree() const {
    for (int n = static_cast<int>(coeffs_.size()); n >= 1; --n) {
      for (const auto& c : coeffs_[static_cast<std::size_t>(n - 1)]) {
        if (sgn(c) != 0) return n;
      }
    }
    return 0;
  }

  const std::vector<Rational>& coords(int n) const { return coeffs_.at(static_cast<std::size_t>(n - 1)); }

  template <class S = Rational>
  GradedTensor<S> to_tensor(int trunc) const {
    GradedTensor<Rational> acc(dim_, trunc);
    for (int n = 1; n <= std::min(trunc, static_cast<int>(coeffs_.size())); ++n) {
      const auto& cs = coeffs_[static_cast<std::size_t>(n - 1)];
      bool any = false;
      for (const auto& c : cs) any = any || sgn(c) != 0;
      if (!any) continue;
      HallBasis basis = hall_basis(dim_, n);
      for (std::size_t i = 0; i < cs.size(); ++i) {
        if (sgn(cs[i]) != 0) acc = acc + cs[i] * expand_bracket(basis.elements[i], dim_).with_trunc(trunc);
      }
    }
    return tensor_cast<S>(acc);
  }

  /// pi_n(l) as a LiePoly.
  LiePoly component(int n) const {
    LiePoly p(dim_, std::max(1, static_cast<int>(coeffs_.size())));
    if (n >= 1 && n <= static_cast<int>(coeffs_.size())) p.coeffs_[static_cast<std::size_t>(n - 1)] = coords(n);
    p.trim();
    return p;
  }

  friend bool operator==(const LiePoly& a, const LiePoly& b) {
    if (a.dim_ != b.dim_) return false;
    std::size_t top = std::max(a.coeffs_.size(), b.coeffs_.size());
    for (std::size_t n = 0; n < top; ++n) {
      std::size_t len = dim_free_lie(a.dim_, static_cast<int>(n) + 1);
      for (std::size_t i = 0; i < len; ++i) {
        Rational x = n < a.coeffs_.size() ? a.coeffs_[n][i] : Rational(0);
        Rational y = n < b.coeffs_.size() ? b.coeffs_[n][i] : Rational(0);
        if (x != y) return false;
      }
    }
    return true;
  }
  friend bool operator!=(const LiePoly& a, const LiePoly& b) { return !(a == b); }

  std::string to_string() const {
    std::string s;
    for (int n = 1; n <= static_cast<int>(coeffs_.size()); ++n) {
      const auto& cs = coeffs_[static_cast<std::size_t>(n - 1)];
      bool any = false;
      for (const auto& c : cs) any = any || sgn(c) != 0;
      if (!any) continue;
      HallBasis basis = hall_basis(dim_, n);
      for (std::size_t i = 0; i < cs.size(); ++i) {
        if (sgn(cs[i]) == 0) continue;
        if (!s.empty()) s += sgn(cs[i]) > 0 ? " + " : " - ";
        else if (sgn(cs[i]) < 0) s += "-";
        Rational a = abs(cs[i]);
        if (a != 1) s += a.get_str() + "*";
        s += basis.elements[i].to_string();
      }
    }
    return s.empty() ? "0" : s;
  }

 private:
  void trim() {
    while (coeffs_.size() > 1) {
      bool any = false;
      for (const auto& c : coeffs_.back()) any = any || sgn(c) != 0;
      if (any) break;
      coeffs_.pop_back();
    }
  }

  int dim_;
  std::vector<std::vector<Rational>> coeffs_;
};

/// Rank of the word-coefficient matrix of the basis expansions (equals size iff independent).
inline std::size_t expansion_rank(const HallBasis& b) {
  std::map<WordKey, std::size_t> col;
  std::vector<GradedTensor<Rational>> ex;
  for (const auto& t : b.elements) {
    ex.push_back(expand_bracket(t, b.dim));
    for (const auto& [k, c] : ex.back().level(b.degree)) col.emplace(k, 0);
  }
  std::size_t j = 0;
  for (auto& [k, idx] : col) idx = j++;
  DenseMatrix<Rational> m(ex.size(), std::vector<Rational>(col.size()));
  for (std::size_t i = 0; i < ex.size(); ++i) {
    for (const auto& [k, c] : ex[i].level(b.degree)) m[i][col[k]] = c;
  }
  return exact_rank(std::move(m));
}

}  // namespace puresig

#endif
