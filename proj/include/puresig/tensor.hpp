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

#ifndef PURESIG_TENSOR_HPP
#define PURESIG_TENSOR_HPP
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "puresig/errors.hpp"
#include "puresig/scalar.hpp"
#include "puresig/word.hpp"

namespace puresig {

enum class NormKind { l1, hs };

inline NormKind parse_norm_kind(const std::string& s) {
  if (s == "l1") return NormKind::l1;
  if (s == "hs") return NormKind::hs;
  throw DomainError("unknown norm '" + s + "' (expected l1 or hs)");
}

inline const char* to_string(NormKind k) { return k == NormKind::l1 ? "l1" : "hs"; }

/// Caps the number of coefficients a single product may produce. The default keeps exact
/// products below roughly 1 GB of GMP storage.
struct Limits {
  std::size_t max_terms = 10'000'000;
};

inline Limits& default_limits() {
  static Limits limits;
  return limits;
}

/// Sparse element of the truncated tensor algebra T^(N)(F^d).
///
/// Coefficients are stored per degree as a vector of (packed word, coefficient) pairs kept
/// sorted by key with no zero coefficients, so two tensors are equal iff their levels are.
template <TensorScalar S>
class GradedTensor {
 public:
  using Scalar = S;
  using Traits = ScalarTraits<S>;
  using Term = std::pair<WordKey, S>;
  using Level = std::vector<Term>;

  GradedTensor(int dim, int trunc) : dim_(dim), trunc_(trunc) {
    if (dim < 1) throw DomainError("tensor dimension must be >= 1");
    if (trunc < 0) throw DomainError("truncation level must be >= 0");
    levels_.resize(static_cast<std::size_t>(trunc) + 1);
  }

  static GradedTensor unit(int dim, int trunc) {
    GradedTensor t(dim, trunc);
    t.levels_[0].emplace_back(0, Traits::from_int(1));
    return t;
  }

  static GradedTensor scalar(int dim, int trunc, const S& c) {
    GradedTensor t(dim, trunc);
    if (!Traits::is_zero(c)) t.levels_[0].emplace_back(0, c);
    return t;
  }

  /// c * e_i, 1-based letter.
  static GradedTensor letter(int dim, int trunc, int i, const S& c = Traits::from_int(1)) {
    return from_terms(dim, trunc, {{Word{i}, c}});
  }

  static GradedTensor from_terms(int dim, int trunc, const std::vector<std::pair<Word, S>>& terms) {
    GradedTensor t(dim, trunc);
    for (const auto& [w, c] : terms) {
      int n = static_cast<int>(w.size());
      if (n > trunc) throw DomainError("word longer than truncation level");
      t.levels_[static_cast<std::size_t>(n)].emplace_back(pack_word(w, dim), c);
    }
    for (auto& level : t.levels_) normalize(level);
    return t;
  }

  /// Takes ownership of raw per-degree term lists and brings them to canonical form.
  static GradedTensor from_levels(int dim, int trunc, std::vector<Level> levels) {
    GradedTensor t(dim, trunc);
    if (levels.size() > t.levels_.size()) throw DomainError("too many levels for truncation");
    for (std::size_t n = 0; n < levels.size(); ++n) {
      normalize(levels[n]);
      t.levels_[n] = std::move(levels[n]);
    }
    return t;
  }

  /// Adopts levels that are already canonical (sorted, combined, zero-free).
  static GradedTensor from_sorted_levels(int dim, int trunc, std::vector<Level> levels) {
    GradedTensor t(dim, trunc);
    if (levels.size() > t.levels_.size()) throw DomainError("too many levels for truncation");
    for (std::size_t n = 0; n < levels.size(); ++n) t.levels_[n] = std::move(levels[n]);
    return t;
  }

  int dim() const noexcept { return dim_; }
  int trunc() const noexcept { return trunc_; }

  const Level& level(int n) const {
    static const Level empty;
    if (n < 0) throw DomainError("negative degree");
    return n <= trunc_ ? levels_[static_cast<std::size_t>(n)] : empty;
  }

  S coeff(const Word& w) const {
    const Level& lv = level(static_cast<int>(w.size()));
    WordKey key = pack_word(w, dim_);
    auto it = std::lower_bound(lv.begin(), lv.end(), key,
                               [](const Term& t, WordKey k) { return t.first < k; });
    if (it != lv.end() && it->first == key) return it->second;
    return Traits::from_int(0);
  }

  S scalar_part() const {
    return levels_[0].empty() ? Traits::from_int(0) : levels_[0].front().second;
  }

  std::size_t term_count() const {
    std::size_t n = 0;
    for (const auto& lv : levels_) n += lv.size();
    return n;
  }

  bool is_zero() const { return term_count() == 0; }

  /// Highest degree carrying a nonzero coefficient, or -1 for the zero tensor.
  int max_degree() const {
    for (int n = trunc_; n >= 0; --n) {
      if (!levels_[static_cast<std::size_t>(n)].empty()) return n;
    }
    return -1;
  }

  int min_degree() const {
    for (int n = 0; n <= trunc_; ++n) {
      if (!levels_[static_cast<std::size_t>(n)].empty()) return n;
    }
    return -1;
  }

  /// Degree of a homogeneous tensor; nullopt when two or more degrees are present.
  /// The zero tensor reports degree 0.
  std::optional<int> homogeneous_degree() const {
    int lo = min_degree();
    if (lo < 0) return 0;
    if (lo != max_degree()) return std::nullopt;
    return lo;
  }

  int require_homogeneous(const char* op) const {
    auto deg = homogeneous_degree();
    if (!deg) throw DomainError(std::string(op) + ": input is not homogeneous");
    return *deg;
  }

  /// Calls f(word, coefficient) for every stored term in canonical order.
  template <class F>
  void for_each_term(F&& f) const {
    for (int n = 0; n <= trunc_; ++n) {
      for (const auto& [key, c] : levels_[static_cast<std::size_t>(n)]) f(unpack_word(key, n, dim_), c);
    }
  }

  /// Same polynomial with a different truncation level; terms above it are dropped.
  GradedTensor with_trunc(int trunc) const {
    GradedTensor t(dim_, trunc);
    for (int n = 0; n <= std::min(trunc, trunc_); ++n) t.levels_[static_cast<std::size_t>(n)] = levels_[static_cast<std::size_t>(n)];
    return t;
  }

  /// Equality of the underlying polynomials; truncation levels are not compared.
  friend bool operator==(const GradedTensor& a, const GradedTensor& b) {
    if (a.dim_ != b.dim_) return false;
    int top = std::max(a.trunc_, b.trunc_);
    for (int n = 0; n <= top; ++n) {
      if (a.level(n) != b.level(n)) return false;
    }
    return true;
  }
  friend bool operator!=(const GradedTensor& a, const GradedTensor& b) { return !(a == b); }

  static void normalize(Level& level) {
    std::stable_sort(level.begin(), level.end(),
                     [](const Term& x, const Term& y) { return x.first < y.first; });
    combine_sorted(level);
  }

  /// Like normalize, for a level made of consecutive sorted runs starting at the given offsets.
  static void normalize_runs(Level& level, const std::vector<std::size_t>& starts) {
    auto less = [](const Term& x, const Term& y) { return x.first < y.first; };
    for (std::size_t r = 1; r < starts.size(); ++r) {
      std::size_t end = r + 1 < starts.size() ? starts[r + 1] : level.size();
      std::inplace_merge(level.begin(), level.begin() + static_cast<std::ptrdiff_t>(starts[r]),
                         level.begin() + static_cast<std::ptrdiff_t>(end), less);
    }
    combine_sorted(level);
  }

  /// this += x, consuming x. Truncation becomes the larger of the two.
  GradedTensor& operator+=(GradedTensor&& x) {
    if (x.dim_ != dim_) throw DomainError("add: dimension mismatch");
    if (x.trunc_ > trunc_) {
      trunc_ = x.trunc_;
      levels_.resize(static_cast<std::size_t>(trunc_) + 1);
    }
    for (std::size_t n = 0; n < x.levels_.size(); ++n) {
      Level& a = levels_[n];
      Level& b = x.levels_[n];
      if (b.empty()) continue;
      if (a.empty()) {
        a = std::move(b);
        continue;
      }
      Level out;
      out.reserve(a.size() + b.size());
      std::size_t i = 0, j = 0;
      while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
          out.push_back(std::move(a[i++]));
        } else if (i == a.size() || b[j].first < a[i].first) {
          out.push_back(std::move(b[j++]));
        } else {
          a[i].second += b[j].second;
          if (!Traits::is_zero(a[i].second)) out.push_back(std::move(a[i]));
          ++i;
          ++j;
        }
      }
      a = std::move(out);
    }
    return *this;
  }

  GradedTensor& operator*=(const S& c) {
    for (auto& level : levels_) {
      if (Traits::is_zero(c)) level.clear();
      for (auto& t : level) t.second *= c;
    }
    return *this;
  }

 private:
  static void combine_sorted(Level& level) {
    std::size_t out = 0;
    for (std::size_t i = 0; i < level.size();) {
      WordKey key = level[i].first;
      S acc = std::move(level[i].second);
      std::size_t j = i + 1;
      for (; j < level.size() && level[j].first == key; ++j) acc += level[j].second;
      if (!Traits::is_zero(acc)) level[out++] = Term(key, std::move(acc));
      i = j;
    }
    level.resize(out);
  }

  int dim_;
  int trunc_;
  std::vector<Level> levels_;
};

namespace detail {

template <class S>
void check_same_dim(const GradedTensor<S>& a, const GradedTensor<S>& b, const char* op) {
  if (a.dim() != b.dim()) {
    throw DomainError(std::string(op) + ": dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                      std::to_string(b.dim()) + ")");
  }
}

template <class S, class Combine>
GradedTensor<S> merge(const GradedTensor<S>& a, const GradedTensor<S>& b, Combine combine) {
  using Level = typename GradedTensor<S>::Level;
  int trunc = std::max(a.trunc(), b.trunc());
  std::vector<Level> levels(static_cast<std::size_t>(trunc) + 1);
  for (int n = 0; n <= trunc; ++n) {
    const Level& x = a.level(n);
    const Level& y = b.level(n);
    Level& out = levels[static_cast<std::size_t>(n)];
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    S zero = ScalarTraits<S>::from_int(0);
    while (i < x.size() || j < y.size()) {
      if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
        out.emplace_back(x[i].first, combine(x[i].second, zero));
        ++i;
      } else if (i == x.size() || y[j].first < x[i].first) {
        out.emplace_back(y[j].first, combine(zero, y[j].second));
        ++j;
      } else {
        out.emplace_back(x[i].first, combine(x[i].second, y[j].second));
        ++i;
        ++j;
      }
    }
  }
  return GradedTensor<S>::from_levels(a.dim(), trunc, std::move(levels));
}

}  // namespace detail

template <class S>
GradedTensor<S> operator+(const GradedTensor<S>& a, const GradedTensor<S>& b) {
  detail::check_same_dim(a, b, "add");
  return detail::merge(a, b, [](const S& x, const S& y) { return S(x + y); });
}

template <class S>
GradedTensor<S> operator-(const GradedTensor<S>& a, const GradedTensor<S>& b) {
  detail::check_same_dim(a, b, "subtract");
  return detail::merge(a, b, [](const S& x, const S& y) { return S(x - y); });
}

template <class S>
GradedTensor<S> operator*(const S& c, const GradedTensor<S>& x) {
  using Level = typename GradedTensor<S>::Level;
  std::vector<Level> levels(static_cast<std::size_t>(x.trunc()) + 1);
  for (int n = 0; n <= x.trunc(); ++n) {
    for (const auto& [k, v] : x.level(n)) levels[static_cast<std::size_t>(n)].emplace_back(k, S(c * v));
  }
  return GradedTensor<S>::from_levels(x.dim(), x.trunc(), std::move(levels));
}

template <class S>
GradedTensor<S> operator-(const GradedTensor<S>& x) {
  return ScalarTraits<S>::from_int(-1) * x;
}

/// Re-express coefficients in another scalar mode (exact -> floating, real -> complex).
template <class To, class From>
GradedTensor<To> tensor_cast(const GradedTensor<From>& x) {
  using Level = typename GradedTensor<To>::Level;
  std::vector<Level> levels(static_cast<std::size_t>(x.trunc()) + 1);
  for (int n = 0; n <= x.trunc(); ++n) {
    for (const auto& [k, v] : x.level(n)) levels[static_cast<std::size_t>(n)].emplace_back(k, scalar_cast<To>(v));
  }
  return GradedTensor<To>::from_levels(x.dim(), x.trunc(), std::move(levels));
}

/// Concatenation product truncated at degree N.
template <class S>
GradedTensor<S> tensor_mul(const GradedTensor<S>& a, const GradedTensor<S>& b, int N,
                           const Limits& limits = default_limits()) {
  detail::check_same_dim(a, b, "tensor_mul");
  if (N < 0) throw DomainError("tensor_mul: negative truncation");
  using Level = typename GradedTensor<S>::Level;
  const int d = a.dim();
  std::vector<Level> levels(static_cast<std::size_t>(N) + 1);
  std::size_t produced = 0;
  for (int n = 0; n <= N; ++n) {
    Level& out = levels[static_cast<std::size_t>(n)];
    std::size_t expected = 0;
    for (int i = 0; i <= n; ++i) expected += a.level(i).size() * b.level(n - i).size();
    if (expected == 0) continue;
    produced += expected;
    if (produced > limits.max_terms) {
      throw ResourceError("tensor_mul: term budget of " + std::to_string(limits.max_terms) +
                          " coefficients exceeded at degree " + std::to_string(n));
    }
    out.reserve(expected);
    std::vector<std::size_t> runs;
    for (int i = 0; i <= n; ++i) {
      const Level& x = a.level(i);
      const Level& y = b.level(n - i);
      if (x.empty() || y.empty()) continue;
      runs.push_back(out.size());
      const WordKey shift = pow_dim(d, n - i);
      for (const auto& [ku, cu] : x) {
        for (const auto& [kv, cv] : y) out.emplace_back(ku * shift + kv, S(cu * cv));
      }
    }
    // Each split (i, n-i) yields keys already in increasing order.
    GradedTensor<S>::normalize_runs(out, runs);
  }
  return GradedTensor<S>::from_sorted_levels(d, N, std::move(levels));
}

namespace detail {

template <class S>
S reciprocal(long k) {
  if constexpr (ScalarTraits<S>::exact) {
    return S(Rational(1, static_cast<unsigned long>(k)));
  } else {
    return ScalarTraits<S>::from_int(1) / ScalarTraits<S>::from_int(k);
  }
}

}  // namespace detail

/// sum_{k=0}^{N} x^k / k!, truncated at degree N. Requires a zero degree-0 part.
template <class S>
GradedTensor<S> truncated_exp(const GradedTensor<S>& x, int N, const Limits& limits = default_limits()) {
  if (!x.level(0).empty()) throw DomainError("truncated_exp: degree-0 part must be zero");
  GradedTensor<S> xt = x.with_trunc(N);
  GradedTensor<S> sum = GradedTensor<S>::unit(x.dim(), N);
  GradedTensor<S> term = xt;
  for (int k = 2; k <= N + 1 && !term.is_zero(); ++k) {
    GradedTensor<S> next = k <= N ? tensor_mul(term, xt, N, limits) : GradedTensor<S>(x.dim(), N);
    sum += std::move(term);
    next *= detail::reciprocal<S>(k);
    term = std::move(next);
  }
  return sum;
}

/// sum_{k=1}^{N} (-1)^{k+1} (g-1)^k / k. Requires degree-0 part equal to 1.
template <class S>
GradedTensor<S> truncated_log(const GradedTensor<S>& g, int N, const Limits& limits = default_limits()) {
  using T = ScalarTraits<S>;
  S c0 = g.scalar_part();
  bool unit_ok;
  if constexpr (T::exact) {
    unit_ok = c0 == T::from_int(1);
  } else {
    unit_ok = std::abs(T::to_complex(c0) - Complex(1.0, 0.0)) <= 1e-12;
  }
  if (!unit_ok) throw DomainError("truncated_log: degree-0 part must be 1");
  GradedTensor<S> y = g.with_trunc(N) - GradedTensor<S>::scalar(g.dim(), N, c0);
  GradedTensor<S> sum(g.dim(), N);
  GradedTensor<S> power = y;
  for (int k = 1; k <= N && !power.is_zero(); ++k) {
    GradedTensor<S> next = k < N ? tensor_mul(power, y, N, limits) : GradedTensor<S>(g.dim(), N);
    power *= detail::reciprocal<S>(k);
    if (k % 2 == 0) power *= T::from_int(-1);
    sum += std::move(power);
    power = std::move(next);
  }
  return sum;
}

/// The canonical projection pi_n onto V^{(x)n}.
template <class S>
GradedTensor<S> project(const GradedTensor<S>& x, int n) {
  if (n < 0 || n > x.trunc()) {
    throw DomainError("project: degree " + std::to_string(n) + " outside 0.." + std::to_string(x.trunc()));
  }
  std::vector<typename GradedTensor<S>::Level> levels(static_cast<std::size_t>(x.trunc()) + 1);
  levels[static_cast<std::size_t>(n)] = x.level(n);
  return GradedTensor<S>::from_levels(x.dim(), x.trunc(), std::move(levels));
}

/// Multiplies the degree-n component by lambda^n.
template <class S>
GradedTensor<S> dilate(const GradedTensor<S>& x, const S& lambda) {
  std::vector<typename GradedTensor<S>::Level> levels(static_cast<std::size_t>(x.trunc()) + 1);
  S factor = ScalarTraits<S>::from_int(1);
  for (int n = 0; n <= x.trunc(); ++n) {
    for (const auto& [k, v] : x.level(n)) levels[static_cast<std::size_t>(n)].emplace_back(k, S(factor * v));
    factor = S(factor * lambda);
  }
  return GradedTensor<S>::from_levels(x.dim(), x.trunc(), std::move(levels));
}

/// Sum of absolute coefficient values of a homogeneous tensor (projective norm for l1 on V).
template <class S>
typename ScalarTraits<S>::Real l1_norm(const GradedTensor<S>& x) {
  int n = x.require_homogeneous("l1_norm");
  typename ScalarTraits<S>::Real acc = 0;
  for (const auto& [k, v] : x.level(n)) acc += ScalarTraits<S>::abs(v);
  return acc;
}

/// Squared Hilbert-Schmidt norm, exact in exact mode.
template <class S>
typename ScalarTraits<S>::Real hs_norm_squared(const GradedTensor<S>& x) {
  int n = x.require_homogeneous("hs_norm");
  typename ScalarTraits<S>::Real acc = 0;
  for (const auto& [k, v] : x.level(n)) acc += ScalarTraits<S>::norm2(v);
  return acc;
}

template <class S>
double hs_norm(const GradedTensor<S>& x) {
  return std::sqrt(ScalarTraits<S>::real_to_double(hs_norm_squared(x)));
}

/// Norm of a homogeneous tensor as a double.
template <class S>
double norm(const GradedTensor<S>& x, NormKind which) {
  if (which == NormKind::hs) return hs_norm(x);
  return ScalarTraits<S>::real_to_double(l1_norm(x));
}

/// Coefficientwise inner product <x, y> = sum conj(x_w) y_w over all degrees.
template <class S>
S hs_inner(const GradedTensor<S>& x, const GradedTensor<S>& y) {
  detail::check_same_dim(x, y, "hs_inner");
  S acc = ScalarTraits<S>::from_int(0);
  int top = std::min(x.trunc(), y.trunc());
  for (int n = 0; n <= top; ++n) {
    const auto& a = x.level(n);
    const auto& b = y.level(n);
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i].first < b[j].first) {
        ++i;
      } else if (b[j].first < a[i].first) {
        ++j;
      } else {
        acc += ScalarTraits<S>::conj(a[i].second) * b[j].second;
        ++i;
        ++j;
      }
    }
  }
  return acc;
}

/// alpha(e_{i1}...e_{im}) = (-1)^m e_{im}...e_{i1}, extended linearly.
template <class S>
GradedTensor<S> alpha_involution(const GradedTensor<S>& x) {
  const int d = x.dim();
  std::vector<typename GradedTensor<S>::Level> levels(static_cast<std::size_t>(x.trunc()) + 1);
  for (int n = 0; n <= x.trunc(); ++n) {
    auto& out = levels[static_cast<std::size_t>(n)];
    out.reserve(x.level(n).size());
    for (const auto& [k, v] : x.level(n)) {
      WordKey rev = 0, rest = k;
      for (int j = 0; j < n; ++j) {
        rev = rev * static_cast<WordKey>(d) + rest % static_cast<WordKey>(d);
        rest /= static_cast<WordKey>(d);
      }
      out.emplace_back(rev, n % 2 == 0 ? v : S(-v));
    }
  }
  return GradedTensor<S>::from_levels(d, x.trunc(), std::move(levels));
}

/// Applies a permutation of tensor slots to a homogeneous tensor:
/// the output word has letter w[perm[j]] in slot j.
template <class S>
GradedTensor<S> permute_slots(const GradedTensor<S>& x, const std::vector<int>& perm) {
  int n = x.require_homogeneous("permute_slots");
  if (x.is_zero()) return x;
  if (static_cast<int>(perm.size()) != n) throw DomainError("permute_slots: permutation size mismatch");
  std::vector<std::pair<Word, S>> terms;
  x.for_each_term([&](const Word& w, const S& c) {
    Word p(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) p[j] = w[static_cast<std::size_t>(perm[j])];
    terms.emplace_back(std::move(p), c);
  });
  return GradedTensor<S>::from_terms(x.dim(), x.trunc(), terms);
}

/// Bilinear shuffle product of words, truncated at degree N.
template <class S>
GradedTensor<S> shuffle_mul(const GradedTensor<S>& a, const GradedTensor<S>& b, int N,
                            const Limits& limits = default_limits()) {
  detail::check_same_dim(a, b, "shuffle_mul");
  using Level = typename GradedTensor<S>::Level;
  const int d = a.dim();
  std::vector<Level> levels(static_cast<std::size_t>(N) + 1);
  std::size_t produced = 0;
  for (int p = 0; p <= std::min(N, a.trunc()); ++p) {
    for (int q = 0; p + q <= N && q <= b.trunc(); ++q) {
      const Level& x = a.level(p);
      const Level& y = b.level(q);
      if (x.empty() || y.empty()) continue;
      const int n = p + q;
      if (n > 62) throw ResourceError("shuffle_mul: words longer than 62 letters");
      // Enumerate the p-subsets of {0..n-1} holding the letters of the left word.
      std::vector<std::uint64_t> masks;
      if (p == 0) {
        masks.push_back(0);
      } else {
        std::uint64_t mask = (std::uint64_t{1} << p) - 1;
        const std::uint64_t limit = std::uint64_t{1} << n;
        while (mask < limit) {
          masks.push_back(mask);
          std::uint64_t c = mask & (~mask + 1);
          std::uint64_t r = mask + c;
          mask = (((r ^ mask) >> 2) / c) | r;
        }
      }
      produced += x.size() * y.size() * masks.size();
      if (produced > limits.max_terms) throw ResourceError("shuffle_mul: term budget exceeded");
      Level& out = levels[static_cast<std::size_t>(n)];
      for (const auto& [ku, cu] : x) {
        Word u = unpack_word(ku, p, d);
        for (const auto& [kv, cv] : y) {
          Word v = unpack_word(kv, q, d);
          S c = cu * cv;
          for (std::uint64_t mask : masks) {
            WordKey key = 0;
            std::size_t iu = 0, iv = 0;
            for (int pos = 0; pos < n; ++pos) {
              int letter = (mask >> pos) & 1U ? u[iu++] : v[iv++];
              key = key * static_cast<WordKey>(d) + static_cast<WordKey>(letter - 1);
            }
            out.emplace_back(key, c);
          }
        }
      }
    }
  }
  return GradedTensor<S>::from_levels(d, N, std::move(levels));
}

/// Sign tensor B with B(x) = ||x||_1 and |B_w| <= 1: a norming functional for the
/// l1 (projective) norm of a homogeneous real tensor.
template <class S>
GradedTensor<S> l1_dual_witness(const GradedTensor<S>& x) {
  using T = ScalarTraits<S>;
  x.require_homogeneous("l1_dual_witness");
  std::vector<std::pair<Word, S>> terms;
  x.for_each_term([&](const Word& w, const S& c) {
    if constexpr (T::is_complex) {
      Complex z = T::to_complex(c);
      if constexpr (T::exact) {
        if (sgn(c.im) != 0) throw DomainError("l1_dual_witness: complex coefficients");
        terms.emplace_back(w, S(sgn(c.re)));
      } else {
        if (z.imag() != 0.0) throw DomainError("l1_dual_witness: complex coefficients");
        terms.emplace_back(w, S(z.real() > 0 ? 1.0 : -1.0));
      }
    } else if constexpr (T::exact) {
      terms.emplace_back(w, S(sgn(c)));
    } else {
      terms.emplace_back(w, S(c > 0 ? 1.0 : -1.0));
    }
  });
  return GradedTensor<S>::from_terms(x.dim(), x.trunc(), terms);
}

template <class S>
GradedTensor<S> conj_tensor(const GradedTensor<S>& x) {
  if constexpr (!ScalarTraits<S>::is_complex) {
    return x;
  } else {
    std::vector<typename GradedTensor<S>::Level> levels(static_cast<std::size_t>(x.trunc()) + 1);
    for (int n = 0; n <= x.trunc(); ++n) {
      for (const auto& [k, v] : x.level(n)) levels[static_cast<std::size_t>(n)].emplace_back(k, ScalarTraits<S>::conj(v));
    }
    return GradedTensor<S>::from_levels(x.dim(), x.trunc(), std::move(levels));
  }
}

/// Evaluates the coefficient functional B on x: sum_w B_w x_w (no conjugation).
template <class S>
S apply_functional(const GradedTensor<S>& B, const GradedTensor<S>& x) {
  return hs_inner(conj_tensor(B), x);
}

}  // namespace puresig

#endif
