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

#ifndef PURESIG_HSFREE_HPP
#define PURESIG_HSFREE_HPP
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "puresig/lie.hpp"
#include "puresig/signature.hpp"
#include "puresig/tensor.hpp"

namespace puresig {

/// (1/n!) sum over all orderings of x_1 (x) ... (x) x_n, by literal enumeration (n <= 8).
template <class S>
GradedTensor<S> symmetrized_product(const std::vector<GradedTensor<S>>& args) {
  const int n = static_cast<int>(args.size());
  if (n > 8) throw ResourceError("symmetrized_product: more than 8 arguments");
  if (n == 0) throw DomainError("symmetrized_product: no arguments");
  int deg = 0;
  for (const auto& a : args) deg += a.require_homogeneous("symmetrized_product");
  const int d = args[0].dim();
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  GradedTensor<S> acc(d, deg);
  long count = 0;
  do {
    GradedTensor<S> prod = GradedTensor<S>::unit(d, deg);
    for (int i : idx) prod = tensor_mul(prod, args[static_cast<std::size_t>(i)].with_trunc(deg), deg);
    acc += std::move(prod);
    ++count;
  } while (std::next_permutation(idx.begin(), idx.end()));
  acc *= detail::reciprocal<S>(count);
  return acc;
}

/// RSym(x_1 x k_1, ..., x_r x k_r) = Sym(...) / (k_1! ... k_r!), by the recursion
/// G(c) = (1/|c|) sum_j x_j (x) G(c - e_j) over multiplicity vectors c.
template <class S>
GradedTensor<S> reduced_sym(const std::vector<std::pair<GradedTensor<S>, int>>& spec,
                            const Limits& limits = default_limits()) {
  if (spec.empty()) throw DomainError("reduced_sym: empty argument list");
  const int d = spec[0].first.dim();
  int deg = 0;
  std::vector<int> degs;
  for (const auto& [x, k] : spec) {
    if (k < 0) throw DomainError("reduced_sym: negative multiplicity");
    int dx = x.require_homogeneous("reduced_sym");
    degs.push_back(dx);
    deg += dx * k;
  }
  std::map<std::vector<int>, GradedTensor<S>> memo;
  std::vector<int> zero(spec.size(), 0);
  memo.emplace(zero, GradedTensor<S>::unit(d, deg));
  auto rec = [&](auto&& self, const std::vector<int>& c) -> const GradedTensor<S>& {
    auto it = memo.find(c);
    if (it != memo.end()) return it->second;
    int total = 0, cdeg = 0;
    for (std::size_t j = 0; j < c.size(); ++j) {
      total += c[j];
      cdeg += c[j] * degs[j];
    }
    GradedTensor<S> acc(d, deg);
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (c[j] == 0) continue;
      std::vector<int> prev = c;
      --prev[j];
      const GradedTensor<S>& g = self(self, prev);
      acc += tensor_mul(spec[j].first.with_trunc(deg), g, cdeg, limits).with_trunc(deg);
    }
    acc *= detail::reciprocal<S>(total);
    return memo.emplace(c, std::move(acc)).first->second;
  };
  std::vector<int> full;
  for (const auto& [x, k] : spec) full.push_back(k);
  return rec(rec, full);
}

/// Pairs (x, y) with x, y >= 0 and a x + b y = b k, ordered by x.
inline std::vector<std::pair<int, int>> admissible_pairs(int a, int b, int k) {
  std::vector<std::pair<int, int>> out;
  for (int x = 0; a * x <= b * k; ++x) {
    int rest = b * k - a * x;
    if (rest % b == 0) out.emplace_back(x, rest / b);
  }
  return out;
}

/// Q = sum over x > 0, a x + b y = b k of RSym(l_a x x, l_b x y).
template <class S>
GradedTensor<S> q_remainder(const GradedTensor<S>& la, const GradedTensor<S>& lb, int k,
                            const Limits& limits = default_limits()) {
  int a = la.require_homogeneous("q_remainder");
  int b = lb.require_homogeneous("q_remainder");
  if (!(a >= 1 && a < b)) throw DomainError("q_remainder: need 1 <= deg(l_a) < deg(l_b)");
  if (k < 1) throw DomainError("q_remainder: k must be >= 1");
  GradedTensor<S> Q(la.dim(), b * k);
  for (auto [x, y] : admissible_pairs(a, b, k)) {
    if (x == 0) continue;
    std::vector<std::pair<GradedTensor<S>, int>> spec{{la, x}};
    if (y > 0) spec.emplace_back(lb, y);
    Q += reduced_sym(spec, limits).with_trunc(b * k);
  }
  return Q;
}

struct OrthogonalityRow {
  int k = 0;
  Rational inner;                 // <l_b^{(x)k}, Q>
  bool condition_holds = false;   // (b - a)/gcd(a, b) odd
  double lower_bound = 0.0;       // ||l_b||_hs^k / k!
  double signature_hs = 0.0;      // ||pi_{bk}(exp(l_a + l_b))||_hs
};

struct OrthogonalityReport {
  int a = 0;
  int b = 0;
  bool condition_holds = false;
  std::vector<OrthogonalityRow> rows;

  /// Columns k,inner_product,condition_holds,lower_bound; inner products print exactly.
  void write_csv(std::ostream& os) const {
    os << "k,inner_product,condition_holds,lower_bound\n";
    char buf[64];
    for (const auto& r : rows) {
      std::snprintf(buf, sizeof buf, "%.17g", r.lower_bound);
      os << r.k << "," << r.inner.get_str() << "," << (r.condition_holds ? "true" : "false") << "," << buf << "\n";
    }
  }
};

/// For k = 1..K: <l_b^k, Q> exactly, the parity condition, and the resulting lower bound.
inline OrthogonalityReport orthogonality_check(const GradedTensor<Rational>& la, const GradedTensor<Rational>& lb, int K,
                                               const Limits& limits = default_limits()) {
  int a = la.require_homogeneous("orthogonality_check");
  int b = lb.require_homogeneous("orthogonality_check");
  if (!(a >= 1 && a < b)) throw DomainError("orthogonality_check: need 1 <= deg(l_a) < deg(l_b)");
  if (!dynkin_check(la) || !dynkin_check(lb)) throw DomainError("orthogonality_check: inputs must be Lie elements");
  OrthogonalityReport rep;
  rep.a = a;
  rep.b = b;
  rep.condition_holds = ((b - a) / std::gcd(a, b)) % 2 == 1;
  const double lb_hs = hs_norm(lb);
  GradedTensor<Rational> power = GradedTensor<Rational>::unit(lb.dim(), 0);
  Rational fact(1);
  for (int k = 1; k <= K; ++k) {
    power = tensor_mul(power.with_trunc(b * k), lb.with_trunc(b * k), b * k, limits);
    fact *= k;
    GradedTensor<Rational> Q = q_remainder(la, lb, k, limits);
    OrthogonalityRow row;
    row.k = k;
    row.inner = hs_inner(power, Q);
    row.condition_holds = rep.condition_holds;
    row.lower_bound = std::exp(k * std::log(lb_hs) - std::lgamma(k + 1.0));
    GradedTensor<Rational> sig = Q;
    sig += Rational(1 / fact) * power;
    row.signature_hs = std::exp(0.5 * log_abs(hs_norm_squared(sig)));
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace puresig

#endif
