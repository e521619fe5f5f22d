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

#ifndef PURESIG_SIGNATURE_HPP
#define PURESIG_SIGNATURE_HPP
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "puresig/tensor.hpp"

namespace puresig {

/// Natural log of a homogeneous tensor's norm; -inf for zero. Exact inputs are logged
/// without first rounding the (possibly huge or tiny) rational norm to double.
template <class S>
double log_norm(const GradedTensor<S>& x, NormKind kind) {
  using T = ScalarTraits<S>;
  if (x.is_zero()) return -std::numeric_limits<double>::infinity();
  if constexpr (T::exact) {
    if (kind == NormKind::l1) return log_abs(l1_norm(x));
    return 0.5 * log_abs(hs_norm_squared(x));
  } else {
    return std::log(norm(x, kind));
  }
}

/// l^{(x)k} truncated at degree N, for k = 0..N (index k).
template <class S>
std::vector<GradedTensor<S>> tensor_powers(const GradedTensor<S>& l, int N, const Limits& limits = default_limits()) {
  std::vector<GradedTensor<S>> out;
  GradedTensor<S> x = l.with_trunc(N);
  out.push_back(GradedTensor<S>::unit(l.dim(), N));
  for (int k = 1; k <= N; ++k) out.push_back(tensor_mul(out.back(), x, N, limits));
  return out;
}

/// Signature of the pure path exp(t l) over [0,1], truncated at degree N.
template <class S>
GradedTensor<S> signature(const GradedTensor<S>& l, int N, const Limits& limits = default_limits()) {
  return truncated_exp(l, N, limits);
}

/// pi_n(exp(l)).
template <class S>
GradedTensor<S> signature_component(const GradedTensor<S>& l, int n, const Limits& limits = default_limits()) {
  if (n < 0) throw DomainError("signature_component: negative degree");
  return project(truncated_exp(l, n, limits), n);
}

struct TailRow {
  int n = 0;
  double norm = 0.0;
  double t = 0.0;
};

struct TailReport {
  int m = 1;
  int N = 0;
  int N0 = 0;
  NormKind kind = NormKind::l1;
  std::vector<TailRow> rows;  // n = 1..N
  double window_sup = 0.0;

  /// CSV with columns n,norm,t_n,window_sup; window_sup is the running sup over [N0, n].
  void write_csv(std::ostream& os) const {
    os << "n,norm,t_n,window_sup\n";
    double sup = 0.0;
    char buf[128];
    for (const auto& r : rows) {
      std::string ws;
      if (r.n >= N0) {
        sup = std::max(sup, r.t);
        std::snprintf(buf, sizeof buf, "%.17g", sup);
        ws = buf;
      }
      std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,", r.n, r.norm, r.t);
      os << buf << ws << "\n";
    }
  }
};

/// t_n = ((n/m)! ||X^n||)^{m/n}, with (n/m)! = Gamma(n/m + 1).
inline double normalized_tail(double log_norm_value, int n, int m) {
  if (std::isinf(log_norm_value)) return 0.0;
  double q = static_cast<double>(n) / m;
  return std::exp((std::lgamma(q + 1.0) + log_norm_value) / q);
}

template <class S>
TailReport tail_sequence(const GradedTensor<S>& l, int m, int N, NormKind kind, int N0 = -1,
                         const Limits& limits = default_limits()) {
  if (m < 1) throw DomainError("tail_sequence: m must be >= 1");
  if (N < 1) throw DomainError("tail_sequence: N must be >= 1");
  if (N0 < 0) N0 = (N + 1) / 2;
  if (N0 > N) throw DomainError("tail_sequence: N0 must not exceed N");
  TailReport rep;
  rep.m = m;
  rep.N = N;
  rep.N0 = N0;
  rep.kind = kind;
  GradedTensor<S> X = truncated_exp(l, N, limits);
  for (int n = 1; n <= N; ++n) {
    GradedTensor<S> Xn = project(X, n);
    double ln = log_norm(Xn, kind);
    TailRow row;
    row.n = n;
    row.norm = std::exp(ln);
    if constexpr (ScalarTraits<S>::exact) {
      if (n % m == 0 && !Xn.is_zero()) {
        // Exact (n/m)! times exact norm, rooted in floating point.
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n / m));
        double lf = log_abs(Rational(f));
        row.t = std::exp((lf + ln) * m / n);
      } else {
        row.t = normalized_tail(ln, n, m);
      }
    } else {
      row.t = normalized_tail(ln, n, m);
    }
    if (n >= N0) rep.window_sup = std::max(rep.window_sup, row.t);
    rep.rows.push_back(row);
  }
  return rep;
}

namespace detail {

// Calls f(k) for every composition k_1+...+k_parts = n with k_i >= 0.
inline void for_each_composition(int n, int parts, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> k(static_cast<std::size_t>(parts), 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == parts - 1) {
      k[static_cast<std::size_t>(i)] = left;
      f(k);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      k[static_cast<std::size_t>(i)] = v;
      rec(i + 1, left - v);
    }
  };
  if (parts >= 1) rec(0, n);
}

// log(a^{k/r} / Gamma(k/r + 1)) with 0^0 = 1; -inf when a = 0 < k.
inline double log_term(double a, int k, int r) {
  if (k == 0) return 0.0;
  if (a <= 0.0) return -std::numeric_limits<double>::infinity();
  double q = static_cast<double>(k) / r;
  return q * std::log(a) - std::lgamma(q + 1.0);
}

inline double log_sum_exp(const std::vector<double>& xs) {
  double mx = -std::numeric_limits<double>::infinity();
  for (double x : xs) mx = std::max(mx, x);
  if (std::isinf(mx)) return mx;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - mx);
  return mx + std::log(s);
}

}  // namespace detail

/// Sum over k_1+...+k_m = n of prod_r ||l_r||^{k_r/r} / (k_r/r)!, where l_r = pi_r(l).
/// Non-multiples k_r of r are included; they only enlarge the bound.
template <class S>
double upper_bound_series(const GradedTensor<S>& l, int m, int n, NormKind kind) {
  if (m < 1) throw DomainError("upper_bound_series: m must be >= 1");
  if (l.max_degree() > m) throw DomainError("upper_bound_series: l has components above degree m");
  std::vector<double> a(static_cast<std::size_t>(m));
  for (int r = 1; r <= m; ++r) a[static_cast<std::size_t>(r - 1)] = r <= l.trunc() ? norm(project(l, r), kind) : 0.0;
  std::vector<double> logs;
  detail::for_each_composition(n, m, [&](const std::vector<int>& k) {
    double s = 0.0;
    for (int r = 1; r <= m; ++r) s += detail::log_term(a[static_cast<std::size_t>(r - 1)], k[static_cast<std::size_t>(r - 1)], r);
    logs.push_back(s);
  });
  return std::exp(detail::log_sum_exp(logs));
}

struct NeoclassicalResult {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// sum over k_1+..+k_m = n of prod a_i^{k_i/p}/(k_i/p)!  <=  p^{m-1} (sum a)^{n/p} / (n/p)!.
inline NeoclassicalResult neoclassical_check(const std::vector<double>& a, double p, int n) {
  if (a.empty()) throw DomainError("neoclassical_check: need at least one a_i");
  if (p < 1.0) throw DomainError("neoclassical_check: need p >= 1");
  double total = 0.0;
  for (double x : a) {
    if (!(x > 0.0)) throw DomainError("neoclassical_check: a_i must be positive");
    total += x;
  }
  const int m = static_cast<int>(a.size());
  double lhs = 0.0;
  detail::for_each_composition(n, m, [&](const std::vector<int>& k) {
    double s = 0.0;
    for (int i = 0; i < m; ++i) {
      double q = k[static_cast<std::size_t>(i)] / p;
      s += q * std::log(a[static_cast<std::size_t>(i)]) - std::lgamma(q + 1.0);
    }
    lhs += std::exp(s);
  });
  double q = n / p;
  double rhs = std::pow(p, m - 1) * std::exp(q * std::log(total) - std::lgamma(q + 1.0));
  return {lhs, rhs, lhs <= rhs * (1.0 + 1e-12)};
}

enum class VariationAggregate { sum, max };

/// For j = 0..J with 2^j uniform intervals of [0,1]:
///   sum (or max) over k=1..m of ( sum_i ||pi_k X_{t_{i-1},t_i}||^{m/k} )^{k/m}.
/// Increments of a pure path are all equal to exp(2^{-j} l).
template <class S>
std::vector<double> local_variation(const GradedTensor<S>& l, int m, int J, NormKind kind = NormKind::l1,
                                    VariationAggregate agg = VariationAggregate::sum) {
  if (m < 1) throw DomainError("local_variation: m must be >= 1");
  if (J < 0 || J > 60) throw DomainError("local_variation: J must be in 0..60");
  GradedTensor<Complex> lc = tensor_cast<Complex>(l);
  std::vector<double> out;
  for (int j = 0; j <= J; ++j) {
    double h = std::ldexp(1.0, -j);
    GradedTensor<Complex> X = truncated_exp(Complex(h, 0.0) * lc, m);
    double value = 0.0;
    for (int k = 1; k <= m; ++k) {
      double nk = norm(project(X, k), kind);
      // (2^j * nk^{m/k})^{k/m} = 2^{jk/m} * nk
      double part = nk == 0.0 ? 0.0 : std::exp(j * std::log(2.0) * k / m + std::log(nk));
      value = agg == VariationAggregate::sum ? value + part : std::max(value, part);
    }
    out.push_back(value);
  }
  return out;
}

}  // namespace puresig

#endif
