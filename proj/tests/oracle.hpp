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

// Independent reference implementations used as test oracles. They work on plain
// std::map<Word, Rational> polynomials and share no code with the library kernels.

#ifndef PURESIG_TESTS_ORACLE_HPP
#define PURESIG_TESTS_ORACLE_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "puresig/puresig.hpp"

namespace oracle {

using puresig::Rational;
using puresig::Word;
using Poly = std::map<Word, Rational>;

inline void add_to(Poly& acc, const Word& w, const Rational& c) {
  Rational& s = acc[w];
  s += c;
  if (sgn(s) == 0) acc.erase(w);
}

inline Poly add(const Poly& a, const Poly& b, const Rational& sb = 1) {
  Poly r = a;
  for (const auto& [w, c] : b) add_to(r, w, Rational(sb * c));
  return r;
}

inline Poly scale(const Poly& a, const Rational& s) {
  Poly r;
  for (const auto& [w, c] : a) add_to(r, w, Rational(s * c));
  return r;
}

inline Poly mul(const Poly& a, const Poly& b, int N) {
  Poly r;
  for (const auto& [u, x] : a) {
    for (const auto& [v, y] : b) {
      if (static_cast<int>(u.size() + v.size()) > N) continue;
      Word w = u;
      w.insert(w.end(), v.begin(), v.end());
      add_to(r, w, Rational(x * y));
    }
  }
  return r;
}

inline Poly one() { return Poly{{Word{}, Rational(1)}}; }

inline Poly exp(const Poly& x, int N) {
  Poly sum = one(), term = one();
  for (int k = 1; k <= N; ++k) {
    term = scale(mul(term, x, N), Rational(1, k));
    sum = add(sum, term);
  }
  return sum;
}

inline Poly bracket(const Poly& a, const Poly& b, int N) { return add(mul(a, b, N), mul(b, a, N), -1); }

inline Poly letter(int i) { return Poly{{Word{i}, Rational(1)}}; }

/// Shuffle of two words by the recursive definition ua * vb = (u * vb)a + (ua * v)b.
inline Poly shuffle_words(const Word& a, const Word& b) {
  if (a.empty()) return Poly{{b, Rational(1)}};
  if (b.empty()) return Poly{{a, Rational(1)}};
  Word a1(a.begin(), a.end() - 1), b1(b.begin(), b.end() - 1);
  Poly r;
  for (const auto& [w, c] : shuffle_words(a1, b)) {
    Word x = w;
    x.push_back(a.back());
    add_to(r, x, c);
  }
  for (const auto& [w, c] : shuffle_words(a, b1)) {
    Word x = w;
    x.push_back(b.back());
    add_to(r, x, c);
  }
  return r;
}

/// Counts Lyndon words of length m by brute force: aperiodic words strictly smaller than all
/// their rotations.
inline std::size_t count_lyndon_bruteforce(int d, int m) {
  std::size_t count = 0;
  Word w(static_cast<std::size_t>(m), 1);
  for (;;) {
    bool ok = true;
    for (int r = 1; r < m && ok; ++r) {
      Word rot(w.begin() + r, w.end());
      rot.insert(rot.end(), w.begin(), w.begin() + r);
      if (!(w < rot)) ok = false;
    }
    if (ok) ++count;
    int i = m - 1;
    while (i >= 0 && w[static_cast<std::size_t>(i)] == d) w[static_cast<std::size_t>(i--)] = 1;
    if (i < 0) break;
    ++w[static_cast<std::size_t>(i)];
  }
  return count;
}

template <class S>
Poly from_tensor(const puresig::GradedTensor<S>& x) {
  Poly p;
  x.for_each_term([&](const Word& w, const S& c) { add_to(p, w, Rational(c)); });
  return p;
}

inline puresig::GradedTensor<Rational> to_tensor(const Poly& p, int d, int N) {
  std::vector<std::pair<Word, Rational>> terms(p.begin(), p.end());
  return puresig::GradedTensor<Rational>::from_terms(d, N, terms);
}

/// Random sparse tensor with small rational coefficients; degree-0 part optional.
inline puresig::GradedTensor<Rational> random_tensor(std::mt19937_64& rng, int d, int N, int terms, int min_deg = 0,
                                                     int max_deg = -1) {
  if (max_deg < 0) max_deg = N;
  std::uniform_int_distribution<int> deg(min_deg, max_deg), let(1, d), num(-5, 5), den(1, 4);
  std::vector<std::pair<Word, Rational>> t;
  for (int i = 0; i < terms; ++i) {
    int n = deg(rng);
    Word w;
    for (int j = 0; j < n; ++j) w.push_back(let(rng));
    Rational c(num(rng), den(rng));
    c.canonicalize();
    t.emplace_back(w, c);
  }
  return puresig::GradedTensor<Rational>::from_terms(d, N, t);
}

inline puresig::GradedTensor<Rational> random_homogeneous(std::mt19937_64& rng, int d, int n, int terms) {
  return random_tensor(rng, d, n, terms, n, n);
}

}  // namespace oracle

#endif
