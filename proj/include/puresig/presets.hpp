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

#ifndef PURESIG_PRESETS_HPP
#define PURESIG_PRESETS_HPP
#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "puresig/develop.hpp"
#include "puresig/lie.hpp"

namespace puresig {

/// A ready-made development for degree m together with the Hall elements it targets.
struct Preset {
  std::string name;
  int m = 0;
  std::vector<int> signs;                      // sign of each coefficient c_i
  std::vector<BracketTree> elements;           // h_1, h_2, ...
  Development dev;
  double expected_ratio = 1.0;                 // eigen bound / ||pi_m l|| for l = sum sign_i h_i
  std::vector<std::vector<Complex>> params;    // per-letter parameters (empty for raw matrices)

  /// sum_i sign_i h_i, truncated at m.
  GradedTensor<Rational> default_lie() const {
    GradedTensor<Rational> l(2, m);
    for (std::size_t i = 0; i < elements.size(); ++i) {
      l = l + Rational(signs.at(i)) * expand_bracket(elements[i], 2);
    }
    return l;
  }
};

inline std::vector<int> parse_signs(const std::string& s, std::size_t count) {
  std::vector<int> out;
  for (char c : s) {
    if (c == '+') out.push_back(1);
    else if (c == '-') out.push_back(-1);
    else throw DomainError("signs must consist of '+' and '-'");
  }
  if (out.empty()) out.assign(count, 1);
  if (out.size() != count) throw DomainError("expected " + std::to_string(count) + " signs, got '" + s + "'");
  return out;
}

inline std::vector<std::string> preset_names() { return {"deg2", "deg3", "deg4_so5", "deg4_sharp"}; }

namespace detail {

inline std::vector<std::vector<Complex>> to_complex_params(const std::vector<std::vector<GaussRational>>& p) {
  std::vector<std::vector<Complex>> out;
  for (const auto& v : p) {
    out.emplace_back();
    for (const auto& z : v) out.back().push_back(ScalarTraits<GaussRational>::to_complex(z));
  }
  return out;
}

}  // namespace detail

/// deg2 (1 sign), deg3 (2 signs), deg4_so5 (3 signs, c1*c2 > 0), deg4_sharp (2 signs, c3 = 0).
inline Preset preset_development(const std::string& name, const std::string& signs_text = "") {
  using G = GaussRational;
  auto e1 = BracketTree::leaf(1), e2 = BracketTree::leaf(2);
  auto b12 = BracketTree::bracket(e1, e2);
  Preset p;
  p.name = name;
  if (name == "deg2") {
    p.m = 2;
    p.signs = parse_signs(signs_text, 1);
    p.elements = {b12};
    int s = p.signs[0];
    std::vector<std::vector<G>> par{{G(1), G(1)}, {G(-s), G(s)}};
    p.dev = sl_cyclic_embedding<G>(2, par, WNorm::l1);
    p.params = detail::to_complex_params(par);
    return p;
  }
  if (name == "deg3") {
    p.m = 3;
    p.signs = parse_signs(signs_text, 2);
    p.elements = {BracketTree::bracket(e1, b12), BracketTree::bracket(b12, e2)};
    // (+,+): a=(1,1,-1), b=(-1,1,1). p_1 is linear in b and p_2 linear in a, so negating b
    // flips c_1 and negating a flips c_2.
    long sa = p.signs[1], sb = p.signs[0];
    std::vector<std::vector<G>> par{{G(sa), G(sa), G(-sa)}, {G(-sb), G(sb), G(sb)}};
    p.dev = sl_cyclic_embedding<G>(3, par, WNorm::l1);
    p.params = detail::to_complex_params(par);
    return p;
  }
  if (name == "deg4_so5") {
    p.m = 4;
    p.signs = parse_signs(signs_text, 3);
    p.elements = deg4_reference_elements();
    p.expected_ratio = 5.0 / 32.0;
    const int s1 = p.signs[0], s2 = p.signs[1], s3 = p.signs[2];
    if (s1 != s2) {
      throw DomainError("deg4_so5: no explicit development for c1*c2 < 0");
    }
    // a -> w a, b -> v b multiplies mu(F(h_i)) by w^3 v, w v^3, w^2 v^2. Pick t = w v with
    // t^2 = s3, then w^2 = s1 / t and v^2 = s2 / t.
    const Complex t = s3 > 0 ? Complex(1.0, 0.0) : Complex(0.0, 1.0);
    Complex w = std::sqrt(Complex(s1, 0.0) / t);
    Complex v = std::sqrt(Complex(s2, 0.0) / t);
    if (std::abs(w * v - t) > 1e-12) v = -v;
    const double s = std::pow(10.0, -0.25);
    std::vector<Complex> a{w * (2.0 * s), w * (0.5 * s), w * (0.5 * s)};
    std::vector<Complex> b{v * (-s), v * s, v * s};
    p.dev = so5_embedding(a, b);
    p.params = {a, b};
    return p;
  }
  if (name == "deg4_sharp") {
    p.m = 4;
    p.signs = parse_signs(signs_text, 2);
    auto h = deg4_reference_elements();
    p.elements = {h[0], h[1]};
    ExactMatrix A = ExactMatrix::from_rows({{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 0, 0, 0}});
    ExactMatrix B = ExactMatrix::from_rows({{0, 1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}});
    if (p.signs[0] * p.signs[1] > 0) {
      p.dev = from_exact_matrices({A, B}, WNorm::l1);
    } else {
      const Complex pa = std::polar(1.0, 5.0 * M_PI / 8.0), pb = std::polar(1.0, M_PI / 8.0);
      p.dev = from_matrices({pa * A.to_complex(), pb * B.to_complex()}, WNorm::l1);
    }
    return p;
  }
  throw DomainError("unknown preset '" + name + "' (expected deg2, deg3, deg4_so5 or deg4_sharp)");
}

/// The so(5) development at unit scale (a1 = 2, a2 = a3 = 1/2, b1 = -1, b2 = b3 = 1) in exact
/// arithmetic. Phi(h) is homogeneous of degree 4 in the parameters, so Cartan membership is
/// the same as at the optimal scale.
inline Development so5_unit_scale_exact() {
  using G = GaussRational;
  return so5_embedding_exact({G(2), G(Rational(1, 2)), G(Rational(1, 2))}, {G(-1), G(1), G(1)});
}

}  // namespace puresig

#endif
