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

#ifndef PURESIG_TENSOR_JSON_HPP
#define PURESIG_TENSOR_JSON_HPP
#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "puresig/tensor.hpp"

namespace puresig {

namespace detail {

inline nlohmann::json rational_json(const Rational& q) { return q.get_str(); }

inline Rational json_rational(const nlohmann::json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw DomainError("exact tensor JSON: coefficient must be a \"p/q\" string");
}

inline double json_double(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_rational(j.get<std::string>()).get_d();
  throw DomainError("tensor JSON: coefficient must be a number");
}

}  // namespace detail

/// Canonical JSON form: {"dim","trunc","terms":[{"word":[...],"re":..,"im":..}]}, terms in
/// (degree, lexicographic) order. "im" is written only for complex scalar modes.
template <class S>
nlohmann::json to_json(const GradedTensor<S>& x) {
  nlohmann::json terms = nlohmann::json::array();
  x.for_each_term([&](const Word& w, const S& c) {
    nlohmann::json t;
    t["word"] = w;
    if constexpr (std::is_same_v<S, Rational>) {
      t["re"] = detail::rational_json(c);
    } else if constexpr (std::is_same_v<S, GaussRational>) {
      t["re"] = detail::rational_json(c.re);
      t["im"] = detail::rational_json(c.im);
    } else if constexpr (std::is_same_v<S, Complex>) {
      t["re"] = c.real();
      t["im"] = c.imag();
    } else {
      t["re"] = c;
    }
    terms.push_back(std::move(t));
  });
  nlohmann::json j;
  j["dim"] = x.dim();
  j["trunc"] = x.trunc();
  j["terms"] = std::move(terms);
  return j;
}

template <class S>
GradedTensor<S> tensor_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("trunc") || !j.contains("terms")) {
    throw DomainError("tensor JSON: expected keys dim, trunc, terms");
  }
  std::vector<std::pair<Word, S>> terms;
  for (const auto& t : j.at("terms")) {
    Word w = t.at("word").get<Word>();
    S c;
    if constexpr (std::is_same_v<S, Rational>) {
      if (t.contains("im") && sgn(detail::json_rational(t["im"])) != 0) {
        throw DomainError("tensor JSON: complex coefficient in real exact mode");
      }
      c = detail::json_rational(t.at("re"));
    } else if constexpr (std::is_same_v<S, GaussRational>) {
      c = GaussRational(detail::json_rational(t.at("re")),
                        t.contains("im") ? detail::json_rational(t["im"]) : Rational(0));
    } else if constexpr (std::is_same_v<S, Complex>) {
      c = Complex(detail::json_double(t.at("re")), t.contains("im") ? detail::json_double(t["im"]) : 0.0);
    } else {
      c = detail::json_double(t.at("re"));
    }
    terms.emplace_back(std::move(w), std::move(c));
  }
  return GradedTensor<S>::from_terms(j.at("dim").get<int>(), j.at("trunc").get<int>(), terms);
}

template <class S>
std::string serialize(const GradedTensor<S>& x) {
  return to_json(x).dump();
}

template <class S>
GradedTensor<S> parse_tensor(const std::string& text) {
  try {
    return tensor_from_json<S>(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("tensor JSON: ") + e.what());
  }
}

}  // namespace puresig

#endif
