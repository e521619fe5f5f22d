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

#ifndef PURESIG_LIE_PARSE_HPP
#define PURESIG_LIE_PARSE_HPP
#pragma once

#include <cctype>
#include <map>
#include <string>
#include <string_view>

#include "puresig/lie.hpp"

namespace puresig {

namespace detail {

// Noncommutative polynomial used only while parsing.
using WordPoly = std::map<Word, Rational>;

inline void poly_add(WordPoly& acc, const WordPoly& x, const Rational& s) {
  for (const auto& [w, c] : x) {
    Rational& slot = acc[w];
    slot += s * c;
    if (sgn(slot) == 0) acc.erase(w);
  }
}

inline WordPoly poly_commutator(const WordPoly& x, const WordPoly& y) {
  WordPoly out;
  for (const auto& [u, a] : x) {
    for (const auto& [v, b] : y) {
      Word uv = u, vu = v;
      uv.insert(uv.end(), v.begin(), v.end());
      vu.insert(vu.end(), u.begin(), u.end());
      poly_add(out, WordPoly{{uv, Rational(1)}}, Rational(a * b));
      poly_add(out, WordPoly{{vu, Rational(1)}}, Rational(-a * b));
    }
  }
  return out;
}

class LieParser {
 public:
  explicit LieParser(std::string_view text) : s_(text) {}

  WordPoly parse() {
    WordPoly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw DomainError("Lie expression: " + msg + " at position " + std::to_string(pos_) + " in '" +
                      std::string(s_) + "'");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  WordPoly expr() {
    WordPoly acc;
    Rational sign(1);
    skip();
    if (accept('-')) sign = -1;
    else accept('+');
    for (;;) {
      poly_add(acc, term(), sign);
      if (accept('+')) sign = 1;
      else if (accept('-')) sign = -1;
      else break;
    }
    return acc;
  }

  WordPoly term() {
    skip();
    Rational coef(1);
    bool have_coef = false;
    if (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
      coef = number();
      have_coef = true;
      accept('*');
    }
    skip();
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == '[' || s_[pos_] == '(')) {
      WordPoly a = atom();
      WordPoly out;
      poly_add(out, a, coef);
      return out;
    }
    if (have_coef) fail("constant terms are not Lie elements");
    fail("expected a letter, bracket or coefficient");
  }

  Rational number() {
    std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      digits();
    } else {
      if (pos_ < s_.size() && s_[pos_] == '.') {
        ++pos_;
        digits();
      }
      // Exponent only when followed by a digit, so "2e1" stays ambiguous-free: 2*e1 needs '*'.
      if (pos_ + 1 < s_.size() && (s_[pos_] == 'E' || (s_[pos_] == 'e' && s_[pos_ + 1] != '\0' &&
                                                      (s_[pos_ + 1] == '-' || s_[pos_ + 1] == '+')))) {
        pos_ += 2;
        digits();
      }
    }
    try {
      return parse_rational(s_.substr(start, pos_ - start));
    } catch (const Error&) {
      fail("bad coefficient");
    }
  }

  WordPoly atom() {
    skip();
    if (accept('(')) {
      WordPoly p = expr();
      expect(')');
      return p;
    }
    if (accept('[')) {
      WordPoly l = expr();
      expect(',');
      WordPoly r = expr();
      expect(']');
      return poly_commutator(l, r);
    }
    if (accept('e')) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("letter index expected after 'e'");
      int k = std::stoi(std::string(s_.substr(start, pos_ - start)));
      if (k < 1) fail("letter index must be >= 1");
      return WordPoly{{Word{k}, Rational(1)}};
    }
    fail("expected atom");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses e.g. "e1 + 1/2*[e1,e2]" into a tensor. d = 0 infers max(2, largest letter);
/// trunc = -1 uses the highest degree present.
inline GradedTensor<Rational> parse_lie_tensor(std::string_view text, int d = 0, int trunc = -1) {
  detail::WordPoly p = detail::LieParser(text).parse();
  int max_letter = 0, max_deg = 1;
  for (const auto& [w, c] : p) {
    for (int x : w) max_letter = std::max(max_letter, x);
    max_deg = std::max(max_deg, static_cast<int>(w.size()));
  }
  if (d == 0) d = std::max(2, max_letter);
  if (max_letter > d) throw DomainError("Lie expression uses e" + std::to_string(max_letter) + " but d=" + std::to_string(d));
  if (trunc < 0) trunc = max_deg;
  std::vector<std::pair<Word, Rational>> terms;
  for (const auto& [w, c] : p) {
    if (static_cast<int>(w.size()) <= trunc) terms.emplace_back(w, c);
  }
  return GradedTensor<Rational>::from_terms(d, trunc, terms);
}

inline LiePoly parse_lie(std::string_view text, int d = 0) {
  return LiePoly::from_tensor(parse_lie_tensor(text, d));
}

}  // namespace puresig

#endif
