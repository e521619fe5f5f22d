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

#ifndef PURESIG_WORD_HPP
#define PURESIG_WORD_HPP
#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "puresig/errors.hpp"

namespace puresig {

/// A word e_{i1} ... e_{in}; letters are 1-based, the empty word is the unit.
using Word = std::vector<int>;

/// Words of a fixed length packed as base-d integers, most significant letter first,
/// so numeric order on keys of equal length is lexicographic order on words.
using WordKey = std::uint64_t;

/// d^n, or ResourceError if words of length n over d letters cannot be packed.
inline WordKey pow_dim(int d, int n) {
  WordKey r = 1;
  for (int i = 0; i < n; ++i) {
    if (r > std::numeric_limits<WordKey>::max() / static_cast<WordKey>(d)) {
      throw ResourceError("words of length " + std::to_string(n) + " over " + std::to_string(d) +
                          " letters exceed the 64-bit word key");
    }
    r *= static_cast<WordKey>(d);
  }
  return r;
}

inline WordKey pack_word(const Word& w, int d) {
  (void)pow_dim(d, static_cast<int>(w.size()));
  WordKey key = 0;
  for (int letter : w) {
    if (letter < 1 || letter > d) {
      throw DomainError("letter e" + std::to_string(letter) + " outside 1.." + std::to_string(d));
    }
    key = key * static_cast<WordKey>(d) + static_cast<WordKey>(letter - 1);
  }
  return key;
}

inline Word unpack_word(WordKey key, int degree, int d) {
  Word w(static_cast<std::size_t>(degree));
  for (int j = degree - 1; j >= 0; --j) {
    w[static_cast<std::size_t>(j)] = static_cast<int>(key % static_cast<WordKey>(d)) + 1;
    key /= static_cast<WordKey>(d);
  }
  return w;
}

inline std::string word_to_string(const Word& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(w[i]);
  }
  return s + ")";
}

}  // namespace puresig

#endif
