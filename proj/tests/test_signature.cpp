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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "puresig/puresig.hpp"

using namespace puresig;
using RT = GradedTensor<Rational>;

namespace {

RT lie(const char* s, int trunc = -1) { return parse_lie_tensor(s, 2, trunc); }

Rational factorial(int n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(f);
}

}  // namespace

TEST(Signature, HomogeneousComponents) {
  RT l = Rational(3, 2) * lie("[e1,e2]", 8);
  RT lk = RT::unit(2, 8);
  for (int n = 0; n <= 8; ++n) {
    RT x = signature_component(l, n);
    if (n % 2 == 1) {
      EXPECT_TRUE(x.is_zero());
      continue;
    }
    if (n > 0) lk = tensor_mul(lk, l, 8);
    EXPECT_EQ(x, Rational(1 / factorial(n / 2)) * project(lk, n)) << n;
  }
}

TEST(Signature, SecondComponentHandExpansion) {
  RT x = signature_component(lie("e1 + [e1,e2]"), 2);
  EXPECT_EQ(x, RT::from_terms(2, 2, {{{1, 1}, Rational(1, 2)}, {{1, 2}, 1}, {{2, 1}, -1}}));
}

TEST(Signature, ZeroPath) {
  RT zero(2, 3);
  for (int n = 1; n <= 5; ++n) EXPECT_TRUE(signature_component(zero, n).is_zero());
  EXPECT_EQ(signature_component(zero, 0), RT::unit(2, 0));
}

TEST(Signature, TailOfHomogeneousPathIsConstant) {
  TailReport r = tail_sequence(lie("[e1,e2]"), 2, 16, NormKind::l1);
  ASSERT_EQ(r.rows.size(), 16u);
  for (const auto& row : r.rows) {
    if (row.n % 2 == 0) EXPECT_NEAR(row.t, 2.0, 1e-12) << row.n;
    else EXPECT_EQ(row.t, 0.0);
  }
  EXPECT_NEAR(r.window_sup, 2.0, 1e-12);
  EXPECT_EQ(r.N0, 8);
}

TEST(Signature, TailOfLineSegment) {
  TailReport r = tail_sequence(RT::letter(2, 1, 1), 1, 12, NormKind::hs);
  for (const auto& row : r.rows) EXPECT_NEAR(row.t, 1.0, 1e-12) << row.n;
}

TEST(Signature, TailDisjointSupportLowerBound) {
  TailReport r = tail_sequence(lie("e1 + [e1,e2]"), 2, 12, NormKind::l1);
  for (const auto& row : r.rows) {
    if (row.n % 2 == 0) {
      EXPECT_GE(row.t, 2.0 - 1e-12) << row.n;
    }
  }
}

TEST(Signature, TailCsvShape) {
  TailReport r = tail_sequence(lie("[e1,e2]"), 2, 4, NormKind::l1, 3);
  std::ostringstream os;
  r.write_csv(os);
  std::string s = os.str();
  EXPECT_EQ(s.substr(0, s.find('\n')), "n,norm,t_n,window_sup");
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 5);
  EXPECT_NE(s.find("\n2,2,2,\n"), std::string::npos);
  EXPECT_NE(s.find("\n4,2,2,2\n"), std::string::npos);
}

TEST(Signature, TailErrors) {
  EXPECT_THROW(tail_sequence(lie("[e1,e2]"), 2, 4, NormKind::l1, 5), DomainError);
  EXPECT_THROW(tail_sequence(lie("[e1,e2]"), 0, 4, NormKind::l1), DomainError);
  Limits tight;
  tight.max_terms = 1000;
  EXPECT_THROW(tail_sequence(lie("e1 + e2"), 1, 14, NormKind::l1, -1, tight), ResourceError);
}

TEST(Signature, UpperBoundExamples) {
  for (int n = 1; n <= 8; ++n) {
    EXPECT_NEAR(upper_bound_series(RT::letter(2, 1, 1), 1, n, NormKind::l1), 1.0 / std::tgamma(n + 1.0), 1e-14);
  }
  // Odd k2 compositions add to the sum, so the m=2 homogeneous bound is at least 2^k/k!.
  for (int k = 1; k <= 5; ++k) {
    double b = upper_bound_series(lie("[e1,e2]"), 2, 2 * k, NormKind::l1);
    double single = std::pow(2.0, k) / std::tgamma(k + 1.0);
    EXPECT_GE(b, single * (1 - 1e-14));
  }
  double expect = 0.0;
  for (int k1 = 0; k1 <= 4; ++k1) {
    int k2 = 4 - k1;
    expect += std::pow(2.0, k2 / 2.0) / (std::tgamma(k1 + 1.0) * std::tgamma(k2 / 2.0 + 1.0));
  }
  RT l = lie("e1 + [e1,e2]");
  EXPECT_NEAR(upper_bound_series(l, 2, 4, NormKind::l1), expect, 1e-12);
  EXPECT_GE(upper_bound_series(l, 2, 4, NormKind::l1), l1_norm(signature_component(l, 4)).get_d());
  EXPECT_THROW(upper_bound_series(lie("[e1,[e1,e2]]"), 2, 4, NormKind::l1), DomainError);
}

TEST(SignatureProperty, Dominance) {
  for (const char* s : {"e1 + [e1,e2]", "e1 + e2 + [e1,e2]", "e2 - 1/3*[e1,e2]"}) {
    RT l = lie(s);
    RT X = signature(l, 12);
    for (NormKind k : {NormKind::l1, NormKind::hs}) {
      for (int n = 1; n <= 12; ++n) {
        EXPECT_LE(norm(project(X, n), k), upper_bound_series(l, 2, n, k) * (1 + 1e-12)) << s << " " << n;
      }
    }
  }
}

TEST(SignatureProperty, ChenIdentity) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
  RT l = lie("e1 + e2 + [e1,e2]", 7);
  for (int trial = 0; trial < 8; ++trial) {
    Rational s(num(rng), den(rng)), t(num(rng), den(rng));
    s.canonicalize();
    t.canonicalize();
    RT lhs = tensor_mul(signature(s * l, 7), signature(Rational(t - s) * l, 7), 7);
    EXPECT_EQ(lhs, signature(t * l, 7));
  }
}

TEST(SignatureProperty, DisjointSupportIdentity) {
  RT l = lie("e1 + [e1,e2]", 20);
  auto powers = tensor_powers(l, 20);
  RT X = signature(l, 20);
  for (int n = 1; n <= 10; ++n) {
    Rational lhs = factorial(n) * l1_norm(project(X, 2 * n));
    Rational rhs = 0;
    for (int k = n; k <= 2 * n; ++k) rhs += factorial(n) / factorial(k) * l1_norm(project(powers[static_cast<std::size_t>(k)], 2 * n));
    EXPECT_EQ(lhs, rhs) << n;
    EXPECT_GE(lhs, Rational(mpz_class(1) << n)) << n;
  }
}

TEST(SignatureProperty, GroupLikeOnShortWords) {
  RT l = lie("e1 - 2*e2 + 1/2*[e1,e2]", 6);
  RT g = signature(l, 6);
  for (int p = 0; p <= 3; ++p) {
    for (int q = 0; p + q <= 6; ++q) {
      for (WordKey a = 0; a < pow_dim(2, p); ++a) {
        for (WordKey b = 0; b < pow_dim(2, q); ++b) {
          Word u = unpack_word(a, p, 2), v = unpack_word(b, q, 2);
          RT sh = shuffle_mul(RT::from_terms(2, p + q, {{u, 1}}), RT::from_terms(2, p + q, {{v, 1}}), p + q);
          EXPECT_EQ(apply_functional(sh, g), g.coeff(u) * g.coeff(v));
        }
      }
    }
  }
}

TEST(Signature, LocalVariationExamples) {
  auto v = local_variation(lie("[e1,e2]"), 2, 12);
  for (double x : v) EXPECT_NEAR(x, 2.0, 1e-12);
  auto w = local_variation(RT::letter(2, 1, 1), 1, 12);
  for (double x : w) EXPECT_NEAR(x, 1.0, 1e-12);
}

TEST(Signature, LocalVariationInhomogeneousValues) {
  // sum aggregation: 2^{-j/2} from degree 1 plus 2 + 2^{-j-1} from degree 2
  auto v = local_variation(lie("e1 + [e1,e2]"), 2, 20);
  for (int j = 0; j <= 20; ++j) {
    double want = std::ldexp(1.0, -j) * std::ldexp(1.0, j) / std::sqrt(std::ldexp(1.0, j)) + 2.0 + std::ldexp(1.0, -j - 1);
    EXPECT_NEAR(v[static_cast<std::size_t>(j)], want, 1e-12) << j;
  }
  auto mx = local_variation(lie("e1 + [e1,e2]"), 2, 10, NormKind::l1, VariationAggregate::max);
  EXPECT_NEAR(mx[10], 2.0 + std::ldexp(1.0, -11), 1e-12);
}

TEST(SignatureProperty, LocalVariationConverges) {
  for (const char* s : {"[e1,e2]", "e1 + [e1,e2]", "e1 + e2 + 3*[e1,e2]"}) {
    RT l = lie(s);
    double target = l1_norm(project(l, 2)).get_d();
    auto v = local_variation(l, 2, 16);
    for (std::size_t j = 5; j + 1 < v.size(); ++j) EXPECT_LE(v[j + 1], v[j] + 1e-12) << s << " " << j;
    // degree-one mass decays like 2^{-j/2}: 1% is reached by j = 14 for these inputs
    EXPECT_LT(std::abs(v[14] - target) / target, 0.01) << s;
  }
  EXPECT_LT(std::abs(local_variation(lie("[e1,e2]"), 2, 10)[10] - 2.0) / 2.0, 0.01);
}

TEST(Signature, NeoclassicalExamples) {
  auto one = neoclassical_check({2.5}, 1.7, 5);
  EXPECT_NEAR(one.lhs, one.rhs, 1e-12 * one.rhs);
  EXPECT_TRUE(one.holds);
  auto binom = neoclassical_check({0.3, 1.9}, 1.0, 7);
  EXPECT_NEAR(binom.lhs, binom.rhs, 1e-12 * binom.rhs);
  auto r = neoclassical_check({1.0, 1.0}, 2.0, 4);
  EXPECT_TRUE(r.holds);
  EXPECT_LT(r.lhs, r.rhs);
  EXPECT_THROW(neoclassical_check({}, 2.0, 3), DomainError);
  EXPECT_THROW(neoclassical_check({1.0}, 0.5, 3), DomainError);
  EXPECT_THROW(neoclassical_check({0.0}, 2.0, 3), DomainError);
}

TEST(SignatureProperty, NeoclassicalRandom) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> ua(0.05, 4.0), up(1.0, 4.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a(1 + trial % 3);
    for (auto& x : a) x = ua(rng);
    auto r = neoclassical_check(a, up(rng), 1 + trial % 9);
    EXPECT_TRUE(r.holds) << r.lhs << " " << r.rhs;
  }
}

TEST(Signature, ExactAndFloatingTailsAgree) {
  RT l = lie("e1 + e2 + [e1,e2]");
  auto ex = tail_sequence(l, 2, 10, NormKind::hs);
  auto fl = tail_sequence(tensor_cast<double>(l), 2, 10, NormKind::hs);
  for (std::size_t i = 0; i < ex.rows.size(); ++i) EXPECT_NEAR(ex.rows[i].t, fl.rows[i].t, 1e-10 * ex.rows[i].t);
}
