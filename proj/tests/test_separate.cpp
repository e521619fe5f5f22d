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

#include "puresig/puresig.hpp"

using namespace puresig;
using RT = GradedTensor<Rational>;

namespace {

RT lie(const char* s, int trunc = -1) { return parse_lie_tensor(s, 2, trunc); }

void expect_separates(const SeparationResult& r, const RT& l, const RT& lp) {
  int top = std::max(l.max_degree(), lp.max_degree());
  CMatrix A = apply_tensor(r.dev, l.with_trunc(top)), B = apply_tensor(r.dev, lp.with_trunc(top));
  EXPECT_GT((A - B).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_GT((CMatrix(A.exp()) - CMatrix(B.exp())).cwiseAbs().maxCoeff(), 1e-9);
}

}  // namespace

TEST(Separate, DistinctLetters) {
  RT l = lie("e1"), lp = lie("e2");
  SeparationResult r = separate_points(l, lp);
  EXPECT_EQ(r.m, 1);
  EXPECT_EQ(r.epsilon, 1.0);
  expect_separates(r, l, lp);
}

TEST(Separate, BracketTermAtDegreeTwo) {
  RT l = lie("e1"), lp = lie("e1 + [e1,e2]");
  SeparationResult r = separate_points(l, lp);
  EXPECT_EQ(r.m, 2);
  EXPECT_EQ(r.blocks, 1);
  expect_separates(r, l, lp);
  // the fixed degree-two development also separates at unit scale
  Preset p = preset_development("deg2");
  CMatrix d = apply_tensor(p.dev, lp.with_trunc(2)) - apply_tensor(p.dev, l.with_trunc(2));
  EXPECT_NEAR(d.cwiseAbs().maxCoeff(), 2.0, 1e-15);
}

TEST(Separate, HallElementsOfDegreeFour) {
  auto h = deg4_reference_elements();
  RT l = expand_bracket(h[0], 2), lp = expand_bracket(h[1], 2);
  SeparationResult r = separate_points(l, lp);
  EXPECT_EQ(r.m, 4);
  EXPECT_GT(r.lie_difference, 1e-9);
  EXPECT_GT(r.exp_difference, 1e-9);
  expect_separates(r, l, lp);
}

TEST(Separate, DifferenceBelowTopDegree) {
  RT l = lie("e1 + 2*[e1,[e1,e2]]"), lp = lie("e1 + [e1,e2] + 2*[e1,[e1,e2]]");
  SeparationResult r = separate_points(l, lp);
  EXPECT_EQ(r.m, 2);
  expect_separates(r, l, lp);
}

TEST(Separate, Deterministic) {
  RT l = lie("[e1,[e1,e2]]"), lp = lie("[[e1,e2],e2]");
  SolveOptions opt;
  opt.seed = 5;
  SeparationResult a = separate_points(l, lp, opt), b = separate_points(l, lp, opt);
  EXPECT_EQ(a.epsilon, b.epsilon);
  EXPECT_EQ(a.blocks, b.blocks);
  EXPECT_EQ((a.dev.M[0] - b.dev.M[0]).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Separate, Errors) {
  EXPECT_THROW(separate_points(lie("e1"), lie("e1")), DomainError);
  EXPECT_THROW(separate_points(lie("e1"), parse_lie_tensor("e1", 3)), DomainError);
  EXPECT_THROW(separate_points(RT::unit(2, 1), lie("e1")), DomainError);
}
