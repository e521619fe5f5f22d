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


// Walk-through of the library on l = e1 + [e1,e2]: signature tails, the degree-2
// development that certifies the lower bound, and a Hall basis.

#include <cstdio>

#include "puresig/puresig.hpp"

using namespace puresig;

int main() {
  GradedTensor<Rational> l = parse_lie_tensor("e1 + [e1,e2]");

  // Exact signature levels and the normalized tail t_n = ((n/2)! ||X^n||)^{2/n}.
  TailReport tail = tail_sequence(l, 2, 16, NormKind::l1);
  std::printf("tail of exp(e1 + [e1,e2]) in the l1 norm\n");
  for (const auto& r : tail.rows) {
    if (r.n % 4 == 0) std::printf("  n=%2d  ||X^n||=%.6g  t_n=%.6f\n", r.n, r.norm, r.t);
  }

  // Same path in the Hilbert-Schmidt norm, with the a priori upper bound.
  GradedTensor<double> ld = tensor_cast<double>(l);
  GradedTensor<double> X = signature(ld, 12);
  std::printf("hs norm vs upper bound\n");
  for (int n = 4; n <= 12; n += 4) {
    std::printf("  n=%2d  %.6g <= %.6g\n", n, hs_norm(project(X, n)), upper_bound_series(ld, 2, n, NormKind::hs));
  }

  // A 2x2 development turns the bracket into diag(2,-2); its top eigenvalue bounds t_n below.
  Preset p = preset_development("deg2");
  CMatrix top = apply_tensor(p.dev, project(l, 2));
  std::printf("Phi([e1,e2]) diagonal = (%g, %g), ||Phi|| = %g, bound = %g\n", top(0, 0).real(), top(1, 1).real(),
              operator_norm(p.dev), eigen_lower_bound(p.dev, l, 2));
  GrowthCurve gc = growth_curve(p.dev, l, 2, {1.0, 4.0, 16.0}, 40);
  for (const auto& pt : gc.points) std::printf("  lambda=%-4g log||Gamma||/lambda^2 = %.6f\n", pt.lambda, pt.value);

  // Hall basis of degree 4 on two letters.
  HallBasis hb = hall_basis(2, 4);
  std::printf("degree-4 Hall basis (dimension %llu)\n", static_cast<unsigned long long>(dim_free_lie(2, 4)));
  for (const auto& h : hb.elements) {
    std::printf("  %-20s l1 norm %s\n", h.to_string().c_str(), l1_norm(expand_bracket(h, 2)).get_str().c_str());
  }
  return 0;
}
