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

#ifndef PURESIG_SEPARATE_HPP
#define PURESIG_SEPARATE_HPP
#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "puresig/develop.hpp"
#include "puresig/lie.hpp"
#include "puresig/polysys.hpp"

namespace puresig {

struct SeparationResult {
  int m = 0;                // lowest degree where the two polynomials differ
  int blocks = 0;           // k used by the solver
  double epsilon = 1.0;     // scale applied to the development
  Development dev;          // Phi_eps
  double lie_difference = 0.0;  // max entry of Phi_eps(l) - Phi_eps(l')
  double exp_difference = 0.0;  // max entry of exp(Phi_eps(l)) - exp(Phi_eps(l'))
};

/// Finds a development with Phi_eps(exp l) != Phi_eps(exp l'). The lowest differing degree
/// m is handled by solving sum_b p_i(block b) = B(h_i) for the l1 witness B of
/// pi_m(l - l'); the block-diagonal matrices on C^{km} then give Phi(pi_m(l - l')) a nonzero
/// diagonal. eps scans 2^{-j}, j = 0..40.
inline SeparationResult separate_points(const GradedTensor<Rational>& l, const GradedTensor<Rational>& lp,
                                        const SolveOptions& opt = {}, int max_blocks = 8, double tol = 1e-9) {
  if (l.dim() != lp.dim()) throw DomainError("separate_points: dimension mismatch");
  GradedTensor<Rational> diff = l - lp;
  if (diff.is_zero()) throw DomainError("separate_points: the two Lie polynomials are equal");
  if (!l.level(0).empty() || !lp.level(0).empty()) throw DomainError("separate_points: Lie polynomials have no degree-0 part");
  const int d = l.dim();
  const int m = diff.min_degree();
  const int top = std::max(l.max_degree(), lp.max_degree());
  GradedTensor<Rational> delta = project(diff, m).with_trunc(m);
  GradedTensor<Rational> B = l1_dual_witness(delta);
  HallBasis basis = hall_basis(d, m);
  std::vector<GradedTensor<Rational>> elements;
  for (const auto& t : basis.elements) elements.push_back(expand_bracket(t, d));
  auto polys = polys_from_elements(elements);
  auto targets = witness_targets(elements, B);
  int kmax = static_cast<int>(std::min<std::uint64_t>(block_bound(static_cast<int>(polys.size())),
                                                      static_cast<std::uint64_t>(max_blocks)));
  for (int k = 1; k <= kmax; ++k) {
    PolySystem sys = assemble_system(polys, k, targets);
    SolveOptions o = opt;
    o.stop_at_first = true;
    SolveResult sol = solve_system(sys, o);
    if (!sol.converged) continue;
    Development F = block_diagonal_embedding<Complex>(m, solution_blocks(sys, sol.z), WNorm::l1);
    const GradedTensor<Rational> lt = l.with_trunc(top), lpt = lp.with_trunc(top);
    for (int j = 0; j <= 40; ++j) {
      double eps = std::ldexp(1.0, -j);
      Development scaled = F;
      for (auto& M : scaled.M) M *= eps;
      CMatrix A = apply_tensor(scaled, lt), Ap = apply_tensor(scaled, lpt);
      double dl = (A - Ap).cwiseAbs().maxCoeff();
      double de = (CMatrix(A.exp()) - CMatrix(Ap.exp())).cwiseAbs().maxCoeff();
      if (dl > tol && de > tol) {
        SeparationResult r;
        r.m = m;
        r.blocks = k;
        r.epsilon = eps;
        r.dev = std::move(scaled);
        r.lie_difference = dl;
        r.exp_difference = de;
        return r;
      }
    }
  }
  throw ConvergenceError("separate_points: no separating development found", 0.0);
}

}  // namespace puresig

#endif
