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

#ifndef PURESIG_POLYSYS_HPP
#define PURESIG_POLYSYS_HPP
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "puresig/develop.hpp"
#include "puresig/lie.hpp"
#include "puresig/linalg_exact.hpp"
#include "puresig/tensor.hpp"

namespace puresig {

/// Homogeneous polynomial in position-indexed variables w[letter][position]; a term's word
/// picks, for each position j, the letter whose variable appears. Multilinear by construction.
struct MonoPoly {
  int d = 2;
  int m = 1;
  std::vector<std::pair<Word, Rational>> terms;  // sorted by word, no zero coefficients

  template <class Z>
  Z eval(const std::vector<std::vector<Z>>& w) const {
    Z acc(0);
    for (const auto& [word, c] : terms) {
      Z prod = scalar_cast<Z>(c);
      for (int j = 0; j < m; ++j) prod = prod * w[static_cast<std::size_t>(word[static_cast<std::size_t>(j)] - 1)][static_cast<std::size_t>(j)];
      acc += prod;
    }
    return acc;
  }

  /// d/dw[letter][pos] evaluated at w.
  Complex partial(const std::vector<std::vector<Complex>>& w, int letter, int pos) const {
    Complex acc(0.0, 0.0);
    for (const auto& [word, c] : terms) {
      if (word[static_cast<std::size_t>(pos)] != letter) continue;
      Complex prod(c.get_d(), 0.0);
      for (int j = 0; j < m; ++j) {
        if (j != pos) prod *= w[static_cast<std::size_t>(word[static_cast<std::size_t>(j)] - 1)][static_cast<std::size_t>(j)];
      }
      acc += prod;
    }
    return acc;
  }

  /// Variables print as a_j, b_j, ... for d <= 26 letters ("a1*b2 - b1*a2").
  std::string to_string() const {
    std::string s;
    for (const auto& [word, c] : terms) {
      if (!s.empty()) s += sgn(c) > 0 ? " + " : " - ";
      else if (sgn(c) < 0) s += "-";
      Rational a = abs(c);
      if (a != 1) s += a.get_str() + "*";
      for (int j = 0; j < m; ++j) {
        if (j) s += "*";
        int letter = word[static_cast<std::size_t>(j)];
        s += d <= 26 ? std::string(1, static_cast<char>('a' + letter - 1)) : "w" + std::to_string(letter) + "_";
        s += std::to_string(j + 1);
      }
    }
    return s.empty() ? "0" : s;
  }
};

/// T(e_{i1}...e_{im}) = w_{i1,1} ... w_{im,m}.
inline MonoPoly monomial_map(const Word& w, int d) {
  for (int x : w) {
    if (x < 1 || x > d) throw DomainError("monomial_map: letter out of range");
  }
  MonoPoly p;
  p.d = d;
  p.m = static_cast<int>(w.size());
  p.terms.emplace_back(w, Rational(1));
  return p;
}

/// Linear extension of T to a homogeneous tensor.
inline MonoPoly monomial_map(const GradedTensor<Rational>& x) {
  MonoPoly p;
  p.d = x.dim();
  p.m = x.require_homogeneous("monomial_map");
  x.for_each_term([&](const Word& w, const Rational& c) { p.terms.emplace_back(w, c); });
  return p;
}

/// p_i = T(h_i) for the given homogeneous elements; throws if the p_i are dependent.
inline std::vector<MonoPoly> polys_from_elements(const std::vector<GradedTensor<Rational>>& elements) {
  std::vector<MonoPoly> out;
  std::map<Word, std::size_t> col;
  for (const auto& h : elements) {
    out.push_back(monomial_map(h));
    for (const auto& [w, c] : out.back().terms) col.emplace(w, 0);
  }
  std::size_t j = 0;
  for (auto& [w, idx] : col) idx = j++;
  DenseMatrix<Rational> M(out.size(), std::vector<Rational>(col.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& [w, c] : out[i].terms) M[i][col[w]] = c;
  }
  if (exact_rank(std::move(M)) != out.size()) {
    throw Error("polys_from_elements: polynomials are linearly dependent (T must be injective)");
  }
  return out;
}

inline std::vector<MonoPoly> polys_from_hall(int d, int m) {
  HallBasis b = hall_basis(d, m);
  std::vector<GradedTensor<Rational>> ex;
  for (const auto& t : b.elements) ex.push_back(expand_bracket(t, d));
  return polys_from_elements(ex);
}

/// Rank of the monomial-coefficient matrix.
inline std::size_t poly_rank(const std::vector<MonoPoly>& polys) {
  std::map<Word, std::size_t> col;
  for (const auto& p : polys) {
    for (const auto& [w, c] : p.terms) col.emplace(w, 0);
  }
  std::size_t j = 0;
  for (auto& [w, idx] : col) idx = j++;
  DenseMatrix<Rational> M(polys.size(), std::vector<Rational>(col.size()));
  for (std::size_t i = 0; i < polys.size(); ++i) {
    for (const auto& [w, c] : polys[i].terms) M[i][col[w]] = c;
  }
  return exact_rank(std::move(M));
}

/// sum_b p_i(block b) = target_i for each i. Unknowns are ordered (block, letter, position).
struct PolySystem {
  int d = 2;
  int m = 1;
  int k = 1;
  std::vector<MonoPoly> polys;
  std::vector<Complex> targets;

  int unknowns() const { return d * k * m; }

  std::vector<std::vector<Complex>> block(const Eigen::VectorXcd& z, int b) const {
    std::vector<std::vector<Complex>> w(static_cast<std::size_t>(d), std::vector<Complex>(static_cast<std::size_t>(m)));
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < m; ++j) w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = z(b * d * m + i * m + j);
    }
    return w;
  }

  Eigen::VectorXcd residual(const Eigen::VectorXcd& z) const {
    Eigen::VectorXcd r(static_cast<int>(polys.size()));
    for (std::size_t i = 0; i < polys.size(); ++i) {
      Complex acc = -targets[i];
      for (int b = 0; b < k; ++b) acc += polys[i].eval(block(z, b));
      r(static_cast<int>(i)) = acc;
    }
    return r;
  }

  Eigen::MatrixXcd jacobian(const Eigen::VectorXcd& z) const {
    Eigen::MatrixXcd J(static_cast<int>(polys.size()), unknowns());
    for (int b = 0; b < k; ++b) {
      auto w = block(z, b);
      for (std::size_t i = 0; i < polys.size(); ++i) {
        for (int l = 0; l < d; ++l) {
          for (int j = 0; j < m; ++j) J(static_cast<int>(i), b * d * m + l * m + j) = polys[i].partial(w, l + 1, j);
        }
      }
    }
    return J;
  }
};

inline PolySystem assemble_system(const std::vector<MonoPoly>& polys, int k, const std::vector<Complex>& targets) {
  if (polys.empty()) throw DomainError("assemble_system: no polynomials");
  if (targets.size() != polys.size()) throw DomainError("assemble_system: need one target per polynomial");
  if (k < 1) throw DomainError("assemble_system: need k >= 1 blocks");
  for (auto c : targets) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw DomainError("assemble_system: non-finite target");
  }
  PolySystem s;
  s.d = polys[0].d;
  s.m = polys[0].m;
  for (const auto& p : polys) {
    if (p.d != s.d || p.m != s.m) throw DomainError("assemble_system: polynomials of different shape");
  }
  s.k = k;
  s.polys = polys;
  s.targets = targets;
  return s;
}

/// Targets (0..0,1,0..0) for the i-th unit system.
inline std::vector<Complex> unit_targets(std::size_t nu, std::size_t i) {
  std::vector<Complex> t(nu, Complex(0.0, 0.0));
  t.at(i) = Complex(1.0, 0.0);
  return t;
}

struct SolveOptions {
  std::uint64_t seed = 1;
  int restarts = 64;
  double tol = 1e-10;
  int max_iterations = 200;
  bool stop_at_first = false;  // otherwise all restarts run and the best is kept
};

struct SolveResult {
  Eigen::VectorXcd z;
  double residual = std::numeric_limits<double>::infinity();  // max |equation error|
  int restarts_used = 0;
  int start_index = -1;
  bool converged = false;
};

namespace detail {

inline double max_abs(const Eigen::VectorXcd& r) { return r.size() ? r.cwiseAbs().maxCoeff() : 0.0; }

// Levenberg-Marquardt in minimum-norm form: delta = -J^H (J J^H + mu I)^{-1} r.
inline std::pair<Eigen::VectorXcd, double> lm_descent(const PolySystem& sys, Eigen::VectorXcd z, double tol, int iters) {
  Eigen::VectorXcd r = sys.residual(z);
  double f = r.squaredNorm();
  double mu = 1e-3;
  for (int it = 0; it < iters && max_abs(r) >= tol; ++it) {
    Eigen::MatrixXcd J = sys.jacobian(z);
    Eigen::MatrixXcd JJ = J * J.adjoint();
    bool improved = false;
    for (int tries = 0; tries < 30 && !improved; ++tries) {
      Eigen::MatrixXcd A = JJ;
      A.diagonal().array() += mu;
      Eigen::VectorXcd delta = -J.adjoint() * A.ldlt().solve(r);
      Eigen::VectorXcd zn = z + delta;
      Eigen::VectorXcd rn = sys.residual(zn);
      double fn = rn.squaredNorm();
      if (std::isfinite(fn) && fn < f) {
        z = std::move(zn);
        r = std::move(rn);
        f = fn;
        mu = std::max(mu / 3.0, 1e-15);
        improved = true;
      } else {
        mu *= 4.0;
      }
    }
    if (!improved) break;
  }
  return {z, max_abs(r)};
}

}  // namespace detail

/// Damped Gauss-Newton from random complex starts with |z| uniform on [0.5, 1.5].
/// Non-convergence is reported through SolveResult::converged, never thrown.
inline SolveResult solve_system(const PolySystem& sys, const SolveOptions& opt = {}) {
  if (!(opt.tol > 0.0)) throw DomainError("solve_system: tol must be positive");
  if (opt.restarts < 1) throw DomainError("solve_system: need at least one restart");
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> radius(0.5, 1.5), angle(0.0, 2.0 * M_PI);
  SolveResult best;
  for (int s = 0; s < opt.restarts; ++s) {
    Eigen::VectorXcd z0(sys.unknowns());
    for (int i = 0; i < z0.size(); ++i) z0(i) = std::polar(radius(rng), angle(rng));
    auto [z, res] = detail::lm_descent(sys, z0, opt.tol, opt.max_iterations);
    best.restarts_used = s + 1;
    if (res < best.residual) {
      best.z = z;
      best.residual = res;
      best.start_index = s;
    }
    if (opt.stop_at_first && res < opt.tol) break;
  }
  best.converged = best.residual < opt.tol;
  return best;
}

/// Evaluates the residual exactly after rationalizing every real/imaginary part of z
/// (each double is a dyadic rational, so the conversion is exact).
inline double plug_back_exact(const PolySystem& sys, const Eigen::VectorXcd& z) {
  double worst = 0.0;
  std::vector<std::vector<std::vector<GaussRational>>> blocks;
  for (int b = 0; b < sys.k; ++b) {
    auto w = sys.block(z, b);
    std::vector<std::vector<GaussRational>> wq(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
      for (auto c : w[i]) wq[i].emplace_back(Rational(c.real()), Rational(c.imag()));
    }
    blocks.push_back(std::move(wq));
  }
  for (std::size_t i = 0; i < sys.polys.size(); ++i) {
    GaussRational acc(Rational(-sys.targets[i].real()), Rational(-sys.targets[i].imag()));
    for (const auto& wq : blocks) acc += sys.polys[i].eval(wq);
    worst = std::max(worst, std::abs(Complex(acc.re.get_d(), acc.im.get_d())));
  }
  return worst;
}

/// Per-block parameter vectors blocks[letter][block] = (w_{letter,1..m}) read from z.
inline std::vector<std::vector<std::vector<Complex>>> solution_blocks(const PolySystem& sys, const Eigen::VectorXcd& z) {
  std::vector<std::vector<std::vector<Complex>>> out(static_cast<std::size_t>(sys.d));
  for (int b = 0; b < sys.k; ++b) {
    auto w = sys.block(z, b);
    for (int i = 0; i < sys.d; ++i) out[static_cast<std::size_t>(i)].push_back(w[static_cast<std::size_t>(i)]);
  }
  return out;
}

/// Given solutions of the unit systems (unit i solved with k_i blocks), returns a solution of
/// the target system with sum k_i blocks: unit i is scaled by c_i^{1/m} (principal branch).
inline std::pair<PolySystem, Eigen::VectorXcd> compose_unit_solutions(const std::vector<PolySystem>& units,
                                                                      const std::vector<Eigen::VectorXcd>& sols,
                                                                      const std::vector<Complex>& targets) {
  if (units.size() != targets.size() || sols.size() != units.size()) {
    throw DomainError("compose_unit_solutions: need one unit solution per target");
  }
  int total = 0;
  for (const auto& u : units) total += u.k;
  PolySystem sys = assemble_system(units.at(0).polys, total, targets);
  Eigen::VectorXcd z(sys.unknowns());
  int off = 0;
  for (std::size_t i = 0; i < units.size(); ++i) {
    Complex scale = targets[i] == Complex(0.0, 0.0) ? Complex(0.0, 0.0) : std::pow(targets[i], 1.0 / sys.m);
    z.segment(off, sols[i].size()) = scale * sols[i];
    off += static_cast<int>(sols[i].size());
  }
  return {sys, z};
}

/// k = 4^{nu-1} nu!, the block count that always suffices.
inline std::uint64_t block_bound(int nu) {
  std::uint64_t k = 1;
  for (int i = 1; i < nu; ++i) k *= 4;
  for (int i = 2; i <= nu; ++i) k *= static_cast<std::uint64_t>(i);
  return k;
}

struct VerifyReport {
  Development phi;                 // Lambda^k of the block-diagonal embedding
  int weight_index = 0;            // basis position of e_1 ^ e_{m+1} ^ ... on Lambda^k(C^{km})
  Complex weight_value;            // diagonal entry of Phi(pi_m l) at weight_index
  double witness_value = 0.0;      // B(pi_m l)
  double phi_norm = 0.0;
  double achieved_factor = 0.0;    // B(pi_m l) / ||Phi||^m
  double eigen_bound = 0.0;        // sup Re spec / ||Phi||^m
  double ratio = 0.0;              // achieved_factor / ||pi_m l||_1
};

namespace detail {

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    if (r > (std::uint64_t{1} << 40)) return r;
  }
  return r;
}

}  // namespace detail

/// Builds Phi = Lambda^k o F from a solution and checks that the weight mu_1 + mu_{m+1} + ...
/// of Phi(pi_m l) equals B(pi_m l). W carries the l1 norm.
inline VerifyReport verify_solution(const PolySystem& sys, const SolveResult& sol, const GradedTensor<Rational>& l,
                                    const GradedTensor<Rational>& B, double tol = 1e-8,
                                    std::uint64_t max_rep_dim = 4096) {
  if (!(sol.residual < tol)) throw DomainError("verify_solution: solution residual above tolerance");
  if (sol.z.size() != sys.unknowns()) throw DomainError("verify_solution: solution size mismatch");
  if (detail::max_abs(sol.z) == 0.0) throw DomainError("verify_solution: zero solution gives Phi = 0");
  const int m = sys.m, k = sys.k;
  std::uint64_t dim = detail::binomial(k * m, k);
  if (dim > max_rep_dim) {
    throw ResourceError("verify_solution: exterior power of dimension " + std::to_string(dim) + " exceeds " +
                        std::to_string(max_rep_dim));
  }
  Development F = block_diagonal_embedding<Complex>(m, solution_blocks(sys, sol.z), WNorm::l1);
  VerifyReport rep;
  rep.phi = k == 1 ? F : exterior_power_development(F, k);
  // Index of {0, m, 2m, ...} among lexicographically ordered k-subsets of {0..km-1}.
  {
    int idx = 0, n = k * m, prev = -1;
    for (int pos = 0; pos < k; ++pos) {
      int target = pos * m;
      for (int v = prev + 1; v < target; ++v) idx += static_cast<int>(detail::binomial(n - v - 1, k - pos - 1));
      prev = target;
    }
    rep.weight_index = idx;
  }
  GradedTensor<Rational> lm = project(l, m);
  CMatrix Pl = apply_tensor(rep.phi, lm);
  rep.weight_value = Pl(rep.weight_index, rep.weight_index);
  rep.witness_value = apply_functional(B, lm).get_d();
  if (std::abs(rep.weight_value - Complex(rep.witness_value, 0.0)) > tol * std::max(1.0, std::abs(rep.witness_value))) {
    throw DomainError("verify_solution: weight value does not match the witness value");
  }
  rep.phi_norm = operator_norm(rep.phi);
  if (rep.phi_norm == 0.0) throw DomainError("verify_solution: Phi = 0");
  rep.achieved_factor = rep.witness_value / std::pow(rep.phi_norm, m);
  rep.eigen_bound = eigen_lower_bound(rep.phi, l, m);
  double l1 = l1_norm(lm).get_d();
  rep.ratio = l1 > 0 ? rep.achieved_factor / l1 : 0.0;
  return rep;
}

/// Targets c_i = B(h_i) for the given basis elements.
inline std::vector<Complex> witness_targets(const std::vector<GradedTensor<Rational>>& elements,
                                            const GradedTensor<Rational>& B) {
  std::vector<Complex> t;
  for (const auto& h : elements) t.emplace_back(apply_functional(B, h).get_d(), 0.0);
  return t;
}

inline nlohmann::json to_json(const PolySystem& s) {
  nlohmann::json j;
  j["d"] = s.d;
  j["m"] = s.m;
  j["k"] = s.k;
  j["polynomials"] = nlohmann::json::array();
  for (const auto& p : s.polys) j["polynomials"].push_back(p.to_string());
  j["targets"] = nlohmann::json::array();
  for (auto c : s.targets) j["targets"].push_back({c.real(), c.imag()});
  return j;
}

inline nlohmann::json to_json(const PolySystem& s, const SolveResult& r) {
  nlohmann::json j;
  j["system"] = to_json(s);
  j["converged"] = r.converged;
  j["residual"] = r.residual;
  j["restarts_used"] = r.restarts_used;
  j["start_index"] = r.start_index;
  nlohmann::json z = nlohmann::json::array();
  for (int i = 0; i < r.z.size(); ++i) z.push_back({r.z(i).real(), r.z(i).imag()});
  j["solution"] = z;
  return j;
}

}  // namespace puresig

#endif
