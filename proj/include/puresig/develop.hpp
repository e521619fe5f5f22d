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

#ifndef PURESIG_DEVELOP_HPP
#define PURESIG_DEVELOP_HPP
#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "puresig/lie.hpp"
#include "puresig/small_matrix.hpp"
#include "puresig/tensor.hpp"

namespace puresig {

/// Norm carried by the representation space W.
enum class WNorm { l1, l2 };

inline WNorm parse_wnorm(const std::string& s) {
  if (s == "l1") return WNorm::l1;
  if (s == "l2") return WNorm::l2;
  throw DomainError("unknown W norm '" + s + "' (expected l1 or l2)");
}

inline const char* to_string(WNorm w) { return w == WNorm::l1 ? "l1" : "l2"; }

/// Phi(e_i) = M_i for i = 1..d, plus the norm on W. When the matrices have exact
/// Gaussian-rational entries they are kept alongside the floating copies.
struct Development {
  int d = 0;
  int k = 0;
  WNorm w_norm = WNorm::l1;
  std::vector<CMatrix> M;
  std::vector<ExactMatrix> exact;

  bool has_exact() const { return !exact.empty(); }
};

inline Development from_matrices(std::vector<CMatrix> mats, WNorm w_norm) {
  if (mats.empty()) throw DomainError("development needs at least one matrix");
  const auto k = mats[0].rows();
  for (const auto& m : mats) {
    if (m.rows() != m.cols()) throw DomainError("development matrices must be square");
    if (m.rows() != k) throw DomainError("development matrices must share one size");
  }
  Development dev;
  dev.d = static_cast<int>(mats.size());
  dev.k = static_cast<int>(k);
  dev.w_norm = w_norm;
  dev.M = std::move(mats);
  return dev;
}

inline Development from_exact_matrices(std::vector<ExactMatrix> mats, WNorm w_norm) {
  std::vector<CMatrix> fl;
  for (const auto& m : mats) fl.push_back(m.to_complex());
  Development dev = from_matrices(std::move(fl), w_norm);
  dev.exact = std::move(mats);
  return dev;
}

namespace detail {

// Evaluates sum_w c_w M_{w1}...M_{wn} walking words in sorted order and reusing prefix products.
template <class Mat, class S, class Conv>
Mat apply_words(const std::vector<Mat>& mats, const GradedTensor<S>& x, const Mat& identity, Conv conv) {
  const int d = x.dim();
  if (d != static_cast<int>(mats.size())) {
    throw DomainError("apply_tensor: tensor dimension " + std::to_string(d) + " vs development dimension " +
                      std::to_string(mats.size()));
  }
  Mat acc = conv(x.scalar_part()) * identity;
  for (int n = 1; n <= x.trunc(); ++n) {
    const auto& level = x.level(n);
    if (level.empty()) continue;
    std::vector<Mat> prefix(static_cast<std::size_t>(n) + 1, identity);
    Word prev;
    for (const auto& [key, c] : level) {
      Word w = unpack_word(key, n, d);
      std::size_t p = 0;
      while (p < prev.size() && prev[p] == w[p]) ++p;
      for (std::size_t j = p; j < w.size(); ++j) {
        prefix[j + 1] = prefix[j] * mats[static_cast<std::size_t>(w[j] - 1)];
      }
      acc = acc + conv(c) * prefix[static_cast<std::size_t>(n)];
      prev = std::move(w);
    }
  }
  return acc;
}

}  // namespace detail

/// Phi(x) as a k x k complex matrix.
template <class S>
CMatrix apply_tensor(const Development& phi, const GradedTensor<S>& x) {
  CMatrix id = CMatrix::Identity(phi.k, phi.k);
  return detail::apply_words(phi.M, x, id, [](const S& c) { return ScalarTraits<S>::to_complex(c); });
}

/// Phi(x) in exact arithmetic; needs exact matrices and an exact tensor.
template <class S>
ExactMatrix apply_tensor_exact(const Development& phi, const GradedTensor<S>& x) {
  static_assert(ScalarTraits<S>::exact, "apply_tensor_exact needs exact coefficients");
  if (!phi.has_exact()) throw DomainError("development has no exact matrices");
  return detail::apply_words(phi.exact, x, ExactMatrix::identity(phi.k),
                             [](const S& c) { return GaussRational(c); });
}

/// Induced operator norm on W: max column sum (l1) or largest singular value (l2).
inline double matrix_norm(const CMatrix& m, WNorm w) {
  if (m.size() == 0) return 0.0;
  if (w == WNorm::l1) return m.cwiseAbs().colwise().sum().maxCoeff();
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

inline std::vector<double> singular_values(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  std::vector<double> s(svd.singularValues().data(), svd.singularValues().data() + svd.singularValues().size());
  std::sort(s.begin(), s.end());
  return s;
}

/// ||Phi|| = max_i ||M_i||, the operator norm from (R^d, l1) into End(W).
inline double operator_norm(const Development& phi) {
  double best = 0.0;
  for (const auto& m : phi.M) best = std::max(best, matrix_norm(m, phi.w_norm));
  return best;
}

/// Exact l1 operator norm when every entry has a rational modulus (real or purely imaginary).
inline std::optional<Rational> exact_operator_norm(const Development& phi) {
  if (!phi.has_exact() || phi.w_norm != WNorm::l1) return std::nullopt;
  Rational best(0);
  for (const auto& m : phi.exact) {
    for (int j = 0; j < m.cols(); ++j) {
      Rational col(0);
      for (int i = 0; i < m.rows(); ++i) {
        const auto& z = m(i, j);
        if (sgn(z.re) != 0 && sgn(z.im) != 0) return std::nullopt;
        col += abs(z.re) + abs(z.im);
      }
      if (col > best) best = col;
    }
  }
  return best;
}

inline std::vector<Complex> spectrum(const CMatrix& m) {
  if (m.rows() == 0) return {};
  Eigen::ComplexEigenSolver<CMatrix> es(m, false);
  if (es.info() != Eigen::Success) throw ConvergenceError("eigenvalue computation failed", 0.0);
  std::vector<Complex> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(ev.begin(), ev.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
  });
  return ev;
}

/// sup Re spec(Phi(pi_m l)) / ||Phi||^m.
template <class S>
double eigen_lower_bound(const Development& phi, const GradedTensor<S>& l, int m) {
  double nrm = operator_norm(phi);
  if (nrm == 0.0) throw DomainError("eigen_lower_bound: development is zero");
  if (m < 1 || m > l.trunc()) throw DomainError("eigen_lower_bound: degree out of range");
  auto ev = spectrum(apply_tensor(phi, project(l, m)));
  double best = ev.empty() ? 0.0 : ev.front().real();
  for (auto z : ev) best = std::max(best, z.real());
  return std::max(0.0, best) / std::pow(nrm, m);
}

/// k x k matrix with superdiagonal a_1..a_{k-1} and corner entry (k,1) = a_k.
template <class S>
SmallMatrix<S> cyclic_matrix(const std::vector<S>& a) {
  const int k = static_cast<int>(a.size());
  if (k < 1) throw DomainError("cyclic matrix needs at least one parameter");
  SmallMatrix<S> m(k, k);
  for (int i = 0; i + 1 < k; ++i) m(i, i + 1) = a[static_cast<std::size_t>(i)];
  m(k - 1, 0) = S(m(k - 1, 0) + a[static_cast<std::size_t>(k - 1)]);
  return m;
}

namespace detail {

template <class S>
CMatrix to_cmatrix(const SmallMatrix<S>& m) {
  return m.to_complex();
}

template <class S>
Development development_from(const std::vector<SmallMatrix<S>>& mats, WNorm w) {
  if constexpr (std::is_same_v<S, GaussRational>) {
    return from_exact_matrices(mats, w);
  } else if constexpr (ScalarTraits<S>::exact) {
    std::vector<ExactMatrix> ex;
    for (const auto& m : mats) {
      ExactMatrix e(m.rows(), m.cols());
      for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) e(i, j) = GaussRational(m(i, j));
      }
      ex.push_back(std::move(e));
    }
    return from_exact_matrices(std::move(ex), w);
  } else {
    std::vector<CMatrix> fl;
    for (const auto& m : mats) fl.push_back(m.to_complex());
    return from_matrices(std::move(fl), w);
  }
}

}  // namespace detail

/// Phi(e_i) = cyclic matrix of params[i]; params has one m-vector per letter.
template <class S>
Development sl_cyclic_embedding(int m, const std::vector<std::vector<S>>& params, WNorm w = WNorm::l1) {
  std::vector<SmallMatrix<S>> mats;
  for (const auto& a : params) {
    if (static_cast<int>(a.size()) != m) {
      throw DomainError("sl_cyclic_embedding: expected " + std::to_string(m) + " parameters per letter");
    }
    mats.push_back(cyclic_matrix(a));
  }
  return detail::development_from(mats, w);
}

/// blocks[i][b] is the m-vector of letter i in block b; block-diagonal km x km assembly.
template <class S>
Development block_diagonal_embedding(int m, const std::vector<std::vector<std::vector<S>>>& blocks,
                                     WNorm w = WNorm::l1) {
  if (blocks.empty()) throw DomainError("block_diagonal_embedding: no letters");
  const std::size_t kb = blocks[0].size();
  if (kb == 0) throw DomainError("block_diagonal_embedding: no blocks");
  std::vector<SmallMatrix<S>> mats;
  for (const auto& letter : blocks) {
    if (letter.size() != kb) throw DomainError("block_diagonal_embedding: inconsistent block count per letter");
    SmallMatrix<S> big(static_cast<int>(kb) * m, static_cast<int>(kb) * m);
    for (std::size_t b = 0; b < kb; ++b) {
      if (static_cast<int>(letter[b].size()) != m) throw DomainError("block_diagonal_embedding: wrong block length");
      auto c = cyclic_matrix(letter[b]);
      int off = static_cast<int>(b) * m;
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) big(off + i, off + j) = c(i, j);
      }
    }
    mats.push_back(std::move(big));
  }
  return detail::development_from(mats, w);
}

/// The so(5) matrices H1, H2 (Cartan generators) and root vectors X_alpha, X_beta, X_gamma.
struct So5Basis {
  ExactMatrix H1, H2, Xa, Xb, Xg;
};

inline So5Basis so5_basis() {
  const GaussRational o(0), p(1), n(-1), I = GaussRational::i(), nI = -GaussRational::i();
  So5Basis b;
  b.H1 = ExactMatrix::from_rows({{o, p, o, o, o}, {n, o, o, o, o}, {o, o, o, o, o}, {o, o, o, o, o}, {o, o, o, o, o}});
  b.H2 = ExactMatrix::from_rows({{o, o, o, o, o}, {o, o, o, o, o}, {o, o, o, p, o}, {o, o, n, o, o}, {o, o, o, o, o}});
  b.Xa = ExactMatrix::from_rows({{o, o, o, o, o}, {o, o, o, o, o}, {o, o, o, o, p}, {o, o, o, o, I}, {o, o, n, nI, o}});
  b.Xb = ExactMatrix::from_rows({{o, o, n, I, o}, {o, o, I, p, o}, {p, nI, o, o, o}, {nI, n, o, o, o}, {o, o, o, o, o}});
  b.Xg = ExactMatrix::from_rows({{o, o, n, I, o}, {o, o, nI, n, o}, {p, I, o, o, o}, {nI, p, o, o, o}, {o, o, o, o, o}});
  return b;
}

/// Columns w1..w5 of the common eigenbasis of the Cartan subalgebra.
inline ExactMatrix so5_eigenbasis() {
  const GaussRational o(0), p(1), I = GaussRational::i(), nI = -GaussRational::i();
  // rows are coordinates eps_1..eps_5; columns are w1..w5
  return ExactMatrix::from_rows({{o, I, nI, o, o}, {o, p, p, o, o}, {o, o, o, I, nI}, {o, o, o, p, p}, {p, o, o, o, o}});
}

/// Weight mu(x H1 + y H2) = i y, the eigenvalue on w5; y is entry (3,4).
inline Complex so5_weight(const CMatrix& h) { return Complex(0.0, 1.0) * h(2, 3); }
inline GaussRational so5_weight_exact(const ExactMatrix& h) { return GaussRational::i() * h(2, 3); }

/// Phi(e1) = a1 Xa + a2 Xb + a3 Xg, Phi(e2) likewise with b; W = C^5 with the Hermitian norm.
inline Development so5_embedding(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.size() != 3 || b.size() != 3) throw DomainError("so5_embedding: need three parameters per letter");
  So5Basis B = so5_basis();
  CMatrix Xa = B.Xa.to_complex(), Xb = B.Xb.to_complex(), Xg = B.Xg.to_complex();
  return from_matrices({a[0] * Xa + a[1] * Xb + a[2] * Xg, b[0] * Xa + b[1] * Xb + b[2] * Xg}, WNorm::l2);
}

inline Development so5_embedding_exact(const std::vector<GaussRational>& a, const std::vector<GaussRational>& b) {
  if (a.size() != 3 || b.size() != 3) throw DomainError("so5_embedding: need three parameters per letter");
  So5Basis B = so5_basis();
  return from_exact_matrices({a[0] * B.Xa + a[1] * B.Xb + a[2] * B.Xg, b[0] * B.Xa + b[1] * B.Xb + b[2] * B.Xg},
                             WNorm::l2);
}

/// Induced derivation action of M on Lambda^k(F^n), basis = increasing index subsets in
/// lexicographic order.
template <class Mat>
Mat exterior_power_rep(const Mat& M, int k) {
  const int n = static_cast<int>(M.rows());
  if (M.rows() != M.cols()) throw DomainError("exterior_power_rep: matrix must be square");
  if (k < 1 || k > n) throw DomainError("exterior_power_rep: k must be in 1..n");
  std::vector<std::vector<int>> subsets;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      subsets.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  const int D = static_cast<int>(subsets.size());
  auto index_of = [&](const std::vector<int>& s) {
    return static_cast<int>(std::lower_bound(subsets.begin(), subsets.end(), s) - subsets.begin());
  };
  Mat out(D, D);
  if constexpr (std::is_same_v<Mat, CMatrix>) out.setZero();
  for (int col = 0; col < D; ++col) {
    const auto& I = subsets[static_cast<std::size_t>(col)];
    for (int pos = 0; pos < k; ++pos) {
      const int j = I[static_cast<std::size_t>(pos)];
      for (int r = 0; r < n; ++r) {
        auto coef = M(r, j);
        if (coef == decltype(coef)(0)) continue;
        if (r != j && std::binary_search(I.begin(), I.end(), r)) continue;
        std::vector<int> J = I;
        J[static_cast<std::size_t>(pos)] = r;
        // Sort J by adjacent swaps, tracking the sign.
        int sign = 1;
        for (std::size_t a = 0; a < J.size(); ++a) {
          for (std::size_t b = 0; b + 1 < J.size() - a; ++b) {
            if (J[b] > J[b + 1]) {
              std::swap(J[b], J[b + 1]);
              sign = -sign;
            }
          }
        }
        int row = index_of(J);
        if (sign > 0) out(row, col) += coef;
        else out(row, col) -= coef;
      }
    }
  }
  return out;
}

/// Lambda^k applied to every matrix of a development (norm convention kept).
inline Development exterior_power_development(const Development& phi, int k) {
  Development out;
  if (phi.has_exact()) {
    std::vector<ExactMatrix> ex;
    for (const auto& m : phi.exact) ex.push_back(exterior_power_rep(m, k));
    return from_exact_matrices(std::move(ex), phi.w_norm);
  }
  std::vector<CMatrix> fl;
  for (const auto& m : phi.M) fl.push_back(exterior_power_rep(m, k));
  return from_matrices(std::move(fl), phi.w_norm);
}

struct CartanReport {
  std::vector<double> residuals;  // per tested element
  double max_residual = 0.0;
  bool exact = false;
};

/// Diagonal unit matrices E_11..E_kk.
inline std::vector<ExactMatrix> diagonal_span(int k) {
  std::vector<ExactMatrix> out;
  for (int i = 0; i < k; ++i) {
    ExactMatrix e(k, k);
    e(i, i) = GaussRational(1);
    out.push_back(std::move(e));
  }
  return out;
}

/// Distance (max entry) of each Phi(h) from span(cartan_span), by least squares.
inline CartanReport cartan_check(const Development& phi, const std::vector<GradedTensor<Rational>>& elements,
                                 const std::vector<CMatrix>& cartan_span) {
  CartanReport rep;
  const int k = phi.k;
  Eigen::MatrixXcd A(k * k, static_cast<int>(cartan_span.size()));
  for (int c = 0; c < static_cast<int>(cartan_span.size()); ++c) {
    A.col(c) = Eigen::Map<const Eigen::VectorXcd>(cartan_span[static_cast<std::size_t>(c)].data(), k * k);
  }
  for (const auto& h : elements) {
    CMatrix v = apply_tensor(phi, h);
    Eigen::VectorXcd b = Eigen::Map<const Eigen::VectorXcd>(v.data(), k * k);
    Eigen::VectorXcd r = b;
    if (A.cols() > 0) {
      Eigen::VectorXcd x = A.completeOrthogonalDecomposition().solve(b);
      r = b - A * x;
    }
    double res = r.size() ? r.cwiseAbs().maxCoeff() : 0.0;
    rep.residuals.push_back(res);
    rep.max_residual = std::max(rep.max_residual, res);
  }
  return rep;
}

/// Exact variant: residual 0 iff Phi(h) lies in the span; otherwise the max entry of the
/// floating least-squares residual is reported.
inline CartanReport cartan_check_exact(const Development& phi, const std::vector<GradedTensor<Rational>>& elements,
                                       const std::vector<ExactMatrix>& cartan_span) {
  CartanReport rep;
  rep.exact = true;
  const int k = phi.k;
  std::vector<CMatrix> fl;
  for (const auto& s : cartan_span) fl.push_back(s.to_complex());
  for (const auto& h : elements) {
    ExactMatrix v = apply_tensor_exact(phi, h);
    DenseMatrix<GaussRational> A(static_cast<std::size_t>(k * k),
                                 std::vector<GaussRational>(cartan_span.size(), GaussRational(0)));
    std::vector<GaussRational> b(static_cast<std::size_t>(k * k));
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        std::size_t row = static_cast<std::size_t>(i * k + j);
        b[row] = v(i, j);
        for (std::size_t c = 0; c < cartan_span.size(); ++c) A[row][c] = cartan_span[c](i, j);
      }
    }
    double res = 0.0;
    if (!exact_solve(A, b)) res = cartan_check(phi, {h}, fl).max_residual;
    rep.residuals.push_back(res);
    rep.max_residual = std::max(rep.max_residual, res);
  }
  return rep;
}

struct GrowthPoint {
  double lambda = 0.0;
  double value = 0.0;           // log ||Gamma|| / (lambda ||Phi||)^m
  double gamma_norm = 0.0;      // ||exp(Phi(delta_lambda l))|| in the W norm (may be inf)
  double series_error = 0.0;    // max entry difference / max(1, max entry of Gamma)
  bool agree = false;
};

struct GrowthCurve {
  int N = 0;
  double tolerance = 1e-8;
  std::vector<GrowthPoint> points;
};

/// Phi(pi_n exp(l)) for n = 0..N, computed by a degree recursion through Phi so that no
/// tensor of degree N is ever formed: with L_j = Phi(pi_j l), P_k[n] = sum_j L_j P_{k-1}[n-j].
template <class S>
std::vector<CMatrix> developed_signature_levels(const Development& phi, const GradedTensor<S>& l, int N) {
  if (!l.level(0).empty()) throw DomainError("developed signature: l must have zero degree-0 part");
  const int k = phi.k;
  const int top = std::min(l.trunc(), N);
  std::vector<CMatrix> L(static_cast<std::size_t>(top) + 1, CMatrix::Zero(k, k));
  for (int j = 1; j <= top; ++j) L[static_cast<std::size_t>(j)] = apply_tensor(phi, project(l, j));
  std::vector<CMatrix> out(static_cast<std::size_t>(N) + 1, CMatrix::Zero(k, k));
  std::vector<CMatrix> P(static_cast<std::size_t>(N) + 1, CMatrix::Zero(k, k));
  P[0] = CMatrix::Identity(k, k);
  out[0] = P[0];
  double inv_fact = 1.0;
  for (int kk = 1; kk <= N; ++kk) {
    std::vector<CMatrix> Q(static_cast<std::size_t>(N) + 1, CMatrix::Zero(k, k));
    bool any = false;
    for (int n = kk; n <= N; ++n) {
      for (int j = 1; j <= std::min(top, n); ++j) {
        const CMatrix& prev = P[static_cast<std::size_t>(n - j)];
        if (prev.isZero(0.0)) continue;
        Q[static_cast<std::size_t>(n)].noalias() += prev * L[static_cast<std::size_t>(j)];
      }
      any = any || !Q[static_cast<std::size_t>(n)].isZero(0.0);
    }
    inv_fact /= kk;
    for (int n = kk; n <= N; ++n) out[static_cast<std::size_t>(n)] += inv_fact * Q[static_cast<std::size_t>(n)];
    P = std::move(Q);
    if (!any) break;
  }
  return out;
}

/// For each lambda: Gamma = exp(Phi(delta_lambda l)) by matrix exponential and by the
/// truncated series sum_{n<=N} lambda^n Phi(X^n); value log||Gamma|| / (lambda ||Phi||)^m.
template <class S>
GrowthCurve growth_curve(const Development& phi, const GradedTensor<S>& l, int m, const std::vector<double>& lambdas,
                         int N, double tol = 1e-8) {
  double nrm = operator_norm(phi);
  if (nrm == 0.0) throw DomainError("growth_curve: development is zero");
  auto levels = developed_signature_levels(phi, l, N);
  GrowthCurve gc;
  gc.N = N;
  gc.tolerance = tol;
  for (double lam : lambdas) {
    if (!(lam > 0.0)) throw DomainError("growth_curve: lambda must be positive");
    CMatrix A = CMatrix::Zero(phi.k, phi.k);
    for (int j = 1; j <= l.trunc(); ++j) A += std::pow(lam, j) * apply_tensor(phi, project(l, j));
    // exp(A) = e^s exp(A - s I) with s the top real part of spec(A), so large lambda does
    // not overflow; errors are compared at the same scale.
    double s = 0.0;
    for (auto z : spectrum(A)) s = std::max(s, z.real());
    CMatrix shifted = A - s * CMatrix::Identity(phi.k, phi.k);
    CMatrix G = shifted.exp();
    CMatrix Gs = CMatrix::Zero(phi.k, phi.k);
    double p = 1.0;
    for (int n = 0; n <= N; ++n) {
      Gs += p * levels[static_cast<std::size_t>(n)];
      p *= lam;
    }
    const double down = std::exp(-s);
    GrowthPoint pt;
    pt.lambda = lam;
    const double scaled_norm = matrix_norm(G, phi.w_norm);
    pt.gamma_norm = std::exp(s) * scaled_norm;
    pt.value = (s + std::log(scaled_norm)) / std::pow(lam * nrm, m);
    pt.series_error = (G - down * Gs).cwiseAbs().maxCoeff() / std::max(down, G.cwiseAbs().maxCoeff());
    pt.agree = pt.series_error <= tol;
    gc.points.push_back(pt);
  }
  return gc;
}

struct PerturbationStep {
  double lambda = 0.0;
  std::vector<Complex> eigenvalues;  // of T(lambda), matched order
  std::vector<Complex> targets;      // matched eigenvalues of Phi(l_m)
  double distance = 0.0;             // max |eigenvalue - matched target|
};

/// T(lambda) = Phi(l_m) + lambda^{-1} Phi(l_{m-1}) + ... ; each eigenvalue of T(lambda) is
/// matched to the nearest eigenvalue of Phi(l_m) (ties to the lower index).
template <class S>
std::vector<PerturbationStep> perturbation_track(const Development& phi, const GradedTensor<S>& l, int m,
                                                 const std::vector<double>& lambdas) {
  if (m < 1 || m > l.trunc() || l.level(m).empty()) {
    throw DomainError("perturbation_track: pi_m(l) must be nonzero for the declared degree m");
  }
  if (l.max_degree() > m) throw DomainError("perturbation_track: l has components above degree m");
  std::vector<CMatrix> L;
  for (int j = 0; j <= m; ++j) L.push_back(apply_tensor(phi, project(l, j)));
  auto base = spectrum(L[static_cast<std::size_t>(m)]);
  std::vector<PerturbationStep> out;
  for (double lam : lambdas) {
    if (!(lam > 0.0)) throw DomainError("perturbation_track: lambda must be positive");
    CMatrix T = L[static_cast<std::size_t>(m)];
    for (int j = 1; j < m; ++j) T += std::pow(lam, j - m) * L[static_cast<std::size_t>(j)];
    PerturbationStep st;
    st.lambda = lam;
    st.eigenvalues = spectrum(T);
    for (auto z : st.eigenvalues) {
      std::size_t best = 0;
      for (std::size_t i = 1; i < base.size(); ++i) {
        if (std::abs(z - base[i]) < std::abs(z - base[best])) best = i;
      }
      st.targets.push_back(base[best]);
      st.distance = std::max(st.distance, std::abs(z - base[best]));
    }
    out.push_back(std::move(st));
  }
  return out;
}

/// {"k": size, "w_norm": "l1"|"l2", "matrices": [[[re, im], ...] per row] per letter}.
inline nlohmann::json to_json(const Development& phi) {
  nlohmann::json mats = nlohmann::json::array();
  for (const auto& M : phi.M) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < M.rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int j = 0; j < M.cols(); ++j) row.push_back({M(i, j).real(), M(i, j).imag()});
      rows.push_back(std::move(row));
    }
    mats.push_back(std::move(rows));
  }
  return {{"k", phi.k}, {"w_norm", to_string(phi.w_norm)}, {"matrices", std::move(mats)}};
}

inline Development development_from_json(const nlohmann::json& j) {
  try {
    const int k = j.at("k").get<int>();
    std::vector<CMatrix> mats;
    for (const auto& rows : j.at("matrices")) {
      if (static_cast<int>(rows.size()) != k) throw DomainError("development JSON: wrong row count");
      CMatrix M(k, k);
      for (int i = 0; i < k; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        if (static_cast<int>(row.size()) != k) throw DomainError("development JSON: wrong column count");
        for (int c = 0; c < k; ++c) {
          const auto& z = row[static_cast<std::size_t>(c)];
          M(i, c) = z.is_array() ? Complex(z.at(0).get<double>(), z.at(1).get<double>()) : Complex(z.get<double>(), 0.0);
        }
      }
      mats.push_back(std::move(M));
    }
    return from_matrices(std::move(mats), parse_wnorm(j.value("w_norm", std::string("l1"))));
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("development JSON: ") + e.what());
  }
}

}  // namespace puresig

#endif
