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
using G = GaussRational;

namespace {

RT lie(const char* s, int trunc = -1) { return parse_lie_tensor(s, 2, trunc); }

ExactMatrix diag(std::initializer_list<long> v) {
  ExactMatrix m(static_cast<int>(v.size()), static_cast<int>(v.size()));
  int i = 0;
  for (long x : v) {
    m(i, i) = G(x);
    ++i;
  }
  return m;
}

RT weighted(const Preset& p, const std::vector<Rational>& mag) {
  RT l(2, p.m);
  for (std::size_t i = 0; i < p.elements.size(); ++i) {
    l = l + Rational(mag[i] * p.signs[i]) * expand_bracket(p.elements[i], 2);
  }
  return l;
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= x.size();
  my /= y.size();
  double num = 0, den = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    den += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return num / den;
}

}  // namespace

TEST(Develop, Deg2PresetIsSharp) {
  Preset p = preset_development("deg2");
  EXPECT_EQ(apply_tensor_exact(p.dev, lie("[e1,e2]")), diag({2, -2}));
  EXPECT_EQ(*exact_operator_norm(p.dev), 1);
  EXPECT_NEAR(eigen_lower_bound(p.dev, lie("e1 + e2 + 3*[e1,e2]"), 2), 6.0, 1e-12);
  Preset q = preset_development("deg2", "-");
  EXPECT_NEAR(eigen_lower_bound(q.dev, lie("e1 - 5/2*[e1,e2]"), 2), 5.0, 1e-12);
}

TEST(Develop, Deg3PresetIsSharpForAllSigns) {
  Preset p = preset_development("deg3");
  EXPECT_EQ(apply_tensor_exact(p.dev, lie("[e1,[e1,e2]]")), diag({4, -2, -2}));
  EXPECT_EQ(apply_tensor_exact(p.dev, lie("[[e1,e2],e2]")), diag({4, -2, -2}));
  EXPECT_EQ(*exact_operator_norm(p.dev), 1);
  for (const char* s : {"++", "+-", "-+", "--"}) {
    Preset q = preset_development("deg3", s);
    RT l = weighted(q, {Rational(2), Rational(1, 3)});
    EXPECT_NEAR(eigen_lower_bound(q.dev, l, 3), 8.0 + 4.0 / 3.0, 1e-12) << s;
    EXPECT_NEAR(eigen_lower_bound(q.dev, l, 3), l1_norm(l).get_d(), 1e-12) << s;
  }
}

TEST(Develop, So5PrintedNumbers) {
  Preset p = preset_development("deg4_so5");
  const double s = std::pow(10.0, -0.25), a1 = 2 * s;
  auto sv1 = singular_values(p.dev.M[0]);
  auto sv2 = singular_values(p.dev.M[1]);
  // compared as sets: each value occurs with multiplicity 1 or 2 in the 5x5 matrices
  auto distinct = [](const std::vector<double>& v) {
    std::vector<double> out;
    for (double x : v) {
      if (out.empty() || x - out.back() > 1e-6) out.push_back(x);
    }
    return out;
  };
  std::vector<double> want1{0, 2 * std::sqrt(5.0) / (5 * a1), std::sqrt(2.0) * a1};
  std::vector<double> want2{0, a1 / std::sqrt(2.0), 4 * std::sqrt(5.0) / (5 * a1)};
  auto got1 = distinct(sv1), got2 = distinct(sv2);
  ASSERT_EQ(got1.size(), 3u);
  ASSERT_EQ(got2.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(got1[i], want1[i], 1e-9) << i;
    EXPECT_NEAR(got2[i], want2[i], 1e-9) << i;
  }
  for (double x : sv1) {
    double gap = 1e9;
    for (double w : want1) gap = std::min(gap, std::abs(x - w));
    EXPECT_LT(gap, 1e-9);
  }
  EXPECT_NEAR(operator_norm(p.dev), 2 * std::sqrt(2.0) * s, 1e-9);
  RT l = p.default_lie();
  EXPECT_NEAR(eigen_lower_bound(p.dev, l, 4) / l1_norm(l).get_d(), 5.0 / 32.0, 1e-9);
}

TEST(Develop, So5FactorForEverySupportedSignPattern) {
  for (const char* s : {"+++", "++-", "--+", "---"}) {
    Preset p = preset_development("deg4_so5", s);
    RT l = weighted(p, {Rational(1), Rational(3), Rational(1, 2)});
    EXPECT_NEAR(eigen_lower_bound(p.dev, l, 4) / l1_norm(l).get_d(), 5.0 / 32.0, 1e-9) << s;
  }
  EXPECT_THROW(preset_development("deg4_so5", "+-+"), DomainError);
  EXPECT_THROW(preset_development("deg4_so5", "++"), DomainError);
}

TEST(Develop, So5CartanResidualsExact) {
  Development phi = so5_unit_scale_exact();
  So5Basis B = so5_basis();
  std::vector<RT> hs;
  for (const auto& h : deg4_reference_elements()) hs.push_back(expand_bracket(h, 2));
  CartanReport rep = cartan_check_exact(phi, hs, {B.H1, B.H2});
  ASSERT_EQ(rep.residuals.size(), 3u);
  EXPECT_EQ(rep.max_residual, 0.0);
  EXPECT_EQ(so5_weight_exact(apply_tensor_exact(phi, hs[0])), G(80));
  EXPECT_EQ(so5_weight_exact(apply_tensor_exact(phi, hs[1])), G(80));
  EXPECT_EQ(so5_weight_exact(apply_tensor_exact(phi, hs[2])), G(60));
  // the floating preset agrees up to rounding
  Preset p = preset_development("deg4_so5");
  EXPECT_LT(cartan_check(p.dev, hs, {B.H1.to_complex(), B.H2.to_complex()}).max_residual, 1e-12);
}

TEST(Develop, CartanNegativeControl) {
  Development phi = so5_unit_scale_exact();
  So5Basis B = so5_basis();
  CartanReport rep = cartan_check_exact(phi, {RT::letter(2, 1, 1)}, {B.H1, B.H2});
  EXPECT_GT(rep.max_residual, 0.1);
  Preset p = preset_development("deg2");
  EXPECT_GT(cartan_check_exact(p.dev, {RT::letter(2, 1, 1)}, diagonal_span(2)).max_residual, 0.1);
  EXPECT_EQ(cartan_check_exact(p.dev, {lie("[e1,e2]")}, diagonal_span(2)).max_residual, 0.0);
}

TEST(Develop, SharpDegreeFour) {
  Preset p = preset_development("deg4_sharp");
  auto h = deg4_reference_elements();
  EXPECT_EQ(apply_tensor_exact(p.dev, expand_bracket(h[0], 2)), diag({-8, 8, -8, 8}));
  EXPECT_EQ(apply_tensor_exact(p.dev, expand_bracket(h[1], 2)), diag({-8, 8, -8, 8}));
  EXPECT_EQ(*exact_operator_norm(p.dev), 1);
  for (const char* s : {"++", "--", "+-", "-+"}) {
    Preset q = preset_development("deg4_sharp", s);
    RT l = weighted(q, {Rational(3, 2), Rational(1, 4)});
    EXPECT_NEAR(eigen_lower_bound(q.dev, l, 4), l1_norm(l).get_d(), 1e-9) << s;
  }
}

TEST(Develop, PresetErrors) {
  EXPECT_THROW(preset_development("deg9"), DomainError);
  EXPECT_THROW(preset_development("deg2", "+x"), DomainError);
  EXPECT_EQ(preset_names().size(), 4u);
}

TEST(DevelopProperty, Homomorphism) {
  std::mt19937_64 rng(51);
  for (const auto& name : preset_names()) {
    Preset p = preset_development(name);
    for (int trial = 0; trial < 5; ++trial) {
      RT x = oracle::random_tensor(rng, 2, 5, 6), y = oracle::random_tensor(rng, 2, 5, 6);
      CMatrix lhs = apply_tensor(p.dev, tensor_mul(x.with_trunc(10), y.with_trunc(10), 10));
      CMatrix rhs = apply_tensor(p.dev, x) * apply_tensor(p.dev, y);
      EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-9 * std::max(1.0, rhs.cwiseAbs().maxCoeff())) << name;
    }
    RT b = lie("[e1,e2]");
    CMatrix A = p.dev.M[0], Bm = p.dev.M[1];
    EXPECT_LT((apply_tensor(p.dev, b) - (A * Bm - Bm * A)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(DevelopProperty, ExactHomomorphism) {
  std::mt19937_64 rng(52);
  Preset p = preset_development("deg3");
  for (int trial = 0; trial < 5; ++trial) {
    RT x = oracle::random_tensor(rng, 2, 4, 6), y = oracle::random_tensor(rng, 2, 4, 6);
    EXPECT_EQ(apply_tensor_exact(p.dev, tensor_mul(x.with_trunc(8), y.with_trunc(8), 8)),
              apply_tensor_exact(p.dev, x) * apply_tensor_exact(p.dev, y));
  }
}

TEST(DevelopProperty, NormContraction) {
  std::mt19937_64 rng(53);
  for (const auto& name : preset_names()) {
    Preset p = preset_development(name);
    double nrm = operator_norm(p.dev);
    for (int trial = 0; trial < 8; ++trial) {
      int n = 1 + trial % 5;
      RT x = oracle::random_homogeneous(rng, 2, n, 6);
      if (x.is_zero()) continue;
      double lhs = matrix_norm(apply_tensor(p.dev, x), p.dev.w_norm);
      double rhs = std::pow(nrm, n) * l1_norm(x).get_d();
      EXPECT_LE(lhs, rhs * (1 + 1e-9)) << name << " " << n;
    }
  }
}

TEST(DevelopProperty, BlockDiagonalImagesAreDiagonal) {
  std::mt19937_64 rng(54);
  std::uniform_int_distribution<int> u(-4, 4);
  for (int m = 2; m <= 5; ++m) {
    std::vector<std::vector<std::vector<Rational>>> blocks(2, std::vector<std::vector<Rational>>(2));
    for (auto& letter : blocks) {
      for (auto& b : letter) {
        for (int i = 0; i < m; ++i) b.push_back(Rational(u(rng)));
      }
    }
    Development phi = block_diagonal_embedding<Rational>(m, blocks);
    EXPECT_EQ(phi.k, 2 * m);
    for (const auto& t : hall_basis(2, m).elements) {
      ExactMatrix x = apply_tensor_exact(phi, expand_bracket(t, 2));
      EXPECT_TRUE(x.is_diagonal()) << m << " " << t.to_string();
    }
    RT e1 = RT::letter(2, 1, 1);
    EXPECT_EQ(apply_tensor_exact(phi, e1).is_diagonal(), false);
  }
}

TEST(DevelopProperty, ExteriorPowerRepresentation) {
  std::mt19937_64 rng(55);
  std::uniform_int_distribution<int> u(-3, 3);
  auto random_matrix = [&](int n) {
    ExactMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m(i, j) = G(Rational(u(rng)), Rational(u(rng)));
    }
    return m;
  };
  auto binom = [](int n, int k) {
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  for (int n = 2; n <= 5; ++n) {
    for (int k = 1; k <= n; ++k) {
      ExactMatrix A = random_matrix(n), B = random_matrix(n);
      ExactMatrix rA = exterior_power_rep(A, k), rB = exterior_power_rep(B, k);
      EXPECT_EQ(rA.rows(), binom(n, k));
      EXPECT_EQ(exterior_power_rep(ExactMatrix(A * B - B * A), k), rA * rB - rB * rA) << n << " " << k;
      G trA(0), trR(0);
      for (int i = 0; i < n; ++i) trA += A(i, i);
      for (int i = 0; i < rA.rows(); ++i) trR += rA(i, i);
      EXPECT_EQ(trR, G(binom(n - 1, k - 1)) * trA);
      ExactMatrix D(n, n);
      for (int i = 0; i < n; ++i) D(i, i) = A(i, i);
      EXPECT_TRUE(exterior_power_rep(D, k).is_diagonal());
    }
  }
  CMatrix I = CMatrix::Identity(3, 3);
  EXPECT_LT((exterior_power_rep(I, 2) - 2.0 * CMatrix::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_THROW(exterior_power_rep(I, 4), DomainError);
}

TEST(Develop, ExteriorPowerDevelopmentKeepsDiagonality) {
  Preset p = preset_development("deg3");
  Development w = exterior_power_development(p.dev, 2);
  EXPECT_EQ(w.k, 3);
  EXPECT_TRUE(w.has_exact());
  ExactMatrix x = apply_tensor_exact(w, lie("[e1,[e1,e2]]"));
  EXPECT_TRUE(x.is_diagonal());
  // weights of Lambda^2 are pairwise sums of {4,-2,-2}
  EXPECT_EQ(x, diag({2, 2, -4}));
}

TEST(DevelopProperty, SeriesLevelsMatchSignatureComponents) {
  RT l = lie("e1 + e2 + [e1,e2]", 8);
  for (const auto& name : preset_names()) {
    Preset p = preset_development(name);
    auto levels = developed_signature_levels(p.dev, l, 8);
    for (int n = 0; n <= 8; ++n) {
      CMatrix want = apply_tensor(p.dev, signature_component(l, n));
      EXPECT_LT((levels[static_cast<std::size_t>(n)] - want).cwiseAbs().maxCoeff(), 1e-9 * std::max(1.0, want.cwiseAbs().maxCoeff()))
          << name << " " << n;
    }
  }
}

TEST(DevelopProperty, SeriesAgreesWithMatrixExponential) {
  Preset d2 = preset_development("deg2"), d3 = preset_development("deg3");
  RT l2 = dilate(lie("e1 + e2 + [e1,e2]"), Rational(1, 4));
  RT l3 = dilate(lie("e1 + e2 + [e1,[e1,e2]] + [[e1,e2],e2]"), Rational(1, 8));
  for (auto [dev, l, m] : {std::tuple{d2.dev, l2, 2}, std::tuple{d3.dev, l3, 3}}) {
    GrowthCurve gc = growth_curve(dev, l, m, {0.5, 1.0, 2.0, 4.0}, 40);
    for (const auto& pt : gc.points) {
      EXPECT_TRUE(pt.agree) << m << " " << pt.lambda << " " << pt.series_error;
      EXPECT_LT(pt.series_error, 1e-8);
    }
  }
}

TEST(Develop, GrowthCurveApproachesEigenBound) {
  Preset p = preset_development("deg2");
  GrowthCurve gc = growth_curve(p.dev, lie("e1 + e2 + [e1,e2]"), 2, {2.0, 4.0, 8.0, 16.0}, 40);
  ASSERT_EQ(gc.points.size(), 4u);
  EXPECT_NEAR(gc.points[2].value, 2.0, 0.1);
  EXPECT_LT(std::abs(gc.points[3].value - 2.0), std::abs(gc.points[0].value - 2.0));
  EXPECT_THROW(growth_curve(p.dev, lie("e1"), 1, {0.0}, 4), DomainError);
}

TEST(Develop, PerturbationDecaysLikeInverseLambda) {
  Preset p = preset_development("deg2");
  std::vector<double> lam{2, 4, 8, 16, 32}, dist;
  for (const auto& st : perturbation_track(p.dev, lie("e1 + [e1,e2]"), 2, lam)) {
    dist.push_back(st.distance);
    for (auto t : st.targets) EXPECT_NEAR(std::abs(t.real()), 2.0, 1e-12);
  }
  EXPECT_LE(slope(lam, dist), -0.9);
  EXPECT_THROW(perturbation_track(p.dev, lie("e1"), 2, lam), DomainError);
  EXPECT_THROW(perturbation_track(p.dev, lie("[e1,[e1,e2]]"), 2, lam), DomainError);
}

TEST(Develop, WNormConventions) {
  CMatrix m(2, 2);
  m << 1, -2, 3, 4;
  EXPECT_NEAR(matrix_norm(m, WNorm::l1), 6.0, 1e-15);
  EXPECT_NEAR(matrix_norm(m, WNorm::l2), singular_values(m).back(), 1e-15);
  EXPECT_EQ(parse_wnorm("l2"), WNorm::l2);
  EXPECT_THROW(parse_wnorm("linf"), DomainError);
}

TEST(Develop, ConstructionErrors) {
  EXPECT_THROW(from_matrices({}, WNorm::l1), DomainError);
  EXPECT_THROW(from_matrices({CMatrix::Identity(2, 2), CMatrix::Identity(3, 3)}, WNorm::l1), DomainError);
  EXPECT_THROW(sl_cyclic_embedding<Rational>(3, {{Rational(1), Rational(1)}}), DomainError);
  Preset p = preset_development("deg2");
  EXPECT_THROW(apply_tensor(p.dev, parse_lie_tensor("e3")), DomainError);
}

TEST(Develop, JsonRoundTrip) {
  Preset p = preset_development("deg4_so5");
  nlohmann::json j = to_json(p.dev);
  EXPECT_EQ(j["k"], 5);
  EXPECT_EQ(j["w_norm"], "l2");
  EXPECT_EQ(j["matrices"].size(), 2u);
  Development q = development_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(q.w_norm, WNorm::l2);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ((q.M[i] - p.dev.M[i]).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_THROW(development_from_json(nlohmann::json::parse(R"({"k":2,"matrices":[[[1,0]]]})")), DomainError);
  EXPECT_THROW(development_from_json(nlohmann::json::parse(R"({"matrices":[]})")), DomainError);
}

TEST(Develop, ZeroDevelopmentAndTrivialCurves) {
  Development z = from_matrices({CMatrix::Zero(2, 2)}, WNorm::l1);
  EXPECT_EQ(operator_norm(z), 0.0);
  EXPECT_THROW(eigen_lower_bound(z, RT::letter(1, 1, 1), 1), DomainError);
  Preset p = preset_development("deg2");
  GrowthCurve gc = growth_curve(p.dev, RT(2, 2), 2, {1.0, 4.0}, 10);
  for (const auto& pt : gc.points) {
    EXPECT_EQ(pt.value, 0.0);
    EXPECT_TRUE(pt.agree);
  }
  for (const auto& st : perturbation_track(p.dev, lie("[e1,e2]"), 2, {1.0, 10.0})) EXPECT_EQ(st.distance, 0.0);
  Development nil = from_matrices({CMatrix(CMatrix::Zero(3, 3)), CMatrix(CMatrix::Zero(3, 3))}, WNorm::l1);
  nil.M[0](0, 1) = 1.0;
  nil.M[1](1, 2) = 1.0;
  EXPECT_EQ(eigen_lower_bound(nil, lie("[e1,e2]"), 2), 0.0);
}

TEST(DevelopProperty, EigenBoundNeverExceedsNorm) {
  std::mt19937_64 rng(56);
  std::normal_distribution<double> g;
  std::vector<Development> devs;
  for (const auto& name : preset_names()) devs.push_back(preset_development(name).dev);
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<CMatrix> mats;
    for (int i = 0; i < 2; ++i) {
      CMatrix M(3, 3);
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) M(r, c) = Complex(g(rng), g(rng));
      }
      mats.push_back(M);
    }
    devs.push_back(from_matrices(mats, trial % 2 ? WNorm::l1 : WNorm::l2));
  }
  for (int m = 2; m <= 4; ++m) {
    for (const auto& t : hall_basis(2, m).elements) {
      RT h = expand_bracket(t, 2);
      for (const auto& dev : devs) EXPECT_LE(eigen_lower_bound(dev, h, m), l1_norm(h).get_d() * (1 + 1e-9));
    }
  }
}
