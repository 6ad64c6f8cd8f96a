// Copyright 2026 The ALPN Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "alpn/dual.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "alpn/generator.hpp"
#include "alpn/solver.hpp"

namespace alpn {
namespace {

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double value : values) v(i++) = value;
  return v;
}

SocpInstance k3_slice() {
  Matrix a = Matrix::Zero(1, 3);
  a(0, 0) = 1;
  return SocpInstance(a, vec({1}), vec({0, 1, 1}), ConeStructure({3}));
}

TEST(RecoverDualTest, FeasibleXGivesZero) {
  const SocpInstance inst = k3_slice();
  const DualRecovery r = recover_dual(vec({1, 0, 0}), 5.0, inst);
  ASSERT_EQ(r.status, DualRecoveryStatus::kOk);
  EXPECT_TRUE(r.y->isZero(0));
}

TEST(RecoverDualTest, HandExample) {
  // b - A x = (4, -2) and gamma - c^T x = 2.
  const SocpInstance inst(Matrix::Identity(2, 2), vec({4, -2}), vec({1, 0}),
                          ConeStructure({1, 1}));
  const DualRecovery r = recover_dual(vec({0, 0}), 2.0, inst);
  ASSERT_EQ(r.status, DualRecoveryStatus::kOk);
  EXPECT_EQ(*r.y, vec({-2, 1}));
}

TEST(RecoverDualTest, VerticalNormalIsDualUnbounded) {
  const SocpInstance inst(Matrix::Identity(2, 2), vec({4, -2}), vec({1, 0}),
                          ConeStructure({1, 1}));
  const DualRecovery r = recover_dual(vec({3, 0}), 3.0, inst);
  EXPECT_EQ(r.status, DualRecoveryStatus::kDualUnbounded);
  EXPECT_FALSE(r.y.has_value());
  EXPECT_FALSE(certify(vec({3, 0}), 3.0, inst, 1e-4).has_value());
}

TEST(KktResidualsTest, AnalyticPair) {
  const SocpInstance inst = k3_slice();
  const double h = 1.0 / std::sqrt(2.0);
  const Vector x = vec({1, h, h});
  const Vector y = vec({std::sqrt(2.0)});
  const Vector eta = dual_slack(y, inst);
  EXPECT_LE((eta - vec({std::sqrt(2.0), -1, -1})).norm(), 1e-15);
  const ResidualBundle r = kkt_residuals(x, y, inst);
  EXPECT_LE(r.max(), 1e-12);
}

TEST(KktResidualsTest, InteriorPairIsNotComplementary) {
  const GeneratedInstance g = generate(4, {1, 3, 2}, 17);
  const Vector e = Vector::Ones(4);
  const ResidualBundle r = kkt_residuals(g.x_tilde, e, g.instance);
  EXPECT_EQ(r.primal_eq, 0.0);
  EXPECT_EQ(r.primal_cone, 0.0);
  EXPECT_EQ(r.dual_cone, 0.0);
  // eta = s_tilde, so eta^T x_tilde counts the blocks.
  EXPECT_NEAR(r.complementarity, 3.0, 1e-12);
  EXPECT_FALSE(certify_dual(g.x_tilde, e, g.instance, 1e-4).has_value());
}

TEST(KktResidualsTest, ZeroInstance) {
  const SocpInstance inst(Matrix::Ones(1, 2), vec({0}), vec({0, 0}),
                          ConeStructure({2}));
  EXPECT_EQ(kkt_residuals(vec({0, 0}), vec({0}), inst).max(), 0.0);
}

TEST(KktResidualsTest, StationarityIsExact) {
  const GeneratedInstance g = generate(5, {3, 3, 1}, 4);
  const Vector y = vec({0.5, -1, 2, 0.25, 3});
  const Vector eta = dual_slack(y, g.instance);
  EXPECT_EQ(-g.instance.c() + g.instance.A().transpose() * y - eta,
            Vector::Zero(7));
}

TEST(CertifyTest, OptimalTwoDimensionalSlice) {
  Matrix a(1, 2);
  a << 1, 0;
  const SocpInstance inst(a, vec({1}), vec({0, 1}), ConeStructure({2}));
  // End of the gamma chain: gamma = 1 + eps projects to x = (1 + eps/2) (1, 1),
  // whose hyperplane gives y = 1 and eta = (1, -1) on the boundary of K^2.
  const double eps = 1e-6;
  const Vector x = (1.0 + eps / 2) * vec({1, 1});
  const auto cert = certify(x, 1.0 + eps, inst, 1e-4);
  ASSERT_TRUE(cert.has_value());
  EXPECT_NEAR(cert->y(0), 1.0, 1e-9);
  EXPECT_LE(cert->residuals.duality_gap, 1e-6);
  EXPECT_EQ(cert->residuals.dual_cone, 0.0);
  // The exact optimum with gamma above it recovers y = 0, which is no
  // certificate.
  EXPECT_FALSE(certify(vec({1, 1}), 1.0 + eps, inst, 1e-4).has_value());
}

TEST(CertifyTest, SolverCertificates) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const GeneratedInstance g = generate(5, {4, 4, 4, 1, 1}, seed);
    const SolveReport r = solve(g.instance);
    ASSERT_EQ(r.status, SolveStatus::kOptimal) << r.message;
    ASSERT_TRUE(r.certificate.has_value());
    const DualCertificate& cert = *r.certificate;
    EXPECT_EQ(cert.eta, dual_slack(cert.y, g.instance));
    const double tau = 1e-4;
    // Weak duality up to the feasibility tolerance.
    EXPECT_GE(g.instance.b().dot(cert.y),
              r.objective - tau * (1.0 + std::abs(r.objective)) *
                                (1.0 + cert.y.norm()));
    EXPECT_LE(cert.residuals.complementarity,
              10 * tau * (1.0 + r.x.norm()) * (1.0 + cert.eta.norm()));
    EXPECT_GE(cert.residuals.primal_eq, 0.0);
  }
}

TEST(KktSatisfiedTest, ScalesWithMagnitudes) {
  ResidualBundle r;
  r.complementarity = 5e-4;
  const Vector big = Vector::Constant(3, 10.0);
  const Vector y = vec({1});
  EXPECT_TRUE(kkt_satisfied(r, big, y, big, 1e-4));
  EXPECT_FALSE(kkt_satisfied(r, Vector::Zero(3), y, Vector::Zero(3), 1e-4));
}

}  // namespace
}  // namespace alpn
