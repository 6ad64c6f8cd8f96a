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

#include "alpn/solver.hpp"

#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "alpn/cone.hpp"
#include "alpn/generator.hpp"

namespace alpn {
namespace {

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double value : values) v(i++) = value;
  return v;
}

// maximize x_2 + ... subject to x_1 = 1 over one K^l block.
SocpInstance unit_slice(std::size_t l) {
  Matrix a = Matrix::Zero(1, static_cast<Eigen::Index>(l));
  a(0, 0) = 1;
  Vector c = Vector::Ones(static_cast<Eigen::Index>(l));
  c(0) = 0;
  return SocpInstance(a, vec({1}), c, ConeStructure({l}));
}

void expect_gamma_chain(const SolveReport& report) {
  const double tol = 1e-8;
  for (std::size_t k = 0; k < report.log.size(); ++k) {
    const IterationRecord& r = report.log[k];
    EXPECT_LE(r.zeta, r.gamma + tol) << "k=" << k;
    EXPECT_LE(report.objective, r.gamma + 1e-6) << "k=" << k;
    if (k + 1 < report.log.size()) {
      EXPECT_LE(report.log[k + 1].gamma, r.zeta + tol) << "k=" << k;
      EXPECT_LE(r.cuts_total, report.log[k + 1].cuts_total);
    }
  }
}

TEST(GammaUpdateTest, Examples) {
  const Vector b = vec({1, 2});
  EXPECT_DOUBLE_EQ(gamma_update(4.0, 2.0, b, b), 2.0);
  EXPECT_DOUBLE_EQ(gamma_update(4.0, 2.0, vec({2, 0}), vec({0, 0})), 0.0);
  EXPECT_THROW(gamma_update(2.0, 2.0, b, b), std::domain_error);
}

TEST(CheckFeasibilityTest, Examples) {
  const GeneratedInstance g = generate(3, {1, 3, 2}, 5);
  const FeasibilityCheck at_axis = check_feasibility(g.x_tilde, g.instance, 1e-4);
  EXPECT_TRUE(at_axis.feasible);
  EXPECT_EQ(at_axis.residual, 0.0);

  const FeasibilityCheck at_zero =
      check_feasibility(Vector::Zero(6), g.instance, 1e-4);
  EXPECT_FALSE(at_zero.feasible);
  EXPECT_DOUBLE_EQ(at_zero.residual, g.instance.b().norm());

  const Vector x = vec({1, -3, 4});
  const SocpInstance ident(Matrix::Identity(3, 3), x, Vector::Zero(3),
                           ConeStructure({3}));
  const FeasibilityCheck out = check_feasibility(x, ident, 1e-4);
  EXPECT_FALSE(out.feasible);
  EXPECT_DOUBLE_EQ(out.residual, 4.0);
}

TEST(InitialGammaTest, Examples) {
  SolverParams params;
  params.gamma0 = 100.0;
  EXPECT_EQ(initial_gamma(unit_slice(3), params), 100.0);

  const SocpInstance zero_c(Matrix::Ones(1, 2), vec({1}), Vector::Zero(2),
                            ConeStructure({2}));
  EXPECT_EQ(initial_gamma(zero_c, {}), 1.0);

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const GeneratedInstance g = generate(5, {5, 5, 5, 5}, seed);
    EXPECT_GT(initial_gamma(g.instance, {}), g.instance.c().dot(g.x_tilde));
  }
}

TEST(SolveTest, TwoDimensionalSlice) {
  const SolveReport r = solve(unit_slice(2));
  ASSERT_EQ(r.status, SolveStatus::kOptimal) << r.message;
  EXPECT_NEAR(r.x(0), 1.0, 1e-6);
  EXPECT_NEAR(r.x(1), 1.0, 1e-6);
  EXPECT_NEAR(r.objective, 1.0, 1e-6);
  // E_0 is exact for K^2: no cut is ever added.
  EXPECT_EQ(r.final_hyperplanes, r.initial_hyperplanes);
  EXPECT_LE(r.iterations, 2u);
  ASSERT_TRUE(r.certificate.has_value());
  EXPECT_LE(r.certificate->residuals.duality_gap, 1e-6);
  expect_gamma_chain(r);
}

TEST(SolveTest, ThreeDimensionalSlice) {
  const SolveReport r = solve(unit_slice(3));
  ASSERT_EQ(r.status, SolveStatus::kOptimal) << r.message;
  EXPECT_NEAR(r.objective, std::sqrt(2.0), 1e-4);
  EXPECT_NEAR(r.x(1), 1.0 / std::sqrt(2.0), 1e-2);
  EXPECT_NEAR(r.x(2), 1.0 / std::sqrt(2.0), 1e-2);
  EXPECT_GT(r.final_hyperplanes, r.initial_hyperplanes);
  ASSERT_TRUE(r.certificate.has_value());
  EXPECT_NEAR(r.certificate->y(0), std::sqrt(2.0), 1e-3);
  expect_gamma_chain(r);
}

TEST(SolveTest, RayBlocksNeedFewIterations) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const GeneratedInstance g = generate(10, std::vector<std::size_t>(20, 1), seed);
    const SolveReport r = solve(g.instance);
    ASSERT_EQ(r.status, SolveStatus::kOptimal) << r.message;
    EXPECT_LE(r.iterations, 10u);
    EXPECT_EQ(r.final_hyperplanes, 20u);
    expect_gamma_chain(r);
  }
}

TEST(SolveTest, GeneratedInstancesReachOptimal) {
  const std::vector<std::vector<std::size_t>> patterns = {
      {5, 5, 5, 5}, {20}, {2, 3, 4, 1, 1}, {8, 8}};
  for (const auto& dims : patterns) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const GeneratedInstance g = generate(5, dims, seed);
      const SolveReport r = solve(g.instance);
      ASSERT_EQ(r.status, SolveStatus::kOptimal) << r.message;
      EXPECT_LE(r.residuals.primal_eq, 1e-4);
      EXPECT_LE(r.residuals.primal_cone, 1e-4);
      EXPECT_DOUBLE_EQ(r.objective, r.log.back().zeta);
      EXPECT_EQ(r.log.size(), r.iterations);
      EXPECT_TRUE(std::isnan(r.log.back().gamma_next));
      std::size_t stored = 0;
      for (std::size_t count : r.final_cut_count) stored += count;
      EXPECT_EQ(stored + g.instance.cone().num_ray_blocks(), r.final_hyperplanes);
      expect_gamma_chain(r);
    }
  }
}

TEST(SolveTest, DegenerateApexBlocks) {
  // Relaxations here park whole blocks at the apex, where every cut of the
  // block is tight; the inner active set must not cycle.
  const GeneratedInstance g = generate(10, {10, 10, 10, 10}, 101);
  const SolveReport r = solve(g.instance);
  ASSERT_EQ(r.status, SolveStatus::kOptimal) << r.message;
  expect_gamma_chain(r);
}

TEST(SolveTest, StepDominatesRhsDistance) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const GeneratedInstance g = generate(5, {4, 4, 4}, seed);
    const SolveReport r = solve(g.instance);
    ASSERT_EQ(r.status, SolveStatus::kOptimal) << r.message;
    for (const IterationRecord& rec : r.log) {
      if (std::isnan(rec.gamma_next)) continue;
      EXPECT_GE(std::abs(rec.gamma - rec.gamma_next), rec.step_norm - 1e-8);
      EXPECT_GE(rec.step_norm, rec.b_dist - 1e-12);
    }
  }
}

TEST(SolveTest, LowInitialGammaEscalates) {
  SolverParams params;
  params.gamma0 = -50.0;
  const SolveReport r = solve(unit_slice(3), params);
  ASSERT_EQ(r.status, SolveStatus::kOptimal) << r.message;
  EXPECT_GT(r.gamma_escalations, 0u);
  EXPECT_NEAR(r.objective, std::sqrt(2.0), 1e-4);
}

TEST(SolveTest, UnboundedRelaxation) {
  // x_1 = x_2 >= 0 with objective x_1 + x_2 has no upper bound.
  Matrix a(1, 2);
  a << 1, -1;
  const SocpInstance inst(a, vec({0}), vec({1, 1}), ConeStructure({1, 1}));
  const SolveReport r = solve(inst);
  EXPECT_EQ(r.status, SolveStatus::kRelaxationUnbounded);
  EXPECT_EQ(r.gamma_escalations, SolverParams{}.max_gamma_escalations);
}

TEST(SolveTest, IterationCap) {
  SolverParams params;
  params.max_outer_iterations = 1;
  const GeneratedInstance g = generate(5, {5, 5, 5, 5}, 1);
  const SolveReport r = solve(g.instance, params);
  EXPECT_EQ(r.status, SolveStatus::kIterationLimit);
  EXPECT_EQ(r.iterations, 1u);
  EXPECT_FALSE(r.certificate.has_value());
}

TEST(SolveTest, InactiveCutsOption) {
  SolverParams params;
  params.add_inactive_cuts = true;
  const GeneratedInstance g = generate(5, {3, 3, 3, 3}, 2);
  const SolveReport strict = solve(g.instance, params);
  const SolveReport lean = solve(g.instance);
  ASSERT_EQ(strict.status, SolveStatus::kOptimal) << strict.message;
  ASSERT_EQ(lean.status, SolveStatus::kOptimal) << lean.message;
  EXPECT_NEAR(strict.objective, lean.objective, 1e-3 * (1.0 + std::abs(lean.objective)));
}

TEST(SolveTest, ColdStartMatchesWarmStart) {
  SolverParams cold;
  cold.warm_start = false;
  const GeneratedInstance g = generate(5, {4, 4, 4, 4}, 3);
  const SolveReport a = solve(g.instance);
  const SolveReport b = solve(g.instance, cold);
  ASSERT_EQ(a.status, SolveStatus::kOptimal);
  ASSERT_EQ(b.status, SolveStatus::kOptimal);
  EXPECT_NEAR(a.objective, b.objective, 1e-3 * (1.0 + std::abs(a.objective)));
}

TEST(SolveTest, Deterministic) {
  const GeneratedInstance g = generate(6, {4, 4, 2, 1}, 9);
  const SolveReport a = solve(g.instance);
  const SolveReport b = solve(g.instance);
  ASSERT_EQ(a.log.size(), b.log.size());
  EXPECT_EQ(a.x, b.x);
  for (std::size_t k = 0; k < a.log.size(); ++k) {
    EXPECT_EQ(a.log[k].gamma, b.log[k].gamma);
    EXPECT_EQ(a.log[k].qp_inner_iters, b.log[k].qp_inner_iters);
  }
}

TEST(SolveTest, RejectsInvalidParams) {
  SolverParams params;
  params.tol_feas = -1;
  EXPECT_THROW(solve(unit_slice(2), params), std::invalid_argument);
}

}  // namespace
}  // namespace alpn
