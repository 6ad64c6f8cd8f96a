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

// Adaptive LP-Newton outer loop.
//
// Each iteration projects w = (gamma; b) onto Abar * K_E. The projection
// wbar = (zeta; b_k) = Abar x defines a supporting hyperplane with normal
// w - wbar; where it meets the line {(t; b)} is the next gamma. Blocks of x
// outside their second-order cone receive their deepest cut, which tightens
// K_E before the next projection. The loop stops once
//
//   max{ ||A x - b||, max_i (||xbar^i|| - x_1^i) } <= tol_feas.

#ifndef ALPN_SOLVER_HPP_
#define ALPN_SOLVER_HPP_

#include "alpn/model.hpp"

namespace alpn {

/// zeta - ||b - b_k||^2 / (gamma - zeta): the first coordinate where the line
/// {(t; b)} crosses the hyperplane through (zeta; b_k) with normal
/// (gamma - zeta; b - b_k). Throws std::domain_error when
/// gamma - zeta < min_gap.
double gamma_update(double gamma, double zeta, const Vector& b,
                    const Vector& bk, double min_gap = 1e-8);

struct FeasibilityCheck {
  bool feasible = false;
  double residual = 0.0;
};

/// residual = max(||A x - b||, max_i soc_residual(x^i), 0).
FeasibilityCheck check_feasibility(const Vector& x,
                                   const SocpInstance& instance, double tol);

/// params.gamma0 when set, else 1 + ||c|| (1 + ||b||) kappa(A), with kappa the
/// 2-norm condition number of A clamped to [1, 1e8].
double initial_gamma(const SocpInstance& instance, const SolverParams& params);

SolveReport solve(const SocpInstance& instance,
                  const SolverParams& params = {});

}  // namespace alpn

#endif  // ALPN_SOLVER_HPP_
