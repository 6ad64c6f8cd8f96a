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

// Reference computations for tests. Nothing here is used by the solver.

#ifndef ALPN_ORACLE_HPP_
#define ALPN_ORACLE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "alpn/model.hpp"
#include "alpn/projection.hpp"

namespace alpn::oracle {

inline constexpr std::size_t kMaxEnumeratedConstraints = 12;

/// Projection of w onto Abar * K_E by enumerating every subset of constraints
/// as an active set. Each subset's KKT system
///
///   [Abar^T Abar  -G_W^T] [x     ]   [Abar^T w]
///   [G_W           0    ] [lambda] = [0       ]
///
/// is solved by a truncated SVD; candidates that are primal feasible with
/// nonnegative multipliers compete on ||Abar x - w||^2. Throws
/// std::length_error above kMaxEnumeratedConstraints constraints.
ProjectionResult brute_force_project(const StackedMatrix& abar,
                                     const CutSet& cuts, const Vector& w);

/// Minimum of x_1 + v^T xbar over `samples` points v drawn uniformly from the
/// unit ball, optionally together with v = -xbar / ||xbar||.
double sampled_cut_min(const Vector& xi, std::size_t samples,
                       std::uint64_t seed = 1, bool include_analytic = true);

struct TinyAnalyticCase {
  std::string name;
  SocpInstance instance;
  Vector known_x_star;
  Vector known_y_star;
  double known_objective = 0.0;
};

/// Hand-solved instances: maximize x_2 over K^2 with x_1 = 1; maximize
/// x_2 + x_3 over K^3 with x_1 = 1; and a 2 x 3 linear program. Throws
/// std::logic_error if a stored triple fails its KKT residual check.
std::vector<TinyAnalyticCase> analytic_cases();

}  // namespace alpn::oracle

#endif  // ALPN_ORACLE_HPP_
