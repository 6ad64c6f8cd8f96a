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

// Euclidean projection onto the polyhedral cone image Abar * K_E.
//
// The projection is computed from the least-squares problem
//
//   minimize    ||Abar x - w||^2
//   subject to  g_j^T x >= 0   for every constraint j of the cut set,
//
// with a primal active-set method: each inner step minimizes over the affine
// set where the working constraints hold with equality, moves toward that
// minimizer until the first blocking constraint, and releases the working
// constraint with the most negative multiplier once stationary. Ties are
// broken by the lowest constraint id.

#ifndef ALPN_PROJECTION_HPP_
#define ALPN_PROJECTION_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "alpn/model.hpp"

namespace alpn {

class ProjectionError : public std::runtime_error {
 public:
  enum class Kind { kInnerIterationLimit, kNumericalFailure };

  ProjectionError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Constraint ids held at equality, plus an optional starting point. An empty
/// `x` starts from the origin, where every constraint is tight.
struct WorkingSet {
  std::vector<std::size_t> constraints;
  Vector x;
};

struct ProjectionResult {
  Vector x;
  Vector wbar;
  /// One entry per constraint id; zero off the working set.
  Vector multipliers;
  std::vector<std::size_t> active;
  std::size_t inner_iterations = 0;
  /// ||Abar x - w||^2 at the returned point.
  double objective = 0.0;
  /// ||Abar^T (Abar x - w) - G^T lambda||.
  double kkt_residual = 0.0;
  /// Largest increase of the inner objective across one inner step; zero up
  /// to rounding for a monotone run.
  double max_objective_increase = 0.0;

  WorkingSet warm_start() const { return {active, x}; }
};

/// Projects w onto Abar * K_E. With `warm`, blocks of warm->x that violate
/// some constraint of `cuts` are reset to zero and the remaining tight
/// working constraints seed the working set. Throws ProjectionError.
ProjectionResult project(const StackedMatrix& abar, const CutSet& cuts,
                         const Vector& w,
                         const std::optional<WorkingSet>& warm,
                         const SolverParams& params);

/// Minimum-norm minimizer of ||Abar x - w||^2 subject to g_j^T x = 0 for the
/// listed constraint ids. Throws ProjectionError(kNumericalFailure) when the
/// listed constraint rows are linearly dependent.
Vector solve_eq_ls(const StackedMatrix& abar, const CutSet& cuts,
                   const std::vector<std::size_t>& rows, const Vector& w);

}  // namespace alpn

#endif  // ALPN_PROJECTION_HPP_
