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

// Dual recovery along the primal trajectory and KKT certification.
//
// The supporting hyperplane at iteration k has normal (gamma - c^T x; b - A x).
// Rescaling it to first coordinate 1 gives (1; -y), so
//
//   y = -(b - A x) / (gamma - c^T x),   eta = A^T y - c,
//
// and (x, y, eta) is checked against  A x = b,  eta in K,  x in K,
// eta^T x = 0  (stationarity holds by construction of eta).

#ifndef ALPN_DUAL_HPP_
#define ALPN_DUAL_HPP_

#include <optional>

#include "alpn/model.hpp"

namespace alpn {

enum class DualRecoveryStatus { kOk, kDualUnbounded };

struct DualRecovery {
  DualRecoveryStatus status = DualRecoveryStatus::kOk;
  std::optional<Vector> y;
};

/// y from the hyperplane normal. The denominator gamma - c^T x counts as zero
/// below tol_lin * (1 + |gamma|); then y = 0 if ||A x - b|| <= tol_lin and the
/// dual is reported unbounded otherwise.
DualRecovery recover_dual(const Vector& x, double gamma,
                          const SocpInstance& instance, double tol_lin = 1e-8);

/// eta = A^T y - c.
Vector dual_slack(const Vector& y, const SocpInstance& instance);

ResidualBundle kkt_residuals(const Vector& x, const Vector& y,
                             const SocpInstance& instance);

/// Scaled KKT test at tolerance tol. Primal residuals are compared against
/// tol directly (the same test that stops the primal loop); the dual cone
/// residual against tol (1 + ||eta||); complementarity against
/// tol (1 + ||x||)(1 + ||eta||); the gap against that plus tol ||y||, since
/// b^T y - c^T x = eta^T x + (b - A x)^T y.
bool kkt_satisfied(const ResidualBundle& r, const Vector& x, const Vector& y,
                   const Vector& eta, double tol);

/// Certificate for (x, gamma) when recover_dual yields y and the triple passes
/// kkt_satisfied.
std::optional<DualCertificate> certify(const Vector& x, double gamma,
                                       const SocpInstance& instance,
                                       double tol, double tol_lin = 1e-8);

/// Certificate for an explicit dual estimate y paired with x.
std::optional<DualCertificate> certify_dual(const Vector& x, const Vector& y,
                                            const SocpInstance& instance,
                                            double tol);

}  // namespace alpn

#endif  // ALPN_DUAL_HPP_
