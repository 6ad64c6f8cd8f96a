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

#include <algorithm>
#include <cmath>

#include "alpn/cone.hpp"

namespace alpn {

DualRecovery recover_dual(const Vector& x, double gamma,
                          const SocpInstance& instance, double tol_lin) {
  const double denom = gamma - instance.c().dot(x);
  const Vector gap = instance.b() - instance.A() * x;
  if (std::abs(denom) > tol_lin * (1.0 + std::abs(gamma))) {
    return {DualRecoveryStatus::kOk, Vector(-gap / denom)};
  }
  if (gap.norm() > tol_lin) return {DualRecoveryStatus::kDualUnbounded, {}};
  return {DualRecoveryStatus::kOk,
          Vector::Zero(static_cast<Eigen::Index>(instance.num_rows()))};
}

Vector dual_slack(const Vector& y, const SocpInstance& instance) {
  return instance.A().transpose() * y - instance.c();
}

ResidualBundle kkt_residuals(const Vector& x, const Vector& y,
                             const SocpInstance& instance) {
  const Vector eta = dual_slack(y, instance);
  const ConeStructure& cone = instance.cone();
  ResidualBundle r;
  r.primal_eq = (instance.A() * x - instance.b()).norm();
  r.primal_cone = std::max(0.0, max_soc_residual(x, cone));
  r.dual_cone = std::max(0.0, max_soc_residual(eta, cone));
  r.complementarity = std::abs(eta.dot(x));
  r.duality_gap = std::abs(instance.c().dot(x) - instance.b().dot(y));
  return r;
}

bool kkt_satisfied(const ResidualBundle& r, const Vector& x, const Vector& y,
                   const Vector& eta, double tol) {
  const double pair_scale = (1.0 + x.norm()) * (1.0 + eta.norm());
  return r.primal_eq <= tol && r.primal_cone <= tol &&
         r.dual_cone <= tol * (1.0 + eta.norm()) &&
         r.complementarity <= tol * pair_scale &&
         r.duality_gap <= tol * (pair_scale + y.norm());
}

std::optional<DualCertificate> certify_dual(const Vector& x, const Vector& y,
                                            const SocpInstance& instance,
                                            double tol) {
  DualCertificate cert{y, dual_slack(y, instance), kkt_residuals(x, y, instance)};
  if (!kkt_satisfied(cert.residuals, x, cert.y, cert.eta, tol)) {
    return std::nullopt;
  }
  return cert;
}

std::optional<DualCertificate> certify(const Vector& x, double gamma,
                                       const SocpInstance& instance,
                                       double tol, double tol_lin) {
  const DualRecovery rec = recover_dual(x, gamma, instance, tol_lin);
  if (rec.status != DualRecoveryStatus::kOk || !rec.y) return std::nullopt;
  return certify_dual(x, *rec.y, instance, tol);
}

}  // namespace alpn
