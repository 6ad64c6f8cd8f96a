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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "alpn/cone.hpp"
#include "alpn/dual.hpp"
#include "alpn/projection.hpp"

namespace alpn {

double gamma_update(double gamma, double zeta, const Vector& b,
                    const Vector& bk, double min_gap) {
  const double gap = gamma - zeta;
  if (!(gap >= min_gap)) {
    throw std::domain_error("gamma update needs gamma - zeta >= " +
                            std::to_string(min_gap));
  }
  return zeta - (b - bk).squaredNorm() / gap;
}

FeasibilityCheck check_feasibility(const Vector& x,
                                   const SocpInstance& instance, double tol) {
  const double eq = (instance.A() * x - instance.b()).norm();
  const double cone = max_soc_residual(x, instance.cone());
  const double residual = std::max({eq, cone, 0.0});
  return {residual <= tol, residual};
}

double initial_gamma(const SocpInstance& instance, const SolverParams& params) {
  if (params.gamma0) return *params.gamma0;
  const Eigen::JacobiSVD<Matrix> svd(instance.A());
  const Vector& sv = svd.singularValues();
  double kappa = 1e8;
  if (sv.size() > 0 && sv(sv.size() - 1) > 0) {
    kappa = std::clamp(sv(0) / sv(sv.size() - 1), 1.0, 1e8);
  }
  return 1.0 + instance.c().norm() * (1.0 + instance.b().norm()) * kappa;
}

namespace {

// Certificate for an optimal x: first from the final (x, gamma) pair, else
// from the latest logged hyperplane normal. When the last projection landed
// exactly on the line, the final denominator vanishes while the previous
// hyperplane still supports the final point.
std::optional<DualCertificate> attach_certificate(
    const Vector& x, double gamma, std::size_t k,
    const std::vector<IterationRecord>& log, const SocpInstance& instance,
    const SolverParams& params) {
  if (auto cert = certify(x, gamma, instance, params.tol_feas, params.tol_lin)) {
    cert->source_iteration = k;
    return cert;
  }
  for (auto it = log.rbegin(); it != log.rend(); ++it) {
    if (it->y.size() == 0) continue;
    if (auto cert = certify_dual(x, it->y, instance, params.tol_feas)) {
      cert->source_iteration = it->k;
      return cert;
    }
    break;
  }
  return std::nullopt;
}

}  // namespace

SolveReport solve(const SocpInstance& instance, const SolverParams& params) {
  params.validate();
  const auto started = std::chrono::steady_clock::now();

  const StackedMatrix abar = assemble_stacked(instance);
  const ConeStructure& cone = instance.cone();
  const Vector& b = instance.b();
  const auto m = static_cast<Eigen::Index>(instance.num_rows());
  const std::size_t cap = params.outer_iteration_cap(instance.num_vars());

  CutSet cuts = initial_cuts(cone);
  SolveReport report;
  report.initial_hyperplanes = cuts.num_constraints();
  double gamma = initial_gamma(instance, params);
  report.initial_gamma = gamma;

  std::optional<WorkingSet> warm;
  bool newton_step_taken = false;
  std::size_t stalled = 0;
  std::size_t k = 0;
  Vector x = Vector::Zero(static_cast<Eigen::Index>(instance.num_vars()));
  IterateState state;

  for (;;) {
    if (k >= cap) {
      report.status = SolveStatus::kIterationLimit;
      report.message = "outer iteration cap of " + std::to_string(cap) +
                       " reached; last primal residual " +
                       (report.log.empty()
                            ? std::string("n/a")
                            : std::to_string(report.log.back().primal_residual));
      break;
    }

    state.k = k;
    state.gamma = gamma;
    state.w.resize(m + 1);
    state.w(0) = gamma;
    state.w.tail(m) = b;

    ProjectionResult proj;
    try {
      proj = project(abar, cuts, state.w,
                     params.warm_start ? warm : std::nullopt, params);
    } catch (const ProjectionError& e) {
      report.status = SolveStatus::kNumericalFailure;
      report.message = std::string("projection failed: ") + e.what();
      break;
    }
    x = proj.x;
    state.wbar = proj.wbar;
    state.x = proj.x;
    state.active = proj.active;
    const double zeta = state.zeta();
    // Rounding level of w - wbar; gaps below it carry no slope information.
    const double noise =
        1e-12 * (1.0 + state.w.norm() + abar.matrix().norm() * x.norm());
    const double gap_floor = std::max(noise, 1e-12 * (1.0 + std::abs(gamma)));
    if (!newton_step_taken &&
        (zeta > gamma || (state.w - state.wbar).norm() <= noise)) {
      // Either w lies in Abar K_E or the projection sits above the line: in
      // both cases gamma is no upper bound on the relaxation.
      if (report.gamma_escalations >= params.max_gamma_escalations) {
        report.status = SolveStatus::kRelaxationUnbounded;
        report.message = "gamma escalation exhausted";
        break;
      }
      ++report.gamma_escalations;
      gamma += (params.gamma_escalation_factor - 1.0) *
               std::max(1.0, std::abs(gamma));
      warm.reset();
      continue;
    }
    if (zeta > gamma + params.tol_lin * (1.0 + std::abs(gamma))) {
      report.status = SolveStatus::kNumericalFailure;
      report.message = "projection violated zeta <= gamma";
      break;
    }

    IterationRecord rec;
    rec.k = k;
    rec.gamma = gamma;
    rec.zeta = zeta;
    rec.b_dist = (state.wbar.tail(m) - b).norm();
    rec.normal = state.w - state.wbar;
    rec.step_norm = rec.normal.norm();
    rec.gamma_next = std::numeric_limits<double>::quiet_NaN();
    rec.cuts_total = cuts.num_constraints();
    rec.qp_inner_iters = proj.inner_iterations;
    const FeasibilityCheck feas = check_feasibility(x, instance, params.tol_feas);
    rec.primal_residual = feas.residual;
    const double denom = gamma - instance.c().dot(x);
    if (std::abs(denom) > params.tol_lin * (1.0 + std::abs(gamma))) {
      rec.y = -(b - instance.A() * x) / denom;
    }

    if (feas.feasible) {
      report.log.push_back(std::move(rec));
      report.status = SolveStatus::kOptimal;
      break;
    }

    double gamma_next = gamma;
    if (gamma - zeta <= gap_floor) {
      if (rec.b_dist > params.tol_lin * (1.0 + b.norm()) + noise) {
        // Vertical hyperplane: the relaxation has no point on the line.
        report.log.push_back(std::move(rec));
        report.status = SolveStatus::kDualUnbounded;
        report.message = "hyperplane normal has zero objective component";
        break;
      }
      // Otherwise gamma already equals the relaxation value; only new cuts
      // can lower it.
    } else {
      gamma_next = gamma_update(gamma, zeta, b, state.wbar.tail(m), gap_floor);
      newton_step_taken = true;
    }

    for (std::size_t i = 0; i < cone.num_blocks(); ++i) {
      if (cone.block_dim(i) < 2) continue;
      const auto xi = block_view(x, cone, i);
      const CutVector cut = most_violated_cut(i, xi);
      if (!params.add_inactive_cuts && cut_value(cut, xi) >= -params.tol_qp) {
        continue;
      }
      if (cuts.add(cut, params.dedup_tol)) ++rec.cuts_added;
    }
    rec.gamma_next = gamma_next;
    const std::size_t rec_cuts_added = rec.cuts_added;
    report.log.push_back(std::move(rec));

    // Cut-only iterations (gamma pinned at the relaxation value) still make
    // progress; a stall is an iteration that neither moves gamma nor cuts.
    if (gamma - gamma_next < 1e-14 * (1.0 + std::abs(gamma)) &&
        rec_cuts_added == 0) {
      if (++stalled >= params.stall_window) {
        report.status = SolveStatus::kNumericalFailure;
        report.message = "no progress in gamma or cuts for " +
                         std::to_string(params.stall_window) + " iterations";
        break;
      }
    } else {
      stalled = 0;
    }

    warm = proj.warm_start();
    gamma = gamma_next;
    ++k;
  }

  report.x = x;
  // zeta is c^T x as evaluated inside wbar = Abar x; reuse it so the report
  // and the log agree bit for bit.
  report.objective = state.wbar.size() > 0 ? state.zeta() : instance.c().dot(x);
  report.iterations = report.log.size();
  report.final_hyperplanes = cuts.num_constraints();
  report.final_cut_count.assign(cone.num_blocks(), 0);
  for (const CutVector& cut : cuts.cuts()) ++report.final_cut_count[cut.block];

  if (report.status == SolveStatus::kOptimal) {
    report.certificate =
        attach_certificate(x, gamma, k, report.log, instance, params);
  }
  if (report.certificate) {
    report.residuals = report.certificate->residuals;
  } else {
    const Vector y = (!report.log.empty() && report.log.back().y.size() > 0)
                         ? report.log.back().y
                         : Vector::Zero(m);
    report.residuals = kkt_residuals(x, y, instance);
  }

  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  return report;
}

}  // namespace alpn
