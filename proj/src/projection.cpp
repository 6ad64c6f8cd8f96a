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

#include "alpn/projection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace alpn {
namespace {

// Relative cutoff for rank decisions in every orthogonal factorization here.
constexpr double kRankThreshold = 1e-12;
constexpr std::size_t kNoConstraint = static_cast<std::size_t>(-1);

// Orthonormal basis of {p : g_j^T p = 0, j in W} together with the QR
// factorization of G_W^T used for multiplier solves.
struct Subspace {
  Eigen::ColPivHouseholderQR<Matrix> qr;
  Matrix basis;
  Eigen::Index rank = 0;
};

Matrix working_rows_transposed(const CutSet& cuts,
                               const std::vector<std::size_t>& ids) {
  Matrix gt(static_cast<Eigen::Index>(cuts.cone().dim()),
            static_cast<Eigen::Index>(ids.size()));
  for (std::size_t k = 0; k < ids.size(); ++k) {
    gt.col(static_cast<Eigen::Index>(k)) = cuts.constraint_row(ids[k]);
  }
  return gt;
}

Subspace null_space(const Matrix& gt) {
  const Eigen::Index n = gt.rows();
  Subspace s;
  if (gt.cols() == 0) {
    s.basis = Matrix::Identity(n, n);
    return s;
  }
  s.qr.setThreshold(kRankThreshold);
  s.qr.compute(gt);
  s.rank = s.qr.rank();
  const Matrix q = s.qr.householderQ();
  s.basis = q.rightCols(n - s.rank);
  return s;
}

// Minimum-norm least-squares solution of m z = rhs, truncating directions
// whose pivots fall below kRankThreshold relative to the largest.
Vector min_norm_ls(const Matrix& m, const Vector& rhs) {
  if (m.cols() == 0) return Vector::Zero(0);
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod;
  cod.setThreshold(kRankThreshold);
  cod.compute(m);
  return cod.solve(rhs);
}

double objective_at(const Matrix& abar, const Vector& x, const Vector& w) {
  return (abar * x - w).squaredNorm();
}

bool contains(const std::vector<std::size_t>& ids, std::size_t id) {
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

// Starting point and working set from a warm start. Only working constraints
// that are still tight and independent are kept.
std::pair<Vector, std::vector<std::size_t>> initial_point(
    const CutSet& cuts, const std::optional<WorkingSet>& warm, double tol) {
  const ConeStructure& cone = cuts.cone();
  const auto n = static_cast<Eigen::Index>(cone.dim());
  Vector x = Vector::Zero(n);
  std::vector<std::size_t> working;
  if (!warm) return {x, working};

  if (warm->x.size() == n && warm->x.allFinite()) {
    // Lift each violating block along its axis e_1 until every constraint of
    // the block holds; other blocks keep their tight constraints.
    x = warm->x;
    std::vector<double> lift(cone.num_blocks(), 0.0);
    for (std::size_t id = 0; id < cuts.num_constraints(); ++id) {
      const std::size_t block = cuts.constraint_block(id);
      lift[block] = std::max(lift[block], -cuts.constraint_value(id, x));
    }
    for (std::size_t i = 0; i < cone.num_blocks(); ++i) {
      const double scale = 1.0 + block_view(x, cone, i).norm();
      if (lift[i] > tol * scale) {
        x(static_cast<Eigen::Index>(cone.block_offset(i))) += lift[i];
      }
    }
  }

  const double scale = 1.0 + x.norm();
  for (std::size_t id : warm->constraints) {
    if (id >= cuts.num_constraints() || contains(working, id)) continue;
    if (std::abs(cuts.constraint_value(id, x)) > tol * scale) continue;
    working.push_back(id);
    const Subspace s = null_space(working_rows_transposed(cuts, working));
    if (s.rank < static_cast<Eigen::Index>(working.size())) working.pop_back();
  }
  return {x, working};
}

}  // namespace

Vector solve_eq_ls(const StackedMatrix& abar, const CutSet& cuts,
                   const std::vector<std::size_t>& rows, const Vector& w) {
  const Subspace s = null_space(working_rows_transposed(cuts, rows));
  if (s.rank < static_cast<Eigen::Index>(rows.size())) {
    throw ProjectionError(ProjectionError::Kind::kNumericalFailure,
                          "working constraint rows are linearly dependent");
  }
  const Matrix& a = abar.matrix();
  return s.basis * min_norm_ls(a * s.basis, w);
}

ProjectionResult project(const StackedMatrix& abar, const CutSet& cuts,
                         const Vector& w,
                         const std::optional<WorkingSet>& warm,
                         const SolverParams& params) {
  const Matrix& a = abar.matrix();
  const std::size_t nc = cuts.num_constraints();
  if (static_cast<std::size_t>(a.cols()) != cuts.cone().dim() ||
      w.size() != a.rows()) {
    throw std::invalid_argument("projection inputs have inconsistent shapes");
  }

  const double tol = params.tol_qp;
  const double w_scale = 1.0 + w.norm();
  const double a_scale = 1.0 + a.norm();
  const std::size_t cap = 50 * std::max<std::size_t>(nc, 1);

  auto [x, working] = initial_point(cuts, warm, tol);
  const Matrix g_all = cuts.constraint_matrix();

  ProjectionResult result;
  double f = objective_at(a, x, w);
  Subspace sub;
  Vector lambda;
  // Constraint dropped in the previous inner iteration, if any.
  std::size_t released = kNoConstraint;
  // Set after a zero-length step; the next drop then follows the lowest-index
  // rule, which breaks cycling at degenerate vertices.
  bool degenerate = false;

  for (;;) {
    if (result.inner_iterations >= cap) {
      throw ProjectionError(ProjectionError::Kind::kInnerIterationLimit,
                            "active-set iteration cap of " +
                                std::to_string(cap) + " reached");
    }
    ++result.inner_iterations;

    const Matrix gt = working_rows_transposed(cuts, working);
    sub = null_space(gt);
    if (sub.rank < static_cast<Eigen::Index>(working.size())) {
      throw ProjectionError(ProjectionError::Kind::kNumericalFailure,
                            "working set lost linear independence");
    }

    // Minimize over the current face: x + p with G_W p = 0.
    Vector p = sub.basis * min_norm_ls(a * sub.basis, w - a * x);
    if (released != kNoConstraint) {
      // With a singular reduced Hessian the minimum-norm face step may point
      // back through the released constraint. The projected gradient always
      // leaves it strictly: g_j^T d = -lambda_j ||Z^T g_j||^2 > 0.
      const Vector g_released = g_all.row(static_cast<Eigen::Index>(released)).transpose();
      if (g_released.dot(p) <= 1e-10 * p.norm()) {
        const Vector grad = a.transpose() * (a * x - w);
        const Vector d = -(sub.basis * (sub.basis.transpose() * grad));
        const double curvature = (a * d).squaredNorm();
        if (curvature > 0) p = (-grad.dot(d) / curvature) * d;
      }
      released = kNoConstraint;
    }
    if (p.norm() > 1e-14 * (1.0 + x.norm())) {
      double alpha = 1.0;
      std::optional<std::size_t> blocking;
      const Vector gp = g_all * p;
      const double slope_tol = 1e-10 * p.norm();
      for (std::size_t id = 0; id < nc; ++id) {
        if (contains(working, id)) continue;
        const double rate = gp(static_cast<Eigen::Index>(id));
        if (rate >= -slope_tol) continue;
        const double slack =
            std::max(0.0, g_all.row(static_cast<Eigen::Index>(id)).dot(x));
        const double step = slack / -rate;
        if (step < alpha) {
          alpha = step;
          blocking = id;
        }
      }
      degenerate = alpha * p.norm() <= 1e-15 * (1.0 + x.norm());
      x += alpha * p;
      const double f_new = objective_at(a, x, w);
      result.max_objective_increase =
          std::max(result.max_objective_increase, f_new - f);
      f = f_new;
      if (blocking) {
        working.push_back(*blocking);
        continue;
      }
    }

    // Stationary on the face: G_W^T lambda = Abar^T (Abar x - w).
    const Vector grad = a.transpose() * (a * x - w);
    lambda = working.empty() ? Vector() : Vector(sub.qr.solve(grad));
    // Multipliers scale with the residual; a cutoff tied to ||w|| would keep
    // wrong-signed multipliers once the projection distance is small, and the
    // recovered dual slack inherits them divided by gamma - zeta.
    const double mult_tol =
        tol * a_scale * (a * x - w).norm() + 1e-15 * a_scale * w_scale;
    std::optional<std::size_t> drop;
    double most_negative = -mult_tol;
    for (std::size_t k = 0; k < working.size(); ++k) {
      const double value = lambda(static_cast<Eigen::Index>(k));
      if (degenerate) {
        if (value < -mult_tol && (!drop || working[k] < working[*drop])) {
          most_negative = value;
          drop = k;
        }
      } else if (value < most_negative ||
                 (drop && value == most_negative && working[k] < working[*drop])) {
        most_negative = value;
        drop = k;
      }
    }
    if (!drop) break;
    released = working[*drop];
    working.erase(working.begin() + static_cast<std::ptrdiff_t>(*drop));
  }

  // Prefer the minimum-norm minimizer on the final face when it stays inside
  // K_E; it has the same objective value.
  if (!working.empty() || a.cols() > a.rows()) {
    const Vector x_min =
        sub.basis * min_norm_ls(a * sub.basis, w);
    bool feasible = true;
    const Vector gx = g_all * x_min;
    for (Eigen::Index id = 0; id < gx.size(); ++id) {
      if (gx(id) < -tol * (1.0 + x_min.norm())) {
        feasible = false;
        break;
      }
    }
    if (feasible && objective_at(a, x_min, w) <= f + tol * w_scale * w_scale) {
      x = x_min;
      f = objective_at(a, x, w);
    }
  }

  result.x = x;
  result.wbar = a * x;
  result.objective = f;
  result.multipliers = Vector::Zero(static_cast<Eigen::Index>(nc));
  const Vector grad = a.transpose() * (result.wbar - w);
  Vector stationarity = grad;
  for (std::size_t k = 0; k < working.size(); ++k) {
    const double value =
        std::max(0.0, lambda.size() > 0 ? lambda(static_cast<Eigen::Index>(k)) : 0.0);
    result.multipliers(static_cast<Eigen::Index>(working[k])) = value;
    stationarity -= value * g_all.row(static_cast<Eigen::Index>(working[k])).transpose();
  }
  result.kkt_residual = stationarity.norm();
  result.active = std::move(working);
  return result;
}

}  // namespace alpn
