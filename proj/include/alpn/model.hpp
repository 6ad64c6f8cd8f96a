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

// Problem data, cone structure and solver-state types shared by the solver.
//
// The problem solved throughout is
//
//   maximize    c^T x
//   subject to  A x = b,  x = (x^1, ..., x^p),  x^i in K^{n_i},
//
// where K^l = {z : z_1 >= ||(z_2, ..., z_l)||} and K^1 is the nonnegative ray.

#ifndef ALPN_MODEL_HPP_
#define ALPN_MODEL_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace alpn {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Block partition (n_1, ..., n_p) of the variable vector. Blocks are indexed
/// from zero.
class ConeStructure {
 public:
  ConeStructure() = default;
  /// Throws std::invalid_argument when `block_dims` is empty or has a zero.
  explicit ConeStructure(std::vector<std::size_t> block_dims);

  const std::vector<std::size_t>& block_dims() const { return dims_; }
  std::size_t num_blocks() const { return dims_.size(); }
  std::size_t dim() const { return total_; }
  std::size_t block_dim(std::size_t i) const { return dims_.at(i); }
  std::size_t block_offset(std::size_t i) const { return offsets_.at(i); }

  /// Number of blocks with n_i = 1 (each one is the constraint x^i >= 0).
  std::size_t num_ray_blocks() const;

  bool operator==(const ConeStructure&) const = default;

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> offsets_;
  std::size_t total_ = 0;
};

/// Slice x^i of `x`. Throws std::out_of_range for a bad block index and
/// std::invalid_argument when `x` does not have cone.dim() entries.
Eigen::VectorXd::ConstSegmentReturnType block_view(const Vector& x,
                                                   const ConeStructure& cone,
                                                   std::size_t i);

/// The triple (A, b, c) with its cone. Immutable once constructed; the
/// constructor rejects inconsistent shapes, m = 0 and non-finite entries.
class SocpInstance {
 public:
  SocpInstance(Matrix a, Vector b, Vector c, ConeStructure cone);

  const Matrix& A() const { return a_; }
  const Vector& b() const { return b_; }
  const Vector& c() const { return c_; }
  const ConeStructure& cone() const { return cone_; }
  std::size_t num_rows() const { return static_cast<std::size_t>(a_.rows()); }
  std::size_t num_vars() const { return cone_.dim(); }

 private:
  Matrix a_;
  Vector b_;
  Vector c_;
  ConeStructure cone_;
};

/// Abar = (c^T; A), the (1+m) x n matrix mapping x to (c^T x; A x).
class StackedMatrix {
 public:
  explicit StackedMatrix(Matrix abar) : abar_(std::move(abar)) {}

  const Matrix& matrix() const { return abar_; }
  std::size_t rows() const { return static_cast<std::size_t>(abar_.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(abar_.cols()); }

  Vector objective_row() const { return abar_.row(0).transpose(); }
  Matrix constraint_rows() const {
    return abar_.bottomRows(abar_.rows() - 1);
  }

 private:
  Matrix abar_;
};

StackedMatrix assemble_stacked(const SocpInstance& instance);

/// Tolerances and limits for a solve. All defaults are double-precision
/// margins except tol_feas, which is the primal stopping threshold.
struct SolverParams {
  double tol_feas = 1e-4;
  double tol_lin = 1e-8;
  double tol_qp = 1e-9;
  double dedup_tol = 1e-10;
  /// 0 selects 10 n + 1000.
  std::size_t max_outer_iterations = 0;
  std::optional<double> gamma0;
  double gamma_escalation_factor = 10.0;
  std::size_t max_gamma_escalations = 20;
  bool add_inactive_cuts = false;
  bool warm_start = true;
  std::size_t stall_window = 10;

  std::size_t outer_iteration_cap(std::size_t n) const {
    return max_outer_iterations != 0 ? max_outer_iterations : 10 * n + 1000;
  }
  /// Throws std::invalid_argument on nonpositive tolerances or a factor <= 1.
  void validate() const;
};

/// One linear cut (1, v^T) x^i >= 0 on block `block`, with ||v|| <= 1.
struct CutVector {
  std::size_t block = 0;
  Vector v;
};

/// Finite cut family E defining the polyhedral outer approximation K_E.
///
/// Constraints carry stable ids: ids [0, q) are the implicit x^i >= 0 rows
/// of the q blocks with n_i = 1 (in block order), followed by stored cuts in
/// insertion order. Adding cuts never renumbers existing constraints.
class CutSet {
 public:
  explicit CutSet(ConeStructure cone);

  const ConeStructure& cone() const { return cone_; }

  /// Appends `cut` unless an existing cut of the same block lies within
  /// `dedup_tol`. Returns true when the cut was stored. Throws
  /// std::invalid_argument on a 1-dimensional block, a dimension mismatch or
  /// ||v|| > 1 + 1e-12.
  bool add(const CutVector& cut, double dedup_tol = 1e-10);

  /// Stored cuts of block i in insertion order.
  std::vector<const CutVector*> block_cuts(std::size_t i) const;
  const std::vector<CutVector>& cuts() const { return cuts_; }

  /// Stored cuts plus one implicit constraint per 1-dimensional block; this is
  /// the "# hyperplanes" count.
  std::size_t num_constraints() const { return ray_blocks_.size() + cuts_.size(); }

  /// Block touched by constraint `id`.
  std::size_t constraint_block(std::size_t id) const;
  /// Row g of constraint `id`, so the constraint reads g^T x >= 0.
  Vector constraint_row(std::size_t id) const;
  /// Value g^T x of constraint `id`.
  double constraint_value(std::size_t id, const Vector& x) const;
  /// All constraint rows stacked, num_constraints() x n.
  Matrix constraint_matrix() const;

 private:
  ConeStructure cone_;
  std::vector<std::size_t> ray_blocks_;
  std::vector<CutVector> cuts_;
};

/// KKT residuals of a primal-dual triple (x, y, eta = A^T y - c).
struct ResidualBundle {
  double primal_eq = 0.0;        // ||A x - b||
  double primal_cone = 0.0;      // max_i soc_residual(x^i), clamped at 0
  double dual_cone = 0.0;        // max_i soc_residual(eta^i), clamped at 0
  double complementarity = 0.0;  // |eta^T x|
  double duality_gap = 0.0;      // |c^T x - b^T y|

  double max() const;
};

struct DualCertificate {
  Vector y;
  Vector eta;
  ResidualBundle residuals;
  /// Outer iteration whose hyperplane produced y.
  std::size_t source_iteration = 0;
};

/// Snapshot of one outer iteration: the target w = (gamma; b), its projection
/// wbar = (zeta; b_k) = Abar x, and the working set of the projection.
struct IterateState {
  std::size_t k = 0;
  double gamma = 0.0;
  Vector w;
  Vector wbar;
  Vector x;
  std::vector<std::size_t> active;

  double zeta() const { return wbar(0); }
};

enum class SolveStatus {
  kOptimal,
  kRelaxationUnbounded,
  kDualUnbounded,
  kIterationLimit,
  kNumericalFailure,
};

std::string_view to_string(SolveStatus status);
/// Inverse of to_string; throws std::invalid_argument on unknown names.
SolveStatus status_from_string(std::string_view name);

/// Per-iteration record. `gamma_next` is NaN on the final iteration.
struct IterationRecord {
  std::size_t k = 0;
  double gamma = 0.0;
  double zeta = 0.0;
  double b_dist = 0.0;            // ||b_k - b||
  double step_norm = 0.0;         // ||w - wbar||
  double gamma_next = 0.0;
  std::size_t cuts_total = 0;     // hyperplanes in the projection of this row
  std::size_t cuts_added = 0;
  std::size_t qp_inner_iters = 0;
  double primal_residual = 0.0;
  /// Normal w - wbar of the supporting hyperplane and the dual estimate y
  /// recovered from x (empty when the denominator vanished).
  Vector normal;
  Vector y;
};

struct SolveReport {
  SolveStatus status = SolveStatus::kNumericalFailure;
  std::string message;
  Vector x;
  std::optional<DualCertificate> certificate;
  double objective = 0.0;
  std::size_t iterations = 0;
  ResidualBundle residuals;
  std::vector<IterationRecord> log;
  double initial_gamma = 0.0;
  std::size_t gamma_escalations = 0;
  std::size_t initial_hyperplanes = 0;
  std::size_t final_hyperplanes = 0;
  /// Stored cuts per block at termination (implicit ray constraints excluded).
  std::vector<std::size_t> final_cut_count;
  double wall_time_seconds = 0.0;
};

}  // namespace alpn

#endif  // ALPN_MODEL_HPP_
