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

#include "alpn/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace alpn {

ConeStructure::ConeStructure(std::vector<std::size_t> block_dims)
    : dims_(std::move(block_dims)) {
  if (dims_.empty()) {
    throw std::invalid_argument("cone structure needs at least one block");
  }
  offsets_.reserve(dims_.size());
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (dims_[i] == 0) {
      throw std::invalid_argument("block " + std::to_string(i) +
                                  " has dimension 0");
    }
    offsets_.push_back(total_);
    total_ += dims_[i];
  }
}

std::size_t ConeStructure::num_ray_blocks() const {
  return static_cast<std::size_t>(std::count(dims_.begin(), dims_.end(), 1u));
}

Eigen::VectorXd::ConstSegmentReturnType block_view(const Vector& x,
                                                   const ConeStructure& cone,
                                                   std::size_t i) {
  if (i >= cone.num_blocks()) {
    throw std::out_of_range("block index " + std::to_string(i) +
                            " out of range (p = " +
                            std::to_string(cone.num_blocks()) + ")");
  }
  if (static_cast<std::size_t>(x.size()) != cone.dim()) {
    throw std::invalid_argument("vector length does not match cone dimension");
  }
  return x.segment(static_cast<Eigen::Index>(cone.block_offset(i)),
                   static_cast<Eigen::Index>(cone.block_dim(i)));
}

SocpInstance::SocpInstance(Matrix a, Vector b, Vector c, ConeStructure cone)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)),
      cone_(std::move(cone)) {
  if (cone_.num_blocks() == 0) {
    throw std::invalid_argument("instance has no cone blocks");
  }
  if (a_.rows() == 0) {
    throw std::invalid_argument("instance has no equality rows (m = 0)");
  }
  if (static_cast<std::size_t>(a_.cols()) != cone_.dim()) {
    throw std::invalid_argument(
        "A has " + std::to_string(a_.cols()) + " columns but the blocks sum to " +
        std::to_string(cone_.dim()));
  }
  if (b_.size() != a_.rows()) {
    throw std::invalid_argument("length of b (" + std::to_string(b_.size()) +
                                ") differs from rows of A (" +
                                std::to_string(a_.rows()) + ")");
  }
  if (static_cast<std::size_t>(c_.size()) != cone_.dim()) {
    throw std::invalid_argument("length of c (" + std::to_string(c_.size()) +
                                ") differs from n (" +
                                std::to_string(cone_.dim()) + ")");
  }
  if (!a_.allFinite() || !b_.allFinite() || !c_.allFinite()) {
    throw std::invalid_argument("instance data contains non-finite entries");
  }
}

StackedMatrix assemble_stacked(const SocpInstance& instance) {
  Matrix abar(instance.A().rows() + 1, instance.A().cols());
  abar.row(0) = instance.c().transpose();
  abar.bottomRows(instance.A().rows()) = instance.A();
  return StackedMatrix(std::move(abar));
}

void SolverParams::validate() const {
  if (!(tol_feas > 0) || !(tol_lin > 0) || !(tol_qp > 0) || !(dedup_tol > 0)) {
    throw std::invalid_argument("solver tolerances must be positive");
  }
  if (!(gamma_escalation_factor > 1)) {
    throw std::invalid_argument("gamma escalation factor must exceed 1");
  }
  if (gamma0 && !std::isfinite(*gamma0)) {
    throw std::invalid_argument("gamma0 must be finite");
  }
}

CutSet::CutSet(ConeStructure cone) : cone_(std::move(cone)) {
  for (std::size_t i = 0; i < cone_.num_blocks(); ++i) {
    if (cone_.block_dim(i) == 1) ray_blocks_.push_back(i);
  }
}

bool CutSet::add(const CutVector& cut, double dedup_tol) {
  if (cut.block >= cone_.num_blocks()) {
    throw std::out_of_range("cut block index out of range");
  }
  const std::size_t ni = cone_.block_dim(cut.block);
  if (ni == 1) {
    throw std::invalid_argument("1-dimensional blocks carry no stored cuts");
  }
  if (static_cast<std::size_t>(cut.v.size()) != ni - 1) {
    throw std::invalid_argument("cut vector has dimension " +
                                std::to_string(cut.v.size()) + ", expected " +
                                std::to_string(ni - 1));
  }
  if (!(cut.v.norm() <= 1.0 + 1e-12)) {
    throw std::invalid_argument("cut vector lies outside the unit ball");
  }
  for (const CutVector& existing : cuts_) {
    if (existing.block == cut.block && (existing.v - cut.v).norm() < dedup_tol) {
      return false;
    }
  }
  cuts_.push_back(cut);
  return true;
}

std::vector<const CutVector*> CutSet::block_cuts(std::size_t i) const {
  std::vector<const CutVector*> out;
  for (const CutVector& cut : cuts_) {
    if (cut.block == i) out.push_back(&cut);
  }
  return out;
}

std::size_t CutSet::constraint_block(std::size_t id) const {
  if (id < ray_blocks_.size()) return ray_blocks_[id];
  return cuts_.at(id - ray_blocks_.size()).block;
}

Vector CutSet::constraint_row(std::size_t id) const {
  Vector g = Vector::Zero(static_cast<Eigen::Index>(cone_.dim()));
  const std::size_t block = constraint_block(id);
  const auto off = static_cast<Eigen::Index>(cone_.block_offset(block));
  g(off) = 1.0;
  if (id >= ray_blocks_.size()) {
    const Vector& v = cuts_[id - ray_blocks_.size()].v;
    g.segment(off + 1, v.size()) = v;
  }
  return g;
}

double CutSet::constraint_value(std::size_t id, const Vector& x) const {
  const std::size_t block = constraint_block(id);
  const auto off = static_cast<Eigen::Index>(cone_.block_offset(block));
  if (id < ray_blocks_.size()) return x(off);
  const Vector& v = cuts_[id - ray_blocks_.size()].v;
  return x(off) + v.dot(x.segment(off + 1, v.size()));
}

Matrix CutSet::constraint_matrix() const {
  Matrix g(static_cast<Eigen::Index>(num_constraints()),
           static_cast<Eigen::Index>(cone_.dim()));
  for (std::size_t id = 0; id < num_constraints(); ++id) {
    g.row(static_cast<Eigen::Index>(id)) = constraint_row(id).transpose();
  }
  return g;
}

double ResidualBundle::max() const {
  return std::max({primal_eq, primal_cone, dual_cone, complementarity,
                   duality_gap});
}

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kRelaxationUnbounded:
      return "relaxation_unbounded";
    case SolveStatus::kDualUnbounded:
      return "dual_unbounded";
    case SolveStatus::kIterationLimit:
      return "iteration_limit";
    case SolveStatus::kNumericalFailure:
      return "numerical_failure";
  }
  return "unknown";
}

SolveStatus status_from_string(std::string_view name) {
  for (SolveStatus s :
       {SolveStatus::kOptimal, SolveStatus::kRelaxationUnbounded,
        SolveStatus::kDualUnbounded, SolveStatus::kIterationLimit,
        SolveStatus::kNumericalFailure}) {
    if (to_string(s) == name) return s;
  }
  throw std::invalid_argument("unknown solve status '" + std::string(name) +
                              "'");
}

}  // namespace alpn
