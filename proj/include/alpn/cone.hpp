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

// Second-order cone geometry and its polyhedral outer approximations.
//
// A block x^i = (x_1, xbar) lies in K^{n_i} iff ||xbar|| <= x_1. Every v in
// the unit ball gives a valid cut (1, v^T) x^i >= 0, and the deepest cut at a
// point is v = -xbar / ||xbar||, with value x_1 - ||xbar||.

#ifndef ALPN_CONE_HPP_
#define ALPN_CONE_HPP_

#include <cstddef>

#include "alpn/model.hpp"

namespace alpn {

/// ||xbar|| - x_1 for n_i >= 2 and -x_1 for n_i = 1. Nonpositive iff the block
/// is in its cone.
double soc_residual(const Eigen::Ref<const Vector>& xi);

/// max_i soc_residual(x^i).
double max_soc_residual(const Vector& x, const ConeStructure& cone);

/// Deepest cut of block `block` at xi. Returns v = 0 when xbar = 0, where
/// every unit-ball v attains the same value x_1. Requires n_i >= 2.
CutVector most_violated_cut(std::size_t block,
                            const Eigen::Ref<const Vector>& xi);

/// x_1 + v^T xbar. Throws std::invalid_argument on a dimension mismatch.
double cut_value(const CutVector& cut, const Eigen::Ref<const Vector>& xi);

/// {+e_j, -e_j : j = 1..n_i-1} for every block with n_i >= 2.
CutSet initial_cuts(const ConeStructure& cone);

/// True iff every constraint of K_E holds at x up to -tol.
bool in_polyhedral_cone(const Vector& x, const CutSet& cuts, double tol);

}  // namespace alpn

#endif  // ALPN_CONE_HPP_
