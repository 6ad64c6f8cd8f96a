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

#include "alpn/cone.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace alpn {

double soc_residual(const Eigen::Ref<const Vector>& xi) {
  if (xi.size() == 1) return -xi(0);
  return xi.tail(xi.size() - 1).norm() - xi(0);
}

double max_soc_residual(const Vector& x, const ConeStructure& cone) {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cone.num_blocks(); ++i) {
    worst = std::max(worst, soc_residual(block_view(x, cone, i)));
  }
  return worst;
}

CutVector most_violated_cut(std::size_t block,
                            const Eigen::Ref<const Vector>& xi) {
  if (xi.size() < 2) {
    throw std::invalid_argument("most_violated_cut needs a block with n_i >= 2");
  }
  const auto tail = xi.tail(xi.size() - 1);
  const double norm = tail.norm();
  CutVector cut{block, Vector::Zero(xi.size() - 1)};
  if (norm > 0) cut.v = -tail / norm;
  return cut;
}

double cut_value(const CutVector& cut, const Eigen::Ref<const Vector>& xi) {
  if (cut.v.size() + 1 != xi.size()) {
    throw std::invalid_argument("cut dimension does not match the block");
  }
  return xi(0) + cut.v.dot(xi.tail(xi.size() - 1));
}

CutSet initial_cuts(const ConeStructure& cone) {
  CutSet cuts(cone);
  for (std::size_t i = 0; i < cone.num_blocks(); ++i) {
    const auto d = static_cast<Eigen::Index>(cone.block_dim(i)) - 1;
    for (Eigen::Index j = 0; j < d; ++j) {
      cuts.add({i, Vector::Unit(d, j)});
      cuts.add({i, -Vector::Unit(d, j)});
    }
  }
  return cuts;
}

bool in_polyhedral_cone(const Vector& x, const CutSet& cuts, double tol) {
  for (std::size_t id = 0; id < cuts.num_constraints(); ++id) {
    if (cuts.constraint_value(id, x) < -tol) return false;
  }
  return true;
}

}  // namespace alpn
