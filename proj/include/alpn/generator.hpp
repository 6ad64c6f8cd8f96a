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

// Random instances with known strictly feasible primal and dual points.
//
// A has i.i.d. standard normal entries. With x~ = s~ = e_1 in every block and
// e the all-ones vector, b = A x~ and c = A^T e - s~, so x~ is strictly
// primal feasible and y = e is strictly dual feasible.

#ifndef ALPN_GENERATOR_HPP_
#define ALPN_GENERATOR_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "alpn/model.hpp"

namespace alpn {

struct GeneratedInstance {
  SocpInstance instance;
  Vector x_tilde;
  Vector s_tilde;
  std::uint64_t seed = 0;
};

/// Standard normal samples from std::mt19937_64 through the Box-Muller
/// transform, consuming two 53-bit uniforms per pair of outputs. Both the
/// engine and the transform are fully specified, so a seed yields the same
/// stream on every conforming platform.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}
  double next();

 private:
  double uniform();

  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

/// Vector with e_1 in every block.
Vector axis_point(const ConeStructure& cone);

/// Throws std::invalid_argument when m = 0 or dims are invalid.
GeneratedInstance generate(std::size_t m, const std::vector<std::size_t>& dims,
                           std::uint64_t seed);

}  // namespace alpn

#endif  // ALPN_GENERATOR_HPP_
