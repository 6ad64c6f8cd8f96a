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

#include "alpn/generator.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace alpn {

double GaussianStream::uniform() {
  // (0, 1]: top 53 bits, shifted away from zero so log() stays finite.
  return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

double GaussianStream::next() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  const double radius = std::sqrt(-2.0 * std::log(uniform()));
  const double angle = 2.0 * std::numbers::pi * uniform();
  cached_ = radius * std::sin(angle);
  has_cached_ = true;
  return radius * std::cos(angle);
}

Vector axis_point(const ConeStructure& cone) {
  Vector e1 = Vector::Zero(static_cast<Eigen::Index>(cone.dim()));
  for (std::size_t i = 0; i < cone.num_blocks(); ++i) {
    e1(static_cast<Eigen::Index>(cone.block_offset(i))) = 1.0;
  }
  return e1;
}

GeneratedInstance generate(std::size_t m, const std::vector<std::size_t>& dims,
                           std::uint64_t seed) {
  if (m == 0) throw std::invalid_argument("generator needs m >= 1");
  ConeStructure cone(dims);
  const auto rows = static_cast<Eigen::Index>(m);
  const auto cols = static_cast<Eigen::Index>(cone.dim());

  GaussianStream gauss(seed);
  Matrix a(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = gauss.next();
  }
  Vector x_tilde = axis_point(cone);
  Vector s_tilde = x_tilde;
  Vector b = a * x_tilde;
  Vector c = a.transpose() * Vector::Ones(rows) - s_tilde;
  return {SocpInstance(std::move(a), std::move(b), std::move(c), std::move(cone)),
          std::move(x_tilde), std::move(s_tilde), seed};
}

}  // namespace alpn
