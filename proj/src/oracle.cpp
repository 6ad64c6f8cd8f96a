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

#include "alpn/oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "alpn/dual.hpp"
#include "alpn/generator.hpp"

namespace alpn::oracle {

ProjectionResult brute_force_project(const StackedMatrix& abar,
                                     const CutSet& cuts, const Vector& w) {
  const std::size_t nc = cuts.num_constraints();
  if (nc > kMaxEnumeratedConstraints) {
    throw std::length_error("brute-force projection limited to " +
                            std::to_string(kMaxEnumeratedConstraints) +
                            " constraints");
  }
  const Matrix& a = abar.matrix();
  const Eigen::Index n = a.cols();
  const Matrix g = cuts.constraint_matrix();
  const Matrix gram = a.transpose() * a;
  const Vector atw = a.transpose() * w;
  const double scale = 1.0 + w.norm();

  ProjectionResult best;
  double best_obj = std::numeric_limits<double>::infinity();
  const std::size_t subsets = std::size_t{1} << nc;
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    std::vector<std::size_t> ids;
    for (std::size_t j = 0; j < nc; ++j) {
      if (mask & (std::size_t{1} << j)) ids.push_back(j);
    }
    const auto k = static_cast<Eigen::Index>(ids.size());
    Matrix kkt = Matrix::Zero(n + k, n + k);
    Vector rhs = Vector::Zero(n + k);
    kkt.topLeftCorner(n, n) = gram;
    rhs.head(n) = atw;
    for (Eigen::Index r = 0; r < k; ++r) {
      const auto row = g.row(static_cast<Eigen::Index>(ids[static_cast<std::size_t>(r)]));
      kkt.block(0, n + r, n, 1) = -row.transpose();
      kkt.block(n + r, 0, 1, n) = row;
    }
    Eigen::JacobiSVD<Matrix> svd(kkt, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-11);
    const Vector sol = svd.solve(rhs);
    if ((kkt * sol - rhs).norm() > 1e-8 * scale * (1.0 + a.norm())) continue;

    const Vector x = sol.head(n);
    const Vector lambda = sol.tail(k);
    const double feas_tol = 1e-9 * (1.0 + x.norm());
    if (((g * x).array() < -feas_tol).any()) continue;
    if ((lambda.array() < -1e-9 * scale).any()) continue;
    const double obj = (a * x - w).squaredNorm();
    if (obj < best_obj) {
      best_obj = obj;
      best.x = x;
      best.active = ids;
      best.multipliers = Vector::Zero(static_cast<Eigen::Index>(nc));
      for (Eigen::Index r = 0; r < k; ++r) {
        best.multipliers(static_cast<Eigen::Index>(ids[static_cast<std::size_t>(r)])) =
            lambda(r);
      }
    }
  }
  if (!std::isfinite(best_obj)) {
    throw std::runtime_error("brute-force projection found no KKT point");
  }
  best.wbar = a * best.x;
  best.objective = best_obj;
  best.inner_iterations = subsets;
  best.kkt_residual =
      (a.transpose() * (best.wbar - w) - g.transpose() * best.multipliers).norm();
  return best;
}

double sampled_cut_min(const Vector& xi, std::size_t samples,
                       std::uint64_t seed, bool include_analytic) {
  if (xi.size() < 2) throw std::invalid_argument("sampled_cut_min needs n_i >= 2");
  const Eigen::Index d = xi.size() - 1;
  const Vector tail = xi.tail(d);
  GaussianStream gauss(seed);
  double best = std::numeric_limits<double>::infinity();
  Vector v(d);
  for (std::size_t s = 0; s < samples; ++s) {
    for (Eigen::Index j = 0; j < d; ++j) v(j) = gauss.next();
    const double norm = v.norm();
    if (norm == 0) continue;
    // Radius U^{1/d} with U uniform on (0, 1), via the CDF of |N(0,1)|.
    const double u = std::erf(std::abs(gauss.next()) / std::sqrt(2.0));
    v *= std::pow(u, 1.0 / static_cast<double>(d)) / norm;
    best = std::min(best, xi(0) + v.dot(tail));
  }
  if (include_analytic) {
    const double tail_norm = tail.norm();
    best = std::min(best, tail_norm > 0 ? xi(0) - tail.dot(tail) / tail_norm
                                        : xi(0));
  }
  return best;
}

std::vector<TinyAnalyticCase> analytic_cases() {
  std::vector<TinyAnalyticCase> cases;
  const double r2 = std::sqrt(2.0);
  {
    Matrix a(1, 2);
    a << 1, 0;
    cases.push_back({"k2_axis", SocpInstance(a, Vector::Ones(1),
                                             Vector::Unit(2, 1), ConeStructure({2})),
                     Vector::Ones(2), Vector::Ones(1), 1.0});
  }
  {
    Matrix a(1, 3);
    a << 1, 0, 0;
    Vector c(3);
    c << 0, 1, 1;
    Vector x(3);
    x << 1, 1 / r2, 1 / r2;
    cases.push_back({"k3_diagonal",
                     SocpInstance(a, Vector::Ones(1), c, ConeStructure({3})), x,
                     Vector::Constant(1, r2), r2});
  }
  {
    Matrix a(2, 3);
    a << 1, 1, 1,
         0, 1, 2;
    Vector b(2);
    b << 1, 1;
    Vector c(3);
    c << 2, 1, 1;
    Vector x(3);
    x << 0.5, 0, 0.5;
    Vector y(2);
    y << 2, -0.5;
    cases.push_back({"lp_2x3",
                     SocpInstance(a, b, c, ConeStructure({1, 1, 1})), x, y, 1.5});
  }
  for (const TinyAnalyticCase& tc : cases) {
    const ResidualBundle r =
        kkt_residuals(tc.known_x_star, tc.known_y_star, tc.instance);
    if (r.max() > 1e-12 ||
        std::abs(tc.instance.c().dot(tc.known_x_star) - tc.known_objective) >
            1e-12) {
      throw std::logic_error("analytic case " + tc.name + " fails its KKT check");
    }
  }
  return cases;
}

}  // namespace alpn::oracle
