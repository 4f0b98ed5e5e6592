// Copyright 2026 The incentive_forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef INCENTIVE_FORGE_CORE_FINITE_DIFFERENCE_HPP_
#define INCENTIVE_FORGE_CORE_FINITE_DIFFERENCE_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>

#include "linalg/matrix.hpp"

namespace incentive_forge {

// Central-difference step used throughout: h = 1e-6 (1 + |x|).
inline double CentralStep(double x) { return 1e-6 * (1.0 + std::abs(x)); }

// |a - b| / max(1, |b|): relative for large magnitudes, absolute near zero.
inline double RelativeError(double a, double b) {
  return std::abs(a - b) / std::max(1.0, std::abs(b));
}

// d f / d x_i at x by a central difference.
double CentralPartial(const std::function<double(std::span<const double>)>& f,
                      std::span<const double> x, std::size_t i);

linalg::Vector CentralGradient(const std::function<double(std::span<const double>)>& f,
                               std::span<const double> x);

// Jacobian J(r, c) = d F_r / d x_c of a vector field by central differences.
linalg::Matrix CentralJacobian(
    const std::function<linalg::Vector(std::span<const double>)>& field,
    std::span<const double> x);

}  // namespace incentive_forge

#endif  // INCENTIVE_FORGE_CORE_FINITE_DIFFERENCE_HPP_
