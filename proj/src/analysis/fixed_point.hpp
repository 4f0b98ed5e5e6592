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

#ifndef INCENTIVE_FORGE_ANALYSIS_FIXED_POINT_HPP_
#define INCENTIVE_FORGE_ANALYSIS_FIXED_POINT_HPP_

#include <cstdint>
#include <span>

#include "core/types.hpp"
#include "dynamics/dynamics.hpp"
#include "games/cournot.hpp"
#include "games/quadratic.hpp"

namespace incentive_forge {

// Joint solve of p = xi + KZ x and p + (I - KZ) x = 0.
FixedPointResult SolveFixedPointQuadratic(const QuadraticAggregativeGame& game);

// Joint solve of Gamma x = p and delta x + (I - 11^T / (n+1)) p =
// (theta - nu) / (n+1) 1.
FixedPointResult SolveFixedPointCournot(const CournotGame& game);

// Damped iteration p <- (1 - damping) p + damping e(x*(p)), where x*(p) is the
// rest point of the system's strategy rule. Stops when
// ||e(x*(p)) - p||_inf <= tol; otherwise returns with converged = false.
FixedPointResult SolveFixedPointGeneric(const CoupledSystem& sys, std::span<const double> p0,
                                        double damping, double tol,
                                        std::int64_t max_iter);

// Largest first-order decrease of Phi available from x (0 iff optimal).
double CheckSocialOptimality(const CoupledSystem& sys, std::span<const double> x);

struct AlignmentReport {
  double externality_residual = kInf;  // ||e(x*(p)) - p||_inf
  double vi_residual = kInf;           // social-optimality residual of x*(p)
  double tol = 0.0;
  bool pass = false;
};

// Recomputes x*(p) for the result's incentive and checks that it is both a
// fixed point of the externality map and socially optimal.
AlignmentReport CheckAlignment(const CoupledSystem& sys, const FixedPointResult& result,
                               double tol);

}  // namespace incentive_forge

#endif  // INCENTIVE_FORGE_ANALYSIS_FIXED_POINT_HPP_
