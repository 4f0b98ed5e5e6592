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

#include "analysis/fixed_point.hpp"

#include <cmath>

#include "core/errors.hpp"
#include "linalg/matrix.hpp"

namespace incentive_forge {
namespace {

// Fills the residual fields of a result whose p_dagger and x_dagger are set.
void FillResiduals(const CoupledSystem& sys, FixedPointResult& result) {
  const Vector x = sys.Equilibrium(result.p_dagger);
  const Vector e = sys.Externality(x);
  result.externality_residual = linalg::DistInf(e, result.p_dagger);
  result.vi_residual = sys.SocialOptimalityResidual(x);
}

}  // namespace

FixedPointResult SolveFixedPointQuadratic(const QuadraticAggregativeGame& game) {
  const std::size_t n = game.n();
  linalg::Matrix gamma(2 * n, 2 * n);
  Vector rhs(2 * n, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    gamma(r, r) = 1.0;
    gamma(n + r, r) = 1.0;
    gamma(n + r, n + r) = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
      gamma(r, n + c) -= game.kz()(r, c);
      gamma(n + r, n + c) -= game.kz()(r, c);
    }
    rhs[r] = game.xi()[r];
  }
  const Vector sol = linalg::Solve(gamma, rhs);
  FixedPointResult result{IncentiveVector(Vector(sol.begin(), sol.begin() + n)),
                          Vector(sol.begin() + n, sol.end())};
  FillResiduals(CoupledSystem::Make(game.ToAtomicGame(), StrategyRule::Equilibrium()), result);
  return result;
}

FixedPointResult SolveFixedPointCournot(const CournotGame& game) {
  const std::size_t n = game.n();
  const double delta = game.delta();
  const double scale = 1.0 / static_cast<double>(n + 1);
  const linalg::Matrix g = game.Gamma();
  linalg::Matrix b(2 * n, 2 * n);
  Vector rhs(2 * n, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      b(r, c) = g(r, c);
      b(n + r, n + c) = (r == c ? 1.0 : 0.0) - scale;
    }
    b(r, n + r) = -1.0;
    b(n + r, r) = delta;
    rhs[n + r] = (game.theta() - game.nu()) * scale;
  }
  const Vector sol = linalg::Solve(b, rhs);
  FixedPointResult result{IncentiveVector(Vector(sol.begin() + n, sol.end())),
                          Vector(sol.begin(), sol.begin() + n)};
  FillResiduals(CoupledSystem::Make(game.ToAtomicGame(), StrategyRule::Equilibrium()), result);
  return result;
}

FixedPointResult SolveFixedPointGeneric(const CoupledSystem& sys, std::span<const double> p0,
                                        double damping, double tol,
                                        std::int64_t max_iter) {
  sys.CheckIncentive(p0);
  if (!(damping > 0.0 && damping <= 1.0)) throw InvalidArgument("damping must lie in (0, 1]");
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  if (max_iter < 0) throw InvalidArgument("max_iter must be >= 0");

  Vector p(p0.begin(), p0.end());
  Vector x;
  double residual = kInf;
  std::int64_t it = 0;
  for (;; ++it) {
    x = sys.Equilibrium(p);
    const Vector e = sys.Externality(x);
    residual = linalg::DistInf(e, p);
    if (!std::isfinite(residual) || residual <= tol || it >= max_iter) break;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = (1.0 - damping) * p[i] + damping * e[i];
  }
  FixedPointResult result{IncentiveVector(p), x};
  result.externality_residual = residual;
  result.vi_residual = sys.SocialOptimalityResidual(x);
  result.converged = residual <= tol;
  result.iterations = it;
  return result;
}

double CheckSocialOptimality(const CoupledSystem& sys, std::span<const double> x) {
  return sys.SocialOptimalityResidual(x);
}

AlignmentReport CheckAlignment(const CoupledSystem& sys, const FixedPointResult& result,
                               double tol) {
  FixedPointResult copy = result;
  FillResiduals(sys, copy);
  AlignmentReport report;
  report.externality_residual = copy.externality_residual;
  report.vi_residual = copy.vi_residual;
  report.tol = tol;
  report.pass = report.externality_residual <= tol && report.vi_residual <= tol;
  return report;
}

}  // namespace incentive_forge
