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

// Two-timescale coupled dynamics: players move along
//   x_{k+1} = (1 - beta_k) x_k + beta_k f(x_k, p_k)
// while the planner moves along
//   p_{k+1} = (1 - gamma_k) p_k + gamma_k e(x_k).

#ifndef INCENTIVE_FORGE_DYNAMICS_DYNAMICS_HPP_
#define INCENTIVE_FORGE_DYNAMICS_DYNAMICS_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/types.hpp"

namespace incentive_forge {

enum class RuleKind { kEquilibrium, kBestResponse, kPerturbedBestResponse };

struct StrategyRule {
  RuleKind kind = RuleKind::kBestResponse;
  double eta = 0.0;  // logit sensitivity, kPerturbedBestResponse only

  static StrategyRule Equilibrium() { return {RuleKind::kEquilibrium, 0.0}; }
  static StrategyRule BestResponse() { return {RuleKind::kBestResponse, 0.0}; }
  static StrategyRule PerturbedBestResponse(double eta) {
    return {RuleKind::kPerturbedBestResponse, eta};
  }
  std::string Name() const;
};

// A game paired with a strategy rule: everything the engine, the slow system
// and the fixed-point solvers need. Cheap to copy; the game is shared
// immutably.
class CoupledSystem {
 public:
  static CoupledSystem Make(const AtomicGame& game, const StrategyRule& rule);
  static CoupledSystem Make(const NonatomicGame& game, const StrategyRule& rule);

  std::size_t strategy_dim() const { return strategy_dim_; }
  std::size_t incentive_dim() const { return incentive_dim_; }
  const StrategyRule& rule() const { return rule_; }
  bool atomic() const { return static_cast<bool>(atomic_); }
  const AtomicGame* atomic_game() const { return atomic_.get(); }
  const NonatomicGame* nonatomic_game() const { return nonatomic_.get(); }

  // f(x, p)
  Vector Respond(std::span<const double> x, std::span<const double> p) const;
  // e(x)
  Vector Externality(std::span<const double> x) const;
  // Rest point of the strategy rule at fixed p: x*(p) for equilibrium and
  // best-response rules, the logit equilibrium for perturbed best response.
  Vector Equilibrium(std::span<const double> p) const;
  // Componentwise clamp for atomic games; identity for non-atomic games.
  void Project(std::span<double> x) const;
  // First-order social-optimality residual at x (0 iff optimal).
  double SocialOptimalityResidual(std::span<const double> x) const;
  std::optional<std::string> FeasibilityWarning(std::span<const double> x) const;

  void CheckStrategy(std::span<const double> x) const;
  void CheckIncentive(std::span<const double> p) const;

 private:
  std::shared_ptr<const AtomicGame> atomic_;
  std::shared_ptr<const NonatomicGame> nonatomic_;
  StrategyRule rule_;
  std::size_t strategy_dim_ = 0;
  std::size_t incentive_dim_ = 0;
};

struct RunConfig {
  StepSchedule schedule{1.0, 0.6, 1.0, 0.9};
  std::int64_t max_steps = 1000000;
  std::int64_t stride = 1000;
  // Trailing window in steps; <= 0 means max(1, max_steps / 100).
  std::int64_t window = 0;
  double tol = 1e-3;
  Vector x0;
  Vector p0;
  // Hold p at p0 (gamma_k = 0) to test strategy convergence in isolation.
  bool freeze_incentives = false;
};

Vector StrategyStep(const CoupledSystem& sys, std::span<const double> x,
                    std::span<const double> p, double beta);
Vector IncentiveStep(const CoupledSystem& sys, std::span<const double> x,
                     std::span<const double> p, double gamma);

// Iterates both updates from the same (x_k, p_k) for k = 1..max_steps.
// Throws NumericError naming the step if an iterate stops being finite.
Trajectory RunTwoTimescale(const CoupledSystem& sys, const RunConfig& cfg);

// e(x*(p)) - p
Vector SlowOdeRhs(const CoupledSystem& sys, std::span<const double> p);

// Classical fourth-order Runge-Kutta on the slow system. Returns p(0), p(dt),
// ..., p(steps * dt). Throws NumericError if ||p||_inf exceeds 1e8.
std::vector<Vector> IntegrateSlowOde(const CoupledSystem& sys, std::span<const double> p0,
                                     double dt, std::int64_t steps);

}  // namespace incentive_forge

#endif  // INCENTIVE_FORGE_DYNAMICS_DYNAMICS_HPP_
