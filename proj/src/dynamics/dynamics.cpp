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

#include "dynamics/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "core/errors.hpp"
#include "linalg/matrix.hpp"

namespace incentive_forge {
namespace {

bool AllFinite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

void Blend(Vector& acc, std::span<const double> target, double weight) {
  for (std::size_t i = 0; i < acc.size(); ++i)
    acc[i] = (1.0 - weight) * acc[i] + weight * target[i];
}

// x <- (1 - tau) x + tau f(x) with tau halved whenever the fixed-point
// residual grows. Used only when a game has no dedicated equilibrium solver.
Vector DampedFixedPoint(const std::function<Vector(const Vector&)>& map, Vector x) {
  constexpr int kMaxIterations = 1000000;
  double tau = 0.5;
  double last_residual = kInf;
  for (int it = 0; it < kMaxIterations; ++it) {
    const Vector fx = map(x);
    const double residual = linalg::DistInf(fx, x);
    if (residual <= 1e-13) return fx;
    if (residual > last_residual) tau = std::max(tau * 0.5, 1e-6);
    last_residual = residual;
    Blend(x, fx, tau);
  }
  throw NumericError("damped equilibrium iteration did not converge");
}

}  // namespace

std::string StrategyRule::Name() const {
  switch (kind) {
    case RuleKind::kEquilibrium:
      return "equilibrium";
    case RuleKind::kBestResponse:
      return "best_response";
    case RuleKind::kPerturbedBestResponse:
      return "logit";
  }
  return "unknown";
}

CoupledSystem CoupledSystem::Make(const AtomicGame& game, const StrategyRule& rule) {
  switch (rule.kind) {
    case RuleKind::kEquilibrium:
      if (!game.has_nash())
        throw InvalidArgument("equilibrium update needs a game with a Nash solver");
      break;
    case RuleKind::kBestResponse:
      if (!game.has_best_response())
        throw InvalidArgument("best-response update needs a game with a best response");
      break;
    case RuleKind::kPerturbedBestResponse:
      throw InvalidArgument("perturbed best response applies to non-atomic games only");
  }
  CoupledSystem sys;
  sys.atomic_ = std::make_shared<const AtomicGame>(game);
  sys.rule_ = rule;
  sys.strategy_dim_ = sys.incentive_dim_ = game.n();
  return sys;
}

CoupledSystem CoupledSystem::Make(const NonatomicGame& game, const StrategyRule& rule) {
  if (rule.kind == RuleKind::kEquilibrium && !game.has_nash())
    throw InvalidArgument("equilibrium update needs a game with an equilibrium solver");
  if (rule.kind == RuleKind::kPerturbedBestResponse &&
      !(rule.eta > 0.0 && std::isfinite(rule.eta)))
    throw InvalidArgument("perturbed best response needs eta > 0");
  CoupledSystem sys;
  sys.nonatomic_ = std::make_shared<const NonatomicGame>(game);
  sys.rule_ = rule;
  sys.strategy_dim_ = sys.incentive_dim_ = game.dim();
  return sys;
}

void CoupledSystem::CheckStrategy(std::span<const double> x) const {
  if (x.size() != strategy_dim_)
    throw InvalidArgument("strategy has length " + std::to_string(x.size()) +
                          ", expected " + std::to_string(strategy_dim_));
}

void CoupledSystem::CheckIncentive(std::span<const double> p) const {
  if (p.size() != incentive_dim_)
    throw InvalidArgument("incentive has length " + std::to_string(p.size()) +
                          ", expected " + std::to_string(incentive_dim_));
}

Vector CoupledSystem::Respond(std::span<const double> x, std::span<const double> p) const {
  CheckStrategy(x);
  CheckIncentive(p);
  if (atomic_) {
    if (rule_.kind == RuleKind::kEquilibrium) return atomic_->Nash(p);
    return atomic_->BestResponse(x, p);
  }
  if (rule_.kind == RuleKind::kEquilibrium) return nonatomic_->Nash(p);
  const Vector costs = nonatomic_->Costs(x);
  Vector out(strategy_dim_, 0.0);
  for (std::size_t i = 0; i < nonatomic_->populations().size(); ++i) {
    const Population& pop = nonatomic_->populations()[i];
    const std::size_t off = nonatomic_->offset(i);
    double c_min = kInf;
    std::size_t arg_min = 0;
    for (std::size_t j = 0; j < pop.actions; ++j) {
      const double c = costs[off + j] + p[off + j];
      if (c < c_min) {
        c_min = c;
        arg_min = j;
      }
    }
    if (rule_.kind == RuleKind::kBestResponse) {
      out[off + arg_min] = pop.mass;
      continue;
    }
    double total = 0.0;
    for (std::size_t j = 0; j < pop.actions; ++j) {
      out[off + j] = std::exp(-rule_.eta * (costs[off + j] + p[off + j] - c_min));
      total += out[off + j];
    }
    for (std::size_t j = 0; j < pop.actions; ++j) out[off + j] *= pop.mass / total;
  }
  return out;
}

Vector CoupledSystem::Externality(std::span<const double> x) const {
  CheckStrategy(x);
  return atomic_ ? atomic_->Externality(x).values() : nonatomic_->Externality(x).values();
}

Vector CoupledSystem::Equilibrium(std::span<const double> p) const {
  CheckIncentive(p);
  if (atomic_) {
    if (atomic_->has_nash()) return atomic_->Nash(p);
    const Vector pv(p.begin(), p.end());
    return DampedFixedPoint(
        [&](const Vector& x) { return atomic_->BestResponse(x, pv); },
        Vector(strategy_dim_, 0.0));
  }
  if (rule_.kind != RuleKind::kPerturbedBestResponse) return nonatomic_->Nash(p);
  if (nonatomic_->has_logit_equilibrium())
    return nonatomic_->LogitEquilibrium(p, rule_.eta);
  Vector start(strategy_dim_);
  for (std::size_t i = 0; i < nonatomic_->populations().size(); ++i) {
    const Population& pop = nonatomic_->populations()[i];
    for (std::size_t j = 0; j < pop.actions; ++j)
      start[nonatomic_->offset(i) + j] = pop.mass / static_cast<double>(pop.actions);
  }
  const Vector pv(p.begin(), p.end());
  return DampedFixedPoint([&](const Vector& x) { return Respond(x, pv); }, start);
}

void CoupledSystem::Project(std::span<double> x) const {
  if (atomic_) atomic_->Project(x);
}

double CoupledSystem::SocialOptimalityResidual(std::span<const double> x) const {
  CheckStrategy(x);
  if (atomic_) {
    const Vector g = atomic_->SocialGrad(x);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const Interval& iv = atomic_->intervals()[i];
      double violation = std::abs(g[i]);
      if (x[i] <= iv.lo) violation = std::max(0.0, -g[i]);
      if (x[i] >= iv.hi) violation = std::max(0.0, g[i]);
      worst = std::max(worst, violation);
    }
    return worst;
  }
  const Vector g = nonatomic_->SocialGrad(x);
  double worst = 0.0;
  for (std::size_t i = 0; i < nonatomic_->populations().size(); ++i) {
    const std::size_t off = nonatomic_->offset(i);
    const std::size_t m = nonatomic_->populations()[i].actions;
    const double g_min = *std::min_element(g.begin() + off, g.begin() + off + m);
    for (std::size_t j = 0; j < m; ++j)
      worst = std::max(worst, std::max(0.0, x[off + j]) * (g[off + j] - g_min));
  }
  return worst;
}

std::optional<std::string> CoupledSystem::FeasibilityWarning(
    std::span<const double> x) const {
  return atomic_ ? atomic_->FeasibilityWarning(x) : std::nullopt;
}

Vector StrategyStep(const CoupledSystem& sys, std::span<const double> x,
                    std::span<const double> p, double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) throw InvalidArgument("beta_k must lie in (0, 1]");
  Vector next(x.begin(), x.end());
  Blend(next, sys.Respond(x, p), beta);
  sys.Project(next);
  return next;
}

Vector IncentiveStep(const CoupledSystem& sys, std::span<const double> x,
                     std::span<const double> p, double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw InvalidArgument("gamma_k must lie in (0, 1]");
  sys.CheckIncentive(p);
  Vector next(p.begin(), p.end());
  Blend(next, sys.Externality(x), gamma);
  return next;
}

Trajectory RunTwoTimescale(const CoupledSystem& sys, const RunConfig& cfg) {
  sys.CheckStrategy(cfg.x0);
  sys.CheckIncentive(cfg.p0);
  if (cfg.max_steps < 0) throw InvalidArgument("max_steps must be >= 0");
  if (cfg.stride < 1) throw InvalidArgument("stride must be >= 1");
  if (!(cfg.tol > 0.0)) throw InvalidArgument("convergence tolerance must be > 0");
  if (!AllFinite(cfg.x0) || !AllFinite(cfg.p0))
    throw NumericError("initial point is not finite", 0);
  if (sys.atomic()) {
    if (!sys.atomic_game()->IsFeasible(cfg.x0))
      throw InvalidArgument("x0 lies outside the strategy intervals");
  } else {
    sys.nonatomic_game()->CheckOnSimplex(cfg.x0);
  }

  const std::int64_t steps = cfg.max_steps;
  const std::int64_t window =
      cfg.window > 0 ? cfg.window : std::max<std::int64_t>(1, steps / 100);

  Trajectory traj;
  traj.stride = cfg.stride;
  traj.steps = steps;
  traj.records.reserve(static_cast<std::size_t>(steps / cfg.stride + 1));

  std::vector<TrajectoryRecord> tail;
  tail.reserve(static_cast<std::size_t>(std::min(window, steps) + 1));

  // The window spans iterates K - W .. K.
  Vector x = cfg.x0;
  Vector p = cfg.p0;
  if (steps - window <= 0) tail.push_back({0, x, p});
  for (std::int64_t k = 1; k <= steps; ++k) {
    Vector x_next = StrategyStep(sys, x, p, cfg.schedule.Beta(k));
    Vector p_next = cfg.freeze_incentives ? p : IncentiveStep(sys, x, p, cfg.schedule.Gamma(k));
    if (!AllFinite(x_next) || !AllFinite(p_next))
      throw NumericError("non-finite iterate", k);
    x = std::move(x_next);
    p = std::move(p_next);
    if (traj.warnings.empty()) {
      if (auto w = sys.FeasibilityWarning(x)) {
        traj.warnings.push_back("step " + std::to_string(k) + ": " + *w);
      }
    }
    if (k % cfg.stride == 0 || k == steps) traj.records.push_back({k, x, p});
    if (k >= steps - window) tail.push_back({k, x, p});
  }

  traj.final_x = x;
  traj.final_p = p;
  if (steps >= 1) {
    double worst = 0.0;
    for (const auto& rec : tail)
      worst = std::max({worst, linalg::DistInf(rec.x, x), linalg::DistInf(rec.p, p)});
    traj.window_distance = worst;
    traj.converged = worst <= cfg.tol;
  }
  return traj;
}

Vector SlowOdeRhs(const CoupledSystem& sys, std::span<const double> p) {
  Vector rhs = sys.Externality(sys.Equilibrium(p));
  for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] -= p[i];
  return rhs;
}

std::vector<Vector> IntegrateSlowOde(const CoupledSystem& sys, std::span<const double> p0,
                                     double dt, std::int64_t steps) {
  sys.CheckIncentive(p0);
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  if (steps < 0) throw InvalidArgument("steps must be >= 0");
  const std::size_t n = p0.size();
  std::vector<Vector> path;
  path.reserve(static_cast<std::size_t>(steps) + 1);
  path.emplace_back(p0.begin(), p0.end());
  Vector p = path.back();
  Vector stage(n);
  auto offset = [&](const Vector& k, double h) {
    for (std::size_t i = 0; i < n; ++i) stage[i] = p[i] + h * k[i];
    return stage;
  };
  for (std::int64_t s = 1; s <= steps; ++s) {
    const Vector k1 = SlowOdeRhs(sys, p);
    const Vector k2 = SlowOdeRhs(sys, offset(k1, 0.5 * dt));
    const Vector k3 = SlowOdeRhs(sys, offset(k2, 0.5 * dt));
    const Vector k4 = SlowOdeRhs(sys, offset(k3, dt));
    for (std::size_t i = 0; i < n; ++i)
      p[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    if (!AllFinite(p) || linalg::NormInf(p) > 1e8)
      throw NumericError("slow system diverged", s);
    path.push_back(p);
  }
  return path;
}

}  // namespace incentive_forge
