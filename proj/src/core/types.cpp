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

#include "core/types.hpp"

#include <cmath>
#include <sstream>

#include "core/errors.hpp"

namespace incentive_forge {
namespace {

void RequireFinite(std::span<const double> v, const char* what) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!std::isfinite(v[i]))
      throw NumericError(std::string(what) + "[" + std::to_string(i) + "] is not finite");
}

}  // namespace

IncentiveVector::IncentiveVector(Vector values) : values_(std::move(values)) {
  RequireFinite(values_, "incentive");
}

AtomicGame::AtomicGame(Definition def) : def_(std::move(def)) {
  if (def_.n == 0) throw InvalidArgument("atomic game needs at least one player");
  if (def_.intervals.empty()) def_.intervals.assign(def_.n, Interval{});
  if (def_.intervals.size() != def_.n)
    throw InvalidArgument("atomic game: one strategy interval per player required");
  for (std::size_t i = 0; i < def_.n; ++i) {
    const Interval& iv = def_.intervals[i];
    if (std::isnan(iv.lo) || std::isnan(iv.hi) || !(iv.lo < iv.hi))
      throw InvalidArgument("atomic game: interval " + std::to_string(i) +
                            " must satisfy lo < hi");
  }
  if (!def_.cost || !def_.dcost || !def_.social_cost || !def_.social_grad)
    throw InvalidArgument(
        "atomic game: cost, dcost, social_cost and social_grad are required");
}

void AtomicGame::CheckShape(std::span<const double> v, const char* what) const {
  if (v.size() != def_.n)
    throw InvalidArgument(std::string(what) + " has length " + std::to_string(v.size()) +
                          ", expected " + std::to_string(def_.n));
}

double AtomicGame::Cost(std::size_t i, std::span<const double> x) const {
  CheckShape(x, "x");
  if (i >= def_.n) throw InvalidArgument("player index out of range");
  return def_.cost(i, x);
}

double AtomicGame::DCost(std::size_t i, std::span<const double> x) const {
  CheckShape(x, "x");
  if (i >= def_.n) throw InvalidArgument("player index out of range");
  return def_.dcost(i, x);
}

double AtomicGame::SocialCost(std::span<const double> x) const {
  CheckShape(x, "x");
  return def_.social_cost(x);
}

Vector AtomicGame::SocialGrad(std::span<const double> x) const {
  CheckShape(x, "x");
  return def_.social_grad(x);
}

Vector AtomicGame::Nash(std::span<const double> p) const {
  if (!def_.nash) throw InvalidArgument("game provides no closed-form Nash equilibrium");
  CheckShape(p, "p");
  return def_.nash(p);
}

Vector AtomicGame::BestResponse(std::span<const double> x,
                                std::span<const double> p) const {
  if (!def_.best_response) throw InvalidArgument("game provides no best response");
  CheckShape(x, "x");
  CheckShape(p, "p");
  return def_.best_response(x, p);
}

IncentiveVector AtomicGame::Externality(std::span<const double> x) const {
  CheckShape(x, "x");
  if (def_.externality) return IncentiveVector(def_.externality(x));
  Vector e = def_.social_grad(x);
  for (std::size_t i = 0; i < def_.n; ++i) e[i] -= def_.dcost(i, x);
  return IncentiveVector(std::move(e));
}

std::optional<std::string> AtomicGame::FeasibilityWarning(
    std::span<const double> x) const {
  if (!def_.feasibility_warning) return std::nullopt;
  return def_.feasibility_warning(x);
}

void AtomicGame::Project(std::span<double> x) const {
  CheckShape(x, "x");
  for (std::size_t i = 0; i < def_.n; ++i) x[i] = def_.intervals[i].Clamp(x[i]);
}

bool AtomicGame::IsFeasible(std::span<const double> x) const {
  CheckShape(x, "x");
  for (std::size_t i = 0; i < def_.n; ++i)
    if (!def_.intervals[i].Contains(x[i])) return false;
  return true;
}

NonatomicGame::NonatomicGame(Definition def) : def_(std::move(def)) {
  if (def_.populations.empty())
    throw InvalidArgument("non-atomic game needs at least one population");
  for (std::size_t i = 0; i < def_.populations.size(); ++i) {
    const Population& pop = def_.populations[i];
    if (!(pop.mass > 0.0) || !std::isfinite(pop.mass))
      throw InvalidArgument("population " + std::to_string(i) + " mass must be positive");
    if (pop.actions == 0)
      throw InvalidArgument("population " + std::to_string(i) + " has no actions");
    offsets_.push_back(dim_);
    dim_ += pop.actions;
  }
  if (!def_.costs || !def_.social_cost || !def_.social_grad)
    throw InvalidArgument("non-atomic game: costs, social_cost and social_grad are required");
}

void NonatomicGame::CheckShape(std::span<const double> v, const char* what) const {
  if (v.size() != dim_)
    throw InvalidArgument(std::string(what) + " has length " + std::to_string(v.size()) +
                          ", expected " + std::to_string(dim_));
}

void NonatomicGame::CheckOnSimplex(std::span<const double> x, double tol) const {
  CheckShape(x, "x~");
  for (std::size_t i = 0; i < def_.populations.size(); ++i) {
    double total = 0.0;
    for (std::size_t j = 0; j < def_.populations[i].actions; ++j) {
      const double v = x[offsets_[i] + j];
      if (!(v >= -tol)) {
        std::ostringstream os;
        os << "simplex violation: x~[" << i << "][" << j << "] = " << v << " < 0";
        throw InvalidArgument(os.str());
      }
      total += v;
    }
    if (std::abs(total - def_.populations[i].mass) > tol * (1.0 + def_.populations[i].mass)) {
      std::ostringstream os;
      os.precision(17);
      os << "simplex violation: population " << i << " sums to " << total
         << ", expected mass " << def_.populations[i].mass;
      throw InvalidArgument(os.str());
    }
  }
}

Vector NonatomicGame::Costs(std::span<const double> x) const {
  CheckShape(x, "x~");
  return def_.costs(x);
}

double NonatomicGame::Cost(std::span<const double> x, std::size_t i,
                           std::size_t j) const {
  if (i >= def_.populations.size() || j >= def_.populations[i].actions)
    throw InvalidArgument("population/action index out of range");
  return Costs(x)[offsets_[i] + j];
}

double NonatomicGame::SocialCost(std::span<const double> x) const {
  CheckShape(x, "x~");
  return def_.social_cost(x);
}

Vector NonatomicGame::SocialGrad(std::span<const double> x) const {
  CheckShape(x, "x~");
  return def_.social_grad(x);
}

Vector NonatomicGame::Nash(std::span<const double> p) const {
  if (!def_.nash) throw InvalidArgument("game provides no exact equilibrium solver");
  CheckShape(p, "p~");
  return def_.nash(p);
}

Vector NonatomicGame::LogitEquilibrium(std::span<const double> p, double eta) const {
  if (!def_.logit_equilibrium)
    throw InvalidArgument("game provides no logit equilibrium solver");
  CheckShape(p, "p~");
  return def_.logit_equilibrium(p, eta);
}

IncentiveVector NonatomicGame::Externality(std::span<const double> x) const {
  CheckShape(x, "x~");
  if (def_.externality) return IncentiveVector(def_.externality(x));
  Vector e = def_.social_grad(x);
  const Vector c = def_.costs(x);
  for (std::size_t k = 0; k < dim_; ++k) e[k] -= c[k];
  return IncentiveVector(std::move(e));
}

StepSchedule::StepSchedule(double a_x, double rho_x, double a_p, double rho_p)
    : a_x_(a_x), rho_x_(rho_x), a_p_(a_p), rho_p_(rho_p) {
  if (!(a_x > 0.0 && a_x <= 1.0) || !(a_p > 0.0 && a_p <= 1.0))
    throw InvalidArgument("step scales a_x, a_p must lie in (0, 1]");
  if (!(0.5 < rho_x && rho_x < rho_p && rho_p <= 1.0))
    throw InvalidArgument(
        "step exponents must satisfy 0.5 < rho_x < rho_p <= 1 (square-summable "
        "steps with gamma_k / beta_k -> 0)");
}

double StepSchedule::Beta(std::int64_t k) const {
  return a_x_ * std::pow(static_cast<double>(k + 1), -rho_x_);
}

double StepSchedule::Gamma(std::int64_t k) const {
  return a_p_ * std::pow(static_cast<double>(k + 1), -rho_p_);
}

double TotalCostAtomic(const AtomicGame& game, std::span<const double> x,
                       std::span<const double> p, std::size_t i) {
  game.CheckShape(p, "p");
  RequireFinite(p, "p");
  if (!game.IsFeasible(x)) throw InvalidArgument("x lies outside the strategy intervals");
  return game.Cost(i, x) + p[i] * x[i];
}

double TotalCostNonatomic(const NonatomicGame& game, std::span<const double> x,
                          std::span<const double> p, std::size_t i, std::size_t j) {
  game.CheckShape(p, "p~");
  game.CheckOnSimplex(x);
  return game.Cost(x, i, j) + p[game.offset(i) + j];
}

}  // namespace incentive_forge
