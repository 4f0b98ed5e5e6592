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

#ifndef INCENTIVE_FORGE_GAMES_ROUTING_HPP_
#define INCENTIVE_FORGE_GAMES_ROUTING_HPP_

#include <span>
#include <vector>

#include "core/types.hpp"

namespace incentive_forge {

// Single origin-destination pair joined by parallel routes, unit demand.
// Route j has latency l_j(y) = sum_d a_{j,d} y^d with a_{j,d} >= 0 for d >= 1
// (not all zero) and degree <= 4, so every latency is strictly increasing and
// convex on [0, 1]. Planner cost is total latency sum_j x_j l_j(x_j).
class RoutingGame {
 public:
  static constexpr std::size_t kMaxDegree = 4;

  RoutingGame(std::vector<std::vector<double>> latencies, double eta);

  std::size_t routes() const { return coeffs_.size(); }
  double eta() const { return eta_; }
  const std::vector<std::vector<double>>& latencies() const { return coeffs_; }

  double Latency(std::size_t j, double y) const;
  double LatencyDerivative(std::size_t j, double y) const;
  double LatencySecondDerivative(std::size_t j, double y) const;

  // l_j(x_j) + p_j
  Vector Costs(std::span<const double> x, std::span<const double> p) const;
  // Softmax of -eta * cost, computed with max-subtraction.
  Vector Logit(std::span<const double> x, std::span<const double> p) const;
  Vector Logit(std::span<const double> x, std::span<const double> p, double eta) const;
  // x_j l_j'(x_j)
  IncentiveVector Externality(std::span<const double> x) const;

  double SocialCost(std::span<const double> x) const;
  Vector SocialGrad(std::span<const double> x) const;

  // Tolled Wardrop equilibrium (exact, by nested bisection on the common cost).
  Vector WardropEquilibrium(std::span<const double> p) const;
  // Fixed point of the logit map at sensitivity eta (nested bisection on the
  // log-normalizer).
  Vector LogitEquilibrium(std::span<const double> p, double eta) const;
  // Minimizer of total latency (equalizes marginal costs l_j + y l_j').
  Vector SocialOptimum() const;

  NonatomicGame ToNonatomicGame() const;

 private:
  void CheckShape(std::span<const double> v, const char* what) const;
  // Solves the equal-level allocation for an increasing per-route function.
  template <typename RouteFn>
  Vector EqualizeLevels(std::span<const double> offset, RouteFn route_fn) const;

  std::vector<std::vector<double>> coeffs_;
  double eta_;
};

}  // namespace incentive_forge

#endif  // INCENTIVE_FORGE_GAMES_ROUTING_HPP_
