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

#ifndef INCENTIVE_FORGE_GAMES_COURNOT_HPP_
#define INCENTIVE_FORGE_GAMES_COURNOT_HPP_

#include <optional>
#include <span>
#include <string>

#include "core/types.hpp"
#include "linalg/matrix.hpp"

namespace incentive_forge {

// Cournot competition with linear inverse demand P(x) = theta - delta sum x,
// per-unit cost nu, and planner cost Phi(x) = sum_i l_i(x) + lambda sum x_i^2.
// Production is unconstrained; negative quantities only raise a warning.
class CournotGame {
 public:
  CournotGame(std::size_t n, double theta, double delta, double nu, double lambda);

  std::size_t n() const { return n_; }
  double theta() const { return theta_; }
  double delta() const { return delta_; }
  double nu() const { return nu_; }
  double lambda() const { return lambda_; }

  double Price(std::span<const double> x) const;
  double Cost(std::size_t i, std::span<const double> x) const;
  double DCost(std::size_t i, std::span<const double> x) const;
  double SocialCost(std::span<const double> x) const;
  Vector SocialGrad(std::span<const double> x) const;

  // x*_i(p) = (theta - nu - n p_i + sum_{j != i} p_j) / (delta (n + 1)).
  Vector Nash(std::span<const double> p) const;
  // (theta - delta sum_{j != i} x_j - nu - p_i) / (2 delta)
  Vector BestResponse(std::span<const double> x, std::span<const double> p) const;
  // 2 lambda x_i + delta sum_{j != i} x_j
  IncentiveVector Externality(std::span<const double> x) const;

  // Gamma = (2 lambda - delta) I + delta 11^T, the linear map x -> e(x).
  linalg::Matrix Gamma() const;
  // Omega = -(1/delta) I + 11^T / (delta (n + 1)), the linear part of x*(p).
  linalg::Matrix Omega() const;

  // Message when some component is not strictly positive.
  static std::optional<std::string> PositivityWarning(std::span<const double> x);

  AtomicGame ToAtomicGame() const;

 private:
  void CheckShape(std::span<const double> v, const char* what) const;
  double Total(std::span<const double> x) const;

  std::size_t n_;
  double theta_, delta_, nu_, lambda_;
};

}  // namespace incentive_forge

#endif  // INCENTIVE_FORGE_GAMES_COURNOT_HPP_
