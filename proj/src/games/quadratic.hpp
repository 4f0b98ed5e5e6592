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

#ifndef INCENTIVE_FORGE_GAMES_QUADRATIC_HPP_
#define INCENTIVE_FORGE_GAMES_QUADRATIC_HPP_

#include <span>

#include "core/types.hpp"
#include "linalg/matrix.hpp"

namespace incentive_forge {

// Networked quadratic aggregative game:
//   l_i(x) = x_i^2 / 2 - k_i x_i z_i(x),   z_i(x) = sum_j Z_ij x_j,
// with planner cost Phi(x) = ||x + xi||^2 / 2, so that x_dagger = -xi and the
// fixed-point incentive is (I - KZ) xi.
class QuadraticAggregativeGame {
 public:
  QuadraticAggregativeGame(Vector k, linalg::Matrix z, Vector xi);

  std::size_t n() const { return k_.size(); }
  const Vector& k() const { return k_; }
  const linalg::Matrix& z() const { return z_; }
  const Vector& xi() const { return xi_; }
  // K Z with K = diag(k).
  const linalg::Matrix& kz() const { return kz_; }
  // I - KZ; its inverse is the Leontief matrix.
  linalg::Matrix IMinusKz() const;

  double Aggregate(std::size_t i, std::span<const double> x) const;
  double Cost(std::size_t i, std::span<const double> x) const;
  double DCost(std::size_t i, std::span<const double> x) const;
  double SocialCost(std::span<const double> x) const;
  Vector SocialGrad(std::span<const double> x) const;

  // x*(p) = -(I - KZ)^{-1} p. Throws NumericError if I - KZ is singular.
  Vector Nash(std::span<const double> p) const;
  // K Z x - p
  Vector BestResponse(std::span<const double> x, std::span<const double> p) const;
  // xi + K Z x
  IncentiveVector Externality(std::span<const double> x) const;

  AtomicGame ToAtomicGame() const;

 private:
  void CheckShape(std::span<const double> v, const char* what) const;

  Vector k_;
  linalg::Matrix z_;
  Vector xi_;
  linalg::Matrix kz_;
};

}  // namespace incentive_forge

#endif  // INCENTIVE_FORGE_GAMES_QUADRATIC_HPP_
