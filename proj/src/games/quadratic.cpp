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

#include "games/quadratic.hpp"

#include <cmath>
#include <string>

#include "core/errors.hpp"

namespace incentive_forge {

QuadraticAggregativeGame::QuadraticAggregativeGame(Vector k, linalg::Matrix z, Vector xi)
    : k_(std::move(k)), z_(std::move(z)), xi_(std::move(xi)) {
  const std::size_t n = k_.size();
  if (n == 0) throw InvalidArgument("quadratic game needs at least one player");
  if (z_.rows() != n || z_.cols() != n)
    throw InvalidArgument("quadratic game: Z must be " + std::to_string(n) + "x" +
                          std::to_string(n));
  if (xi_.size() != n) throw InvalidArgument("quadratic game: xi must have length n");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(k_[i] > 0.0) || !std::isfinite(k_[i]))
      throw InvalidArgument("quadratic game: k[" + std::to_string(i) + "] must be > 0");
    if (z_(i, i) != 0.0)
      throw InvalidArgument("quadratic game: Z[" + std::to_string(i) + "][" +
                            std::to_string(i) + "] must be 0");
    if (!std::isfinite(xi_[i]))
      throw InvalidArgument("quadratic game: xi must be finite");
  }
  if (!z_.AllFinite()) throw InvalidArgument("quadratic game: Z must be finite");
  kz_ = linalg::Matrix::Diagonal(k_) * z_;
}

void QuadraticAggregativeGame::CheckShape(std::span<const double> v,
                                          const char* what) const {
  if (v.size() != n())
    throw InvalidArgument(std::string(what) + " has wrong length for quadratic game");
}

linalg::Matrix QuadraticAggregativeGame::IMinusKz() const {
  return linalg::Matrix::Identity(n()) - kz_;
}

double QuadraticAggregativeGame::Aggregate(std::size_t i, std::span<const double> x) const {
  return linalg::Dot(z_.row(i), x);
}

double QuadraticAggregativeGame::Cost(std::size_t i, std::span<const double> x) const {
  CheckShape(x, "x");
  return 0.5 * x[i] * x[i] - k_[i] * x[i] * Aggregate(i, x);
}

double QuadraticAggregativeGame::DCost(std::size_t i, std::span<const double> x) const {
  CheckShape(x, "x");
  // Z_ii = 0, so z_i does not depend on x_i.
  return x[i] - k_[i] * Aggregate(i, x);
}

double QuadraticAggregativeGame::SocialCost(std::span<const double> x) const {
  CheckShape(x, "x");
  double s = 0.0;
  for (std::size_t i = 0; i < n(); ++i) s += (x[i] + xi_[i]) * (x[i] + xi_[i]);
  return 0.5 * s;
}

Vector QuadraticAggregativeGame::SocialGrad(std::span<const double> x) const {
  CheckShape(x, "x");
  Vector g(n());
  for (std::size_t i = 0; i < n(); ++i) g[i] = x[i] + xi_[i];
  return g;
}

Vector QuadraticAggregativeGame::Nash(std::span<const double> p) const {
  CheckShape(p, "p");
  Vector x;
  try {
    x = linalg::Solve(IMinusKz(), p);
  } catch (const NumericError& e) {
    throw NumericError(std::string("Leontief matrix undefined: I - KZ is singular (") +
                       e.what() + ")");
  }
  for (double& v : x) v = -v;
  return x;
}

Vector QuadraticAggregativeGame::BestResponse(std::span<const double> x,
                                              std::span<const double> p) const {
  CheckShape(x, "x");
  CheckShape(p, "p");
  Vector br = kz_ * x;
  for (std::size_t i = 0; i < n(); ++i) br[i] -= p[i];
  return br;
}

IncentiveVector QuadraticAggregativeGame::Externality(std::span<const double> x) const {
  CheckShape(x, "x");
  Vector e = kz_ * x;
  for (std::size_t i = 0; i < n(); ++i) e[i] += xi_[i];
  return IncentiveVector(std::move(e));
}

AtomicGame QuadraticAggregativeGame::ToAtomicGame() const {
  const QuadraticAggregativeGame self = *this;
  AtomicGame::Definition def;
  def.n = n();
  def.cost = [self](std::size_t i, std::span<const double> x) { return self.Cost(i, x); };
  def.dcost = [self](std::size_t i, std::span<const double> x) { return self.DCost(i, x); };
  def.social_cost = [self](std::span<const double> x) { return self.SocialCost(x); };
  def.social_grad = [self](std::span<const double> x) { return self.SocialGrad(x); };
  def.nash = [self](std::span<const double> p) { return self.Nash(p); };
  def.best_response = [self](std::span<const double> x, std::span<const double> p) {
    return self.BestResponse(x, p);
  };
  def.externality = [self](std::span<const double> x) {
    return self.Externality(x).values();
  };
  return AtomicGame(std::move(def));
}

}  // namespace incentive_forge
