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

#include "analysis/externality.hpp"

#include "core/errors.hpp"
#include "core/finite_difference.hpp"

namespace incentive_forge {

IncentiveVector ExternalityFdOracle(const AtomicGame& game, std::span<const double> x) {
  game.CheckShape(x, "x");
  if (!game.has_cost()) throw InvalidArgument("finite-difference oracle needs cost callables");
  Vector e(game.n());
  for (std::size_t i = 0; i < game.n(); ++i) {
    const double social = CentralPartial(
        [&](std::span<const double> y) { return game.SocialCost(y); }, x, i);
    const double own = CentralPartial(
        [&](std::span<const double> y) { return game.Cost(i, y); }, x, i);
    e[i] = social - own;
  }
  return IncentiveVector(std::move(e));
}

IncentiveVector ExternalityFdOracle(const NonatomicGame& game, std::span<const double> x) {
  game.CheckShape(x, "x~");
  Vector e = CentralGradient([&](std::span<const double> y) { return game.SocialCost(y); }, x);
  const Vector c = game.Costs(x);
  for (std::size_t k = 0; k < e.size(); ++k) e[k] -= c[k];
  return IncentiveVector(std::move(e));
}

IncentiveVector ExternalityFromGradients(const AtomicGame& game, std::span<const double> x) {
  Vector e = game.SocialGrad(x);
  for (std::size_t i = 0; i < game.n(); ++i) e[i] -= game.DCost(i, x);
  return IncentiveVector(std::move(e));
}

IncentiveVector ExternalityFromGradients(const NonatomicGame& game,
                                         std::span<const double> x) {
  Vector e = game.SocialGrad(x);
  const Vector c = game.Costs(x);
  for (std::size_t k = 0; k < e.size(); ++k) e[k] -= c[k];
  return IncentiveVector(std::move(e));
}

}  // namespace incentive_forge
