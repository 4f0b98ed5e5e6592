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

#include <cmath>
#include <string>

#include "core/errors.hpp"
#include "core/finite_difference.hpp"
#include "core/types.hpp"
#include "doctest.h"
#include "test_util.hpp"

namespace incentive_forge {
namespace {

using testing::CournotExample;
using testing::PigouExample;
using testing::QuadraticExample;
using testing::Rng;

TEST_CASE("TotalCostAtomic: quadratic family at the origin") {
  const AtomicGame game = QuadraticExample().ToAtomicGame();
  CHECK(TotalCostAtomic(game, Vector{0.0, 0.0}, Vector{1.0, 1.0}, 0) == 0.0);
}

TEST_CASE("TotalCostAtomic: quadratic family at the social optimum") {
  const AtomicGame game = QuadraticExample().ToAtomicGame();
  const double total = TotalCostAtomic(game, Vector{-1.0, -1.0}, Vector{0.75, 0.75}, 0);
  CHECK(game.Cost(0, Vector{-1.0, -1.0}) == doctest::Approx(0.25));
  CHECK(total == doctest::Approx(-0.5));
}

TEST_CASE("TotalCostAtomic: Cournot family") {
  const AtomicGame game = CournotExample().ToAtomicGame();
  CHECK(TotalCostAtomic(game, Vector{3.0, 3.0}, Vector{0.0, 0.0}, 0) == doctest::Approx(-9.0));
}

TEST_CASE("TotalCostAtomic: errors") {
  const AtomicGame game = QuadraticExample().ToAtomicGame();
  CHECK_THROWS_AS(TotalCostAtomic(game, Vector{0.0, 0.0}, Vector{0.0, 0.0}, 2), InvalidArgument);
  CHECK_THROWS_AS(TotalCostAtomic(game, Vector{0.0}, Vector{0.0, 0.0}, 0), InvalidArgument);
  CHECK_THROWS(TotalCostAtomic(game, Vector{0.0, 0.0}, Vector{NAN, 0.0}, 0));
}

TEST_CASE("TotalCostAtomic: the payment enters additively") {
  Rng rng(3);
  const AtomicGame games[] = {QuadraticExample().ToAtomicGame(),
                              CournotExample().ToAtomicGame()};
  for (const AtomicGame& game : games) {
    for (int s = 0; s < 100; ++s) {
      const Vector x = rng.Box(game.n(), -5.0, 5.0);
      const Vector p = rng.Box(game.n(), -5.0, 5.0);
      for (std::size_t i = 0; i < game.n(); ++i) {
        const double diff =
            TotalCostAtomic(game, x, p, i) - TotalCostAtomic(game, x, Vector(game.n(), 0.0), i);
        CHECK(std::abs(diff - p[i] * x[i]) <= 1e-12 * (1.0 + std::abs(p[i] * x[i])));
      }
    }
  }
}

TEST_CASE("TotalCostAtomic: rejects points outside bounded strategy sets") {
  AtomicGame::Definition def;
  def.n = 1;
  def.intervals = {Interval{0.0, 1.0}};
  def.cost = [](std::size_t, std::span<const double> x) { return x[0] * x[0]; };
  def.dcost = [](std::size_t, std::span<const double> x) { return 2.0 * x[0]; };
  def.social_cost = [](std::span<const double> x) { return x[0]; };
  def.social_grad = [](std::span<const double>) { return Vector{1.0}; };
  const AtomicGame game(def);
  CHECK_THROWS_AS(TotalCostAtomic(game, Vector{2.0}, Vector{0.0}, 0), InvalidArgument);
  CHECK(TotalCostAtomic(game, Vector{0.5}, Vector{1.0}, 0) == doctest::Approx(0.75));
}

TEST_CASE("AtomicGame: rejects empty strategy intervals") {
  AtomicGame::Definition def;
  def.n = 1;
  def.intervals = {Interval{1.0, 1.0}};
  def.cost = [](std::size_t, std::span<const double>) { return 0.0; };
  def.dcost = [](std::size_t, std::span<const double>) { return 0.0; };
  def.social_cost = [](std::span<const double>) { return 0.0; };
  def.social_grad = [](std::span<const double>) { return Vector{0.0}; };
  CHECK_THROWS_AS(AtomicGame{def}, InvalidArgument);
}

TEST_CASE("TotalCostNonatomic: routing examples") {
  const NonatomicGame game = PigouExample().ToNonatomicGame();
  CHECK(TotalCostNonatomic(game, Vector{0.5, 0.5}, Vector{0.0, 0.0}, 0, 0) ==
        doctest::Approx(0.5));
  CHECK(TotalCostNonatomic(game, Vector{0.5, 0.5}, Vector{0.5, 0.0}, 0, 0) ==
        doctest::Approx(1.0));
  Rng rng(9);
  for (int s = 0; s < 20; ++s) {
    const Vector x = rng.Simplex(2);
    for (std::size_t j = 0; j < 2; ++j)
      CHECK(TotalCostNonatomic(game, x, Vector{0.0, 0.0}, 0, j) == game.Cost(x, 0, j));
  }
}

TEST_CASE("TotalCostNonatomic: simplex violations carry a diagnostic") {
  const NonatomicGame game = PigouExample().ToNonatomicGame();
  try {
    TotalCostNonatomic(game, Vector{0.7, 0.7}, Vector{0.0, 0.0}, 0, 0);
    FAIL("expected a simplex violation");
  } catch (const InvalidArgument& e) {
    CHECK(std::string(e.what()).find("simplex violation") != std::string::npos);
  }
  CHECK_THROWS_AS(TotalCostNonatomic(game, Vector{1.2, -0.2}, Vector{0.0, 0.0}, 0, 0),
                  InvalidArgument);
  CHECK_THROWS_AS(TotalCostNonatomic(game, Vector{0.5, 0.5}, Vector{0.0, 0.0}, 0, 2),
                  InvalidArgument);
}

TEST_CASE("NonatomicGame: multiple populations flatten population-major") {
  NonatomicGame::Definition def;
  def.populations = {{1.0, 2}, {2.0, 3}};
  def.costs = [](std::span<const double> x) { return Vector(x.begin(), x.end()); };
  def.social_cost = [](std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += 0.5 * v * v;
    return s;
  };
  def.social_grad = [](std::span<const double> x) { return Vector(x.begin(), x.end()); };
  const NonatomicGame game(def);
  CHECK(game.dim() == 5);
  CHECK(game.offset(1) == 2);
  const Vector x{0.25, 0.75, 1.0, 0.5, 0.5};
  game.CheckOnSimplex(x);
  CHECK(game.Cost(x, 1, 0) == 1.0);
  CHECK_THROWS_AS(game.CheckOnSimplex(Vector{0.25, 0.75, 1.0, 0.5, 0.6}), InvalidArgument);
  // Without an analytic externality the gradient form is used.
  const IncentiveVector e = game.Externality(x);
  for (std::size_t k = 0; k < 5; ++k) CHECK(e[k] == 0.0);
}

TEST_CASE("IncentiveVector: entries must be finite") {
  CHECK_THROWS(IncentiveVector(Vector{1.0, INFINITY}));
  CHECK_THROWS(IncentiveVector(Vector{NAN}));
  const IncentiveVector p = IncentiveVector::Zeros(3);
  CHECK(p.size() == 3);
  CHECK(p[2] == 0.0);
}

TEST_CASE("Interval: clamp and contains") {
  const Interval unbounded;
  CHECK(unbounded.Clamp(1e300) == 1e300);
  CHECK(unbounded.Contains(-1e300));
  const Interval unit{0.0, 1.0};
  CHECK(unit.Clamp(-3.0) == 0.0);
  CHECK(unit.Clamp(3.0) == 1.0);
  CHECK_FALSE(unit.Contains(1.5));
}

TEST_CASE("StepSchedule: validation") {
  CHECK_NOTHROW(StepSchedule(1.0, 0.6, 1.0, 0.9));
  CHECK_THROWS_AS(StepSchedule(1.0, 0.9, 1.0, 0.6), InvalidArgument);
  CHECK_THROWS_AS(StepSchedule(1.0, 0.7, 1.0, 0.7), InvalidArgument);
  CHECK_THROWS_AS(StepSchedule(1.0, 0.5, 1.0, 0.9), InvalidArgument);
  CHECK_THROWS_AS(StepSchedule(1.0, 0.6, 1.0, 1.1), InvalidArgument);
  CHECK_THROWS_AS(StepSchedule(1.5, 0.6, 1.0, 0.9), InvalidArgument);
  CHECK_THROWS_AS(StepSchedule(1.0, 0.6, 0.0, 0.9), InvalidArgument);
}

TEST_CASE("StepSchedule: steps lie in (0, 1) and separate timescales") {
  const StepSchedule s(1.0, 0.6, 1.0, 0.9);
  CHECK(s.Beta(1) == doctest::Approx(std::pow(2.0, -0.6)));
  CHECK(s.Gamma(1) == doctest::Approx(std::pow(2.0, -0.9)));
  double last_ratio = 1.0;
  for (std::int64_t k = 1; k <= 1000000; k *= 10) {
    CHECK(s.Beta(k) > 0.0);
    CHECK(s.Beta(k) < 1.0);
    CHECK(s.Gamma(k) > 0.0);
    CHECK(s.Gamma(k) < 1.0);
    const double ratio = s.Gamma(k) / s.Beta(k);
    CHECK(ratio < last_ratio);
    last_ratio = ratio;
  }
}

TEST_CASE("Finite differences: relative error convention") {
  CHECK(RelativeError(1.0, 1.0) == 0.0);
  CHECK(RelativeError(1e-7, 0.0) == doctest::Approx(1e-7));
  CHECK(RelativeError(101.0, 100.0) == doctest::Approx(0.01));
  CHECK(CentralStep(0.0) == 1e-6);
  CHECK(CentralStep(-3.0) == doctest::Approx(4e-6));
}

TEST_CASE("Atomic gradients agree with central differences at random points") {
  Rng rng(41);
  const AtomicGame games[] = {
      QuadraticExample().ToAtomicGame(),
      QuadraticAggregativeGame({0.3, 0.7, 1.2},
                               linalg::Matrix{{0.0, 0.4, -0.2}, {0.1, 0.0, 0.3}, {0.5, 0.2, 0.0}},
                               {1.0, -2.0, 0.5})
          .ToAtomicGame(),
      CournotExample().ToAtomicGame(),
      CournotExample(0.1, 10).ToAtomicGame()};
  for (const AtomicGame& game : games) {
    for (int s = 0; s < 100; ++s) {
      const Vector x = rng.Box(game.n(), -4.0, 4.0);
      const Vector grad = game.SocialGrad(x);
      const Vector fd =
          CentralGradient([&](std::span<const double> y) { return game.SocialCost(y); }, x);
      for (std::size_t i = 0; i < game.n(); ++i) {
        CHECK(RelativeError(grad[i], fd[i]) <= 1e-5);
        const double dfd =
            CentralPartial([&](std::span<const double> y) { return game.Cost(i, y); }, x, i);
        CHECK(RelativeError(game.DCost(i, x), dfd) <= 1e-5);
      }
    }
  }
}

TEST_CASE("Non-atomic social gradient agrees with directional differences on the simplex") {
  Rng rng(43);
  const RoutingGame routing({{0.5, 1.0, 0.0, 2.0}, {1.0, 0.5}, {0.2, 0.0, 3.0, 0.0, 1.0}}, 10.0);
  const NonatomicGame game = routing.ToNonatomicGame();
  for (int s = 0; s < 100; ++s) {
    const Vector x = rng.Simplex(3, 0.01);
    const Vector grad = game.SocialGrad(x);
    for (std::size_t j = 0; j < 3; ++j) {
      for (std::size_t jp = 0; jp < 3; ++jp) {
        if (j == jp) continue;
        // Move mass from jp to j: stays on the simplex.
        const double h = 1e-6;
        Vector plus = x, minus = x;
        plus[j] += h;
        plus[jp] -= h;
        minus[j] -= h;
        minus[jp] += h;
        const double fd = (game.SocialCost(plus) - game.SocialCost(minus)) / (2.0 * h);
        CHECK(RelativeError(grad[j] - grad[jp], fd) <= 1e-5);
      }
    }
  }
}

}  // namespace
}  // namespace incentive_forge
