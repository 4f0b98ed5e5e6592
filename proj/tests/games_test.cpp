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
#include "doctest.h"
#include "games/cournot.hpp"
#include "games/quadratic.hpp"
#include "games/routing.hpp"
#include "test_util.hpp"

namespace incentive_forge {
namespace {

using linalg::Matrix;
using testing::CournotExample;
using testing::PigouExample;
using testing::QuadraticExample;
using testing::Rng;

TEST_CASE("Quadratic: validation") {
  CHECK_THROWS_AS(QuadraticAggregativeGame({0.5, 0.5}, Matrix{{0.1, 0.5}, {0.5, 0.0}}, {1.0, 1.0}),
                  InvalidArgument);
  CHECK_THROWS_AS(QuadraticAggregativeGame({0.0, 0.5}, Matrix{{0.0, 0.5}, {0.5, 0.0}}, {1.0, 1.0}),
                  InvalidArgument);
  CHECK_THROWS_AS(QuadraticAggregativeGame({0.5, 0.5}, Matrix{{0.0, 0.5}, {0.5, 0.0}}, {1.0}),
                  InvalidArgument);
}

TEST_CASE("Quadratic: Nash equilibrium zeroes every first-order condition") {
  const QuadraticAggregativeGame game = QuadraticExample();
  Rng rng(1);
  for (int s = 0; s < 50; ++s) {
    const Vector p = rng.Box(2, -3.0, 3.0);
    const Vector x = game.Nash(p);
    for (std::size_t i = 0; i < 2; ++i) CHECK(std::abs(game.DCost(i, x) + p[i]) < 1e-12);
    // A Nash equilibrium is a fixed point of the best response.
    const Vector br = game.BestResponse(x, p);
    CHECK(linalg::DistInf(br, x) < 1e-12);
  }
  const Vector x = game.Nash(Vector{0.75, 0.75});
  CHECK(x[0] == doctest::Approx(-1.0));
  CHECK(x[1] == doctest::Approx(-1.0));
}

TEST_CASE("Quadratic: externality and social cost") {
  const QuadraticAggregativeGame game = QuadraticExample();
  const IncentiveVector e0 = game.Externality(Vector{0.0, 0.0});
  CHECK(e0[0] == 1.0);
  CHECK(e0[1] == 1.0);
  CHECK(game.SocialCost(Vector{-1.0, -1.0}) == 0.0);
  const Vector g = game.SocialGrad(Vector{-1.0, -1.0});
  CHECK(g[0] == 0.0);
  CHECK(g[1] == 0.0);
}

TEST_CASE("Quadratic: singular I - KZ is reported") {
  const QuadraticAggregativeGame game({1.0, 1.0}, Matrix{{0.0, 1.0}, {1.0, 0.0}}, {1.0, 1.0});
  try {
    game.Nash(Vector{0.0, 0.0});
    FAIL("expected a singular Leontief matrix");
  } catch (const NumericError& e) {
    CHECK(std::string(e.what()).find("I - KZ") != std::string::npos);
  }
}

TEST_CASE("Cournot: Nash closed form agrees with the best-response fixed point") {
  Rng rng(2);
  for (std::size_t n : {1u, 2u, 5u}) {
    const CournotGame game(n, 10.0, 1.5, 1.0, 2.0);
    for (int s = 0; s < 20; ++s) {
      const Vector p = rng.Box(n, -2.0, 2.0);
      const Vector x = game.Nash(p);
      CHECK(linalg::DistInf(game.BestResponse(x, p), x) < 1e-12);
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(game.DCost(i, x) + p[i]) < 1e-12);
    }
  }
}

TEST_CASE("Cournot: Nash satisfies 2 x_i + sum_{j != i} x_j = (theta - nu - p_i) / delta") {
  Rng rng(21);
  for (std::size_t n : {2u, 3u, 8u}) {
    const CournotGame game(n, 7.0, 0.8, 1.5, 1.2);
    for (int s = 0; s < 50; ++s) {
      const Vector p = rng.Box(n, -3.0, 3.0);
      const Vector x = game.Nash(p);
      double total = 0.0;
      for (double v : x) total += v;
      for (std::size_t i = 0; i < n; ++i)
        CHECK(std::abs(x[i] + total - (7.0 - 1.5 - p[i]) / 0.8) <= 1e-10);
    }
  }
}

TEST_CASE("Cournot: externality example and Gamma, Omega") {
  const CournotGame game = CournotExample();
  const IncentiveVector e = game.Externality(Vector{3.0, 3.0});
  CHECK(e[0] == doctest::Approx(15.0));
  CHECK(e[1] == doctest::Approx(15.0));
  CHECK(testing::MaxAbsDiff(game.Gamma(), Matrix{{4.0, 1.0}, {1.0, 4.0}}) < 1e-15);
  CHECK(testing::MaxAbsDiff(game.Omega(), Matrix{{-2.0 / 3.0, 1.0 / 3.0}, {1.0 / 3.0, -2.0 / 3.0}}) <
        1e-15);
  // Gamma is the linear map behind the externality.
  Rng rng(4);
  const Vector x = rng.Box(2, -3.0, 3.0);
  CHECK(linalg::DistInf(game.Gamma() * x, game.Externality(x)) < 1e-12);
}

TEST_CASE("Cournot: Omega is the incentive sensitivity of the Nash equilibrium") {
  const CournotGame game(4, 10.0, 2.0, 1.0, 0.7);
  const Vector base = game.Nash(Vector(4, 0.0));
  for (std::size_t j = 0; j < 4; ++j) {
    Vector p(4, 0.0);
    p[j] = 1.0;
    const Vector x = game.Nash(p);
    for (std::size_t i = 0; i < 4; ++i)
      CHECK(x[i] - base[i] == doctest::Approx(game.Omega()(i, j)).epsilon(1e-12));
  }
}

TEST_CASE("Cournot: positivity warning") {
  CHECK_FALSE(CournotGame::PositivityWarning(Vector{1.0, 2.0}).has_value());
  CHECK(CournotGame::PositivityWarning(Vector{1.0, -2.0}).has_value());
  CHECK_THROWS_AS(CournotGame(2, 10.0, 0.0, 1.0, 2.0), InvalidArgument);
}

TEST_CASE("Routing: latency polynomials") {
  const RoutingGame game({{1.0, 2.0, 3.0}, {0.0, 1.0}}, 10.0);
  CHECK(game.Latency(0, 2.0) == doctest::Approx(1.0 + 4.0 + 12.0));
  CHECK(game.LatencyDerivative(0, 2.0) == doctest::Approx(2.0 + 12.0));
  CHECK(game.LatencySecondDerivative(0, 2.0) == doctest::Approx(6.0));
  CHECK(game.LatencySecondDerivative(1, 2.0) == 0.0);
}

TEST_CASE("Routing: validation") {
  CHECK_THROWS_AS(RoutingGame({{1.0}}, 1.0), InvalidArgument);
  CHECK_THROWS_AS(RoutingGame({{1.0, -1.0}}, 1.0), InvalidArgument);
  CHECK_THROWS_AS(RoutingGame({{1.0, 0.0, 0.0}}, 1.0), InvalidArgument);
  CHECK_THROWS_AS(RoutingGame({{1.0, 1.0, 1.0, 1.0, 1.0, 1.0}}, 1.0), InvalidArgument);
  CHECK_THROWS_AS(RoutingGame({{0.0, 1.0}}, 0.0), InvalidArgument);
  CHECK_NOTHROW(RoutingGame({{-1.0, 1.0}, {0.0, 1.0}}, 1.0));
}

TEST_CASE("Routing: logit choice is a stable softmax") {
  const RoutingGame game = PigouExample();
  const Vector s = game.Logit(Vector{0.5, 0.5}, Vector{0.0, 0.0});
  CHECK(s[0] + s[1] == doctest::Approx(1.0));
  CHECK(s[0] == doctest::Approx(1.0 / (1.0 + std::exp(-50.0))));
  const Vector extreme = game.Logit(Vector{0.5, 0.5}, Vector{0.0, 100.0}, 1e6);
  CHECK(extreme[0] == 1.0);
  CHECK(extreme[1] == 0.0);
}

TEST_CASE("Routing: logit output is a distribution invariant to cost shifts") {
  Rng rng(22);
  const RoutingGame game({{0.0, 1.0}, {1.0, 1.0}, {0.2, 0.5, 0.0, 1.0}, {0.4, 0.0, 2.0}}, 7.0);
  for (int s = 0; s < 100; ++s) {
    const Vector x = rng.Simplex(4);
    const Vector p = rng.Box(4, -2.0, 2.0);
    const double eta = rng.Uniform(0.1, 200.0);
    const Vector y = game.Logit(x, p, eta);
    double total = 0.0;
    for (double v : y) {
      CHECK(v >= 0.0);
      total += v;
    }
    CHECK(std::abs(total - 1.0) <= 1e-12);
    const double shift = rng.Uniform(-50.0, 50.0);
    Vector shifted = p;
    for (double& v : shifted) v += shift;
    CHECK(linalg::DistInf(game.Logit(x, shifted, eta), y) <= 1e-12);
  }
}

TEST_CASE("Routing: Wardrop equilibrium and social optimum") {
  const RoutingGame game = PigouExample();
  const Vector w = game.WardropEquilibrium(Vector{0.0, 0.0});
  CHECK(w[0] == doctest::Approx(1.0));
  const Vector tolled = game.WardropEquilibrium(Vector{0.75, 0.25});
  CHECK(tolled[0] == doctest::Approx(0.75));
  const Vector opt = game.SocialOptimum();
  CHECK(opt[0] == doctest::Approx(0.75));
  CHECK(opt[1] == doctest::Approx(0.25));
  const IncentiveVector e = game.Externality(Vector{0.75, 0.25});
  CHECK(e[0] == doctest::Approx(0.75));
  CHECK(e[1] == doctest::Approx(0.25));
}

TEST_CASE("Routing: Wardrop equilibria equalize used-route costs") {
  const RoutingGame game({{0.5, 1.0, 0.0, 2.0}, {1.0, 0.5}, {0.2, 0.0, 3.0}}, 10.0);
  Rng rng(6);
  for (int s = 0; s < 30; ++s) {
    const Vector p = rng.Box(3, 0.0, 1.0);
    const Vector x = game.WardropEquilibrium(p);
    const Vector c = game.Costs(x, p);
    double used_min = kInf, used_max = -kInf, unused_min = kInf;
    for (std::size_t j = 0; j < 3; ++j) {
      if (x[j] > 1e-12) {
        used_min = std::min(used_min, c[j]);
        used_max = std::max(used_max, c[j]);
      } else {
        unused_min = std::min(unused_min, c[j]);
      }
    }
    CHECK(used_max - used_min < 1e-10);
    if (unused_min < kInf) CHECK(unused_min >= used_max - 1e-10);
    CHECK(x[0] + x[1] + x[2] == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("Routing: logit equilibrium is a fixed point of the logit map") {
  Rng rng(8);
  for (double eta : {0.5, 5.0, 50.0, 500.0}) {
    const RoutingGame game({{0.0, 1.0}, {1.0, 1.0}, {0.3, 0.0, 2.0}}, eta);
    for (int s = 0; s < 10; ++s) {
      const Vector p = rng.Box(3, -1.0, 1.0);
      const Vector x = game.LogitEquilibrium(p, eta);
      CHECK(linalg::DistInf(game.Logit(x, p, eta), x) < 1e-10);
    }
  }
}

}  // namespace
}  // namespace incentive_forge
