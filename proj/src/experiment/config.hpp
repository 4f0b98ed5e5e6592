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

#ifndef INCENTIVE_FORGE_EXPERIMENT_CONFIG_HPP_
#define INCENTIVE_FORGE_EXPERIMENT_CONFIG_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "analysis/certificates.hpp"
#include "core/types.hpp"
#include "dynamics/dynamics.hpp"
#include "games/cournot.hpp"
#include "games/quadratic.hpp"
#include "games/routing.hpp"
#include "json.hpp"

namespace incentive_forge {

using GameVariant = std::variant<QuadraticAggregativeGame, CournotGame, RoutingGame>;

struct SweepSpec {
  std::string parameter;  // dotted path into the document, e.g. "game.lambda"
  std::vector<double> values;
};

// One experiment: a game, a strategy rule, a schedule, run settings and
// initial conditions. Validated on load.
struct ExperimentConfig {
  ExperimentConfig(std::string family_name, GameVariant game_instance)
      : family(std::move(family_name)), game(std::move(game_instance)) {}

  std::string family;  // "quadratic", "cournot" or "routing"
  GameVariant game;
  StrategyRule rule;
  StepSchedule schedule{1.0, 0.6, 1.0, 0.9};
  std::int64_t max_steps = 1000000;
  std::int64_t stride = 1000;
  std::int64_t window = 0;
  double tol = 1e-3;
  Vector x0;
  Vector p0;
  std::uint64_t seed = 0;
  CertifyOptions certify;
  std::optional<SweepSpec> sweep;
  nlohmann::json source;  // the document as loaded

  CoupledSystem System() const;
  RunConfig MakeRunConfig() const;
};

// Throws ConfigError naming the offending field path.
ExperimentConfig LoadConfigFile(const std::string& path);
ExperimentConfig LoadConfigString(const std::string& text);
ExperimentConfig LoadConfigJson(const nlohmann::json& doc);

// Copy of cfg with one numeric field replaced and the document re-validated.
// A bare name such as "lambda" refers to "game.lambda".
ExperimentConfig WithParameter(const ExperimentConfig& cfg, const std::string& parameter,
                               double value);

}  // namespace incentive_forge

#endif  // INCENTIVE_FORGE_EXPERIMENT_CONFIG_HPP_
