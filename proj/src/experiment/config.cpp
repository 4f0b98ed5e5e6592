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

#include "experiment/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "core/errors.hpp"

namespace incentive_forge {
namespace {

using nlohmann::json;
using Kind = ConfigError::Kind;

std::string Join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string Index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

[[noreturn]] void Schema(const std::string& path, const std::string& msg) {
  throw ConfigError(Kind::kSchema, path, msg);
}

[[noreturn]] void Invariant(const std::string& path, const std::string& msg) {
  throw ConfigError(Kind::kInvariant, path, msg);
}

void RequireObject(const json& j, const std::string& path) {
  if (!j.is_object()) Schema(path.empty() ? "<root>" : path, "expected an object");
}

void CheckKeys(const json& j, const std::string& path, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) Schema(Join(path, key), "unknown field");
}

double AsNumber(const json& j, const std::string& path) {
  if (!j.is_number()) Schema(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) Invariant(path, "must be finite");
  return v;
}

std::int64_t AsInteger(const json& j, const std::string& path) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 9.0e15)
      return static_cast<std::int64_t>(v);
  }
  Schema(path, "expected an integer");
}

double Number(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) Schema(Join(path, key), "required field is missing");
  return AsNumber(obj.at(key), Join(path, key));
}

double NumberOr(const json& obj, const std::string& key, const std::string& path,
                double fallback) {
  return obj.contains(key) ? AsNumber(obj.at(key), Join(path, key)) : fallback;
}

Vector NumberArray(const json& j, const std::string& path) {
  if (!j.is_array()) Schema(path, "expected an array of numbers");
  Vector out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(AsNumber(j[i], Index(path, i)));
  return out;
}

Vector RequiredArray(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) Schema(Join(path, key), "required field is missing");
  return NumberArray(obj.at(key), Join(path, key));
}

void RequirePositive(double v, const std::string& path) {
  if (!(v > 0.0)) Invariant(path, "must be > 0");
}

QuadraticAggregativeGame ParseQuadratic(const json& g) {
  CheckKeys(g, "game", {"family", "k", "Z", "xi"});
  const Vector k = RequiredArray(g, "k", "game");
  const std::size_t n = k.size();
  if (n == 0) Invariant("game.k", "must have at least one entry");
  for (std::size_t i = 0; i < n; ++i) RequirePositive(k[i], Index("game.k", i));
  if (!g.contains("Z")) Schema("game.Z", "required field is missing");
  const json& zj = g.at("Z");
  if (!zj.is_array()) Schema("game.Z", "expected an array of rows");
  if (zj.size() != n)
    Invariant("game.Z", "expected " + std::to_string(n) + " rows to match game.k");
  linalg::Matrix z(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const Vector row = NumberArray(zj[r], Index("game.Z", r));
    if (row.size() != n)
      Invariant(Index("game.Z", r), "expected " + std::to_string(n) + " entries");
    for (std::size_t c = 0; c < n; ++c) z(r, c) = row[c];
    if (z(r, r) != 0.0)
      Invariant(Index(Index("game.Z", r), r), "diagonal entries of Z must be 0");
  }
  const Vector xi = RequiredArray(g, "xi", "game");
  if (xi.size() != n) Invariant("game.xi", "expected " + std::to_string(n) + " entries");
  return QuadraticAggregativeGame(k, z, xi);
}

CournotGame ParseCournot(const json& g) {
  CheckKeys(g, "game", {"family", "n", "theta", "delta", "nu", "lambda"});
  if (!g.contains("n")) Schema("game.n", "required field is missing");
  const std::int64_t n = AsInteger(g.at("n"), "game.n");
  if (n < 1) Invariant("game.n", "must be >= 1");
  const double theta = Number(g, "theta", "game");
  const double delta = Number(g, "delta", "game");
  const double nu = Number(g, "nu", "game");
  const double lambda = Number(g, "lambda", "game");
  RequirePositive(delta, "game.delta");
  RequirePositive(lambda, "game.lambda");
  return CournotGame(static_cast<std::size_t>(n), theta, delta, nu, lambda);
}

RoutingGame ParseRouting(const json& g) {
  CheckKeys(g, "game", {"family", "latencies", "eta"});
  if (!g.contains("latencies")) Schema("game.latencies", "required field is missing");
  const json& lj = g.at("latencies");
  if (!lj.is_array()) Schema("game.latencies", "expected an array of coefficient lists");
  if (lj.size() < 2) Invariant("game.latencies", "need at least two routes");
  std::vector<std::vector<double>> latencies;
  for (std::size_t r = 0; r < lj.size(); ++r) {
    const std::string path = Index("game.latencies", r);
    Vector a = NumberArray(lj[r], path);
    if (a.size() < 2 || a.size() > RoutingGame::kMaxDegree + 1)
      Invariant(path, "need between 2 and 5 coefficients (degree 1 to 4)");
    double slope = 0.0;
    for (std::size_t d = 1; d < a.size(); ++d) {
      if (a[d] < 0.0) Invariant(Index(path, d), "coefficients of degree >= 1 must be >= 0");
      slope += a[d];
    }
    if (!(slope > 0.0)) Invariant(path, "latency must be strictly increasing");
    latencies.push_back(std::move(a));
  }
  const double eta = Number(g, "eta", "game");
  RequirePositive(eta, "game.eta");
  return RoutingGame(std::move(latencies), eta);
}

StrategyRule ParseRule(const json& doc, const std::string& family, const GameVariant& game) {
  const bool routing = family == "routing";
  std::string type = routing ? "logit" : "best_response";
  std::optional<double> eta;
  if (doc.contains("rule")) {
    const json& r = doc.at("rule");
    RequireObject(r, "rule");
    CheckKeys(r, "rule", {"type", "eta"});
    if (r.contains("type")) {
      if (!r.at("type").is_string()) Schema("rule.type", "expected a string");
      type = r.at("type").get<std::string>();
    }
    if (r.contains("eta")) {
      eta = AsNumber(r.at("eta"), "rule.eta");
      RequirePositive(*eta, "rule.eta");
    }
  }
  if (type == "equilibrium") return StrategyRule::Equilibrium();
  if (type == "best_response") return StrategyRule::BestResponse();
  if (type == "logit") {
    if (!routing) Invariant("rule.type", "logit applies to non-atomic (routing) games only");
    return StrategyRule::PerturbedBestResponse(eta.value_or(std::get<RoutingGame>(game).eta()));
  }
  Schema("rule.type", "expected \"equilibrium\", \"best_response\" or \"logit\", got \"" +
                          type + "\"");
}

}  // namespace

CoupledSystem ExperimentConfig::System() const {
  if (const auto* q = std::get_if<QuadraticAggregativeGame>(&game))
    return CoupledSystem::Make(q->ToAtomicGame(), rule);
  if (const auto* c = std::get_if<CournotGame>(&game))
    return CoupledSystem::Make(c->ToAtomicGame(), rule);
  return CoupledSystem::Make(std::get<RoutingGame>(game).ToNonatomicGame(), rule);
}

RunConfig ExperimentConfig::MakeRunConfig() const {
  RunConfig run;
  run.schedule = schedule;
  run.max_steps = max_steps;
  run.stride = stride;
  run.window = window;
  run.tol = tol;
  run.x0 = x0;
  run.p0 = p0;
  return run;
}

ExperimentConfig LoadConfigJson(const json& doc) {
  RequireObject(doc, "");
  CheckKeys(doc, "",
            {"description", "game", "rule", "schedule", "run", "init", "seed", "certify",
             "sweep"});
  if (!doc.contains("game")) Schema("game", "required field is missing");
  const json& g = doc.at("game");
  RequireObject(g, "game");
  if (!g.contains("family") || !g.at("family").is_string())
    Schema("game.family", "expected a string");
  const std::string family = g.at("family").get<std::string>();

  std::optional<GameVariant> game;
  try {
    if (family == "quadratic") {
      game.emplace(ParseQuadratic(g));
    } else if (family == "cournot") {
      game.emplace(ParseCournot(g));
    } else if (family == "routing") {
      game.emplace(ParseRouting(g));
    } else {
      Schema("game.family", "expected \"quadratic\", \"cournot\" or \"routing\", got \"" +
                                family + "\"");
    }
  } catch (const InvalidArgument& e) {
    Invariant("game", e.what());
  }

  ExperimentConfig cfg(family, std::move(*game));
  cfg.source = doc;
  cfg.rule = ParseRule(doc, family, cfg.game);

  if (doc.contains("schedule")) {
    const json& s = doc.at("schedule");
    RequireObject(s, "schedule");
    CheckKeys(s, "schedule", {"a_x", "rho_x", "a_p", "rho_p"});
    const double a_x = NumberOr(s, "a_x", "schedule", 1.0);
    const double rho_x = NumberOr(s, "rho_x", "schedule", 0.6);
    const double a_p = NumberOr(s, "a_p", "schedule", 1.0);
    const double rho_p = NumberOr(s, "rho_p", "schedule", 0.9);
    if (!(a_x > 0.0 && a_x <= 1.0)) Invariant("schedule.a_x", "must lie in (0, 1]");
    if (!(a_p > 0.0 && a_p <= 1.0)) Invariant("schedule.a_p", "must lie in (0, 1]");
    if (!(rho_x > 0.5)) Invariant("schedule.rho_x", "must be > 0.5");
    if (!(rho_p <= 1.0)) Invariant("schedule.rho_p", "must be <= 1");
    if (!(rho_x < rho_p))
      Invariant("schedule.rho_p",
                "incentives must move on the slower timescale: need rho_x < rho_p");
    cfg.schedule = StepSchedule(a_x, rho_x, a_p, rho_p);
  }

  bool stride_set = false;
  if (doc.contains("run")) {
    const json& r = doc.at("run");
    RequireObject(r, "run");
    CheckKeys(r, "run", {"max_steps", "stride", "window", "tol"});
    if (r.contains("max_steps")) cfg.max_steps = AsInteger(r.at("max_steps"), "run.max_steps");
    if (cfg.max_steps < 0) Invariant("run.max_steps", "must be >= 0");
    if (r.contains("stride")) {
      cfg.stride = AsInteger(r.at("stride"), "run.stride");
      if (cfg.stride < 1) Invariant("run.stride", "must be >= 1");
      stride_set = true;
    }
    if (r.contains("window")) cfg.window = AsInteger(r.at("window"), "run.window");
    if (cfg.window < 0) Invariant("run.window", "must be >= 0");
    cfg.tol = NumberOr(r, "tol", "run", cfg.tol);
    RequirePositive(cfg.tol, "run.tol");
  }
  if (!stride_set) cfg.stride = std::max<std::int64_t>(1, cfg.max_steps / 1000);

  const CoupledSystem sys = cfg.System();
  const std::size_t nx = sys.strategy_dim();
  const std::size_t np = sys.incentive_dim();
  cfg.p0.assign(np, 0.0);
  if (family == "routing")
    cfg.x0.assign(nx, 1.0 / static_cast<double>(nx));
  else
    cfg.x0.assign(nx, 0.0);
  if (doc.contains("init")) {
    const json& in = doc.at("init");
    RequireObject(in, "init");
    CheckKeys(in, "init", {"x0", "p0"});
    if (in.contains("x0")) {
      cfg.x0 = NumberArray(in.at("x0"), "init.x0");
      if (cfg.x0.size() != nx) Invariant("init.x0", "expected " + std::to_string(nx) + " entries");
    }
    if (in.contains("p0")) {
      cfg.p0 = NumberArray(in.at("p0"), "init.p0");
      if (cfg.p0.size() != np) Invariant("init.p0", "expected " + std::to_string(np) + " entries");
    }
  }
  if (const NonatomicGame* pop = sys.nonatomic_game()) {
    try {
      pop->CheckOnSimplex(cfg.x0);
    } catch (const InvalidArgument& e) {
      Invariant("init.x0", e.what());
    }
  }

  if (doc.contains("seed")) {
    const json& s = doc.at("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0))
      Schema("seed", "expected a non-negative integer");
    cfg.seed = s.get<std::uint64_t>();
  }
  cfg.certify.seed = cfg.seed;

  if (doc.contains("certify")) {
    const json& c = doc.at("certify");
    RequireObject(c, "certify");
    CheckKeys(c, "certify", {"samples", "radius", "grid_points"});
    if (c.contains("samples")) {
      const std::int64_t s = AsInteger(c.at("samples"), "certify.samples");
      if (s < 1 || s > 1000000) Invariant("certify.samples", "must lie in [1, 1000000]");
      cfg.certify.samples = static_cast<int>(s);
    }
    cfg.certify.radius = NumberOr(c, "radius", "certify", cfg.certify.radius);
    RequirePositive(cfg.certify.radius, "certify.radius");
    if (c.contains("grid_points")) {
      const std::int64_t s = AsInteger(c.at("grid_points"), "certify.grid_points");
      if (s < 1 || s > 100) Invariant("certify.grid_points", "must lie in [1, 100]");
      cfg.certify.grid_points_per_axis = static_cast<int>(s);
    }
  }

  if (doc.contains("sweep")) {
    const json& s = doc.at("sweep");
    RequireObject(s, "sweep");
    CheckKeys(s, "sweep", {"parameter", "values"});
    if (!s.contains("parameter") || !s.at("parameter").is_string())
      Schema("sweep.parameter", "expected a string");
    SweepSpec spec{s.at("parameter").get<std::string>(), {}};
    if (s.contains("values")) spec.values = NumberArray(s.at("values"), "sweep.values");
    cfg.sweep = std::move(spec);
  }
  return cfg;
}

ExperimentConfig LoadConfigString(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(Kind::kParse, "", e.what());
  }
  return LoadConfigJson(doc);
}

ExperimentConfig LoadConfigFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(Kind::kParse, "", "cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return LoadConfigString(buf.str());
}

ExperimentConfig WithParameter(const ExperimentConfig& cfg, const std::string& parameter,
                               double value) {
  if (!std::isfinite(value)) Invariant(parameter, "sweep value must be finite");
  std::string dotted = parameter.find('.') == std::string::npos ? "game." + parameter : parameter;
  json doc = cfg.source;
  json* node = &doc;
  std::string walked;
  std::size_t start = 0;
  for (;;) {
    const std::size_t dot = dotted.find('.', start);
    const std::string key = dotted.substr(start, dot - start);
    walked = Join(walked, key);
    if (key.empty()) Schema(dotted, "malformed parameter path");
    if (dot == std::string::npos) {
      if (!node->is_object()) Schema(walked, "parent is not an object");
      static const std::set<std::string> kIntegerFields = {
          "game.n", "run.max_steps", "run.stride", "run.window",
          "seed", "certify.samples", "certify.grid_points"};
      const bool integral = kIntegerFields.count(walked) > 0;
      if (integral) {
        if (value != std::floor(value)) Invariant(walked, "expects an integer value");
        (*node)[key] = static_cast<std::int64_t>(value);
      } else {
        (*node)[key] = value;
      }
      break;
    }
    if (!node->is_object()) Schema(walked, "parent is not an object");
    if (!node->contains(key)) (*node)[key] = json::object();
    node = &(*node)[key];
    start = dot + 1;
  }
  return LoadConfigJson(doc);
}

}  // namespace incentive_forge
