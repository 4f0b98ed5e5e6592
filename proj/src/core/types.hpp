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

// Domain types shared by every module: the atomic and non-atomic game
// abstractions, incentive vectors, step-size schedules, trajectories and
// fixed-point results.

#ifndef INCENTIVE_FORGE_CORE_TYPES_HPP_
#define INCENTIVE_FORGE_CORE_TYPES_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "linalg/matrix.hpp"

namespace incentive_forge {

using linalg::Vector;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Closed interval [lo, hi] with possibly infinite endpoints.
struct Interval {
  double lo = -kInf;
  double hi = kInf;

  bool Contains(double v) const { return v >= lo && v <= hi; }
  double Clamp(double v) const { return v < lo ? lo : (v > hi ? hi : v); }
};

// Payments p (per player) or p~ (per population-action pair, flattened
// population-major). Entries are always finite.
class IncentiveVector {
 public:
  IncentiveVector() = default;
  explicit IncentiveVector(Vector values);
  static IncentiveVector Zeros(std::size_t n) { return IncentiveVector(Vector(n, 0.0)); }

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const Vector& values() const { return values_; }
  operator std::span<const double>() const { return values_; }

 private:
  Vector values_;
};

// A game with finitely many players, each choosing a scalar strategy on an
// interval. Immutable once constructed; callables must be pure.
class AtomicGame {
 public:
  using PlayerFn = std::function<double(std::size_t, std::span<const double>)>;
  using ScalarFn = std::function<double(std::span<const double>)>;
  using VectorFn = std::function<Vector(std::span<const double>)>;
  using ResponseFn =
      std::function<Vector(std::span<const double>, std::span<const double>)>;
  using WarningFn =
      std::function<std::optional<std::string>(std::span<const double>)>;

  struct Definition {
    std::size_t n = 0;
    std::vector<Interval> intervals;  // empty means every X_i = R
    PlayerFn cost;                    // l_i(x)
    PlayerFn dcost;                   // D_{x_i} l_i(x)
    ScalarFn social_cost;             // Phi(x)
    VectorFn social_grad;             // grad Phi(x)
    VectorFn nash;                    // optional closed form x*(p)
    ResponseFn best_response;         // optional BR(x, p)
    VectorFn externality;             // optional analytic e(x)
    WarningFn feasibility_warning;    // optional, e.g. negative production
  };

  explicit AtomicGame(Definition def);

  std::size_t n() const { return def_.n; }
  const std::vector<Interval>& intervals() const { return def_.intervals; }

  double Cost(std::size_t i, std::span<const double> x) const;
  double DCost(std::size_t i, std::span<const double> x) const;
  double SocialCost(std::span<const double> x) const;
  Vector SocialGrad(std::span<const double> x) const;

  bool has_nash() const { return static_cast<bool>(def_.nash); }
  bool has_best_response() const { return static_cast<bool>(def_.best_response); }
  bool has_cost() const { return static_cast<bool>(def_.cost); }
  Vector Nash(std::span<const double> p) const;
  Vector BestResponse(std::span<const double> x, std::span<const double> p) const;

  // Analytic externality when supplied, otherwise grad Phi - D l_i.
  IncentiveVector Externality(std::span<const double> x) const;
  std::optional<std::string> FeasibilityWarning(std::span<const double> x) const;

  void Project(std::span<double> x) const;
  bool IsFeasible(std::span<const double> x) const;
  void CheckShape(std::span<const double> v, const char* what) const;

 private:
  Definition def_;
};

struct Population {
  double mass = 1.0;
  std::size_t actions = 0;
};

// A game with populations of infinitesimal players choosing among finitely
// many actions. Strategies are flattened population-major.
class NonatomicGame {
 public:
  using VectorFn = std::function<Vector(std::span<const double>)>;
  using ScalarFn = std::function<double(std::span<const double>)>;
  using LogitFn = std::function<Vector(std::span<const double>, double)>;

  struct Definition {
    std::vector<Population> populations;
    VectorFn costs;              // x~ -> (l~_i^j(x~)) flattened
    ScalarFn social_cost;        // Phi~(x~)
    VectorFn social_grad;        // grad Phi~(x~)
    VectorFn nash;               // optional exact x~*(p~)
    LogitFn logit_equilibrium;   // optional (p~, eta) -> logit fixed point
    VectorFn externality;        // optional analytic e~(x~)
  };

  explicit NonatomicGame(Definition def);

  const std::vector<Population>& populations() const { return def_.populations; }
  std::size_t dim() const { return dim_; }
  std::size_t offset(std::size_t population) const { return offsets_.at(population); }

  Vector Costs(std::span<const double> x) const;
  double Cost(std::span<const double> x, std::size_t i, std::size_t j) const;
  double SocialCost(std::span<const double> x) const;
  Vector SocialGrad(std::span<const double> x) const;

  bool has_nash() const { return static_cast<bool>(def_.nash); }
  bool has_logit_equilibrium() const { return static_cast<bool>(def_.logit_equilibrium); }
  Vector Nash(std::span<const double> p) const;
  Vector LogitEquilibrium(std::span<const double> p, double eta) const;

  IncentiveVector Externality(std::span<const double> x) const;

  // Throws InvalidArgument naming the first violated simplex constraint.
  void CheckOnSimplex(std::span<const double> x, double tol = 1e-9) const;
  void CheckShape(std::span<const double> v, const char* what) const;

 private:
  Definition def_;
  std::size_t dim_ = 0;
  std::vector<std::size_t> offsets_;
};

// beta_k = a_x (k+1)^-rho_x, gamma_k = a_p (k+1)^-rho_p with
// 0.5 < rho_x < rho_p <= 1 and 0 < a_x, a_p <= 1.
class StepSchedule {
 public:
  StepSchedule(double a_x, double rho_x, double a_p, double rho_p);

  double a_x() const { return a_x_; }
  double rho_x() const { return rho_x_; }
  double a_p() const { return a_p_; }
  double rho_p() const { return rho_p_; }

  double Beta(std::int64_t k) const;
  double Gamma(std::int64_t k) const;

 private:
  double a_x_, rho_x_, a_p_, rho_p_;
};

struct TrajectoryRecord {
  std::int64_t k = 0;  // number of updates applied
  Vector x;
  Vector p;
};

struct Trajectory {
  std::vector<TrajectoryRecord> records;
  std::int64_t stride = 1;
  std::int64_t steps = 0;
  Vector final_x;
  Vector final_p;
  bool converged = false;
  double window_distance = kInf;  // sup distance over the trailing window
  std::vector<std::string> warnings;
};

struct FixedPointResult {
  IncentiveVector p_dagger;
  Vector x_dagger;
  double externality_residual = kInf;  // ||e(x*(p)) - p||_inf
  double vi_residual = kInf;           // social-optimality residual at x
  bool converged = true;
  std::int64_t iterations = 0;
};

// l_i(x) + p_i x_i
double TotalCostAtomic(const AtomicGame& game, std::span<const double> x,
                       std::span<const double> p, std::size_t i);

// l~_i^j(x~) + p~_i^j
double TotalCostNonatomic(const NonatomicGame& game, std::span<const double> x,
                          std::span<const double> p, std::size_t i, std::size_t j);

}  // namespace incentive_forge

#endif  // INCENTIVE_FORGE_CORE_TYPES_HPP_
