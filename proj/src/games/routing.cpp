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

#include "games/routing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/errors.hpp"

namespace incentive_forge {
namespace {

constexpr int kBisectionIterations = 200;

// Smallest y in [lo, hi] with g(y) >= 0 for increasing g, by bisection.
template <typename Fn>
double BisectIncreasing(Fn g, double lo, double hi) {
  for (int it = 0; it < kBisectionIterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (g(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

Vector Normalized(Vector y) {
  double total = 0.0;
  for (double v : y) total += v;
  if (!(total > 0.0)) throw NumericError("routing equilibrium lost all mass");
  for (double& v : y) v /= total;
  return y;
}

}  // namespace

RoutingGame::RoutingGame(std::vector<std::vector<double>> latencies, double eta)
    : coeffs_(std::move(latencies)), eta_(eta) {
  if (coeffs_.empty()) throw InvalidArgument("routing game needs at least one route");
  if (!(eta_ > 0.0) || !std::isfinite(eta_))
    throw InvalidArgument("routing game: eta must be a positive finite number");
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    const auto& a = coeffs_[j];
    const std::string name = "latency " + std::to_string(j);
    if (a.size() < 2 || a.size() > kMaxDegree + 1)
      throw InvalidArgument(name + ": need between 2 and " +
                            std::to_string(kMaxDegree + 1) + " coefficients");
    double slope = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) {
      if (!std::isfinite(a[d])) throw InvalidArgument(name + ": non-finite coefficient");
      if (d >= 1 && a[d] < 0.0)
        throw InvalidArgument(name + ": coefficients of degree >= 1 must be >= 0");
      if (d >= 1) slope += a[d];
    }
    if (!(slope > 0.0))
      throw InvalidArgument(name + ": latency must be strictly increasing");
  }
}

void RoutingGame::CheckShape(std::span<const double> v, const char* what) const {
  if (v.size() != routes())
    throw InvalidArgument(std::string(what) + " has wrong length for routing game");
}

double RoutingGame::Latency(std::size_t j, double y) const {
  const auto& a = coeffs_.at(j);
  double v = 0.0;
  for (std::size_t d = a.size(); d-- > 0;) v = v * y + a[d];
  return v;
}

double RoutingGame::LatencyDerivative(std::size_t j, double y) const {
  const auto& a = coeffs_.at(j);
  double v = 0.0;
  for (std::size_t d = a.size(); d-- > 1;) v = v * y + static_cast<double>(d) * a[d];
  return v;
}

double RoutingGame::LatencySecondDerivative(std::size_t j, double y) const {
  const auto& a = coeffs_.at(j);
  double v = 0.0;
  for (std::size_t d = a.size(); d-- > 2;)
    v = v * y + static_cast<double>(d * (d - 1)) * a[d];
  return v;
}

Vector RoutingGame::Costs(std::span<const double> x, std::span<const double> p) const {
  CheckShape(x, "x~");
  CheckShape(p, "p~");
  Vector c(routes());
  for (std::size_t j = 0; j < routes(); ++j) c[j] = Latency(j, x[j]) + p[j];
  return c;
}

Vector RoutingGame::Logit(std::span<const double> x, std::span<const double> p) const {
  return Logit(x, p, eta_);
}

Vector RoutingGame::Logit(std::span<const double> x, std::span<const double> p,
                          double eta) const {
  if (!(eta > 0.0)) throw InvalidArgument("logit sensitivity must be positive");
  const Vector c = Costs(x, p);
  const double c_min = *std::min_element(c.begin(), c.end());
  Vector s(routes());
  double total = 0.0;
  for (std::size_t j = 0; j < routes(); ++j) {
    s[j] = std::exp(-eta * (c[j] - c_min));
    total += s[j];
  }
  for (double& v : s) v /= total;
  return s;
}

IncentiveVector RoutingGame::Externality(std::span<const double> x) const {
  CheckShape(x, "x~");
  Vector e(routes());
  for (std::size_t j = 0; j < routes(); ++j) e[j] = x[j] * LatencyDerivative(j, x[j]);
  return IncentiveVector(std::move(e));
}

double RoutingGame::SocialCost(std::span<const double> x) const {
  CheckShape(x, "x~");
  double s = 0.0;
  for (std::size_t j = 0; j < routes(); ++j) s += x[j] * Latency(j, x[j]);
  return s;
}

Vector RoutingGame::SocialGrad(std::span<const double> x) const {
  CheckShape(x, "x~");
  Vector g(routes());
  for (std::size_t j = 0; j < routes(); ++j)
    g[j] = Latency(j, x[j]) + x[j] * LatencyDerivative(j, x[j]);
  return g;
}

template <typename RouteFn>
Vector RoutingGame::EqualizeLevels(std::span<const double> offset, RouteFn route_fn) const {
  const std::size_t m = routes();
  auto allocation = [&](double level) {
    Vector y(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
      if (route_fn(j, 0.0) + offset[j] >= level) continue;
      if (route_fn(j, 1.0) + offset[j] <= level) {
        y[j] = 1.0;
        continue;
      }
      y[j] = BisectIncreasing(
          [&](double v) { return route_fn(j, v) + offset[j] - level; }, 0.0, 1.0);
    }
    return y;
  };
  double lo = kInf;
  double hi = kInf;
  for (std::size_t j = 0; j < m; ++j) {
    lo = std::min(lo, route_fn(j, 0.0) + offset[j]);
    hi = std::min(hi, route_fn(j, 1.0) + offset[j]);
  }
  const double level = BisectIncreasing(
      [&](double c) {
        double total = 0.0;
        for (double v : allocation(c)) total += v;
        return total - 1.0;
      },
      lo, hi);
  return Normalized(allocation(level));
}

Vector RoutingGame::WardropEquilibrium(std::span<const double> p) const {
  CheckShape(p, "p~");
  return EqualizeLevels(p, [this](std::size_t j, double y) { return Latency(j, y); });
}

Vector RoutingGame::SocialOptimum() const {
  const Vector zero(routes(), 0.0);
  return EqualizeLevels(zero, [this](std::size_t j, double y) {
    return Latency(j, y) + y * LatencyDerivative(j, y);
  });
}

Vector RoutingGame::LogitEquilibrium(std::span<const double> p, double eta) const {
  CheckShape(p, "p~");
  if (!(eta > 0.0)) throw InvalidArgument("logit sensitivity must be positive");
  const std::size_t m = routes();
  auto cost = [&](std::size_t j, double y) { return Latency(j, y) + p[j]; };
  std::size_t best = 0;
  for (std::size_t j = 1; j < m; ++j)
    if (cost(j, 0.0) < cost(best, 0.0)) best = j;
  const double c0 = cost(best, 0.0);

  // Route masses solve y_j = exp(-eta (c_j(y_j) - c0) - mu); the total is
  // decreasing in mu.
  auto allocation = [&](double mu) {
    Vector y(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
      // Masses above one only matter through the total, so clamp there.
      const double cap = std::min(1.0, std::exp(-eta * (cost(j, 0.0) - c0) - mu));
      if (cap == 0.0) continue;
      y[j] = BisectIncreasing(
          [&](double v) { return v - std::exp(-eta * (cost(j, v) - c0) - mu); }, 0.0, cap);
    }
    return y;
  };
  const double mu_lo = -eta * (cost(best, 1.0) - c0) - 1.0;
  const double mu_hi = std::log(static_cast<double>(m)) + 1.0;
  const double mu = BisectIncreasing(
      [&](double v) {
        double total = 0.0;
        for (double y : allocation(v)) total += y;
        return 1.0 - total;
      },
      mu_lo, mu_hi);
  return Normalized(allocation(mu));
}

NonatomicGame RoutingGame::ToNonatomicGame() const {
  const RoutingGame self = *this;
  NonatomicGame::Definition def;
  def.populations = {Population{1.0, routes()}};
  def.costs = [self](std::span<const double> x) {
    return self.Costs(x, Vector(self.routes(), 0.0));
  };
  def.social_cost = [self](std::span<const double> x) { return self.SocialCost(x); };
  def.social_grad = [self](std::span<const double> x) { return self.SocialGrad(x); };
  def.nash = [self](std::span<const double> p) { return self.WardropEquilibrium(p); };
  def.logit_equilibrium = [self](std::span<const double> p, double eta) {
    return self.LogitEquilibrium(p, eta);
  };
  def.externality = [self](std::span<const double> x) {
    return self.Externality(x).values();
  };
  return NonatomicGame(std::move(def));
}

}  // namespace incentive_forge
