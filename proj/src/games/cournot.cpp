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

#include "games/cournot.hpp"

#include <cmath>
#include <sstream>

#include "core/errors.hpp"

namespace incentive_forge {

CournotGame::CournotGame(std::size_t n, double theta, double delta, double nu,
                         double lambda)
    : n_(n), theta_(theta), delta_(delta), nu_(nu), lambda_(lambda) {
  if (n_ == 0) throw InvalidArgument("cournot game needs at least one firm");
  if (!(theta_ > 0.0) || !(delta_ > 0.0) || !(lambda_ > 0.0) || !std::isfinite(theta_) ||
      !std::isfinite(delta_) || !std::isfinite(lambda_) || !std::isfinite(nu_))
    throw InvalidArgument("cournot game requires finite theta, delta, lambda > 0");
}

void CournotGame::CheckShape(std::span<const double> v, const char* what) const {
  if (v.size() != n_)
    throw InvalidArgument(std::string(what) + " has wrong length for cournot game");
}

double CournotGame::Total(std::span<const double> x) const {
  double s = 0.0;
  for (double v : x) s += v;
  return s;
}

double CournotGame::Price(std::span<const double> x) const {
  CheckShape(x, "x");
  return theta_ - delta_ * Total(x);
}

double CournotGame::Cost(std::size_t i, std::span<const double> x) const {
  return -x[i] * Price(x) + nu_ * x[i];
}

double CournotGame::DCost(std::size_t i, std::span<const double> x) const {
  return -Price(x) + delta_ * x[i] + nu_;
}

double CournotGame::SocialCost(std::span<const double> x) const {
  CheckShape(x, "x");
  double s = 0.0;
  for (std::size_t i = 0; i < n_; ++i) s += Cost(i, x) + lambda_ * x[i] * x[i];
  return s;
}

Vector CournotGame::SocialGrad(std::span<const double> x) const {
  CheckShape(x, "x");
  const double total = Total(x);
  const double price = theta_ - delta_ * total;
  Vector g(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    // d/dx_i sum_j l_j = -P + delta x_i + nu + delta sum_{j != i} x_j
    g[i] = -price + nu_ + delta_ * total + 2.0 * lambda_ * x[i];
  }
  return g;
}

Vector CournotGame::Nash(std::span<const double> p) const {
  CheckShape(p, "p");
  const double nd = static_cast<double>(n_);
  const double total_p = Total(p);
  Vector x(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    const double others = total_p - p[i];
    x[i] = (theta_ - nu_ - nd * p[i] + others) / (delta_ * (nd + 1.0));
  }
  return x;
}

Vector CournotGame::BestResponse(std::span<const double> x,
                                 std::span<const double> p) const {
  CheckShape(x, "x");
  CheckShape(p, "p");
  const double total = Total(x);
  Vector br(n_);
  for (std::size_t i = 0; i < n_; ++i)
    br[i] = (theta_ - delta_ * (total - x[i]) - nu_ - p[i]) / (2.0 * delta_);
  return br;
}

IncentiveVector CournotGame::Externality(std::span<const double> x) const {
  CheckShape(x, "x");
  const double total = Total(x);
  Vector e(n_);
  for (std::size_t i = 0; i < n_; ++i)
    e[i] = 2.0 * lambda_ * x[i] + delta_ * (total - x[i]);
  return IncentiveVector(std::move(e));
}

linalg::Matrix CournotGame::Gamma() const {
  linalg::Matrix g = delta_ * linalg::Matrix::OnesOuter(n_);
  for (std::size_t i = 0; i < n_; ++i) g(i, i) += 2.0 * lambda_ - delta_;
  return g;
}

linalg::Matrix CournotGame::Omega() const {
  const double nd = static_cast<double>(n_);
  linalg::Matrix o = (1.0 / (delta_ * (nd + 1.0))) * linalg::Matrix::OnesOuter(n_);
  for (std::size_t i = 0; i < n_; ++i) o(i, i) -= 1.0 / delta_;
  return o;
}

std::optional<std::string> CournotGame::PositivityWarning(std::span<const double> x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0)) {
      std::ostringstream os;
      os.precision(17);
      os << "non-positive production x[" << i << "] = " << x[i]
         << " (interior solution assumed; theta may be too small)";
      return os.str();
    }
  }
  return std::nullopt;
}

AtomicGame CournotGame::ToAtomicGame() const {
  const CournotGame self = *this;
  AtomicGame::Definition def;
  def.n = n_;
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
  def.feasibility_warning = [](std::span<const double> x) { return PositivityWarning(x); };
  return AtomicGame(std::move(def));
}

}  // namespace incentive_forge
