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

#include "core/finite_difference.hpp"

#include <vector>

namespace incentive_forge {

double CentralPartial(const std::function<double(std::span<const double>)>& f,
                      std::span<const double> x, std::size_t i) {
  std::vector<double> probe(x.begin(), x.end());
  const double h = CentralStep(x[i]);
  probe[i] = x[i] + h;
  const double up = f(probe);
  probe[i] = x[i] - h;
  const double down = f(probe);
  return (up - down) / (2.0 * h);
}

linalg::Vector CentralGradient(const std::function<double(std::span<const double>)>& f,
                               std::span<const double> x) {
  linalg::Vector g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) g[i] = CentralPartial(f, x, i);
  return g;
}

linalg::Matrix CentralJacobian(
    const std::function<linalg::Vector(std::span<const double>)>& field,
    std::span<const double> x) {
  std::vector<double> probe(x.begin(), x.end());
  linalg::Matrix jac;
  for (std::size_t c = 0; c < x.size(); ++c) {
    const double h = CentralStep(x[c]);
    probe[c] = x[c] + h;
    const linalg::Vector up = field(probe);
    probe[c] = x[c] - h;
    const linalg::Vector down = field(probe);
    probe[c] = x[c];
    if (c == 0) jac = linalg::Matrix(up.size(), x.size());
    for (std::size_t r = 0; r < up.size(); ++r) jac(r, c) = (up[r] - down[r]) / (2.0 * h);
  }
  return jac;
}

}  // namespace incentive_forge
