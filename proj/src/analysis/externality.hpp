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

#ifndef INCENTIVE_FORGE_ANALYSIS_EXTERNALITY_HPP_
#define INCENTIVE_FORGE_ANALYSIS_EXTERNALITY_HPP_

#include <span>

#include "core/types.hpp"

namespace incentive_forge {

// e_i(x) = D_i Phi(x) - D_i l_i(x), both partials by central differences of
// the game's cost callables. Independent of any analytic externality.
IncentiveVector ExternalityFdOracle(const AtomicGame& game, std::span<const double> x);

// e~_i^j(x~) = D_{ij} Phi~(x~) - l~_i^j(x~), the partial by central differences.
IncentiveVector ExternalityFdOracle(const NonatomicGame& game, std::span<const double> x);

// Same quantities built from the game's gradient callables.
IncentiveVector ExternalityFromGradients(const AtomicGame& game, std::span<const double> x);
IncentiveVector ExternalityFromGradients(const NonatomicGame& game,
                                         std::span<const double> x);

}  // namespace incentive_forge

#endif  // INCENTIVE_FORGE_ANALYSIS_EXTERNALITY_HPP_
