// Copyright 2026 The noisebound Authors
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

#pragma once

#include "noisebound/gaussian_divergences.hpp"

namespace noisebound {

/// Mean photon numbers of two thermal states.
struct ThermalPair {
    double n1 = 0;
    double n2 = 0;

    void validate() const;
};

/// g(x, y) = (x + 1) ln(y + 1) - x ln y, with x ln y -> 0 at x = 0.
double g(double x, double y);

DivergenceReport thermal_divergences(const ThermalPair &pair);

/// Renyi divergence of the two Bose-Einstein photon-number distributions.
/// The states commute, so Petz and sandwiched variants coincide.
double renyi_thermal(double alpha, const ThermalPair &pair);

/// Fisher information of the family {theta(n_b)}: 1 / (n_b (n_b + 1)).
double qfi_thermal(double n_b);

}  // namespace noisebound
