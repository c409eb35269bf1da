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

#include <functional>
#include <string_view>

#include "noisebound/gaussian_core.hpp"

namespace noisebound {

enum class DivergenceMethod { gaussian, fock_oracle, closed_form };
enum class LogBase { nats, bits };

std::string_view to_string(DivergenceMethod m);
std::string_view to_string(LogBase b);

/// Relative entropy d, its variance v and the squared-overlap fidelity f.
/// Values are stored in nats; `in(bits)` rescales the entropic fields.
struct DivergenceReport {
    double d = 0;
    double v = 0;
    double f = 1;
    DivergenceMethod method = DivergenceMethod::gaussian;
    LogBase log_base = LogBase::nats;

    DivergenceReport in(LogBase target) const;
};

/// Converts an entropic quantity between bases; `power` is 2 for variances.
double convert_log_base(double value, LogBase from, LogBase to, int power = 1);

double entropy(const GaussianState &state);

double relative_entropy(const GaussianState &s1, const GaussianState &s2);

double relative_entropy_variance(const GaussianState &s1, const GaussianState &s2);

/// Squared-overlap fidelity ||sqrt(rho) sqrt(sigma)||_1^2 for one- or two-mode states.
double fidelity(const GaussianState &s1, const GaussianState &s2);

/// ln of `fidelity`, computed without forming F so that 1 - F stays resolvable.
double log_fidelity(const GaussianState &s1, const GaussianState &s2);

DivergenceReport gaussian_divergences(const GaussianState &s1, const GaussianState &s2);

using StateFamily = std::function<GaussianState(double)>;

struct QfiEstimate {
    double i_sqrt;       // 8 (1 - sqrt F) / delta^2
    double i_log;        // -4 ln F / delta^2
    double richardson;   // (4 i_log(delta/2) - i_log(delta)) / 3
    double delta;
};

/// Central finite-difference Fisher information of a one-parameter family,
/// using F(family(x - delta/2), family(x + delta/2)). Throws StepTooLarge if
/// the two estimators disagree by more than 5%.
QfiEstimate qfi_finite_difference(const StateFamily &family, double x, double delta);

/// max(1e-4, 1e-3 * x)
double default_qfi_step(double x);

}  // namespace noisebound
