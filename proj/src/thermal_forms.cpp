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

#include "noisebound/thermal_forms.hpp"

#include <cmath>
#include <limits>

#include "noisebound/error.hpp"

namespace noisebound {

void ThermalPair::validate() const {
    if (!(n1 >= 0) || !(n2 >= 0) || !std::isfinite(n1) || !std::isfinite(n2)) {
        throw Error(ErrorCode::DomainError, "thermal mean photon numbers must be finite and >= 0");
    }
}

double g(double x, double y) {
    if (!(x >= 0) || !(y >= 0)) {
        throw Error(ErrorCode::DomainError, "g(x, y) needs x, y >= 0");
    }
    if (x == 0) {
        return std::log1p(y);
    }
    if (y == 0) {
        throw Error(ErrorCode::DomainError, "g(x, 0) diverges for x > 0");
    }
    return (x + 1) * std::log1p(y) - x * std::log(y);
}

DivergenceReport thermal_divergences(const ThermalPair &pair) {
    pair.validate();
    const double n1 = pair.n1;
    const double n2 = pair.n2;
    if (n2 == 0 && n1 > 0) {
        throw Error(ErrorCode::DomainError, "relative entropy to the vacuum diverges for n1 > 0");
    }
    DivergenceReport r;
    r.method = DivergenceMethod::closed_form;
    if (n1 == n2) {
        return r;
    }
    // -g(n1, n1) + g(n1, n2), written as log-ratios to avoid cancellation.
    r.d = (n1 + 1) * std::log((n2 + 1) / (n1 + 1)) - (n1 == 0 ? 0.0 : n1 * std::log(n2 / n1));
    if (n1 > 0) {
        const double lr = std::log1p(1 / n1) - std::log1p(1 / n2);
        r.v = n1 * (n1 + 1) * lr * lr;
    }
    const double root = std::sqrt((n1 + 1) * (n2 + 1)) - std::sqrt(n1 * n2);
    r.f = 1 / (root * root);
    return r;
}

double renyi_thermal(double alpha, const ThermalPair &pair) {
    pair.validate();
    if (!(alpha > 0) || alpha == 1 || !std::isfinite(alpha)) {
        throw Error(ErrorCode::DomainError, "Renyi order must lie in (0, 1) or (1, inf)");
    }
    if (pair.n1 == pair.n2) {
        return 0;
    }
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();
    const auto log_ratio = [](double n) { return n == 0 ? kNegInf : std::log(n / (n + 1)); };
    const double l1 = log_ratio(pair.n1);
    const double l2 = log_ratio(pair.n2);
    // ln r = alpha ln q1 + (1 - alpha) ln q2 with the 0 * inf terms dropped.
    double log_r = 0;
    if (l1 == kNegInf || l2 == kNegInf) {
        if (l2 == kNegInf && alpha > 1) {
            throw Error(ErrorCode::Divergent, "Renyi series diverges: second state is the vacuum and alpha > 1");
        }
        log_r = kNegInf;
    } else {
        log_r = alpha * l1 + (1 - alpha) * l2;
    }
    if (log_r >= 0) {
        throw Error(ErrorCode::Divergent, "Renyi series diverges (ratio r >= 1)");
    }
    const double log_sum = -alpha * std::log1p(pair.n1) - (1 - alpha) * std::log1p(pair.n2) - std::log1p(-std::exp(log_r));
    return log_sum / (alpha - 1);
}

double qfi_thermal(double n_b) {
    if (!(n_b > 0) || !std::isfinite(n_b)) {
        throw Error(ErrorCode::DomainError, "thermal Fisher information diverges at n_b = 0");
    }
    return 1 / (n_b * (n_b + 1));
}

}  // namespace noisebound
