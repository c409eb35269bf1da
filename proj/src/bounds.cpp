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

#include "noisebound/bounds.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "noisebound/error.hpp"
#include "noisebound/thermal_forms.hpp"

namespace noisebound {

namespace {

// Acklam's rational approximation, relative error < 1.15e-9 before refinement.
constexpr std::array<double, 6> kA = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                      1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
constexpr std::array<double, 5> kB = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                      6.680131188771972e+01,  -1.328068155288572e+01};
constexpr std::array<double, 6> kC = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                      -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
constexpr std::array<double, 4> kD = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                      3.754408661907416e+00};
constexpr double kLow = 0.02425;

double acklam(double p) {
    if (p < kLow) {
        const double q = std::sqrt(-2 * std::log(p));
        return (((((kC[0] * q + kC[1]) * q + kC[2]) * q + kC[3]) * q + kC[4]) * q + kC[5]) /
               ((((kD[0] * q + kD[1]) * q + kD[2]) * q + kD[3]) * q + 1);
    }
    if (p > 1 - kLow) {
        const double q = std::sqrt(-2 * std::log1p(-p));
        return -(((((kC[0] * q + kC[1]) * q + kC[2]) * q + kC[3]) * q + kC[4]) * q + kC[5]) /
               ((((kD[0] * q + kD[1]) * q + kD[2]) * q + kD[3]) * q + 1);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((kA[0] * r + kA[1]) * r + kA[2]) * r + kA[3]) * r + kA[4]) * r + kA[5]) * q /
           (((((kB[0] * r + kB[1]) * r + kB[2]) * r + kB[3]) * r + kB[4]) * r + 1);
}

void require_epsilon(double epsilon) {
    if (!(epsilon > 0 && epsilon < 1)) {
        throw Error(ErrorCode::DomainError, "epsilon must lie in (0, 1)");
    }
}

}  // namespace

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double inverse_gaussian_cdf(double p) {
    if (!(p > 0 && p < 1)) {
        throw Error(ErrorCode::DomainError, "inverse Gaussian CDF needs p in (0, 1)");
    }
    if (p == 0.5) {
        return 0;
    }
    double x = acklam(p);
    // Halley step; the residual uses the tail that avoids cancellation.
    const double e = p < 0.5 ? 0.5 * std::erfc(-x / std::numbers::sqrt2) - p
                             : (1 - p) - 0.5 * std::erfc(x / std::numbers::sqrt2);
    const double u = e * std::sqrt(2 * std::numbers::pi) * std::exp(x * x / 2);
    x -= u / (1 + x * u / 2);
    return x;
}

double second_order_dh(int m, double d, double v, double epsilon) {
    if (m < 1) {
        throw Error(ErrorCode::DomainError, "m must be >= 1");
    }
    if (!(v >= 0)) {
        throw Error(ErrorCode::DomainError, "relative entropy variance must be >= 0");
    }
    require_epsilon(epsilon);
    return m * d + std::sqrt(m * v) * inverse_gaussian_cdf(epsilon);
}

double cramer_rao(int m, double n_b) {
    if (m < 1) {
        throw Error(ErrorCode::DomainError, "m must be >= 1");
    }
    return 1 / (m * qfi_thermal(n_b));
}

BoundReport bound_report(int m, double epsilon, double n1, double n2) {
    const DivergenceReport th = thermal_divergences({n1, n2});
    BoundReport r;
    r.m = m;
    r.epsilon = epsilon;
    r.d = th.d;
    r.v = th.v;
    r.expansion = second_order_dh(m, th.d, th.v, epsilon);
    if (n1 > 0) {
        r.cr_variance_floor = cramer_rao(m, n1);
    }
    return r;
}

}  // namespace noisebound
