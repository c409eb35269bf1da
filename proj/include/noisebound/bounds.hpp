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

#include <optional>

namespace noisebound {

double normal_cdf(double x);

/// Phi^{-1}(p) to ~1e-15: rational first guess refined by one Halley step
/// against erfc. Throws DomainError outside (0, 1).
double inverse_gaussian_cdf(double p);

/// m d + sqrt(m v) Phi^{-1}(eps). The O(log m) remainder is not included.
double second_order_dh(int m, double d, double v, double epsilon);

/// Variance floor [m I(n_b)]^{-1} = n_b (n_b + 1) / m for thermal noise.
double cramer_rao(int m, double n_b);

struct BoundReport {
    int m = 1;
    double epsilon = 0;
    double d = 0;
    double v = 0;
    double expansion = 0;
    std::optional<double> cr_variance_floor;
};

/// Environment-side limits for discriminating theta(n1) from theta(n2) with
/// m uses; the Cramer-Rao floor is evaluated at n1 when n1 > 0.
BoundReport bound_report(int m, double epsilon, double n1, double n2);

}  // namespace noisebound
