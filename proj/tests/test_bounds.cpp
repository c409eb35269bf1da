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

#include <gtest/gtest.h>

#include <cmath>

#include "noisebound/error.hpp"
#include "noisebound/thermal_forms.hpp"

using namespace noisebound;

namespace {

template <typename F>
void expect_code(ErrorCode code, F &&f) {
    try {
        f();
        FAIL() << "expected " << error_code_name(code);
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), code) << e.what();
    }
}

}  // namespace

TEST(inverse_gaussian_cdf, reference_values) {
    // 30-digit references from sqrt(2) erfinv(2p - 1).
    EXPECT_EQ(inverse_gaussian_cdf(0.5), 0);
    EXPECT_NEAR(inverse_gaussian_cdf(0.975), 1.9599639845400542, 1e-12);
    EXPECT_NEAR(inverse_gaussian_cdf(0.05), -1.6448536269514727, 1e-12);
    EXPECT_NEAR(inverse_gaussian_cdf(0.3), -0.52440051270804078, 1e-12);
    EXPECT_NEAR(inverse_gaussian_cdf(1e-10), -6.3613409024040562, 1e-10);
    EXPECT_NEAR(inverse_gaussian_cdf(0.999999), 4.7534243088228989, 1e-10);
}

TEST(inverse_gaussian_cdf, round_trip_and_symmetry) {
    for (double p : {0.01, 0.3, 0.9, 1e-6, 0.5 + 1e-9}) {
        EXPECT_NEAR(normal_cdf(inverse_gaussian_cdf(p)), p, 1e-9 * std::max(p, 1e-3));
        EXPECT_NEAR(inverse_gaussian_cdf(p), -inverse_gaussian_cdf(1 - p), 1e-9);
    }
    expect_code(ErrorCode::DomainError, [] { inverse_gaussian_cdf(0); });
    expect_code(ErrorCode::DomainError, [] { inverse_gaussian_cdf(1); });
    expect_code(ErrorCode::DomainError, [] { inverse_gaussian_cdf(std::nan("")); });
}

TEST(second_order_dh, values) {
    EXPECT_DOUBLE_EQ(second_order_dh(7, 0.3, 0, 0.1), 2.1);
    EXPECT_DOUBLE_EQ(second_order_dh(7, 0.3, 0.9, 0.5), 2.1);
    const DivergenceReport th = thermal_divergences({1, 2});
    EXPECT_NEAR(second_order_dh(100, th.d, th.v, 0.05), 5.0863171094033732, 1e-10);
}

TEST(second_order_dh, monotone_in_epsilon) {
    double prev = -1e300;
    for (double eps = 0.01; eps < 1; eps += 0.07) {
        const double x = second_order_dh(50, 0.1, 0.2, eps);
        EXPECT_GT(x, prev);
        prev = x;
    }
}

TEST(second_order_dh, errors) {
    expect_code(ErrorCode::DomainError, [] { second_order_dh(0, 0.1, 0.1, 0.1); });
    expect_code(ErrorCode::DomainError, [] { second_order_dh(1, 0.1, -0.1, 0.1); });
    expect_code(ErrorCode::DomainError, [] { second_order_dh(1, 0.1, 0.1, 1); });
}

TEST(cramer_rao, values) {
    EXPECT_DOUBLE_EQ(cramer_rao(1, 1), 2);
    EXPECT_DOUBLE_EQ(cramer_rao(100, 1), 0.02);
    double prev = 1e300;
    for (int m = 1; m < 1000; m *= 3) {
        EXPECT_LT(cramer_rao(m, 0.4), prev);
        prev = cramer_rao(m, 0.4);
    }
    expect_code(ErrorCode::DomainError, [] { cramer_rao(1, 0); });
    expect_code(ErrorCode::DomainError, [] { cramer_rao(0, 1); });
}

TEST(bound_report, fields) {
    const BoundReport r = bound_report(100, 0.05, 1, 2);
    EXPECT_EQ(r.m, 100);
    EXPECT_NEAR(r.expansion, 5.0863171094033732, 1e-10);
    ASSERT_TRUE(r.cr_variance_floor.has_value());
    EXPECT_DOUBLE_EQ(*r.cr_variance_floor, 0.02);
    EXPECT_FALSE(bound_report(10, 0.05, 0, 2).cr_variance_floor.has_value());
}
