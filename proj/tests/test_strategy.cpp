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

#include "noisebound/strategy.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "noisebound/bounds.hpp"
#include "noisebound/error.hpp"
#include "noisebound/thermal_forms.hpp"
#include "oracles.hpp"

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

StrategySpec thermal_spec(double eta, double n1, double n2, int m, double eps) {
    return {ChannelKind::thermal, eta, n1, n2, m, eps};
}

}  // namespace

TEST(decoupling_symplectic, thermal_entries) {
    const Matrix s = decoupling_symplectic(ChannelSpec::thermal(0.5, 0.3), 1).mat();
    EXPECT_NEAR(s(0, 0), std::sqrt(4.0 / 3), 1e-15);
    EXPECT_NEAR(s(0, 1), -std::sqrt(1.0 / 3), 1e-15);
    EXPECT_NEAR(s(2, 3), std::sqrt(1.0 / 3), 1e-15);
    EXPECT_NEAR(s(0, 0) * s(0, 0) - s(0, 1) * s(0, 1), 1, 1e-15);
    EXPECT_TRUE(decoupling_symplectic(ChannelSpec::thermal(0.7, 0), 0).mat().isIdentity(0));
}

TEST(decoupling_symplectic, independent_of_noise) {
    const Matrix a = decoupling_symplectic(ChannelSpec::thermal(0.3, 0), 12).mat();
    const Matrix b = decoupling_symplectic(ChannelSpec::thermal(0.3, 5), 12).mat();
    EXPECT_EQ(a, b);
}

TEST(decoupling_symplectic, removes_correlations_without_noise) {
    for (double n_s : {0.0, 1.0, 37.0, 1e4}) {
        for (double eta : {0.0, 0.3, 0.9}) {
            const ChannelSpec spec = ChannelSpec::thermal(eta, 0);
            const Matrix out = apply_symplectic(decoupling_symplectic(spec, n_s), probe_output(spec, n_s)).cov();
            EXPECT_LE(std::abs(out(0, 1)), 1e-10 * std::max(1.0, n_s));
            EXPECT_LE(std::abs(out(2, 3)), 1e-10 * std::max(1.0, n_s));
        }
        for (double gain : {1.0, 2.0, 5.0}) {
            const ChannelSpec spec = ChannelSpec::amplifier(gain, 0);
            const Matrix out = apply_symplectic(decoupling_symplectic(spec, n_s), probe_output(spec, n_s)).cov();
            EXPECT_LE(std::abs(out(0, 1)), 1e-10 * std::max(1.0, n_s));
            EXPECT_LE(std::abs(out(2, 3)), 1e-10 * std::max(1.0, n_s));
        }
    }
}

TEST(decoupling_symplectic, identity_channel_rejected) {
    expect_code(ErrorCode::DomainError, [] { decoupling_symplectic(ChannelSpec::thermal(1, 0), 1); });
    expect_code(ErrorCode::NegativeSqueezing, [] { decoupling_symplectic(ChannelSpec::thermal(0.5, 0), -1); });
}

TEST(effective_thermal_mean, thermal_values) {
    EXPECT_NEAR(effective_thermal_mean(ChannelSpec::thermal(0.5, 0.2), 1), 2.0 / 15, 1e-14);
    EXPECT_NEAR(effective_thermal_mean(ChannelSpec::thermal(0.5, 0), 1), 0, 1e-14);
    EXPECT_NEAR(effective_thermal_mean(ChannelSpec::thermal(0.5, 0.2), 1e4), 0.2, 1e-4);
    EXPECT_NEAR(effective_thermal_mean(ChannelSpec::thermal(0.5, 0.2), 0), 0.1, 1e-15);
    EXPECT_NEAR(effective_thermal_mean(ChannelSpec::thermal(0, 0.2), 50), 0.2, 1e-13);
}

TEST(effective_thermal_mean, matches_hand_expansion) {
    for (double n_s : {0.0, 0.5, 10.0, 1e3, 1e5}) {
        for (double n_b : {0.0, 0.1, 2.0}) {
            for (double eta : {0.0, 0.3, 0.9}) {
                const double expected = oracle::thermal_effective_mean(eta, n_s, n_b);
                EXPECT_NEAR(effective_thermal_mean(ChannelSpec::thermal(eta, n_b), n_s), expected,
                            1e-12 * std::max(1.0, n_s)) << eta << " " << n_s << " " << n_b;
            }
            for (double gain : {1.5, 2.0, 4.0}) {
                const double expected = oracle::amplifier_effective_mean(gain, n_s, n_b);
                EXPECT_NEAR(effective_thermal_mean(ChannelSpec::amplifier(gain, n_b), n_s), expected,
                            1e-12 * std::max(1.0, gain * n_s)) << gain << " " << n_s << " " << n_b;
            }
        }
    }
}

TEST(effective_thermal_mean, gap_shrinks_by_decade) {
    for (double n_s = 100; n_s < 1e5; n_s *= 10) {
        const double now = std::abs(effective_thermal_mean(ChannelSpec::thermal(0.5, 0.3), n_s) - 0.3);
        const double next = std::abs(effective_thermal_mean(ChannelSpec::thermal(0.5, 0.3), 10 * n_s) - 0.3);
        EXPECT_NEAR(now / next, 10, 1.5);
    }
}

TEST(exact_binary_test, vacuum_null) {
    for (double eps : {0.05, 0.3, 0.9}) {
        const BinaryTestResult r = exact_binary_test(1, 0, 1, eps);
        EXPECT_EQ(r.test.threshold, 0);
        EXPECT_TRUE(r.test.accept_low);
        EXPECT_NEAR(r.test.randomization, 1 - eps, 1e-15);
        EXPECT_NEAR(r.beta, (1 - eps) / 2, 1e-15);
        EXPECT_NEAR(r.dh, -std::log((1 - eps) / 2), 1e-14);
    }
}

TEST(exact_binary_test, size_and_power_by_direct_summation) {
    struct Case {
        int m;
        double n1, n2, eps;
    };
    for (const Case c : {Case{1, 0.5, 2, 0.1}, Case{7, 1, 2, 0.05}, Case{20, 0.3, 0.1, 0.2}, Case{3, 2, 0.5, 0.01},
                         Case{50, 0.1, 0.3, 0.5}, Case{5, 1, 0, 0.3}}) {
        const BinaryTestResult r = exact_binary_test(c.m, c.n1, c.n2, c.eps);
        const int k_max = 3000;
        const double size = 1 - oracle::acceptance_mass(r.test, oracle::total_count_pmf(c.m, c.n1, k_max));
        const double beta = oracle::acceptance_mass(r.test, oracle::total_count_pmf(c.m, c.n2, k_max));
        EXPECT_NEAR(size, c.eps, 1e-12) << c.m << " " << c.n1 << " " << c.n2;
        EXPECT_NEAR(beta, r.beta, 1e-10 * r.beta + 1e-15) << c.m << " " << c.n1;
        EXPECT_EQ(r.test.accept_low, c.n1 < c.n2);
    }
}

TEST(exact_binary_test, optimal_among_threshold_tests) {
    // Any other test of size eps has type-II error at least beta.
    const int m = 4;
    const double n1 = 0.8, n2 = 1.7, eps = 0.1;
    const BinaryTestResult r = exact_binary_test(m, n1, n2, eps);
    const auto p1 = oracle::total_count_pmf(m, n1, 2000);
    const auto p2 = oracle::total_count_pmf(m, n2, 2000);
    for (std::int64_t k = 0; k < 15; ++k) {
        for (bool low : {true, false}) {
            // Solve for the randomisation that makes this test have size eps.
            ThresholdTest t{k, 0, low};
            const double base = oracle::acceptance_mass(t, p1);
            if (p1[k] == 0) {
                continue;
            }
            const double gamma = (1 - eps - base) / p1[k];
            if (gamma < 0 || gamma > 1) {
                continue;
            }
            t.randomization = gamma;
            EXPECT_GE(oracle::acceptance_mass(t, p2), r.beta - 1e-12);
        }
    }
}

TEST(exact_binary_test, errors) {
    expect_code(ErrorCode::DegenerateMeans, [] { exact_binary_test(3, 1, 1, 0.1); });
    expect_code(ErrorCode::DomainError, [] { exact_binary_test(0, 1, 2, 0.1); });
    expect_code(ErrorCode::DomainError, [] { exact_binary_test(1, 1, 2, 0); });
    expect_code(ErrorCode::DomainError, [] { exact_binary_test(1, -1, 2, 0.5); });
}

TEST(hypothesis_testing_entropy, equal_means_trivial_value) {
    EXPECT_NEAR(hypothesis_testing_entropy(5, 0.3, 0.3, 0.2).dh, -std::log(0.8), 1e-13);
    EXPECT_NEAR(hypothesis_testing_entropy(5, 0, 0, 0.2).dh, -std::log(0.8), 1e-15);
}

TEST(exact_binary_test, vacuum_alternative) {
    // H2 puts all mass on K = 0, so beta is the randomised acceptance at 0.
    const double p0 = 1 / (1.5 * 1.5);
    const BinaryTestResult r = exact_binary_test(2, 0.5, 0, 0.3);
    EXPECT_EQ(r.test.threshold, 0);
    EXPECT_NEAR(r.beta, (0.7 - (1 - p0)) / p0, 1e-14);
    // Once eps exceeds P1(K = 0) the test never accepts at K = 0.
    const BinaryTestResult inf = exact_binary_test(2, 0.5, 0, 0.5);
    EXPECT_EQ(inf.beta, 0);
    EXPECT_TRUE(std::isinf(inf.dh));
}

TEST(exact_binary_test, second_order_reference_point) {
    const DivergenceReport th = thermal_divergences({1, 2});
    const double expansion = second_order_dh(100, th.d, th.v, 0.05);
    const double dh = exact_binary_test(100, 1, 2, 0.05).dh;
    EXPECT_NEAR(expansion, 5.086, 1e-3);
    EXPECT_LT(std::abs(dh - expansion), std::log(100.0));
}

TEST(log_total_count_pmf, matches_convolution) {
    const auto pmf = oracle::total_count_pmf(6, 0.7, 60);
    for (int k : {0, 1, 5, 30}) {
        EXPECT_NEAR(std::exp(log_total_count_pmf(6, 0.7, k)), pmf[k], 1e-14);
    }
    EXPECT_EQ(log_total_count_pmf(3, 0, 0), 0);
    EXPECT_TRUE(std::isinf(log_total_count_pmf(3, 0, 1)));
}

TEST(monte_carlo, agrees_with_exact_test) {
    const BinaryTestResult exact = exact_binary_test(1, 0, 1, 0.1);
    const MonteCarloEstimate mc = monte_carlo_discrimination(1, 0, 1, 0.1, 100000, 7);
    EXPECT_LE(std::abs(mc.type1 - 0.1), 3 * mc.type1_sigma);
    EXPECT_LE(std::abs(mc.type2 - exact.beta), 3 * mc.type2_sigma);
    EXPECT_EQ(mc.trials, 100000);
}

TEST(monte_carlo, never_accept_threshold) {
    const ThresholdTest never{ThresholdTest::kNever, 0, true};
    const MonteCarloEstimate mc = monte_carlo_discrimination(3, 0.5, 1, never, 0, 1, 5000, 1);
    EXPECT_EQ(mc.type1, 0);
    EXPECT_EQ(mc.type2, 1);
}

TEST(monte_carlo, deterministic_for_seed) {
    const MonteCarloEstimate a = monte_carlo_discrimination(5, 0.4, 0.9, 0.05, 20000, 42);
    const MonteCarloEstimate b = monte_carlo_discrimination(5, 0.4, 0.9, 0.05, 20000, 42);
    const MonteCarloEstimate c = monte_carlo_discrimination(5, 0.4, 0.9, 0.05, 20000, 43);
    EXPECT_EQ(a.type1, b.type1);
    EXPECT_EQ(a.type2, b.type2);
    EXPECT_TRUE(a.type1 != c.type1 || a.type2 != c.type2);
    expect_code(ErrorCode::DomainError, [] { monte_carlo_discrimination(1, 0, 1, 0.1, 999, 1); });
}

TEST(strategy_spec, validation) {
    EXPECT_NO_THROW(thermal_spec(0.5, 0.1, 0.3, 10, 0.1).validate());
    expect_code(ErrorCode::DegenerateMeans, [] { thermal_spec(0.5, 0.1, 0.1, 10, 0.1).validate(); });
    expect_code(ErrorCode::DomainError, [] { thermal_spec(1, 0.1, 0.3, 10, 0.1).validate(); });
    expect_code(ErrorCode::DomainError, [] { thermal_spec(0.5, 0.1, 0.3, 0, 0.1).validate(); });
    expect_code(ErrorCode::DomainError, [] { thermal_spec(0.5, 0.1, 0.3, 10, 1).validate(); });
    expect_code(ErrorCode::InvalidSpec, [] { thermal_spec(1.5, 0.1, 0.3, 10, 0.1).validate(); });
    expect_code(ErrorCode::DomainError,
                [] { StrategySpec{ChannelKind::amplifier, 1, 0.1, 0.3, 10, 0.1}.validate(); });
}

TEST(bound_gap_report, reference_point) {
    const StrategyResult r = bound_gap_report(thermal_spec(0.5, 0.1, 0.3, 50, 0.1), 1e3);
    EXPECT_GE(r.gap, 0);
    EXPECT_LT(r.gap, 0.05 * r.dh_environment);
    EXPECT_NEAR(r.n_eff_1, 0.1, 1e-3);
    EXPECT_NEAR(r.n_eff_2, 0.3, 1e-3);
    EXPECT_TRUE(std::isfinite(r.second_order));
}

TEST(bound_gap_report, vacuum_probe_has_largest_gap) {
    const StrategySpec spec = thermal_spec(0.5, 0.1, 0.3, 10, 0.05);
    const StrategyResult none = bound_gap_report(spec, 0);
    EXPECT_NEAR(none.n_eff_1, 0.05, 1e-15);
    EXPECT_NEAR(none.n_eff_2, 0.15, 1e-15);
    for (double n_s : {1.0, 10.0, 100.0}) {
        EXPECT_GT(none.gap, bound_gap_report(spec, n_s).gap);
    }
}

TEST(bound_gap_report, full_loss_closes_gap) {
    const StrategyResult r = bound_gap_report(thermal_spec(0, 0.1, 0.3, 10, 0.05), 5);
    EXPECT_NEAR(r.gap, 0, 1e-12);
}

TEST(bound_gap_report, amplifier) {
    const StrategySpec spec{ChannelKind::amplifier, 2, 0.1, 0.3, 20, 0.1};
    const StrategyResult r = bound_gap_report(spec, 1e3);
    EXPECT_GE(r.gap, 0);
    EXPECT_NEAR(r.n_eff_2, oracle::amplifier_effective_mean(2, 1e3, 0.3), 1e-12);
    const StrategyResult zero = bound_gap_report(spec, 0);
    EXPECT_EQ(zero.n_eff_1, 0);
    EXPECT_NEAR(zero.dh_strategy, -std::log(0.9), 1e-14);
}
