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

#include <cstdint>
#include <limits>

#include "noisebound/channels.hpp"
#include "noisebound/gaussian_core.hpp"

namespace noisebound {

/// Two channels of the same kind and coupling that differ only in n_b.
struct StrategySpec {
    ChannelKind kind = ChannelKind::thermal;
    double coupling = 0;  // eta or G
    double n_b1 = 0;
    double n_b2 = 0;
    int m = 1;  // channel uses
    double epsilon = 0.05;

    ChannelSpec channel(int hypothesis) const;
    void validate() const;
};

struct StrategyResult {
    double n_eff_1 = 0;
    double n_eff_2 = 0;
    double dh_strategy = 0;     // nats
    double dh_environment = 0;  // nats
    double second_order = 0;    // nats
    double gap = 0;             // dh_environment - dh_strategy
};

/// Two-mode squeezer with x-block [[w+, -w-], [-w-, w+]] and p-block
/// [[w+, w-], [w-, w+]]. It removes the inter-mode correlations of the
/// probe output when n_b = 0 and does not depend on n_b.
///   thermal:   w+^2 = (1 + N_S) / (1 + (1 - eta) N_S),  w-^2 = eta N_S / (1 + (1 - eta) N_S)
///   amplifier: w+^2 = G (1 + N_S) / (G + (G - 1) N_S),   w-^2 = N_S / (G + (G - 1) N_S)
/// Throws DomainError for the identity thermal channel (eta = 1).
SymplecticMatrix decoupling_symplectic(const ChannelSpec &spec, double n_s);

/// The decoupled mode that tends to theta(n_b): mode 0 for thermal-loss
/// channels, mode 1 for amplifiers.
int detected_mode(ChannelKind kind);

/// Variance of the detected mode after decoupling, minus 1/2.
double effective_thermal_mean(const ChannelSpec &spec, double n_s);

/// Randomised likelihood-ratio test on the total photon count K of m
/// geometric draws. "Accept" means deciding for hypothesis 1.
///   accept_low:  accept K < threshold, and K == threshold with prob. randomization
///   !accept_low: accept K > threshold, and K == threshold with prob. randomization
struct ThresholdTest {
    static constexpr std::int64_t kNever = std::numeric_limits<std::int64_t>::max();

    std::int64_t threshold = kNever;
    double randomization = 0;
    bool accept_low = true;

    /// Probability of accepting hypothesis 1 given total count k.
    double accept_probability(std::int64_t k) const;
};

struct BinaryTestResult {
    double dh = 0;         // -ln beta (nats)
    double beta = 0;       // type-II error of the optimal test
    ThresholdTest test;
};

/// Exact hypothesis-testing relative entropy D_H^eps between m-fold products
/// of Bose-Einstein (geometric) photon-count distributions with means n1, n2.
/// Throws DegenerateMeans if n1 == n2.
BinaryTestResult exact_binary_test(int m, double n1, double n2, double epsilon);

/// Same, but identical means give the trivial value -ln(1 - eps).
BinaryTestResult hypothesis_testing_entropy(int m, double n1, double n2, double epsilon);

/// log P(K = k) for K the sum of m geometric draws with mean `mean`.
double log_total_count_pmf(int m, double mean, std::int64_t k);

struct MonteCarloEstimate {
    double type1 = 0;
    double type1_sigma = 0;  // binomial standard error at the nominal rate
    double type2 = 0;
    double type2_sigma = 0;
    std::int64_t trials = 0;
};

/// Samples m geometric draws per trial under each hypothesis and applies
/// `test`. Deterministic for a given seed. Needs trials >= 1000.
MonteCarloEstimate monte_carlo_discrimination(int m, double n1, double n2, const ThresholdTest &test,
                                              double nominal_type1, double nominal_type2, std::int64_t trials,
                                              std::uint64_t seed);

/// Convenience form that runs the exact optimal test for (m, n1, n2, eps).
MonteCarloEstimate monte_carlo_discrimination(int m, double n1, double n2, double epsilon, std::int64_t trials,
                                              std::uint64_t seed);

StrategyResult bound_gap_report(const StrategySpec &spec, double n_s);

}  // namespace noisebound
