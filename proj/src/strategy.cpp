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

#include <algorithm>
#include <cmath>
#include <random>

#include "detail/precise.hpp"
#include "noisebound/bounds.hpp"
#include "noisebound/error.hpp"
#include "noisebound/thermal_forms.hpp"

namespace noisebound {

using detail::MatrixL;
using detail::Real;

ChannelSpec StrategySpec::channel(int hypothesis) const {
    const double n_b = hypothesis == 1 ? n_b1 : n_b2;
    return kind == ChannelKind::thermal ? ChannelSpec::thermal(coupling, n_b) : ChannelSpec::amplifier(coupling, n_b);
}

void StrategySpec::validate() const {
    channel(1);
    channel(2);
    if (n_b1 == n_b2) {
        throw Error(ErrorCode::DegenerateMeans, "the two channels must differ in excess noise");
    }
    if (kind == ChannelKind::thermal && coupling == 1) {
        throw Error(ErrorCode::DomainError, "eta = 1 channels cannot be discriminated");
    }
    if (kind == ChannelKind::amplifier && coupling == 1) {
        throw Error(ErrorCode::DomainError, "G = 1 channels cannot be discriminated");
    }
    if (m < 1) {
        throw Error(ErrorCode::DomainError, "number of channel uses must be >= 1");
    }
    if (!(epsilon > 0 && epsilon < 1)) {
        throw Error(ErrorCode::DomainError, "epsilon must lie in (0, 1)");
    }
}

SymplecticMatrix decoupling_symplectic(const ChannelSpec &spec, double n_s) {
    if (!(n_s >= 0) || !std::isfinite(n_s)) {
        throw Error(ErrorCode::NegativeSqueezing, "probe mean photon number must be finite and >= 0");
    }
    double plus2 = 0;
    double minus2 = 0;
    if (spec.kind() == ChannelKind::thermal) {
        const double eta = spec.coupling();
        if (eta >= 1) {
            throw Error(ErrorCode::DomainError, "no decoupler exists for the identity channel eta = 1");
        }
        const double denom = 1 + (1 - eta) * n_s;
        plus2 = (1 + n_s) / denom;
        minus2 = eta * n_s / denom;
    } else {
        const double gain = spec.coupling();
        const double denom = gain + (gain - 1) * n_s;
        plus2 = gain * (1 + n_s) / denom;
        minus2 = n_s / denom;
    }
    const double wp = std::sqrt(plus2);
    const double wm = std::sqrt(minus2);
    Matrix s(4, 4);
    s << wp, -wm, 0, 0,  //
        -wm, wp, 0, 0,   //
        0, 0, wp, wm,    //
        0, 0, wm, wp;
    return SymplecticMatrix(std::move(s));
}

int detected_mode(ChannelKind kind) {
    return kind == ChannelKind::thermal ? 0 : 1;
}

double effective_thermal_mean(const ChannelSpec &spec, double n_s) {
    const MatrixL s = detail::widen(decoupling_symplectic(spec, n_s).mat());
    const MatrixL v = detail::widen(probe_output(spec, n_s).cov());
    const MatrixL out = s * v * s.transpose();
    const int mode = detected_mode(spec.kind());
    return std::max(0.0, static_cast<double>(out(mode, mode) - Real(0.5)));
}

double ThresholdTest::accept_probability(std::int64_t k) const {
    if (threshold == kNever) {
        return accept_low ? 1.0 : 0.0;
    }
    if (k == threshold) {
        return randomization;
    }
    return (accept_low ? k < threshold : k > threshold) ? 1.0 : 0.0;
}

double log_total_count_pmf(int m, double mean, std::int64_t k) {
    if (k < 0) {
        return -std::numeric_limits<double>::infinity();
    }
    if (mean == 0) {
        return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    }
    const Real kk = static_cast<Real>(k);
    const Real mm = static_cast<Real>(m);
    const Real log_binom = std::lgamma(kk + mm) - std::lgamma(kk + 1) - std::lgamma(mm);
    const Real log_q = std::log(static_cast<Real>(mean)) - std::log1p(static_cast<Real>(mean));
    return static_cast<double>(log_binom - mm * std::log1p(static_cast<Real>(mean)) + kk * log_q);
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
    if (a == kNegInf) {
        return b;
    }
    if (b == kNegInf) {
        return a;
    }
    const double hi = std::max(a, b);
    return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

// log P(K > k) for K ~ total count, summed upward until terms are negligible.
double log_upper_tail(int m, double mean, std::int64_t k) {
    if (mean == 0) {
        return kNegInf;
    }
    const double mode = mean * (m - 1);
    double acc = kNegInf;
    for (std::int64_t j = k + 1;; ++j) {
        const double term = log_total_count_pmf(m, mean, j);
        acc = log_add(acc, term);
        if (static_cast<double>(j) > mode && term < acc - 45) {
            break;
        }
    }
    return acc;
}

void require_test_inputs(int m, double n1, double n2, double epsilon) {
    if (m < 1) {
        throw Error(ErrorCode::DomainError, "m must be >= 1");
    }
    if (!(n1 >= 0) || !(n2 >= 0) || !std::isfinite(n1) || !std::isfinite(n2)) {
        throw Error(ErrorCode::DomainError, "means must be finite and >= 0");
    }
    if (!(epsilon > 0 && epsilon < 1)) {
        throw Error(ErrorCode::DomainError, "epsilon must lie in (0, 1)");
    }
}

BinaryTestResult from_log_beta(double log_beta, ThresholdTest test) {
    BinaryTestResult r;
    r.test = test;
    r.beta = std::exp(log_beta);
    r.dh = -log_beta;
    return r;
}

}  // namespace

BinaryTestResult hypothesis_testing_entropy(int m, double n1, double n2, double epsilon) {
    require_test_inputs(m, n1, n2, epsilon);
    // The likelihood ratio P1/P2 is monotone in the total count: decreasing
    // when n1 < n2 (accept small counts), increasing when n1 > n2.
    if (n1 <= n2) {
        Real below = 0;  // P1(K < k)
        std::int64_t k = 0;
        double p1k = 0;
        for (;; ++k) {
            p1k = std::exp(log_total_count_pmf(m, n1, k));
            if (below + p1k >= Real(1 - epsilon)) {
                break;
            }
            below += p1k;
        }
        const double gamma = std::clamp(static_cast<double>((Real(1 - epsilon) - below) / p1k), 0.0, 1.0);
        double log_beta = kNegInf;
        for (std::int64_t j = 0; j < k; ++j) {
            log_beta = log_add(log_beta, log_total_count_pmf(m, n2, j));
        }
        if (gamma > 0) {
            log_beta = log_add(log_beta, std::log(gamma) + log_total_count_pmf(m, n2, k));
        }
        return from_log_beta(log_beta, {k, gamma, true});
    }

    Real below = 0;
    std::int64_t k = 0;
    double p1k = 0;
    for (;; ++k) {
        p1k = std::exp(log_total_count_pmf(m, n1, k));
        if (below + p1k > Real(epsilon)) {
            break;
        }
        below += p1k;
    }
    // Reject K < k and K == k with probability 1 - gamma so the size is eps.
    const double gamma = std::clamp(1 - static_cast<double>((Real(epsilon) - below) / p1k), 0.0, 1.0);
    double log_beta = log_upper_tail(m, n2, k);
    if (gamma > 0) {
        log_beta = log_add(log_beta, std::log(gamma) + log_total_count_pmf(m, n2, k));
    }
    return from_log_beta(log_beta, {k, gamma, false});
}

BinaryTestResult exact_binary_test(int m, double n1, double n2, double epsilon) {
    if (n1 == n2) {
        throw Error(ErrorCode::DegenerateMeans, "hypotheses have identical means");
    }
    return hypothesis_testing_entropy(m, n1, n2, epsilon);
}

namespace {

class CountSampler {
  public:
    explicit CountSampler(std::uint64_t seed) : rng_(seed) {}

    double uniform() {
        return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    }

    // Inverse-CDF draw from the geometric distribution with the given mean.
    std::int64_t geometric(double log_q) {
        if (log_q == kNegInf) {
            return 0;
        }
        return static_cast<std::int64_t>(std::floor(std::log1p(-uniform()) / log_q));
    }

  private:
    std::mt19937_64 rng_;
};

double rejection_rate(CountSampler &sampler, int m, double mean, const ThresholdTest &test, std::int64_t trials,
                      bool count_accepts) {
    const double log_q = mean == 0 ? kNegInf : std::log(mean) - std::log1p(mean);
    std::int64_t hits = 0;
    for (std::int64_t t = 0; t < trials; ++t) {
        std::int64_t total = 0;
        for (int i = 0; i < m; ++i) {
            total += sampler.geometric(log_q);
        }
        const bool accept = sampler.uniform() < test.accept_probability(total);
        hits += accept == count_accepts ? 1 : 0;
    }
    return static_cast<double>(hits) / static_cast<double>(trials);
}

}  // namespace

MonteCarloEstimate monte_carlo_discrimination(int m, double n1, double n2, const ThresholdTest &test,
                                              double nominal_type1, double nominal_type2, std::int64_t trials,
                                              std::uint64_t seed) {
    if (trials < 1000) {
        throw Error(ErrorCode::DomainError, "Monte Carlo needs at least 1000 trials");
    }
    if (m < 1) {
        throw Error(ErrorCode::DomainError, "m must be >= 1");
    }
    CountSampler sampler(seed);
    MonteCarloEstimate est;
    est.trials = trials;
    est.type1 = rejection_rate(sampler, m, n1, test, trials, false);
    est.type2 = rejection_rate(sampler, m, n2, test, trials, true);
    const auto sigma = [&](double p) { return std::sqrt(p * (1 - p) / static_cast<double>(trials)); };
    est.type1_sigma = sigma(nominal_type1);
    est.type2_sigma = sigma(nominal_type2);
    return est;
}

MonteCarloEstimate monte_carlo_discrimination(int m, double n1, double n2, double epsilon, std::int64_t trials,
                                              std::uint64_t seed) {
    const BinaryTestResult exact = exact_binary_test(m, n1, n2, epsilon);
    return monte_carlo_discrimination(m, n1, n2, exact.test, epsilon, exact.beta, trials, seed);
}

StrategyResult bound_gap_report(const StrategySpec &spec, double n_s) {
    spec.validate();
    StrategyResult r;
    r.n_eff_1 = effective_thermal_mean(spec.channel(1), n_s);
    r.n_eff_2 = effective_thermal_mean(spec.channel(2), n_s);
    r.dh_strategy = hypothesis_testing_entropy(spec.m, r.n_eff_1, r.n_eff_2, spec.epsilon).dh;
    r.dh_environment = exact_binary_test(spec.m, spec.n_b1, spec.n_b2, spec.epsilon).dh;
    if (spec.n_b2 == 0) {
        r.second_order = std::numeric_limits<double>::infinity();
    } else {
        const DivergenceReport th = thermal_divergences({spec.n_b1, spec.n_b2});
        r.second_order = second_order_dh(spec.m, th.d, th.v, spec.epsilon);
    }
    r.gap = r.dh_environment - r.dh_strategy;
    return r;
}

}  // namespace noisebound
