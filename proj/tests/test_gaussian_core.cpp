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

#include "noisebound/gaussian_core.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "noisebound/channels.hpp"
#include "noisebound/error.hpp"
#include "noisebound/strategy.hpp"
#include "oracles.hpp"

using namespace noisebound;

namespace {

Matrix diag_form(const std::vector<double> &nu) {
    const int n = static_cast<int>(nu.size());
    Matrix d = Matrix::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        d(i, i) = nu[i];
        d(n + i, n + i) = nu[i];
    }
    return d;
}

double max_abs(const Matrix &m) {
    return m.cwiseAbs().maxCoeff();
}

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

TEST(symplectic_form, small_cases) {
    Matrix one(2, 2);
    one << 0, 1, -1, 0;
    EXPECT_EQ(symplectic_form(1), one);

    const Matrix two = symplectic_form(2);
    EXPECT_EQ(two.topRightCorner(2, 2), Matrix::Identity(2, 2));
    EXPECT_EQ(two.bottomLeftCorner(2, 2), -Matrix::Identity(2, 2));
    EXPECT_EQ(two.topLeftCorner(2, 2), Matrix::Zero(2, 2));

    const Matrix three = symplectic_form(3);
    EXPECT_TRUE((three * three.transpose()).isIdentity(0));
    EXPECT_TRUE((three * three + Matrix::Identity(6, 6)).isZero(0));
    EXPECT_TRUE((three + three.transpose()).isZero(0));
}

TEST(symplectic_matrix, rejects_non_symplectic) {
    Matrix m = Matrix::Identity(2, 2);
    m(0, 0) = 2;
    expect_code(ErrorCode::InvalidSpec, [&] { SymplecticMatrix s(m); });
    m(1, 1) = 0.5;
    EXPECT_NO_THROW(SymplecticMatrix s(m));
}

TEST(williamson, thermal_is_already_diagonal) {
    const WilliamsonResult w = williamson(1.5 * Matrix::Identity(2, 2));
    ASSERT_EQ(w.nu.size(), 1u);
    EXPECT_NEAR(w.nu[0], 1.5, 1e-14);
    EXPECT_TRUE((w.s.mat() * w.s.mat().transpose()).isIdentity(1e-12));
    EXPECT_FALSE(w.ill_conditioned);
}

TEST(williamson, tmsv_is_pure) {
    const WilliamsonResult w = williamson(tmsv(1).cov());
    ASSERT_EQ(w.nu.size(), 2u);
    EXPECT_NEAR(w.nu[0], 0.5, 1e-12);
    EXPECT_NEAR(w.nu[1], 0.5, 1e-12);
}

TEST(williamson, probe_output_matches_brute_force_eigensolve) {
    const GaussianState probe = probe_output(ChannelSpec::thermal(0.5, 0.2), 1);
    const WilliamsonResult w = williamson(probe.cov());
    EXPECT_NEAR(w.nu[0], oracle::kProbeNuHigh, 1e-13);
    EXPECT_NEAR(w.nu[1], oracle::kProbeNuLow, 1e-13);

    // Eigenvalues of i Omega V are +-nu.
    const Eigen::MatrixXcd m = std::complex<double>(0, 1) * symplectic_form(2) * probe.cov();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m);
    std::vector<double> positive;
    for (int i = 0; i < 4; ++i) {
        if (es.eigenvalues()(i).real() > 0) {
            positive.push_back(es.eigenvalues()(i).real());
        }
    }
    std::sort(positive.rbegin(), positive.rend());
    ASSERT_EQ(positive.size(), 2u);
    EXPECT_NEAR(w.nu[0], positive[0], 1e-12);
    EXPECT_NEAR(w.nu[1], positive[1], 1e-12);
}

TEST(williamson, round_trip_and_descending_order) {
    const std::array<double, 3> etas = {0.1, 0.5, 0.95};
    const std::array<double, 4> ns = {0.3, 3, 300, 3e4};
    for (double eta : etas) {
        for (double n_s : ns) {
            const Matrix v = probe_output(ChannelSpec::thermal(eta, 0.7), n_s).cov();
            const WilliamsonResult w = williamson(v);
            EXPECT_GE(w.nu[0], w.nu[1]);
            const Matrix sinv = w.s.mat().inverse();
            const Matrix back = sinv * diag_form(w.nu) * sinv.transpose();
            EXPECT_LE(max_abs(back - v) / max_abs(v), 1e-9) << eta << " " << n_s;
            const Matrix fwd = w.s.mat() * v * w.s.mat().transpose();
            EXPECT_LE(max_abs(fwd - diag_form(w.nu)) / max_abs(v), 1e-9) << eta << " " << n_s;
            const Matrix omega = symplectic_form(2);
            EXPECT_LE(max_abs(w.s.mat() * omega * w.s.mat().transpose() - omega), 1e-10 * std::max(1.0, max_abs(w.s.mat()) * max_abs(w.s.mat())));
        }
    }
}

TEST(williamson, analytic_two_mode_formula) {
    for (double n_s : {0.0, 0.5, 10.0, 1e4}) {
        for (double n_b : {0.0, 0.2, 3.0}) {
            const double eta = 0.35;
            const double a = eta * n_s + (1 - eta) * n_b + 0.5;
            const double b = n_s + 0.5;
            const double c = std::sqrt(eta * n_s * (n_s + 1));
            const auto [hi, lo] = oracle::two_mode_nu(a, b, c);
            const std::vector<double> nu = symplectic_eigenvalues(probe_output(ChannelSpec::thermal(eta, n_b), n_s).cov());
            EXPECT_NEAR(nu[0], hi, 1e-10 * hi);
            // nu_low of a near-pure state is only resolved to ~eps (a + b)^2.
            EXPECT_NEAR(nu[1], lo, 1e-9 + 4e-16 * (a + b) * (a + b));
        }
    }
}

TEST(williamson, rejects_non_positive_definite) {
    Matrix v = Matrix::Identity(2, 2);
    v(1, 1) = -0.5;
    expect_code(ErrorCode::NonPositiveDefinite, [&] { williamson(v); });
}

TEST(apply_symplectic, identity_leaves_state_unchanged) {
    const GaussianState probe = probe_output(ChannelSpec::thermal(0.3, 0.4), 2);
    const GaussianState out = apply_symplectic(SymplecticMatrix(Matrix::Identity(4, 4)), probe);
    EXPECT_EQ(out.cov(), probe.cov());
}

TEST(apply_symplectic, decoupler_removes_correlations_at_zero_noise) {
    const ChannelSpec spec = ChannelSpec::thermal(0.5, 0);
    const GaussianState out = apply_symplectic(decoupling_symplectic(spec, 1), probe_output(spec, 1));
    EXPECT_NEAR(out.cov()(0, 1), 0, 1e-12);
    EXPECT_NEAR(out.cov()(2, 3), 0, 1e-12);
}

TEST(apply_symplectic, decoupler_with_noise_gives_explicit_product) {
    const ChannelSpec spec = ChannelSpec::thermal(0.5, 0.2);
    const GaussianState out = apply_symplectic(decoupling_symplectic(spec, 1), probe_output(spec, 1));
    // Entries of S V S^T expanded by hand; a_s = 19/30.
    const double wp = std::sqrt(4.0 / 3), wm = std::sqrt(1.0 / 3);
    const double a = 1.1, b = 1.5, c = 1.0;
    EXPECT_NEAR(out.cov()(0, 0), 19.0 / 30, 1e-12);
    EXPECT_NEAR(out.cov()(1, 1), wm * wm * a - 2 * wp * wm * c + wp * wp * b, 1e-12);
    EXPECT_NEAR(out.cov()(0, 1), -(wp * wm * (a + b) - (wp * wp + wm * wm) * c), 1e-12);
    EXPECT_NEAR(out.cov()(2, 2), out.cov()(0, 0), 1e-12);
    EXPECT_NEAR(out.cov()(2, 3), -out.cov()(0, 1), 1e-12);
}

TEST(apply_symplectic, preserves_symplectic_spectrum) {
    const GaussianState probe = probe_output(ChannelSpec::thermal(0.5, 0.2), 5);
    const std::vector<double> before = symplectic_eigenvalues(probe.cov());
    const GaussianState out = apply_symplectic(decoupling_symplectic(ChannelSpec::thermal(0.5, 0.2), 5), probe);
    const std::vector<double> after = symplectic_eigenvalues(out.cov());
    for (int i = 0; i < 2; ++i) {
        EXPECT_NEAR(after[i], before[i], 1e-10 * before[i]);
    }
}

TEST(apply_symplectic, dimension_mismatch) {
    expect_code(ErrorCode::DimensionMismatch,
                [] { apply_symplectic(SymplecticMatrix(Matrix::Identity(2, 2)), tmsv(1)); });
}

TEST(marginal, tmsv_marginal_is_thermal) {
    const GaussianState t = tmsv(2.5);
    for (int mode : {0, 1}) {
        const std::array<int, 1> idx = {mode};
        const GaussianState m = marginal(t, idx);
        EXPECT_TRUE(m.cov().isApprox(3.0 * Matrix::Identity(2, 2), 1e-14));
    }
}

TEST(marginal, product_state_factor) {
    const GaussianState prod = tensor_product(thermal_state(0.3), thermal_state(1.2));
    const std::array<int, 1> second = {1};
    EXPECT_TRUE(marginal(prod, second).cov().isApprox(thermal_state(1.2).cov(), 0));
}

TEST(marginal, decoupled_probe_detected_mode) {
    const ChannelSpec spec = ChannelSpec::thermal(0.5, 0.2);
    const GaussianState out = apply_symplectic(decoupling_symplectic(spec, 1), probe_output(spec, 1));
    const std::array<int, 1> idx = {0};
    const GaussianState m = marginal(out, idx);
    EXPECT_NEAR(m.cov()(0, 0), 0.6333333333333333, 1e-12);
    EXPECT_NEAR(m.cov()(1, 1), 0.6333333333333333, 1e-12);
    EXPECT_NEAR(m.cov()(0, 1), 0, 1e-15);
}

TEST(marginal, rejects_bad_indices) {
    const GaussianState t = tmsv(1);
    const std::array<int, 1> out_of_range = {2};
    const std::array<int, 2> repeated = {0, 0};
    expect_code(ErrorCode::IndexOutOfRange, [&] { marginal(t, out_of_range); });
    expect_code(ErrorCode::IndexOutOfRange, [&] { marginal(t, repeated); });
}

TEST(validate_state, vacuum_and_sub_vacuum) {
    const StateDiagnostics vac = validate_state(0.5 * Matrix::Identity(2, 2));
    EXPECT_TRUE(vac.valid);
    EXPECT_TRUE(vac.pure);
    const StateDiagnostics low = validate_state(0.4 * Matrix::Identity(2, 2));
    EXPECT_FALSE(low.valid);
    EXPECT_NEAR(low.min_nu_excess, -0.1, 1e-12);
    expect_code(ErrorCode::InvalidState, [] { GaussianState s(0.4 * Matrix::Identity(2, 2)); });
}

TEST(validate_state, asymmetric_matrix_is_invalid) {
    Matrix v = Matrix::Identity(2, 2);
    v(0, 1) = 0.1;
    const StateDiagnostics d = validate_state(v);
    EXPECT_FALSE(d.valid);
    EXPECT_GT(d.symmetry_defect, 0.05);
}

TEST(validate_state, probe_outputs_valid_and_purity_both_directions) {
    for (double eta : {0.0, 0.4, 0.9}) {
        for (double n_s : {0.0, 1.0, 100.0}) {
            const StateDiagnostics noisy = validate_state(probe_output(ChannelSpec::thermal(eta, 0.3), n_s).cov());
            EXPECT_TRUE(noisy.valid);
            EXPECT_FALSE(noisy.pure);
        }
    }
    EXPECT_TRUE(validate_state(tmsv(7).cov()).pure);
    EXPECT_TRUE(validate_state(probe_output(ChannelSpec::thermal(1, 0.3), 2).cov()).pure);
    EXPECT_FALSE(validate_state(thermal_state(1e-6).cov()).pure);
}

TEST(to_interleaved, reorders_quadratures) {
    Matrix v(4, 4);
    v << 1, 2, 3, 4,  //
        2, 5, 6, 7,   //
        3, 6, 8, 9,   //
        4, 7, 9, 10;
    const Matrix w = to_interleaved(v);
    // x1 p1 x2 p2 <- indices 0 2 1 3
    EXPECT_EQ(w(0, 1), v(0, 2));
    EXPECT_EQ(w(1, 2), v(2, 1));
    EXPECT_EQ(w(3, 3), v(3, 3));
}
