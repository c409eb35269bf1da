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

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "detail/precise.hpp"
#include "noisebound/error.hpp"

namespace noisebound {

namespace {

void require_square_even(const Matrix &m, ErrorCode code) {
    if (m.rows() != m.cols() || m.rows() == 0 || m.rows() % 2 != 0) {
        std::ostringstream msg;
        msg << "expected a non-empty square even-dimensional matrix, got " << m.rows() << "x" << m.cols();
        throw Error(code, msg.str());
    }
}

double max_abs(const Matrix &m) {
    return m.cwiseAbs().maxCoeff();
}

}  // namespace

GaussianState::GaussianState(Matrix cov) : GaussianState(cov, Vector::Zero(cov.rows())) {}

GaussianState::GaussianState(Matrix cov, Vector mean) : cov_(std::move(cov)), mean_(std::move(mean)) {
    require_square_even(cov_, ErrorCode::InvalidState);
    if (mean_.size() != cov_.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "mean vector length does not match covariance");
    }
    const StateDiagnostics diag = validate_state(cov_);
    if (!diag.valid) {
        std::ostringstream msg;
        msg << "unphysical covariance (symmetry defect " << diag.symmetry_defect << ", min nu - 1/2 = "
            << diag.min_nu_excess << ")";
        throw Error(ErrorCode::InvalidState, msg.str());
    }
    cov_ = (cov_ + cov_.transpose()) / 2;
}

GaussianState::GaussianState(Matrix cov, Vector mean, Unchecked) : cov_(std::move(cov)), mean_(std::move(mean)) {
    require_square_even(cov_, ErrorCode::InvalidState);
    if (mean_.size() != cov_.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "mean vector length does not match covariance");
    }
    cov_ = (cov_ + cov_.transpose()) / 2;
}

SymplecticMatrix::SymplecticMatrix(Matrix mat) : mat_(std::move(mat)) {
    require_square_even(mat_, ErrorCode::InvalidSpec);
    const Matrix omega = symplectic_form(n_modes());
    const double defect = max_abs(mat_ * omega * mat_.transpose() - omega);
    const double scale = std::max(1.0, max_abs(mat_) * max_abs(mat_));
    if (!(defect <= 1e-10 * scale)) {
        std::ostringstream msg;
        msg << "matrix is not symplectic (|S Omega S^T - Omega| = " << defect << ")";
        throw Error(ErrorCode::InvalidSpec, msg.str());
    }
}

Matrix symplectic_form(int n_modes) {
    if (n_modes < 1) {
        throw Error(ErrorCode::DimensionMismatch, "symplectic form needs at least one mode");
    }
    return detail::omega(n_modes).cast<double>();
}

WilliamsonResult williamson(const Matrix &cov) {
    require_square_even(cov, ErrorCode::DimensionMismatch);
    const detail::NormalForm nf = detail::normal_form(detail::widen((cov + cov.transpose()) / 2));
    std::vector<double> nu(nf.nu.begin(), nf.nu.end());
    const double cond = static_cast<double>(nf.condition_number);
    return {SymplecticMatrix(nf.s.cast<double>()), std::move(nu), cond, cond > 1e12};
}

std::vector<double> symplectic_eigenvalues(const Matrix &cov) {
    require_square_even(cov, ErrorCode::DimensionMismatch);
    const detail::VectorL nu = detail::symplectic_spectrum(detail::widen((cov + cov.transpose()) / 2));
    return {nu.begin(), nu.end()};
}

GaussianState apply_symplectic(const SymplecticMatrix &s, const GaussianState &state) {
    if (s.n_modes() != state.n_modes()) {
        throw Error(ErrorCode::DimensionMismatch, "symplectic matrix and state have different mode counts");
    }
    const detail::MatrixL sl = detail::widen(s.mat());
    const detail::MatrixL out = sl * detail::widen(state.cov()) * sl.transpose();
    return GaussianState(out.cast<double>(), s.mat() * state.mean(), GaussianState::Unchecked{});
}

GaussianState marginal(const GaussianState &state, std::span<const int> modes) {
    const int n = state.n_modes();
    std::vector<int> seen;
    for (int m : modes) {
        if (m < 0 || m >= n || std::find(seen.begin(), seen.end(), m) != seen.end()) {
            throw Error(ErrorCode::IndexOutOfRange, "marginal modes must be distinct indices in [0, n_modes)");
        }
        seen.push_back(m);
    }
    if (seen.empty()) {
        throw Error(ErrorCode::IndexOutOfRange, "marginal needs at least one mode");
    }
    const int k = static_cast<int>(seen.size());
    std::vector<int> idx;
    for (int m : seen) {
        idx.push_back(m);
    }
    for (int m : seen) {
        idx.push_back(n + m);
    }
    Matrix cov(2 * k, 2 * k);
    Vector mean(2 * k);
    for (int i = 0; i < 2 * k; ++i) {
        mean(i) = state.mean()(idx[i]);
        for (int j = 0; j < 2 * k; ++j) {
            cov(i, j) = state.cov()(idx[i], idx[j]);
        }
    }
    return GaussianState(std::move(cov), std::move(mean), GaussianState::Unchecked{});
}

GaussianState tensor_product(const GaussianState &a, const GaussianState &b) {
    const int na = a.n_modes();
    const int nb = b.n_modes();
    const int n = na + nb;
    Matrix cov = Matrix::Zero(2 * n, 2 * n);
    Vector mean(2 * n);
    // Block (x-or-p, x-or-p) of each factor lands at its mode offset.
    for (int bi = 0; bi < 2; ++bi) {
        for (int bj = 0; bj < 2; ++bj) {
            cov.block(bi * n, bj * n, na, na) = a.cov().block(bi * na, bj * na, na, na);
            cov.block(bi * n + na, bj * n + na, nb, nb) = b.cov().block(bi * nb, bj * nb, nb, nb);
        }
        mean.segment(bi * n, na) = a.mean().segment(bi * na, na);
        mean.segment(bi * n + na, nb) = b.mean().segment(bi * nb, nb);
    }
    return GaussianState(std::move(cov), std::move(mean));
}

double pure_mode_tolerance(const Matrix &cov) {
    const double scale = max_abs(cov);
    return kPureModeTolerance + 16 * std::numeric_limits<double>::epsilon() * scale * scale;
}

StateDiagnostics validate_state(const Matrix &cov) {
    require_square_even(cov, ErrorCode::DimensionMismatch);
    StateDiagnostics d{};
    const double scale = std::max(max_abs(cov), 1e-300);
    d.symmetry_defect = max_abs(cov - cov.transpose()) / scale;
    const Matrix sym = (cov + cov.transpose()) / 2;

    const double tol = pure_mode_tolerance(sym);
    double min_nu;
    try {
        const detail::VectorL nu = detail::symplectic_spectrum(detail::widen(sym));
        min_nu = static_cast<double>(nu.minCoeff());
        d.pure = ((nu.array() - 0.5L).abs() <= static_cast<long double>(std::max(1e-9, tol))).all();
    } catch (const Error &) {
        // Not positive definite: read nu off the eigenvalues of Omega V directly.
        Eigen::EigenSolver<Matrix> es(symplectic_form(static_cast<int>(cov.rows() / 2)) * sym);
        min_nu = es.eigenvalues().cwiseAbs().minCoeff();
        const bool has_real_part = (es.eigenvalues().real().cwiseAbs().array() > 1e-12 * scale).any();
        if (has_real_part) {
            min_nu = 0;
        }
        d.pure = false;
    }
    d.min_nu_excess = min_nu - 0.5;
    d.valid = d.symmetry_defect <= 1e-12 && d.min_nu_excess >= -tol;
    return d;
}

Matrix to_interleaved(const Matrix &xxpp) {
    require_square_even(xxpp, ErrorCode::DimensionMismatch);
    const int n = static_cast<int>(xxpp.rows() / 2);
    Eigen::PermutationMatrix<Eigen::Dynamic> perm(2 * n);
    for (int i = 0; i < n; ++i) {
        perm.indices()(i) = 2 * i;
        perm.indices()(n + i) = 2 * i + 1;
    }
    return perm * xxpp * perm.transpose();
}

}  // namespace noisebound
