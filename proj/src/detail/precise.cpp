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

#include "detail/precise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "noisebound/error.hpp"

namespace noisebound::detail {

MatrixL omega(int n_modes) {
    MatrixL o = MatrixL::Zero(2 * n_modes, 2 * n_modes);
    for (int i = 0; i < n_modes; ++i) {
        o(i, n_modes + i) = 1;
        o(n_modes + i, i) = -1;
    }
    return o;
}

namespace {

struct SqrtPair {
    MatrixL sqrt_v;
    MatrixL inv_sqrt_v;
    Real condition_number;
};

SqrtPair matrix_square_roots(const MatrixL &v) {
    Eigen::SelfAdjointEigenSolver<MatrixL> es(v);
    const VectorL &ev = es.eigenvalues();
    if (!(ev.minCoeff() > 0)) {
        throw Error(ErrorCode::NonPositiveDefinite, "covariance matrix is not positive definite");
    }
    const MatrixL &q = es.eigenvectors();
    VectorL root = ev.array().sqrt();
    return {q * root.asDiagonal() * q.transpose(), q * root.cwiseInverse().asDiagonal() * q.transpose(),
            ev.maxCoeff() / ev.minCoeff()};
}

// i * V^{1/2} Omega V^{1/2} is Hermitian with eigenvalues +-nu and is similar to i Omega V.
Eigen::SelfAdjointEigenSolver<ComplexMatrixL> hermitian_form(const MatrixL &sqrt_v, int n) {
    MatrixL k = sqrt_v * omega(n) * sqrt_v;
    k = (k - k.transpose()) / 2;
    ComplexMatrixL h = k.cast<ComplexL>() * ComplexL(0, 1);
    return Eigen::SelfAdjointEigenSolver<ComplexMatrixL>(h);
}

}  // namespace

NormalForm normal_form(const MatrixL &v) {
    const int n = static_cast<int>(v.rows() / 2);
    SqrtPair roots = matrix_square_roots(v);
    auto es = hermitian_form(roots.sqrt_v, n);

    // Eigenvalues are ascending: the last n are +nu in ascending order.
    VectorL nu(n);
    MatrixL o(2 * n, 2 * n);
    const Real r2 = std::sqrt(Real(2));
    for (int k = 0; k < n; ++k) {
        const int col = 2 * n - 1 - k;
        nu(k) = es.eigenvalues()(col);
        const auto z = es.eigenvectors().col(col);
        o.col(k) = r2 * z.real();
        o.col(n + k) = -r2 * z.imag();
    }
    VectorL d(2 * n);
    d << nu.array().sqrt(), nu.array().sqrt();
    MatrixL s = d.asDiagonal() * o.transpose() * roots.inv_sqrt_v;
    return {std::move(s), std::move(nu), roots.condition_number};
}

VectorL symplectic_spectrum(const MatrixL &v) {
    const int n = static_cast<int>(v.rows() / 2);
    SqrtPair roots = matrix_square_roots(v);
    auto es = hermitian_form(roots.sqrt_v, n);
    VectorL nu(n);
    for (int k = 0; k < n; ++k) {
        nu(k) = es.eigenvalues()(2 * n - 1 - k);
    }
    return nu;
}

Real log_partition(const VectorL &nu) {
    Real acc = 0;
    for (Real x : nu) {
        acc += std::log(x - Real(0.5)) + std::log(x + Real(0.5));
    }
    return acc / 2;
}

VectorL inverse_temperatures(const VectorL &nu) {
    VectorL beta(nu.size());
    for (Eigen::Index i = 0; i < nu.size(); ++i) {
        const Real excess = nu(i) - Real(0.5);
        beta(i) = excess < kPureModeTolerance ? std::numeric_limits<Real>::infinity() : std::log1p(1 / excess);
    }
    return beta;
}

MatrixL gibbs_matrix(const NormalForm &nf, Real pure_mode_beta) {
    VectorL beta = inverse_temperatures(nf.nu);
    for (Real &b : beta) {
        if (std::isinf(b)) {
            b = pure_mode_beta;
        }
    }
    VectorL diag(2 * beta.size());
    diag << beta, beta;
    return nf.s.transpose() * diag.asDiagonal() * nf.s;
}

}  // namespace noisebound::detail
