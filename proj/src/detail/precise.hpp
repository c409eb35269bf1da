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

// Extended-precision kernels shared by the Gaussian-path modules. Highly
// squeezed probes have covariance eigenvalues spanning ~1e-5..1e4, so the
// normal-mode decomposition runs in long double and only results are
// rounded back to double.

#include <Eigen/Dense>

#include <complex>

#include "noisebound/gaussian_core.hpp"

namespace noisebound::detail {

using Real = long double;
using MatrixL = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using VectorL = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
using ComplexL = std::complex<Real>;
using ComplexMatrixL = Eigen::Matrix<ComplexL, Eigen::Dynamic, Eigen::Dynamic>;

MatrixL omega(int n_modes);

inline MatrixL widen(const Matrix &m) {
    return m.cast<Real>();
}

struct NormalForm {
    MatrixL s;      // s * v * s^T = diag(nu) (+) diag(nu), s symplectic
    VectorL nu;     // descending
    Real condition_number;
};

/// Throws NonPositiveDefinite when v is not positive definite.
NormalForm normal_form(const MatrixL &v);

/// Descending symplectic eigenvalues without building the symplectic matrix.
VectorL symplectic_spectrum(const MatrixL &v);

/// ln of the partition function of the Gibbs form: (1/2) sum ln(nu^2 - 1/4).
Real log_partition(const VectorL &nu);

/// Inverse temperatures ln((nu+1/2)/(nu-1/2)); pure modes map to +inf.
VectorL inverse_temperatures(const VectorL &nu);

/// Gibbs matrix G with rho ~ exp(-x^T G x / 2). Pure modes contribute
/// `pure_mode_beta` in place of the divergent inverse temperature.
MatrixL gibbs_matrix(const NormalForm &nf, Real pure_mode_beta);

}  // namespace noisebound::detail
