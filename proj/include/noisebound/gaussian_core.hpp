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

// Covariance-matrix algebra for zero-mean bosonic Gaussian states.
//
// Conventions used throughout the library:
//   * quadratures are ordered x_1..x_n, p_1..p_n ("xx..pp");
//   * [x_j, p_k] = i delta_jk (hbar = 1), so the vacuum covariance is I/2;
//   * the symplectic form is Omega = [[0, I_n], [-I_n, 0]].
// A state's covariance is V_jk = <{dr_j, dr_k}>/2.

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace noisebound {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Symplectic eigenvalues closer to 1/2 than this are treated as pure modes.
inline constexpr double kPureModeTolerance = 1e-10;

/// kPureModeTolerance widened by the rounding floor of a covariance stored in
/// double precision. Near-pure states with large entries (a TMSV at
/// N_S = 1e4 has |V| ~ 1e4) cannot resolve nu - 1/2 better than about
/// eps |V|^2.
double pure_mode_tolerance(const Matrix &cov);

class GaussianState {
  public:
    /// Throws InvalidState unless `cov` is square, even-dimensional, symmetric
    /// and physical (all symplectic eigenvalues >= 1/2 within tolerance).
    explicit GaussianState(Matrix cov);
    GaussianState(Matrix cov, Vector mean);

    /// Skips the physicality check. For results of operations that preserve
    /// it exactly (symplectic congruence, marginals, products), where
    /// re-checking would only measure the rounding of the input.
    struct Unchecked {};
    GaussianState(Matrix cov, Vector mean, Unchecked);

    int n_modes() const {
        return static_cast<int>(cov_.rows() / 2);
    }
    const Matrix &cov() const {
        return cov_;
    }
    const Vector &mean() const {
        return mean_;
    }

  private:
    Matrix cov_;
    Vector mean_;
};

class SymplecticMatrix {
  public:
    /// Throws InvalidSpec unless S Omega S^T = Omega to 1e-10 (scaled by |S|^2).
    explicit SymplecticMatrix(Matrix mat);

    int n_modes() const {
        return static_cast<int>(mat_.rows() / 2);
    }
    const Matrix &mat() const {
        return mat_;
    }

  private:
    Matrix mat_;
};

Matrix symplectic_form(int n_modes);

struct WilliamsonResult {
    SymplecticMatrix s;        // s * cov * s^T = diag(nu) (+) diag(nu)
    std::vector<double> nu;    // descending
    double condition_number;
    bool ill_conditioned;      // condition_number > 1e12
};

/// Throws NonPositiveDefinite if cov has a non-positive eigenvalue.
WilliamsonResult williamson(const Matrix &cov);

/// Symplectic eigenvalues only (descending); same preconditions as williamson.
std::vector<double> symplectic_eigenvalues(const Matrix &cov);

GaussianState apply_symplectic(const SymplecticMatrix &s, const GaussianState &state);

GaussianState marginal(const GaussianState &state, std::span<const int> modes);

/// Joint state of independent subsystems; modes of `a` come first.
GaussianState tensor_product(const GaussianState &a, const GaussianState &b);

struct StateDiagnostics {
    double symmetry_defect;   // max |V - V^T| / max |V|
    double min_nu_excess;     // min nu - 1/2 (negative => unphysical)
    bool valid;
    bool pure;                // every nu within 1e-9 of 1/2
};

StateDiagnostics validate_state(const Matrix &cov);

/// Reorders xx..pp to x1 p1 x2 p2 ... for interop with interleaved tools.
Matrix to_interleaved(const Matrix &xxpp);

}  // namespace noisebound
