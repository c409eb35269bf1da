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

#include "noisebound/gaussian_divergences.hpp"

#include <cmath>
#include <numbers>

#include "detail/precise.hpp"
#include "noisebound/error.hpp"

namespace noisebound {

using detail::ComplexL;
using detail::ComplexMatrixL;
using detail::MatrixL;
using detail::Real;
using detail::VectorL;

std::string_view to_string(DivergenceMethod m) {
    switch (m) {
        case DivergenceMethod::gaussian:
            return "gaussian";
        case DivergenceMethod::fock_oracle:
            return "fock-oracle";
        case DivergenceMethod::closed_form:
            return "closed-form";
    }
    return "unknown";
}

std::string_view to_string(LogBase b) {
    return b == LogBase::nats ? "nats" : "bits";
}

double convert_log_base(double value, LogBase from, LogBase to, int power) {
    if (from == to) {
        return value;
    }
    const double scale = std::pow(std::numbers::ln2, power);
    return from == LogBase::nats ? value / scale : value * scale;
}

DivergenceReport DivergenceReport::in(LogBase target) const {
    DivergenceReport out = *this;
    out.d = convert_log_base(d, log_base, target, 1);
    out.v = convert_log_base(v, log_base, target, 2);
    out.log_base = target;
    return out;
}

namespace {

void require_zero_mean(const GaussianState &s) {
    if (s.mean().cwiseAbs().maxCoeff() != 0) {
        throw Error(ErrorCode::InvalidState, "divergences are implemented for zero-mean states only");
    }
}

void require_compatible(const GaussianState &s1, const GaussianState &s2) {
    if (s1.n_modes() != s2.n_modes()) {
        throw Error(ErrorCode::DimensionMismatch, "states have different mode counts");
    }
    require_zero_mean(s1);
    require_zero_mean(s2);
}

// g(x) = (x + 1) ln(x + 1) - x ln x, arranged to stay accurate for large x.
Real mode_entropy(Real excess) {
    if (excess < kPureModeTolerance) {
        return 0;
    }
    return std::log1p(excess) + excess * std::log1p(1 / excess);
}

Real entropy_of(const VectorL &nu) {
    Real acc = 0;
    for (Real x : nu) {
        acc += mode_entropy(x - Real(0.5));
    }
    return acc;
}

detail::NormalForm full_rank_form(const GaussianState &s) {
    detail::NormalForm nf = detail::normal_form(detail::widen(s.cov()));
    if ((nf.nu.array() - Real(0.5)).minCoeff() < pure_mode_tolerance(s.cov())) {
        throw Error(ErrorCode::SecondArgumentPure,
                    "second argument has a pure mode; the divergence is infinite unless supports align");
    }
    return nf;
}

bool is_pure(const GaussianState &s) {
    return validate_state(s.cov()).pure;
}

}  // namespace

double entropy(const GaussianState &state) {
    return static_cast<double>(entropy_of(detail::symplectic_spectrum(detail::widen(state.cov()))));
}

double relative_entropy(const GaussianState &s1, const GaussianState &s2) {
    require_compatible(s1, s2);
    if (s1.cov() == s2.cov()) {
        return 0;
    }
    const detail::NormalForm nf2 = full_rank_form(s2);
    const MatrixL g2 = detail::gibbs_matrix(nf2, 0);
    const MatrixL v1 = detail::widen(s1.cov());
    const Real s1_entropy = entropy_of(detail::symplectic_spectrum(v1));
    const Real d = -s1_entropy + (g2 * v1).trace() / 2 + detail::log_partition(nf2.nu);
    return std::max(0.0, static_cast<double>(d));
}

double relative_entropy_variance(const GaussianState &s1, const GaussianState &s2) {
    require_compatible(s1, s2);
    if (s1.cov() == s2.cov()) {
        return 0;
    }
    const detail::NormalForm nf2 = full_rank_form(s2);
    const detail::NormalForm nf1 = detail::normal_form(detail::widen(s1.cov()));
    // ln rho1 - ln rho2 = -x^T (G1 - G2) x / 2 + const. Pure modes of rho1
    // annihilate rho1, so any finite inverse temperature gives the same variance.
    const MatrixL gamma = detail::gibbs_matrix(nf1, 0) - detail::gibbs_matrix(nf2, 0);
    const MatrixL vg = detail::widen(s1.cov()) * gamma;
    const MatrixL og = detail::omega(s1.n_modes()) * gamma;
    const Real v = (vg * vg).trace() / 2 + (og * og).trace() / 8;
    return std::max(0.0, static_cast<double>(v));
}

double log_fidelity(const GaussianState &s1, const GaussianState &s2) {
    require_compatible(s1, s2);
    const int n = s1.n_modes();
    if (n > 2) {
        throw Error(ErrorCode::UnsupportedModeCount, "fidelity is implemented for one- and two-mode states");
    }
    if (s1.cov() == s2.cov()) {
        return 0;
    }
    if (is_pure(s1) || is_pure(s2)) {
        // F = <psi|sigma|psi> = det(V1 + V2)^(-1/2).
        const MatrixL sum = detail::widen(s1.cov()) + detail::widen(s2.cov());
        return std::min(0.0, static_cast<double>(-std::log(sum.determinant()) / 2));
    }
    // F is invariant under a common symplectic; bringing V2 to normal form
    // first keeps the determinants below well conditioned at high squeezing.
    const MatrixL s = detail::normal_form(detail::widen(s2.cov())).s;
    MatrixL v1 = s * detail::widen(s1.cov()) * s.transpose();
    MatrixL v2 = s * detail::widen(s2.cov()) * s.transpose();
    v1 = (v1 + v1.transpose()) / 2;
    v2 = (v2 + v2.transpose()) / 2;
    const MatrixL om = detail::omega(n);
    const MatrixL sum = v1 + v2;
    // Auxiliary-matrix form of the mixed-state Gaussian fidelity:
    //   F = F_tot^2 / sqrt(det(V1 + V2)),
    //   F_tot^4 = det[2 (sqrt(1 + (V_aux Omega)^-2 / 4) + 1) V_aux],
    //   V_aux = Omega^T (V1 + V2)^-1 (Omega / 4 + V2 Omega V1).
    const MatrixL vaux = om.transpose() * sum.inverse() * (om / 4 + v2 * om * v1);
    Eigen::ComplexEigenSolver<ComplexMatrixL> es(ComplexMatrixL((vaux * om).cast<ComplexL>()), false);
    ComplexL prod(1, 0);
    for (const ComplexL &mu : es.eigenvalues()) {
        // mu = +-i/2 marks a pure symplectic mode; the square root has a branch
        // point there, so rounding residue is snapped to the exact value.
        ComplexL arg = ComplexL(1, 0) + ComplexL(1, 0) / (Real(4) * mu * mu);
        if (std::abs(arg) < 1e-16L) {
            arg = 0;
        }
        prod *= ComplexL(1, 0) + std::sqrt(arg);
    }
    const Real det_aux = vaux.determinant();
    const Real ftot4 = std::pow(Real(2), 2 * n) * det_aux * prod.real();
    if (!(ftot4 > 0)) {
        throw Error(ErrorCode::InvalidState, "fidelity evaluation produced a non-positive overlap");
    }
    const Real lf = std::log(ftot4) / 2 - std::log(sum.determinant()) / 2;
    return std::min(0.0, static_cast<double>(lf));
}

double fidelity(const GaussianState &s1, const GaussianState &s2) {
    return std::exp(log_fidelity(s1, s2));
}

DivergenceReport gaussian_divergences(const GaussianState &s1, const GaussianState &s2) {
    DivergenceReport r;
    r.d = relative_entropy(s1, s2);
    r.v = relative_entropy_variance(s1, s2);
    r.f = fidelity(s1, s2);
    r.method = DivergenceMethod::gaussian;
    return r;
}

double default_qfi_step(double x) {
    return std::max(1e-4, 1e-3 * std::abs(x));
}

QfiEstimate qfi_finite_difference(const StateFamily &family, double x, double delta) {
    if (!(delta > 0) || !std::isfinite(delta)) {
        throw Error(ErrorCode::DomainError, "finite-difference step must be positive");
    }
    const auto log_f = [&](double step) { return log_fidelity(family(x - step / 2), family(x + step / 2)); };
    const double lf = log_f(delta);
    const double lf_half = log_f(delta / 2);
    QfiEstimate q;
    q.delta = delta;
    q.i_log = -4 * lf / (delta * delta);
    q.i_sqrt = -8 * std::expm1(lf / 2) / (delta * delta);
    const double i_log_half = -4 * lf_half / (delta * delta / 4);
    q.richardson = (4 * i_log_half - q.i_log) / 3;
    if (lf < std::log(0.5)) {
        throw Error(ErrorCode::StepTooLarge, "fidelity between the stencil points is below 1/2");
    }
    if (q.i_sqrt > 0 && std::abs(q.i_sqrt - q.i_log) / q.i_sqrt > 0.05) {
        throw Error(ErrorCode::StepTooLarge, "finite-difference estimators disagree by more than 5%");
    }
    return q;
}

}  // namespace noisebound
