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

#include "noisebound/fock_oracle.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <sstream>

#include "noisebound/error.hpp"

namespace noisebound::fock {

namespace {

double geometric_tail(double mean, int n_max) {
    if (mean == 0) {
        return 0;
    }
    return std::pow(mean / (mean + 1), n_max + 1);
}

void require_mean(double mean) {
    if (!(mean >= 0) || !std::isfinite(mean)) {
        throw Error(ErrorCode::DomainError, "mean photon number must be finite and >= 0");
    }
}

void require_tail(double tail, const TruncationConfig &cfg, const char *what) {
    if (tail > cfg.tail_tol) {
        std::ostringstream msg;
        msg << what << " tail mass " << tail << " exceeds tail_tol " << cfg.tail_tol << " at n_max " << cfg.n_max;
        throw Error(ErrorCode::CutoffTooSmall, msg.str());
    }
}

Vector thermal_probabilities(double mean, int n_max) {
    Vector p(n_max + 1);
    const double q = mean / (mean + 1);
    double w = 1 / (mean + 1);
    for (int n = 0; n <= n_max; ++n) {
        p(n) = w;
        w *= q;
    }
    return p;
}

// exp(angle * T) for a real antisymmetric tridiagonal T with sub-diagonal
// entries `coupling` (T(i+1, i) = coupling(i), T(i, i+1) = -coupling(i)).
Matrix tridiagonal_rotation(const Vector &coupling, double angle) {
    const Eigen::Index dim = coupling.size() + 1;
    Matrix t = Matrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < coupling.size(); ++i) {
        t(i + 1, i) = angle * coupling(i);
        t(i, i + 1) = -angle * coupling(i);
    }
    return t.exp();
}

// One column of the Kraus-like factorisation rho = W W^T.
struct ColumnBuilder {
    int d;
    Matrix w;
    Eigen::Index next = 0;

    ColumnBuilder(int dim_per_mode, Eigen::Index max_cols) : d(dim_per_mode), w(Matrix::Zero(d * d, max_cols)) {}

    void finish_column(bool nonzero) {
        if (nonzero) {
            ++next;
        } else {
            w.col(next).setZero();
        }
    }
};

Matrix beamsplitter_factor(double eta, const Vector &amp, const Vector &env, int n_max) {
    const int d = n_max + 1;
    const double angle = std::acos(std::sqrt(eta));
    // Beamsplitter conserves total photon number, so each sector is exact.
    std::vector<Matrix> sector(2 * n_max + 1);
    for (int total = 0; total <= 2 * n_max; ++total) {
        Vector c(total);
        for (int j = 0; j < total; ++j) {
            c(j) = std::sqrt(double(j + 1) * double(total - j));
        }
        sector[total] = tridiagonal_rotation(c, angle);
    }
    ColumnBuilder b(d, Eigen::Index(d) * (2 * d));
    for (int k = 0; k <= n_max; ++k) {
        const double wk = std::sqrt(env(k));
        for (int l = 0; l <= n_max + k; ++l) {
            bool nonzero = false;
            for (int r = 0; r <= n_max; ++r) {
                const int total = r + k;
                const int j = total - l;
                if (j < 0 || j > n_max) {
                    continue;
                }
                b.w(j * d + r, b.next) = wk * amp(r) * sector[total](j, r);
                nonzero = true;
            }
            b.finish_column(nonzero);
        }
    }
    return b.w.leftCols(b.next);
}

Matrix squeezer_factor(double gain, const Vector &amp, const Vector &env, int n_max) {
    const int d = n_max + 1;
    const double r_sq = std::acosh(std::sqrt(gain));
    // The two-mode squeezer conserves n_a - n_e; blocks are truncated well
    // above the cutoff so reflection at the top edge stays negligible.
    const int work = 3 * n_max + 30;
    std::vector<Matrix> block(2 * n_max + 1);
    std::vector<int> first(2 * n_max + 1);
    for (int diff = -n_max; diff <= n_max; ++diff) {
        const int j0 = std::max(0, diff);
        const int len = work - j0 + 1;
        Vector c(len - 1);
        for (int i = 0; i < len - 1; ++i) {
            const int j = j0 + i;
            c(i) = std::sqrt(double(j + 1) * double(j - diff + 1));
        }
        block[diff + n_max] = tridiagonal_rotation(c, r_sq);
        first[diff + n_max] = j0;
    }
    ColumnBuilder b(d, Eigen::Index(d) * (work + d + 1));
    for (int k = 0; k <= n_max; ++k) {
        const double wk = std::sqrt(env(k));
        for (int l = 0; l <= work + n_max; ++l) {
            bool nonzero = false;
            for (int r = 0; r <= n_max; ++r) {
                const int diff = r - k;
                const int j = l + diff;
                const int j0 = first[diff + n_max];
                if (j < j0 || j > n_max || j > work) {
                    continue;
                }
                b.w(j * d + r, b.next) = wk * amp(r) * block[diff + n_max](j - j0, r - j0);
                nonzero = true;
            }
            b.finish_column(nonzero);
        }
    }
    return b.w.leftCols(b.next);
}

int occupation(int index, int mode, int n_modes, int d) {
    for (int m = n_modes - 1; m > mode; --m) {
        index /= d;
    }
    return index % d;
}

int stride(int mode, int n_modes, int d) {
    int s = 1;
    for (int m = n_modes - 1; m > mode; --m) {
        s *= d;
    }
    return s;
}

}  // namespace

void TruncationConfig::validate() const {
    if (n_max < 1) {
        throw Error(ErrorCode::DomainError, "n_max must be >= 1");
    }
    if (!(tail_tol > 0 && tail_tol <= 1e-3)) {
        throw Error(ErrorCode::DomainError, "tail_tol must lie in (0, 1e-3]");
    }
}

TruncationConfig default_truncation(double n_s, double n_b, double tail_tol) {
    TruncationConfig cfg{1, tail_tol};
    cfg.validate();
    while (geometric_tail(n_s, cfg.n_max) >= tail_tol || geometric_tail(n_b, cfg.n_max) >= tail_tol) {
        ++cfg.n_max;
    }
    cfg.n_max *= 2;
    return cfg;
}

FockDensityMatrix::FockDensityMatrix(int n_modes, int n_max, Matrix dm)
    : n_modes_(n_modes), n_max_(n_max), dm_(std::move(dm)) {
    int dim = 1;
    for (int i = 0; i < n_modes; ++i) {
        dim *= n_max + 1;
    }
    if (n_modes < 1 || n_max < 1 || dm_.rows() != dim || dm_.cols() != dim) {
        throw Error(ErrorCode::DimensionMismatch, "density matrix dimension does not match (n_max + 1)^n_modes");
    }
    const double asym = (dm_ - dm_.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12) {
        throw Error(ErrorCode::InvalidState, "density matrix is not symmetric");
    }
    dm_ = (dm_ + dm_.transpose()) / 2;
}

Vector tmsv_amplitudes(double n_s, const TruncationConfig &cfg) {
    require_mean(n_s);
    cfg.validate();
    require_tail(geometric_tail(n_s, cfg.n_max), cfg, "TMSV");
    return thermal_probabilities(n_s, cfg.n_max).cwiseSqrt();
}

FockDensityMatrix build_state(FockStateKind kind, double mean_photons, const TruncationConfig &cfg) {
    require_mean(mean_photons);
    cfg.validate();
    const int d = cfg.n_max + 1;
    if (kind == FockStateKind::thermal) {
        require_tail(geometric_tail(mean_photons, cfg.n_max), cfg, "thermal");
        return FockDensityMatrix(1, cfg.n_max, thermal_probabilities(mean_photons, cfg.n_max).asDiagonal());
    }
    const Vector amp = tmsv_amplitudes(mean_photons, cfg);
    Vector ket = Vector::Zero(d * d);
    for (int n = 0; n < d; ++n) {
        ket(n * d + n) = amp(n);
    }
    return FockDensityMatrix(2, cfg.n_max, ket * ket.transpose());
}

FockDensityMatrix dilation_output(const ChannelSpec &spec, double n_s, const TruncationConfig &cfg, double moment_tol) {
    cfg.validate();
    const Vector amp = tmsv_amplitudes(n_s, cfg);
    require_tail(geometric_tail(spec.n_b(), cfg.n_max), cfg, "environment");
    const Vector env = thermal_probabilities(spec.n_b(), cfg.n_max);

    const Matrix w = spec.kind() == ChannelKind::thermal ? beamsplitter_factor(spec.coupling(), amp, env, cfg.n_max)
                                                         : squeezer_factor(spec.coupling(), amp, env, cfg.n_max);
    Matrix dm = Matrix::Zero(w.rows(), w.rows());
    dm.selfadjointView<Eigen::Lower>().rankUpdate(w);
    dm.triangularView<Eigen::StrictlyUpper>() = dm.transpose();
    FockDensityMatrix out(2, cfg.n_max, std::move(dm));
    require_tail(out.tail_mass(), cfg, "dilation output");

    const Matrix expected = probe_output(spec, n_s).cov();
    const double mismatch = (moments_covariance(out) - expected).cwiseAbs().maxCoeff();
    if (mismatch > moment_tol) {
        std::ostringstream msg;
        msg << "dilation covariance differs from the Gaussian path by " << mismatch << " (tol " << moment_tol << ")";
        throw Error(ErrorCode::MomentMismatch, msg.str());
    }
    return out;
}

Matrix moments_covariance(const FockDensityMatrix &rho) {
    const int n = rho.n_modes();
    const int d = rho.n_max() + 1;
    const int dim = rho.dim();
    const Matrix &dm = rho.dm();
    const double trace = dm.trace();

    Vector first = Vector::Zero(n);       // <a_i>
    Matrix pair = Matrix::Zero(n, n);     // <a_i a_j>
    Matrix number = Matrix::Zero(n, n);   // <a_i^dag a_j>
    for (int s = 0; s < dim; ++s) {
        for (int j = 0; j < n; ++j) {
            const int nj = occupation(s, j, n, d);
            if (nj == 0) {
                continue;
            }
            const int lowered = s - stride(j, n, d);
            const double cj = std::sqrt(double(nj));
            first(j) += dm(lowered, s) * cj;
            for (int i = 0; i < n; ++i) {
                const int ni = occupation(lowered, i, n, d);
                if (ni > 0) {
                    pair(i, j) += dm(lowered - stride(i, n, d), s) * cj * std::sqrt(double(ni));
                }
                if (ni < d - 1) {
                    number(i, j) += dm(lowered + stride(i, n, d), s) * cj * std::sqrt(double(ni + 1));
                }
            }
        }
    }
    first /= trace;
    pair /= trace;
    number /= trace;

    // Real density matrix: <x p> cross terms and <p> vanish.
    Matrix cov = Matrix::Zero(2 * n, 2 * n);
    const Vector mean_x = std::sqrt(2.0) * first;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double delta = i == j ? 0.5 : 0.0;
            const double sym_number = (number(i, j) + number(j, i)) / 2;
            cov(i, j) = pair(i, j) + sym_number + delta - mean_x(i) * mean_x(j);
            cov(n + i, n + j) = -pair(i, j) + sym_number + delta;
        }
    }
    return cov;
}

SpectralReport spectral_divergences(const FockDensityMatrix &rho, const FockDensityMatrix &sigma,
                                    const std::vector<double> &alphas) {
    if (rho.dim() != sigma.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "density matrices have different dimensions");
    }
    for (double a : alphas) {
        if (!(a > 0) || a == 1) {
            throw Error(ErrorCode::DomainError, "Renyi order must lie in (0, 1) or (1, inf)");
        }
    }
    const Matrix r = rho.dm() / rho.dm().trace();
    const Matrix s = sigma.dm() / sigma.dm().trace();
    Eigen::SelfAdjointEigenSolver<Matrix> er(r);
    Eigen::SelfAdjointEigenSolver<Matrix> es(s);
    const int dim = rho.dim();

    Vector lam = er.eigenvalues();
    Vector mu = es.eigenvalues();
    Vector log_lam = Vector::Zero(dim);
    Vector log_mu = Vector::Zero(dim);
    for (int i = 0; i < dim; ++i) {
        if (lam(i) < kSpectralFloor) {
            lam(i) = 0;
        } else {
            log_lam(i) = std::log(lam(i));
        }
        if (mu(i) < kSpectralFloor) {
            mu(i) = 0;
        } else {
            log_mu(i) = std::log(mu(i));
        }
    }
    const Matrix c = er.eigenvectors().transpose() * es.eigenvectors();
    const Matrix c2 = c.cwiseAbs2();

    double outside = 0;
    for (int j = 0; j < dim; ++j) {
        if (mu(j) == 0) {
            outside += lam.dot(c2.col(j));
        }
    }
    if (outside > 1e-10) {
        std::ostringstream msg;
        msg << "rho has weight " << outside << " outside the support of sigma";
        throw Error(ErrorCode::SupportViolation, msg.str());
    }

    SpectralReport out;
    DivergenceReport &dv = out.divergences;
    dv.method = DivergenceMethod::fock_oracle;

    // D = sum_i lam_i ln lam_i - sum_ij lam_i |c_ij|^2 ln mu_j
    const Vector cross = c2 * log_mu;
    dv.d = lam.dot(log_lam) - lam.dot(cross);

    // V = Tr rho (ln rho - ln sigma)^2 - D^2, evaluated in rho's eigenbasis.
    std::vector<int> active;
    for (int i = 0; i < dim; ++i) {
        if (lam(i) > 0) {
            active.push_back(i);
        }
    }
    Matrix c_active(active.size(), dim);
    for (std::size_t a = 0; a < active.size(); ++a) {
        c_active.row(a) = c.row(active[a]);
    }
    Matrix log_diff = -(c_active * log_mu.asDiagonal() * c.transpose());
    double second = 0;
    for (std::size_t a = 0; a < active.size(); ++a) {
        log_diff(a, active[a]) += log_lam(active[a]);
        second += lam(active[a]) * log_diff.row(a).squaredNorm();
    }
    dv.v = std::max(0.0, second - dv.d * dv.d);

    const Vector sqrt_lam = lam.cwiseSqrt();
    const Vector sqrt_mu = mu.cwiseSqrt();
    const Matrix overlap = sqrt_lam.asDiagonal() * c * sqrt_mu.asDiagonal();
    const double nuclear = Eigen::BDCSVD<Matrix>(overlap).singularValues().sum();
    dv.f = std::min(1.0, nuclear * nuclear);

    for (double alpha : alphas) {
        Vector lam_a = lam.array().pow(alpha);
        Vector mu_b(dim);
        Vector mu_sand(dim);
        const double sand_exp = (1 - alpha) / (2 * alpha);
        for (int j = 0; j < dim; ++j) {
            mu_b(j) = mu(j) == 0 ? 0 : std::pow(mu(j), 1 - alpha);
            mu_sand(j) = mu(j) == 0 ? 0 : std::pow(mu(j), sand_exp);
        }
        const double petz_trace = lam_a.dot(c2 * mu_b);
        const Matrix x = sqrt_lam.asDiagonal() * c * mu_sand.asDiagonal();
        const Vector sv = Eigen::BDCSVD<Matrix>(x).singularValues();
        const double sand_trace = sv.array().pow(2 * alpha).sum();
        out.renyi.push_back({alpha, std::log(petz_trace) / (alpha - 1), std::log(sand_trace) / (alpha - 1)});
    }

    Eigen::SelfAdjointEigenSolver<Matrix> ediff(r - s, Eigen::EigenvaluesOnly);
    out.trace_distance = ediff.eigenvalues().cwiseAbs().sum() / 2;
    return out;
}

FockDensityMatrix partial_trace(const FockDensityMatrix &rho, int keep_mode) {
    if (rho.n_modes() != 2 || keep_mode < 0 || keep_mode > 1) {
        throw Error(ErrorCode::IndexOutOfRange, "partial_trace supports keeping one mode of a two-mode state");
    }
    const int d = rho.n_max() + 1;
    Matrix out = Matrix::Zero(d, d);
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            double acc = 0;
            for (int t = 0; t < d; ++t) {
                acc += keep_mode == 0 ? rho.dm()(a * d + t, b * d + t) : rho.dm()(t * d + a, t * d + b);
            }
            out(a, b) = acc;
        }
    }
    return FockDensityMatrix(1, rho.n_max(), std::move(out));
}

FockDensityMatrix dephase(const FockDensityMatrix &rho) {
    return FockDensityMatrix(rho.n_modes(), rho.n_max(), rho.dm().diagonal().asDiagonal());
}

}  // namespace noisebound::fock
