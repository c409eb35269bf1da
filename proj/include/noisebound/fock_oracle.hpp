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

// Truncated number-basis reference implementation. Everything here is built
// independently of the covariance-matrix path so that the two can be
// cross-checked: states are explicit density matrices, channels are explicit
// unitary dilations, and divergences come from eigendecompositions.
//
// All states produced by this module are real in the number basis (the
// probe, the thermal environment and both dilation unitaries have real
// matrix elements), so density matrices are stored as real symmetric
// matrices.

#include <vector>

#include "noisebound/channels.hpp"
#include "noisebound/gaussian_divergences.hpp"

namespace noisebound::fock {

struct TruncationConfig {
    int n_max = 30;          // per-mode cutoff: occupations 0..n_max
    double tail_tol = 1e-10; // largest admissible discarded probability

    void validate() const;
};

/// Smallest cutoff whose thermal/TMSV factor tails are below tail_tol,
/// doubled once.
TruncationConfig default_truncation(double n_s, double n_b, double tail_tol = 1e-10);

class FockDensityMatrix {
  public:
    /// Basis index of |k_0, k_1, ...> is sum_i k_i (n_max + 1)^(n_modes - 1 - i).
    FockDensityMatrix(int n_modes, int n_max, Matrix dm);

    int n_modes() const {
        return n_modes_;
    }
    int n_max() const {
        return n_max_;
    }
    int dim() const {
        return static_cast<int>(dm_.rows());
    }
    const Matrix &dm() const {
        return dm_;
    }
    /// 1 - trace: probability lost to the cutoff.
    double tail_mass() const {
        return 1 - dm_.trace();
    }

  private:
    int n_modes_;
    int n_max_;
    Matrix dm_;
};

enum class FockStateKind { thermal, tmsv };

/// thermal: (1/(N+1)) (N/(N+1))^n on the diagonal; tmsv: the pure state with
/// amplitudes (N+1)^{-1/2} (N/(N+1))^{n/2} on |n, n>. Throws CutoffTooSmall
/// when the discarded tail exceeds cfg.tail_tol.
FockDensityMatrix build_state(FockStateKind kind, double mean_photons, const TruncationConfig &cfg);

/// Schmidt amplitudes of the TMSV, truncated at cfg.n_max.
Vector tmsv_amplitudes(double n_s, const TruncationConfig &cfg);

/// Output of (id_R (x) channel) on TMSV(n_s), built from the unitary dilation
/// acting on the probe arm and a thermal environment mode, then tracing the
/// environment out. Mode 0 is the channel output, mode 1 the reference.
/// The covariance of the result is compared against probe_output and a
/// MomentMismatch is raised beyond moment_tol.
FockDensityMatrix dilation_output(const ChannelSpec &spec, double n_s, const TruncationConfig &cfg,
                                  double moment_tol = 1e-6);

/// Quadrature covariance (xx..pp, vacuum 1/2) from truncated ladder
/// operators; moments are normalised by the retained trace.
Matrix moments_covariance(const FockDensityMatrix &rho);

struct RenyiValue {
    double alpha;
    double petz;
    double sandwiched;
};

struct SpectralReport {
    DivergenceReport divergences;  // method = fock_oracle
    std::vector<RenyiValue> renyi;
    double trace_distance = 0;
};

inline constexpr double kSpectralFloor = 1e-14;

/// D, V, F, Petz and sandwiched Renyi divergences and the trace distance
/// from eigendecompositions. Eigenvalues below kSpectralFloor are outside the
/// support; SupportViolation is raised if rho has weight > 1e-10 outside
/// sigma's support.
SpectralReport spectral_divergences(const FockDensityMatrix &rho, const FockDensityMatrix &sigma,
                                    const std::vector<double> &alphas = {});

FockDensityMatrix partial_trace(const FockDensityMatrix &rho, int keep_mode);

/// Completely dephases in the number basis (keeps the diagonal).
FockDensityMatrix dephase(const FockDensityMatrix &rho);

}  // namespace noisebound::fock
