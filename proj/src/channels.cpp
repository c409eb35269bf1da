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

#include "noisebound/channels.hpp"

#include <cmath>
#include <sstream>

#include "noisebound/error.hpp"

namespace noisebound {

ChannelSpec::ChannelSpec(ChannelKind kind, double coupling, double n_b) : kind_(kind), coupling_(coupling), n_b_(n_b) {
    if (!(n_b >= 0) || !std::isfinite(n_b)) {
        throw Error(ErrorCode::InvalidSpec, "excess noise n_b must be finite and >= 0");
    }
    if (kind == ChannelKind::thermal && !(coupling >= 0 && coupling <= 1)) {
        throw Error(ErrorCode::InvalidSpec, "transmissivity eta must lie in [0, 1]");
    }
    if (kind == ChannelKind::amplifier && !(coupling >= 1 && std::isfinite(coupling))) {
        throw Error(ErrorCode::InvalidSpec, "gain G must be finite and >= 1");
    }
}

ChannelSpec ChannelSpec::thermal(double eta, double n_b) {
    return {ChannelKind::thermal, eta, n_b};
}

ChannelSpec ChannelSpec::amplifier(double gain, double n_b) {
    return {ChannelKind::amplifier, gain, n_b};
}

ChannelSpec ChannelSpec::with_noise(double n_b) const {
    return {kind_, coupling_, n_b};
}

std::string ChannelSpec::describe() const {
    std::ostringstream os;
    os << (kind_ == ChannelKind::thermal ? "thermal(eta=" : "amplifier(G=") << coupling_ << ", n_b=" << n_b_ << ")";
    return os.str();
}

void ProbeSpec::validate() const {
    if (!(n_s >= 0) || !std::isfinite(n_s)) {
        throw Error(ErrorCode::NegativeSqueezing, "probe mean photon number must be finite and >= 0");
    }
    if (m < 1) {
        throw Error(ErrorCode::InvalidSpec, "number of channel uses must be >= 1");
    }
}

GaussianState thermal_state(double n_b) {
    if (!(n_b >= 0) || !std::isfinite(n_b)) {
        throw Error(ErrorCode::NegativeNoise, "thermal mean photon number must be finite and >= 0");
    }
    return GaussianState(Matrix::Identity(2, 2) * (n_b + 0.5));
}

GaussianState tmsv(double n_s) {
    if (!(n_s >= 0) || !std::isfinite(n_s)) {
        throw Error(ErrorCode::NegativeSqueezing, "TMSV mean photon number must be finite and >= 0");
    }
    const double diag = n_s + 0.5;
    const double c0 = std::sqrt(n_s * (n_s + 1));
    Matrix cov(4, 4);
    cov << diag, c0, 0, 0,   //
        c0, diag, 0, 0,      //
        0, 0, diag, -c0,     //
        0, 0, -c0, diag;
    return GaussianState(std::move(cov));
}

GaussianState apply_channel(const GaussianState &state, int mode, const ChannelSpec &spec) {
    const int n = state.n_modes();
    if (mode < 0 || mode >= n) {
        throw Error(ErrorCode::IndexOutOfRange, "channel mode index out of range");
    }
    const double g = spec.coupling();
    const double scale = std::sqrt(g);
    const double added = spec.kind() == ChannelKind::thermal ? (1 - g) * (spec.n_b() + 0.5)
                                                              : (g - 1) * (spec.n_b() + 0.5);
    // X = diag(1, .., sqrt(g), .., 1) on both quadratures of `mode`, Y adds noise there.
    Vector x = Vector::Ones(2 * n);
    x(mode) = scale;
    x(n + mode) = scale;
    Matrix cov = x.asDiagonal() * state.cov() * x.asDiagonal();
    cov(mode, mode) += added;
    cov(n + mode, n + mode) += added;
    Vector mean = x.asDiagonal() * state.mean();
    return GaussianState(std::move(cov), std::move(mean));
}

GaussianState probe_output(const ChannelSpec &spec, double n_s) {
    return apply_channel(tmsv(n_s), kChannelArm, spec);
}

}  // namespace noisebound
