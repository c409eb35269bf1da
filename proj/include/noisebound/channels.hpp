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

#include <string>

#include "noisebound/gaussian_core.hpp"

namespace noisebound {

enum class ChannelKind { thermal, amplifier };

/// A thermal-loss channel (transmissivity eta) or a phase-insensitive
/// amplifier (gain G), both with environment noise n_b mean photons.
class ChannelSpec {
  public:
    static ChannelSpec thermal(double eta, double n_b);
    static ChannelSpec amplifier(double gain, double n_b);

    ChannelKind kind() const {
        return kind_;
    }
    /// eta for thermal channels, G for amplifiers.
    double coupling() const {
        return coupling_;
    }
    double n_b() const {
        return n_b_;
    }
    ChannelSpec with_noise(double n_b) const;
    std::string describe() const;

  private:
    ChannelSpec(ChannelKind kind, double coupling, double n_b);

    ChannelKind kind_;
    double coupling_;
    double n_b_;
};

struct ProbeSpec {
    double n_s = 0;  // TMSV mean photons per arm
    int m = 1;       // channel uses

    void validate() const;
};

/// The arm of the probe that passes through the channel. Mode 1 is the
/// retained reference, so probe_output reproduces the block layout
/// [[a, c], [c, b]] (x) and [[a, -c], [-c, b]] (p).
inline constexpr int kChannelArm = 0;
inline constexpr int kReferenceArm = 1;

GaussianState thermal_state(double n_b);

GaussianState tmsv(double n_s);

GaussianState apply_channel(const GaussianState &state, int mode, const ChannelSpec &spec);

GaussianState probe_output(const ChannelSpec &spec, double n_s);

}  // namespace noisebound
