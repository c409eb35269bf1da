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

#include "noisebound/error.hpp"

namespace noisebound {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonPositiveDefinite:
            return "NonPositiveDefinite";
        case ErrorCode::DimensionMismatch:
            return "DimensionMismatch";
        case ErrorCode::IndexOutOfRange:
            return "IndexOutOfRange";
        case ErrorCode::InvalidState:
            return "InvalidState";
        case ErrorCode::NegativeNoise:
            return "NegativeNoise";
        case ErrorCode::NegativeSqueezing:
            return "NegativeSqueezing";
        case ErrorCode::InvalidSpec:
            return "InvalidSpec";
        case ErrorCode::SecondArgumentPure:
            return "SecondArgumentPure";
        case ErrorCode::UnsupportedModeCount:
            return "UnsupportedModeCount";
        case ErrorCode::StepTooLarge:
            return "StepTooLarge";
        case ErrorCode::DomainError:
            return "DomainError";
        case ErrorCode::Divergent:
            return "Divergent";
        case ErrorCode::CutoffTooSmall:
            return "CutoffTooSmall";
        case ErrorCode::MomentMismatch:
            return "MomentMismatch";
        case ErrorCode::SupportViolation:
            return "SupportViolation";
        case ErrorCode::DegenerateMeans:
            return "DegenerateMeans";
        case ErrorCode::ConfigError:
            return "ConfigError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

}  // namespace noisebound
