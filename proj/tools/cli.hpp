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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "noisebound/gaussian_divergences.hpp"

namespace noisebound::cli {

inline constexpr int kSchemaVersion = 1;

enum class ExitStatus { ok = 0, tolerance_breach = 1, config_error = 2 };

struct RunConfig {
    std::string command;
    std::optional<double> eta;
    std::optional<double> gain;
    double nb1 = 0;
    double nb2 = 0;
    std::vector<double> ns;
    int m = 1;
    double epsilon = 0.05;
    std::vector<double> alphas;
    std::optional<int> nmax;
    double tail_tol = 1e-10;
    std::uint64_t seed = 1;
    std::int64_t trials = 0;
    std::optional<double> delta;
    LogBase log_base = LogBase::nats;
    std::string out;
    std::string format = "csv";

    bool amplifier() const {
        return gain.has_value();
    }
    double coupling() const {
        return gain ? *gain : *eta;
    }
};

/// Thrown by parse_args for --help; carries the usage text.
struct HelpRequested {
    std::string text;
};

/// Parses and validates the command line. Throws Error(ConfigError).
RunConfig parse_args(const std::vector<std::string> &args);

/// "10,100,1e3" -> {10, 100, 1000}. Throws Error(ConfigError).
std::vector<double> parse_list(const std::string &text, const std::string &flag);

/// One row per evaluated point plus an optional labelled summary row.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::string summary_label;
    std::vector<std::pair<std::string, double>> summary;
    std::vector<std::string> warnings;
    ExitStatus status = ExitStatus::ok;
};

Table run_command(const RunConfig &cfg);

std::string render_csv(const Table &table);
std::string render_json(const RunConfig &cfg, const Table &table);

/// Full front end: parse, run, render, write. Diagnostics go to `err`; the
/// rendered document goes to --out when given (written only on success) or
/// to `out` otherwise. Returns the process exit status.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace noisebound::cli
