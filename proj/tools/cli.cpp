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

#include "cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <future>
#include <limits>
#include <ostream>
#include <sstream>

#include "noisebound/bounds.hpp"
#include "noisebound/channels.hpp"
#include "noisebound/error.hpp"
#include "noisebound/fock_oracle.hpp"
#include "noisebound/strategy.hpp"
#include "noisebound/thermal_forms.hpp"

namespace noisebound::cli {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kOracleTolerance = 1e-5;

[[noreturn]] void config_error(const std::string &message) {
    throw Error(ErrorCode::ConfigError, message);
}

std::string format_number(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_alpha(double a) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", a);
    return buf;
}

ChannelSpec channel(const RunConfig &cfg, double n_b) {
    return cfg.amplifier() ? ChannelSpec::amplifier(cfg.coupling(), n_b) : ChannelSpec::thermal(cfg.coupling(), n_b);
}

double nats_to(const RunConfig &cfg, double x, int power = 1) {
    return convert_log_base(x, LogBase::nats, cfg.log_base, power);
}

double loglog_slope(const std::vector<double> &x, const std::vector<double> &y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(std::abs(y[i]));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Evaluates `point` for every n_s concurrently; rows come back in input order.
std::vector<std::vector<double>> evaluate_points(const std::vector<double> &ns,
                                                 const std::function<std::vector<double>(double)> &point) {
    std::vector<std::future<std::vector<double>>> pending;
    pending.reserve(ns.size());
    for (double n_s : ns) {
        pending.push_back(std::async(std::launch::async, point, n_s));
    }
    std::vector<std::vector<double>> rows;
    rows.reserve(ns.size());
    for (auto &f : pending) {
        rows.push_back(f.get());
    }
    return rows;
}

Table run_sweep(const RunConfig &cfg) {
    Table t;
    t.columns = {"n_s",    "d_gauss",   "d_limit", "v_gauss", "v_limit", "f_gauss", "f_limit",
                 "qfi_fd", "qfi_limit", "d_gap",   "v_gap",   "f_gap",   "qfi_gap"};
    const DivergenceReport limit = thermal_divergences({cfg.nb1, cfg.nb2});
    const double qfi_limit = cfg.nb1 > 0 ? qfi_thermal(cfg.nb1) : kNan;
    if (cfg.nb1 == 0) {
        t.warnings.push_back("qfi columns need nb1 > 0; reported as nan");
    }
    t.rows = evaluate_points(cfg.ns, [&](double n_s) {
        const DivergenceReport r =
            gaussian_divergences(probe_output(channel(cfg, cfg.nb1), n_s), probe_output(channel(cfg, cfg.nb2), n_s));
        double qfi = kNan;
        if (cfg.nb1 > 0) {
            const StateFamily family = [&](double n_b) { return probe_output(channel(cfg, n_b), n_s); };
            qfi = qfi_finite_difference(family, cfg.nb1, cfg.delta.value_or(default_qfi_step(cfg.nb1))).richardson;
        }
        return std::vector<double>{n_s,
                                   nats_to(cfg, r.d),
                                   nats_to(cfg, limit.d),
                                   nats_to(cfg, r.v, 2),
                                   nats_to(cfg, limit.v, 2),
                                   r.f,
                                   limit.f,
                                   qfi,
                                   qfi_limit,
                                   nats_to(cfg, std::abs(r.d - limit.d)),
                                   nats_to(cfg, std::abs(r.v - limit.v), 2),
                                   std::abs(r.f - limit.f),
                                   std::abs(qfi - qfi_limit)};
    });
    if (t.rows.size() < 2) {
        t.warnings.push_back("log-log slope omitted: needs at least two n_s values");
        return t;
    }
    t.summary_label = "slope";
    std::vector<double> x;
    for (const auto &row : t.rows) {
        x.push_back(row[0]);
    }
    for (std::size_t c = 9; c < t.columns.size(); ++c) {
        std::vector<double> y;
        for (const auto &row : t.rows) {
            y.push_back(row[c]);
        }
        t.summary.emplace_back(t.columns[c], loglog_slope(x, y));
    }
    return t;
}

Table run_divergences(const RunConfig &cfg) {
    Table t;
    t.columns = {"n_s", "d", "v", "f", "d_limit", "v_limit", "f_limit"};
    for (double a : cfg.alphas) {
        t.columns.push_back("renyi_limit_" + format_alpha(a));
    }
    const DivergenceReport limit = thermal_divergences({cfg.nb1, cfg.nb2});
    std::vector<double> renyi;
    for (double a : cfg.alphas) {
        renyi.push_back(nats_to(cfg, renyi_thermal(a, {cfg.nb1, cfg.nb2})));
    }
    t.rows = evaluate_points(cfg.ns, [&](double n_s) {
        const DivergenceReport r =
            gaussian_divergences(probe_output(channel(cfg, cfg.nb1), n_s), probe_output(channel(cfg, cfg.nb2), n_s));
        std::vector<double> row{n_s,
                                nats_to(cfg, r.d),
                                nats_to(cfg, r.v, 2),
                                r.f,
                                nats_to(cfg, limit.d),
                                nats_to(cfg, limit.v, 2),
                                limit.f};
        row.insert(row.end(), renyi.begin(), renyi.end());
        return row;
    });
    return t;
}

Table run_strategy(const RunConfig &cfg) {
    Table t;
    t.columns = {"n_s", "n_eff_1", "n_eff_2", "dh_strategy", "dh_environment", "second_order", "gap",
                 "cr_variance_floor"};
    const bool mc = cfg.trials > 0;
    if (mc) {
        for (const char *c : {"beta_exact", "mc_type1", "mc_type1_sigma", "mc_type2", "mc_type2_sigma"}) {
            t.columns.emplace_back(c);
        }
    }
    const StrategySpec spec{cfg.amplifier() ? ChannelKind::amplifier : ChannelKind::thermal,
                            cfg.coupling(),
                            cfg.nb1,
                            cfg.nb2,
                            cfg.m,
                            cfg.epsilon};
    spec.validate();
    const double floor = cfg.nb1 > 0 ? cramer_rao(cfg.m, cfg.nb1) : kNan;
    t.rows = evaluate_points(cfg.ns, [&](double n_s) {
        const StrategyResult r = bound_gap_report(spec, n_s);
        return std::vector<double>{n_s,
                                   r.n_eff_1,
                                   r.n_eff_2,
                                   nats_to(cfg, r.dh_strategy),
                                   nats_to(cfg, r.dh_environment),
                                   nats_to(cfg, r.second_order),
                                   nats_to(cfg, r.gap),
                                   floor};
    });
    for (const auto &row : t.rows) {
        if (row[6] < -1e-9) {
            t.status = ExitStatus::tolerance_breach;
            t.warnings.push_back("negative bound gap at n_s = " + format_number(row[0]));
        }
    }
    if (mc) {
        const BinaryTestResult exact = exact_binary_test(cfg.m, cfg.nb1, cfg.nb2, cfg.epsilon);
        const MonteCarloEstimate est =
            monte_carlo_discrimination(cfg.m, cfg.nb1, cfg.nb2, cfg.epsilon, cfg.trials, cfg.seed);
        for (auto &row : t.rows) {
            row.insert(row.end(), {exact.beta, est.type1, est.type1_sigma, est.type2, est.type2_sigma});
        }
        if (std::abs(est.type1 - cfg.epsilon) > 3 * est.type1_sigma ||
            std::abs(est.type2 - exact.beta) > 3 * est.type2_sigma) {
            t.status = ExitStatus::tolerance_breach;
            t.warnings.push_back("Monte Carlo error rates outside 3 sigma of the exact test");
        }
    }
    return t;
}

Table run_oracle_check(const RunConfig &cfg) {
    Table t;
    t.columns = {"n_s",     "n_max",  "d_gauss", "d_fock",  "v_gauss",      "v_fock",         "f_gauss",
                 "f_fock",  "d_resid", "v_resid", "f_resid", "moment_resid", "thermal_d_resid", "thermal_v_resid",
                 "thermal_f_resid"};
    for (double a : cfg.alphas) {
        t.columns.push_back("thermal_renyi_resid_" + format_alpha(a));
    }
    t.rows = evaluate_points(cfg.ns, [&](double n_s) {
        fock::TruncationConfig tc =
            cfg.nmax ? fock::TruncationConfig{*cfg.nmax, cfg.tail_tol}
                     : fock::default_truncation(n_s, std::max(cfg.nb1, cfg.nb2), cfg.tail_tol);
        const ChannelSpec c1 = channel(cfg, cfg.nb1);
        const ChannelSpec c2 = channel(cfg, cfg.nb2);
        // Moments are compared here and reported, so the builder's own gate is relaxed.
        const fock::FockDensityMatrix rho = fock::dilation_output(c1, n_s, tc, 1.0);
        const fock::FockDensityMatrix sigma = fock::dilation_output(c2, n_s, tc, 1.0);
        const GaussianState g1 = probe_output(c1, n_s);
        const GaussianState g2 = probe_output(c2, n_s);
        const DivergenceReport gauss = gaussian_divergences(g1, g2);
        const DivergenceReport fk = fock::spectral_divergences(rho, sigma).divergences;
        const double moment = std::max((fock::moments_covariance(rho) - g1.cov()).cwiseAbs().maxCoeff(),
                                       (fock::moments_covariance(sigma) - g2.cov()).cwiseAbs().maxCoeff());

        const fock::SpectralReport th = fock::spectral_divergences(
            fock::build_state(fock::FockStateKind::thermal, cfg.nb1, tc),
            fock::build_state(fock::FockStateKind::thermal, cfg.nb2, tc), cfg.alphas);
        const DivergenceReport closed = thermal_divergences({cfg.nb1, cfg.nb2});

        std::vector<double> row{n_s,
                                static_cast<double>(tc.n_max),
                                nats_to(cfg, gauss.d),
                                nats_to(cfg, fk.d),
                                nats_to(cfg, gauss.v, 2),
                                nats_to(cfg, fk.v, 2),
                                gauss.f,
                                fk.f,
                                nats_to(cfg, std::abs(gauss.d - fk.d)),
                                nats_to(cfg, std::abs(gauss.v - fk.v), 2),
                                std::abs(gauss.f - fk.f),
                                moment,
                                nats_to(cfg, std::abs(th.divergences.d - closed.d)),
                                nats_to(cfg, std::abs(th.divergences.v - closed.v), 2),
                                std::abs(th.divergences.f - closed.f)};
        for (const fock::RenyiValue &rv : th.renyi) {
            row.push_back(nats_to(cfg, std::abs(rv.sandwiched - renyi_thermal(rv.alpha, {cfg.nb1, cfg.nb2}))));
        }
        return row;
    });
    for (const auto &row : t.rows) {
        for (std::size_t c = 8; c < row.size(); ++c) {
            if (!(row[c] <= kOracleTolerance)) {
                t.status = ExitStatus::tolerance_breach;
                t.warnings.push_back(t.columns[c] + " = " + format_number(row[c]) + " exceeds " +
                                     format_number(kOracleTolerance) + " at n_s = " + format_number(row[0]));
            }
        }
    }
    return t;
}

Table run_qfi(const RunConfig &cfg) {
    if (!(cfg.nb1 > 0)) {
        config_error("qfi needs --nb1 > 0 (the estimation point)");
    }
    Table t;
    t.columns = {"n_s", "delta", "i_sqrt", "i_log", "richardson", "qfi_limit", "rel_error", "estimator_rel_diff"};
    const double limit = qfi_thermal(cfg.nb1);
    const double delta = cfg.delta.value_or(default_qfi_step(cfg.nb1));
    t.rows = evaluate_points(cfg.ns, [&](double n_s) {
        const StateFamily family = [&](double n_b) { return probe_output(channel(cfg, n_b), n_s); };
        const QfiEstimate q = qfi_finite_difference(family, cfg.nb1, delta);
        return std::vector<double>{n_s,
                                   q.delta,
                                   q.i_sqrt,
                                   q.i_log,
                                   q.richardson,
                                   limit,
                                   std::abs(q.richardson - limit) / limit,
                                   std::abs(q.i_sqrt - q.i_log) / q.i_sqrt};
    });
    return t;
}

bool numerical_failure(ErrorCode code) {
    switch (code) {
        case ErrorCode::StepTooLarge:
        case ErrorCode::MomentMismatch:
        case ErrorCode::SupportViolation:
        case ErrorCode::NonPositiveDefinite:
        case ErrorCode::InvalidState:
            return true;
        default:
            return false;
    }
}

}  // namespace

std::vector<double> parse_list(const std::string &text, const std::string &flag) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double x = 0;
        try {
            x = std::stod(item, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (item.empty() || used != item.size() || !std::isfinite(x)) {
            config_error(flag + ": '" + item + "' is not a finite number");
        }
        out.push_back(x);
    }
    if (out.empty()) {
        config_error(flag + " needs at least one value");
    }
    return out;
}

RunConfig parse_args(const std::vector<std::string> &args) {
    RunConfig cfg;
    CLI::App app{"Excess-noise discrimination limits for thermal and amplifier channels", "noisebound"};
    app.require_subcommand(1);
    app.fallthrough();

    double eta = 0;
    double gain = 1;
    std::string ns_text;
    std::string alpha_text;
    int nmax = 0;
    double delta = 0;
    std::string log_base = "nats";

    CLI::Option *eta_opt = app.add_option("--eta", eta, "transmissivity of the thermal-loss channel");
    CLI::Option *gain_opt = app.add_option("--gain", gain, "gain of the amplifier channel");
    eta_opt->excludes(gain_opt);
    app.add_option("--nb1", cfg.nb1, "excess noise under hypothesis 1")->required();
    app.add_option("--nb2", cfg.nb2, "excess noise under hypothesis 2");
    app.add_option("--ns", ns_text, "probe mean photon number(s), comma separated and increasing")->required();
    app.add_option("--m", cfg.m, "channel uses");
    app.add_option("--eps", cfg.epsilon, "type-I error budget");
    app.add_option("--alpha", alpha_text, "Renyi orders, comma separated");
    CLI::Option *nmax_opt = app.add_option("--nmax", nmax, "Fock cutoff per mode");
    app.add_option("--tail-tol", cfg.tail_tol, "largest admissible truncated probability");
    app.add_option("--seed", cfg.seed, "Monte Carlo seed");
    app.add_option("--trials", cfg.trials, "Monte Carlo trials per hypothesis (0 disables)");
    CLI::Option *delta_opt = app.add_option("--delta", delta, "finite-difference step for the Fisher information");
    app.add_option("--log-base", log_base, "nats or bits")->check(CLI::IsMember({"nats", "bits"}));
    app.add_option("--out", cfg.out, "output path (stdout when omitted)");
    app.add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    app.add_subcommand("divergences", "D, V, F of the probe outputs and their thermal limits");
    app.add_subcommand("sweep", "convergence gaps over --ns with log-log slopes");
    app.add_subcommand("strategy", "decoupled photon-counting strategy against the environment bound");
    app.add_subcommand("oracle-check", "Gaussian path against the truncated Fock oracle");
    app.add_subcommand("qfi", "finite-difference Fisher information against its thermal limit");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        throw HelpRequested{app.help()};
    } catch (const CLI::ParseError &e) {
        config_error(e.what());
    }

    cfg.command = app.get_subcommands().front()->get_name();
    if (eta_opt->count() > 0) {
        cfg.eta = eta;
    } else if (gain_opt->count() > 0) {
        cfg.gain = gain;
    } else {
        config_error("exactly one of --eta or --gain is required");
    }
    cfg.log_base = log_base == "bits" ? LogBase::bits : LogBase::nats;
    cfg.ns = parse_list(ns_text, "--ns");
    for (std::size_t i = 0; i < cfg.ns.size(); ++i) {
        if (cfg.ns[i] < 0) {
            config_error("--ns values must be >= 0");
        }
        if (i > 0 && !(cfg.ns[i] > cfg.ns[i - 1])) {
            config_error("--ns values must be strictly increasing");
        }
    }
    if (!alpha_text.empty()) {
        cfg.alphas = parse_list(alpha_text, "--alpha");
    }
    if (nmax_opt->count() > 0) {
        cfg.nmax = nmax;
    }
    if (delta_opt->count() > 0) {
        if (!(delta > 0)) {
            config_error("--delta must be > 0");
        }
        cfg.delta = delta;
    }
    if (cfg.m < 1) {
        config_error("--m must be >= 1");
    }
    if (!(cfg.epsilon > 0 && cfg.epsilon < 1)) {
        config_error("--eps must lie in (0, 1)");
    }
    if (cfg.trials != 0 && cfg.trials < 1000) {
        config_error("--trials must be 0 or at least 1000");
    }
    if (cfg.nb1 < 0 || cfg.nb2 < 0) {
        config_error("--nb1 and --nb2 must be >= 0");
    }
    return cfg;
}

Table run_command(const RunConfig &cfg) {
    if (cfg.command == "sweep") {
        return run_sweep(cfg);
    }
    if (cfg.command == "divergences") {
        return run_divergences(cfg);
    }
    if (cfg.command == "strategy") {
        return run_strategy(cfg);
    }
    if (cfg.command == "oracle-check") {
        return run_oracle_check(cfg);
    }
    if (cfg.command == "qfi") {
        return run_qfi(cfg);
    }
    config_error("unknown command '" + cfg.command + "'");
}

std::string render_csv(const Table &table) {
    std::ostringstream os;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        os << (c ? "," : "") << table.columns[c];
    }
    os << '\n';
    for (const auto &row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            os << (c ? "," : "") << format_number(row[c]);
        }
        os << '\n';
    }
    if (!table.summary.empty()) {
        os << table.summary_label;
        for (std::size_t c = 1; c < table.columns.size(); ++c) {
            os << ',';
            for (const auto &[name, value] : table.summary) {
                if (name == table.columns[c]) {
                    os << format_number(value);
                }
            }
        }
        os << '\n';
    }
    return os.str();
}

std::string render_json(const RunConfig &cfg, const Table &table) {
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = cfg.command;
    doc["log_base"] = std::string(to_string(cfg.log_base));
    ordered_json inputs;
    inputs["channel"] = cfg.amplifier() ? "amplifier" : "thermal";
    inputs[cfg.amplifier() ? "gain" : "eta"] = cfg.coupling();
    inputs["nb1"] = cfg.nb1;
    inputs["nb2"] = cfg.nb2;
    inputs["ns"] = cfg.ns;
    inputs["m"] = cfg.m;
    inputs["eps"] = cfg.epsilon;
    inputs["alpha"] = cfg.alphas;
    inputs["nmax"] = cfg.nmax ? ordered_json(*cfg.nmax) : ordered_json(nullptr);
    inputs["tail_tol"] = cfg.tail_tol;
    inputs["seed"] = cfg.seed;
    inputs["trials"] = cfg.trials;
    doc["inputs"] = inputs;
    doc["columns"] = table.columns;
    ordered_json rows = ordered_json::array();
    for (const auto &row : table.rows) {
        ordered_json r;
        for (std::size_t c = 0; c < row.size(); ++c) {
            r[table.columns[c]] = std::isfinite(row[c]) ? ordered_json(row[c]) : ordered_json(format_number(row[c]));
        }
        rows.push_back(r);
    }
    doc["rows"] = rows;
    if (!table.summary.empty()) {
        ordered_json s;
        for (const auto &[name, value] : table.summary) {
            s[name] = std::isfinite(value) ? ordered_json(value) : ordered_json(format_number(value));
        }
        doc[table.summary_label] = s;
    }
    doc["warnings"] = table.warnings;
    doc["status"] = table.status == ExitStatus::ok ? "ok" : "tolerance_breach";
    return doc.dump(2) + "\n";
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    RunConfig cfg;
    Table table;
    try {
        cfg = parse_args(args);
        table = run_command(cfg);
    } catch (const HelpRequested &h) {
        out << h.text;
        return static_cast<int>(ExitStatus::ok);
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(numerical_failure(e.code()) ? ExitStatus::tolerance_breach : ExitStatus::config_error);
    }
    for (const std::string &w : table.warnings) {
        err << "warning: " << w << '\n';
    }
    const std::string text = cfg.format == "json" ? render_json(cfg, table) : render_csv(table);
    if (cfg.out.empty()) {
        out << text;
    } else {
        std::ofstream file(cfg.out, std::ios::binary);
        file << text;
        if (!file) {
            err << "error [ConfigError]: cannot write " << cfg.out << '\n';
            return static_cast<int>(ExitStatus::config_error);
        }
    }
    return static_cast<int>(table.status);
}

}  // namespace noisebound::cli
