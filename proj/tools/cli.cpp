// Copyright 2026 The AGF Workbench Authors
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

#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "agf/bounds.hpp"
#include "agf/ensembles.hpp"
#include "agf/error.hpp"
#include "agf/estimators.hpp"
#include "agf/harness.hpp"
#include "agf/io.hpp"
#include "agf/noise.hpp"
#include "agf/prg.hpp"

namespace agf::cli {

namespace {

using json = nlohmann::json;

template <class T>
void take(const json &j, const char *key, T &dst) {
    if (!j.contains(key)) return;
    try {
        dst = j.at(key).get<T>();
    } catch (const json::exception &e) {
        throw ConfigError(fmt::format("config: bad value for '{}': {}", key, e.what()));
    }
}

template <class T>
void take_optional(const json &j, const char *key, std::optional<T> &dst) {
    if (!j.contains(key)) return;
    T v{};
    take(j, key, v);
    dst = v;
}

void emit(const CliConfig &cfg, std::ostream &out, const std::string &text) {
    if (cfg.output.empty()) {
        out << text;
    } else {
        write_text_file(cfg.output, text);
    }
}

std::string format_or(const CliConfig &cfg, const char *fallback, std::initializer_list<const char *> allowed) {
    const std::string f = cfg.format.empty() ? fallback : cfg.format;
    for (const char *a : allowed) {
        if (f == a) return f;
    }
    throw ConfigError(fmt::format("format '{}' is not available for {}", f, cfg.subcommand));
}

std::string auto_hex(std::size_t digits) {
    std::random_device rd;
    std::string out;
    static constexpr char kHex[] = "0123456789abcdef";
    for (std::size_t i = 0; i < digits; ++i) out.push_back(kHex[rd() & 15u]);
    return out;
}

Seed resolve_seed(const CliConfig &cfg, std::ostream &err, const char *fallback = nullptr) {
    std::string hex = cfg.seed;
    if (hex.empty()) {
        if (!fallback) throw ParameterError("a --seed is required (hex digits, or 'auto' for fresh entropy)");
        hex = fallback;
    }
    if (hex == "auto") {
        hex = auto_hex(16);
        err << "seed: " << hex << "\n";
    }
    return Seed::parse(hex);
}

std::shared_ptr<const UnitaryEnsemble> resolve_ensemble(const CliConfig &cfg) {
    const std::string &name = cfg.ensemble;
    const bool is_file = name.find('/') != std::string::npos ||
                         (name.size() > 5 && name.compare(name.size() - 5, 5, ".json") == 0);
    auto e = std::make_shared<const UnitaryEnsemble>(is_file ? load_ensemble(name) : builtin_ensemble(name, cfg.d));
    if (e->dim() != cfg.d) {
        throw DimensionError(fmt::format("ensemble '{}' has d = {} but --d is {}", e->label(), e->dim(), cfg.d));
    }
    return e;
}

EstimationConfig estimation_config(const CliConfig &cfg, std::ostream &err) {
    EstimationConfig ec;
    ec.algorithm = parse_algorithm(cfg.algorithm);
    ec.epsilon = cfg.epsilon;
    ec.delta = cfg.delta;
    if (ec.algorithm != Algorithm::NaiveHaar) ec.ensemble = resolve_ensemble(cfg);
    ec.claimed_lambda = cfg.claimed_lambda;
    ec.seed = resolve_seed(cfg, err);
    ec.waive_preconditions = cfg.waive_preconditions;
    ec.check_assumptions = cfg.check_assumptions;
    ec.emit_trials = cfg.emit_trials;
    ec.timing = cfg.timing;
    ec.n_override = cfg.n_override;
    ec.tpe.dense_cap = cfg.dense_cap;
    return ec;
}

void print_warnings(const EstimationPlan &plan, std::ostream &err) {
    for (const auto &w : plan.warnings) err << "warning: " << w << "\n";
}

int exit_code(std::ostream &err) {
    try {
        throw;
    } catch (const PreconditionError &e) {
        err << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const CapacityError &e) {
        err << "error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const ConvergenceError &e) {
        err << "error: " << e.what() << " (residual " << e.residual() << ")\n";
        return kExitCapacity;
    } catch (const ParameterError &e) {
        err << "error: " << e.what() << "\n";
    } catch (const PlanningError &e) {
        err << "error: " << e.what() << "\n";
    } catch (const ConfigError &e) {
        err << "error: " << e.what() << "\n";
    } catch (const FormatError &e) {
        err << "error: " << e.what() << "\n";
    } catch (const DimensionError &e) {
        err << "error: " << e.what() << "\n";
    } catch (const ValidationError &e) {
        err << "error: " << e.what() << "\n";
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitParameter;
}

template <class Fn>
int guarded(std::ostream &err, Fn &&fn) {
    try {
        return fn();
    } catch (...) {
        return exit_code(err);
    }
}

}  // namespace

CliConfig load_config(const std::string &path, CliConfig base) {
    json j;
    try {
        j = json::parse(read_text_file(path));
    } catch (const json::parse_error &e) {
        throw ConfigError(fmt::format("config '{}': {}", path, e.what()));
    } catch (const FormatError &e) {
        throw ConfigError(e.what());
    }
    if (!j.is_object()) throw ConfigError("config: top level must be an object");
    static const std::set<std::string> known{
        "subcommand", "channel",      "d",         "max_dim",      "epsilon",     "delta",
        "algorithm",  "ensemble",     "seed",      "output",       "format",      "waive_preconditions",
        "check_assumptions", "emit_trials", "timing", "dense_cap", "jobs",        "claimed_lambda",
        "trials",     "repeats",      "t",         "suite",        "channels",    "dims",
        "samples",    "tail_trials",  "prop1_trials", "t_average", "delta_prime", "k",
        "n",          "theta"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!known.count(it.key())) throw ConfigError(fmt::format("config: unknown key '{}'", it.key()));
    }
    take(j, "subcommand", base.subcommand);
    take(j, "channel", base.channel);
    take(j, "d", base.d);
    take(j, "max_dim", base.max_dim);
    take(j, "epsilon", base.epsilon);
    take(j, "delta", base.delta);
    take(j, "algorithm", base.algorithm);
    take(j, "ensemble", base.ensemble);
    take(j, "seed", base.seed);
    take(j, "output", base.output);
    take(j, "format", base.format);
    take(j, "waive_preconditions", base.waive_preconditions);
    take(j, "check_assumptions", base.check_assumptions);
    take(j, "emit_trials", base.emit_trials);
    take(j, "timing", base.timing);
    take(j, "dense_cap", base.dense_cap);
    take(j, "jobs", base.jobs);
    take_optional(j, "claimed_lambda", base.claimed_lambda);
    take_optional(j, "trials", base.n_override);
    take(j, "repeats", base.repeats);
    take(j, "t", base.t_list);
    take(j, "suite", base.suite);
    take(j, "channels", base.channels);
    take(j, "dims", base.dims);
    take(j, "samples", base.samples);
    take(j, "tail_trials", base.tail_trials);
    take(j, "prop1_trials", base.prop1_trials);
    take(j, "t_average", base.t_average);
    take(j, "delta_prime", base.delta_prime);
    take(j, "k", base.k);
    take(j, "n", base.n);
    take(j, "theta", base.theta);
    return base;
}

int cmd_estimate(const CliConfig &cfg, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        const std::string fmt_name = format_or(cfg, "json", {"json", "csv"});
        const NoiseModel noise = parse_noise(cfg.channel, cfg.d, cfg.max_dim);
        const EstimationConfig ec = estimation_config(cfg, err);
        const EstimationResult r = run_estimator(noise.channel, ec);
        print_warnings(r.plan, err);
        emit(cfg, out, fmt_name == "json" ? result_to_json(r) : result_csv_header() + result_csv_row(r));
        return static_cast<int>(kExitOk);
    });
}

int cmd_harness(const CliConfig &cfg, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        const std::string fmt_name = format_or(cfg, "json", {"json", "csv"});
        const NoiseModel noise = parse_noise(cfg.channel, cfg.d, cfg.max_dim);
        const EstimationConfig ec = estimation_config(cfg, err);
        print_warnings(plan_estimation(ec, cfg.d), err);
        const HarnessReport r = harness_confidence(noise.channel, ec, cfg.repeats, cfg.jobs);
        emit(cfg, out, fmt_name == "json" ? harness_to_json(r) : harness_csv_header() + harness_csv_row(r));
        return static_cast<int>(r.pass ? kExitOk : kExitValidation);
    });
}

int cmd_check_design(const CliConfig &cfg, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        const std::string fmt_name = format_or(cfg, "table", {"table", "json", "csv"});
        const auto e = resolve_ensemble(cfg);
        TpeOptions opts;
        opts.dense_cap = cfg.dense_cap;
        const DesignReport report = check_design(*e, cfg.t_list, opts);
        std::string text;
        if (fmt_name == "table") {
            text = design_report_table(report);
        } else if (fmt_name == "json") {
            text = design_report_to_json(report);
        } else {
            text = "label,d,s,t,lambda,method,iterations,residual\n";
            for (const auto &row : report.rows) {
                text += fmt::format("{},{},{},{},{},{},{},{}\n", report.label, report.d, report.s, row.t, row.lambda,
                                    row.method, row.iterations, row.residual);
            }
        }
        emit(cfg, out, text);
        return static_cast<int>(kExitOk);
    });
}

int cmd_validate(const CliConfig &cfg, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        const std::string fmt_name = format_or(cfg, "table", {"table", "csv"});
        BoundSuiteOptions opts;
        opts.samples = cfg.samples;
        opts.tail_trials = cfg.tail_trials;
        opts.prop1_trials = cfg.prop1_trials;
        opts.t = cfg.t_average;
        opts.delta_prime = cfg.delta_prime;
        opts.tpe.dense_cap = cfg.dense_cap;
        opts.seed = resolve_seed(cfg, err, "5eed");
        std::vector<BoundCheck> checks;
        if (cfg.suite == "prg") {
            checks = run_prg_suite(cfg.k, cfg.n, Theta::parse(cfg.theta), opts);
        } else {
            std::vector<std::string> channels = cfg.channels;
            if (channels.empty()) channels = {"depolarizing:0.2", "amplitude_damping:0.3", "over_rotation:z,0.5"};
            std::vector<int> dims = cfg.dims;
            if (dims.empty()) dims = {2, 4};
            checks = run_bound_suite(cfg.suite, channels, dims, opts);
        }
        emit(cfg, out, fmt_name == "table" ? bound_checks_table(checks) : bound_checks_csv(checks));
        for (const auto &c : checks) {
            if (!c.pass) return static_cast<int>(kExitValidation);
        }
        return static_cast<int>(kExitOk);
    });
}

int cmd_gen_bits(const CliConfig &cfg, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        const Theta theta = Theta::parse(cfg.theta);
        const std::uint64_t r = tape_seed_length(cfg.k, cfg.n, theta);
        std::string hex = cfg.seed;
        if (hex.empty()) throw ParameterError(fmt::format("a --seed of {} hex digits (r = {} bits) is required", (r + 3) / 4, r));
        if (hex == "auto") {
            hex = auto_hex((r + 3) / 4);
            if (r % 4 != 0) {
                // Clear the bits above r in the leading digit.
                const unsigned lead = static_cast<unsigned>(std::stoul(hex.substr(0, 1), nullptr, 16)) &
                                      ((1u << (r % 4)) - 1u);
                hex[0] = "0123456789abcdef"[lead];
            }
            err << "seed: " << hex << "\n";
        }
        const BitString seed = BitString::from_hex(hex, r);
        emit(cfg, out, generate_tape(cfg.k, cfg.n, theta, seed).to_text());
        return static_cast<int>(kExitOk);
    });
}

namespace {

void add_output_options(CLI::App *sub, CliConfig &cfg) {
    sub->add_option("--output", cfg.output, "Write to this file instead of stdout");
    sub->add_option("--format", cfg.format, "Output format");
}

void add_estimation_options(CLI::App *sub, CliConfig &cfg) {
    sub->add_option("--channel", cfg.channel, "Channel spec, e.g. depolarizing:0.1+over_rotation:z,0.2");
    sub->add_option("--d", cfg.d, "Dimension");
    sub->add_option("--max-dim", cfg.max_dim, "Largest accepted dimension");
    sub->add_option("--epsilon", cfg.epsilon, "Target additive error");
    sub->add_option("--delta", cfg.delta, "Confidence error");
    sub->add_option("--algorithm", cfg.algorithm, "naive-haar | iid-design | kwise-design | single-qtpe | two-phase");
    sub->add_option("--ensemble", cfg.ensemble, "Built-in ensemble name or JSON file");
    sub->add_option("--seed", cfg.seed, "Master seed in hex, or 'auto'");
    sub->add_option("--claimed-lambda", cfg.claimed_lambda, "qTPE lambda to trust when it cannot be computed");
    sub->add_option("--trials", cfg.n_override, "Override the planned number of trials");
    sub->add_option("--dense-cap", cfg.dense_cap, "Largest dense superoperator side");
    sub->add_option("--jobs", cfg.jobs, "Worker threads");
    sub->add_flag("--waive-preconditions", cfg.waive_preconditions, "Run outside the stated regime (diagnostic)");
    sub->add_flag("--check-assumptions", cfg.check_assumptions, "Check eps against the exact reference");
    sub->add_flag("--emit-trials", cfg.emit_trials, "Include per-trial records");
    sub->add_flag("--timing", cfg.timing, "Record wall-clock time in elapsed_ms");
    add_output_options(sub, cfg);
}

// Pre-scan for --config so file values become defaults under explicit flags.
CliConfig initial_config(const std::vector<std::string> &args) {
    CliConfig cfg;
    for (std::size_t i = 1; i < args.size(); ++i) {
        std::string path;
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        }
        if (!path.empty()) cfg = load_config(path, cfg);
    }
    return cfg;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CliConfig cfg;
    try {
        cfg = initial_config(args);
    } catch (...) {
        return exit_code(err);
    }
    const std::string config_subcommand = cfg.subcommand;

    CLI::App app{"Average gate fidelity estimation workbench", "agf"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "JSON file with default settings")->check(CLI::ExistingFile);

    auto *estimate = app.add_subcommand("estimate", "Run one estimator and print its result");
    add_estimation_options(estimate, cfg);

    auto *harness = app.add_subcommand("harness", "Repeat an estimator and check its (epsilon, delta) contract");
    add_estimation_options(harness, cfg);
    harness->add_option("--repeats", cfg.repeats, "Independent repeats");

    auto *design = app.add_subcommand("check-design", "Spectral design / qTPE report for an ensemble");
    design->add_option("--ensemble", cfg.ensemble, "Built-in ensemble name or JSON file");
    design->add_option("--d", cfg.d, "Dimension");
    design->add_option("--t", cfg.t_list, "Tensor powers")->delimiter(',');
    design->add_option("--dense-cap", cfg.dense_cap, "Largest dense superoperator side");
    add_output_options(design, cfg);

    auto *validate = app.add_subcommand("validate", "Bound and generator validation suites");
    validate->add_option("--suite", cfg.suite, "variance | tail | moment | prop1 | prg")->required();
    validate->add_option("--channel", cfg.channels, "Channel spec (repeatable)");
    auto *vd = validate->add_option("--d", cfg.d, "Single dimension");
    validate->add_option("--dims", cfg.dims, "Dimensions")->delimiter(',');
    validate->add_option("--samples", cfg.samples, "Haar samples for the variance check");
    validate->add_option("--tail-trials", cfg.tail_trials, "Averages per Haar tail estimate");
    validate->add_option("--prop1-trials", cfg.prop1_trials, "Averages per ensemble tail estimate");
    validate->add_option("--t", cfg.t_average, "Unitaries per average");
    validate->add_option("--delta-prime", cfg.delta_prime, "Tail deviation threshold");
    validate->add_option("--dense-cap", cfg.dense_cap, "Largest dense superoperator side");
    validate->add_option("--seed", cfg.seed, "Seed in hex, or 'auto' (default 5eed)");
    validate->add_option("--n", cfg.n, "Tape length (prg suite)");
    validate->add_option("--k", cfg.k, "Independence parameter (prg suite)");
    validate->add_option("--theta", cfg.theta, "Approximation parameter (prg suite)");
    add_output_options(validate, cfg);

    auto *gen = app.add_subcommand("gen-bits", "Emit an almost k-wise independent tape");
    gen->add_option("--k", cfg.k, "Independence parameter")->required();
    gen->add_option("--n", cfg.n, "Tape length")->required();
    gen->add_option("--theta", cfg.theta, "Approximation parameter, decimal or 2^-x")->required();
    gen->add_option("--seed", cfg.seed, "Exactly ceil(r/4) hex digits, or 'auto'");
    gen->add_option("--output", cfg.output, "Write to this file instead of stdout");

    std::vector<const char *> argv;
    for (const auto &a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kExitParameter;
    }

    CLI::App *sub = app.get_subcommands().front();
    cfg.subcommand = sub->get_name();
    if (!config_subcommand.empty() && config_subcommand != cfg.subcommand) {
        err << "error: config is for '" << config_subcommand << "', not '" << cfg.subcommand << "'\n";
        return kExitParameter;
    }
    if (sub == validate && vd->count() > 0 && cfg.dims.empty()) cfg.dims = {cfg.d};

    if (sub == estimate) return cmd_estimate(cfg, out, err);
    if (sub == harness) return cmd_harness(cfg, out, err);
    if (sub == design) return cmd_check_design(cfg, out, err);
    if (sub == validate) return cmd_validate(cfg, out, err);
    return cmd_gen_bits(cfg, out, err);
}

}  // namespace agf::cli
