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

#include "agf/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "agf/error.hpp"

namespace agf {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

void reject_unknown(const json &j, const std::set<std::string> &allowed, const char *what) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!allowed.count(it.key())) throw FormatError(fmt::format("{}: unknown key '{}'", what, it.key()));
    }
}

template <class T>
T get_field(const json &j, const char *key, const char *what) {
    if (!j.contains(key)) throw FormatError(fmt::format("{}: missing key '{}'", what, key));
    try {
        return j.at(key).get<T>();
    } catch (const json::exception &e) {
        throw FormatError(fmt::format("{}: bad value for '{}': {}", what, key, e.what()));
    }
}

json parse_json(std::string_view text, const char *what) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        throw FormatError(fmt::format("{}: {}", what, e.what()));
    }
}

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string ensemble_to_json(const UnitaryEnsemble &e) {
    const int d = e.dim();
    std::string out = fmt::format("{{\"d\": {}, \"label\": {}, \"unitaries\": [", d, json(e.label()).dump());
    for (std::size_t i = 0; i < e.size(); ++i) {
        const UnitaryOperator u = e.member(i);
        const ComplexMatrix &m = u.matrix();
        out += i ? ",\n  [" : "\n  [";
        for (int r = 0; r < d; ++r) {
            out += r ? ", [" : "[";
            for (int c = 0; c < d; ++c) {
                out += fmt::format("{}[{:.17g}, {:.17g}]", c ? ", " : "", m(r, c).real(), m(r, c).imag());
            }
            out += "]";
        }
        out += "]";
    }
    out += "\n]}\n";
    return out;
}

UnitaryEnsemble ensemble_from_json(std::string_view text) {
    const json j = parse_json(text, "ensemble");
    if (!j.is_object()) throw FormatError("ensemble: top level must be an object");
    if (j.contains("weights")) throw FormatError("ensemble: weighted designs are not supported");
    reject_unknown(j, {"d", "label", "unitaries"}, "ensemble");
    const int d = get_field<int>(j, "d", "ensemble");
    const std::string label = get_field<std::string>(j, "label", "ensemble");
    if (d < 1) throw FormatError("ensemble: d must be >= 1");
    const json &us = j.at("unitaries");
    if (!us.is_array() || us.empty()) throw FormatError("ensemble: 'unitaries' must be a non-empty array");

    std::vector<UnitaryOperator> members;
    members.reserve(us.size());
    for (std::size_t i = 0; i < us.size(); ++i) {
        const json &u = us[i];
        const long idx = static_cast<long>(i);
        if (!u.is_array() || u.size() != static_cast<std::size_t>(d)) {
            throw ValidationError(fmt::format("ensemble member {} does not have {} rows", i, d), idx);
        }
        ComplexMatrix m(d, d);
        for (int r = 0; r < d; ++r) {
            const json &row = u[static_cast<std::size_t>(r)];
            if (!row.is_array() || row.size() != static_cast<std::size_t>(d)) {
                throw ValidationError(fmt::format("ensemble member {} row {} does not have {} entries", i, r, d), idx);
            }
            for (int c = 0; c < d; ++c) {
                const json &z = row[static_cast<std::size_t>(c)];
                if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
                    throw FormatError(fmt::format("ensemble member {} entry ({}, {}) is not [re, im]", i, r, c));
                }
                m(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
            }
        }
        try {
            members.emplace_back(std::move(m), 1e-8);
        } catch (const ValidationError &) {
            throw ValidationError(fmt::format("ensemble member {} is not unitary within 1e-8", i), idx);
        }
    }
    return UnitaryEnsemble(label, std::move(members));
}

std::string read_text_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError(fmt::format("cannot read '{}'", path));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError(fmt::format("cannot write '{}'", path));
    out << text;
    if (!out) throw FormatError(fmt::format("write to '{}' failed", path));
}

void save_ensemble(const UnitaryEnsemble &e, const std::string &path) { write_text_file(path, ensemble_to_json(e)); }

UnitaryEnsemble load_ensemble(const std::string &path) { return ensemble_from_json(read_text_file(path)); }

std::string result_to_json(const EstimationResult &r) {
    ordered_json j;
    j["algorithm"] = std::string(algorithm_name(r.algorithm));
    j["d"] = r.d;
    j["epsilon"] = r.epsilon;
    j["delta"] = r.delta;
    j["estimate"] = r.estimate;
    j["exact_reference"] = r.exact_reference;
    j["n_trials"] = r.n_trials;
    ordered_json ledger = ordered_json::array();
    for (const auto &e : r.ledger.entries()) ledger.push_back({{"label", e.label}, {"bits", e.bits}});
    j["ledger"] = std::move(ledger);
    j["seed"] = r.seed;
    j["elapsed_ms"] = r.elapsed_ms;
    if (r.diagnostic) j["diagnostic"] = true;
    if (!r.trials.empty()) {
        ordered_json trials = ordered_json::array();
        for (const auto &t : r.trials) {
            trials.push_back(
                {{"index", t.index}, {"unitary_id", t.unitary_id}, {"probability", t.probability}, {"bit", t.bit ? 1 : 0}});
        }
        j["trials"] = std::move(trials);
    }
    return j.dump(2) + "\n";
}

EstimationResult result_from_json(std::string_view text) {
    const json j = parse_json(text, "result");
    if (!j.is_object()) throw FormatError("result: top level must be an object");
    reject_unknown(j,
                   {"algorithm", "d", "epsilon", "delta", "estimate", "exact_reference", "n_trials", "ledger", "seed",
                    "elapsed_ms", "trials", "diagnostic"},
                   "result");
    EstimationResult r;
    try {
        r.algorithm = parse_algorithm(get_field<std::string>(j, "algorithm", "result"));
    } catch (const ConfigError &e) {
        throw FormatError(std::string("result: ") + e.what());
    }
    r.d = get_field<int>(j, "d", "result");
    r.epsilon = get_field<double>(j, "epsilon", "result");
    r.delta = get_field<double>(j, "delta", "result");
    r.estimate = get_field<double>(j, "estimate", "result");
    r.exact_reference = get_field<double>(j, "exact_reference", "result");
    r.n_trials = get_field<std::uint64_t>(j, "n_trials", "result");
    r.seed = get_field<std::string>(j, "seed", "result");
    r.elapsed_ms = get_field<double>(j, "elapsed_ms", "result");
    if (j.contains("diagnostic")) r.diagnostic = get_field<bool>(j, "diagnostic", "result");
    const json &ledger = j.at("ledger");
    if (!ledger.is_array()) throw FormatError("result: 'ledger' must be an array");
    for (const auto &e : ledger) {
        reject_unknown(e, {"label", "bits"}, "ledger entry");
        r.ledger.record(get_field<std::string>(e, "label", "ledger entry"), get_field<std::uint64_t>(e, "bits", "ledger entry"));
    }
    if (j.contains("trials")) {
        for (const auto &t : j.at("trials")) {
            reject_unknown(t, {"index", "unitary_id", "probability", "bit"}, "trial");
            TrialRecord rec;
            rec.index = get_field<std::uint64_t>(t, "index", "trial");
            rec.unitary_id = get_field<std::uint64_t>(t, "unitary_id", "trial");
            rec.probability = get_field<double>(t, "probability", "trial");
            const int bit = get_field<int>(t, "bit", "trial");
            if (bit != 0 && bit != 1) throw FormatError("trial: bit must be 0 or 1");
            rec.bit = bit == 1;
            if (rec.bit) ++r.successes;
            r.trials.push_back(rec);
        }
    }
    return r;
}

std::string result_csv_header() {
    return "algorithm,d,epsilon,delta,estimate,exact_reference,n_trials,ledger_bits,seed,elapsed_ms,diagnostic\n";
}

std::string result_csv_row(const EstimationResult &r) {
    return fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", algorithm_name(r.algorithm), r.d, r.epsilon, r.delta,
                       r.estimate, r.exact_reference, r.n_trials, r.ledger.total(), csv_field(r.seed), r.elapsed_ms,
                       r.diagnostic ? 1 : 0);
}

std::string harness_csv_header() {
    return "algorithm,epsilon,delta,repeats,n_trials,reference,successes,fraction,threshold,ledger_bits,verdict\n";
}

std::string harness_csv_row(const HarnessReport &r) {
    return fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", algorithm_name(r.algorithm), r.epsilon, r.delta,
                       r.repeats, r.n_trials, r.reference, r.successes, r.fraction, r.threshold, r.ledger_bits,
                       r.pass ? "PASS" : "FAIL");
}

std::string harness_to_json(const HarnessReport &r) {
    ordered_json j;
    j["algorithm"] = std::string(algorithm_name(r.algorithm));
    j["epsilon"] = r.epsilon;
    j["delta"] = r.delta;
    j["repeats"] = r.repeats;
    j["n_trials"] = r.n_trials;
    j["reference"] = r.reference;
    j["successes"] = r.successes;
    j["fraction"] = r.fraction;
    j["threshold"] = r.threshold;
    j["ledger_bits"] = r.ledger_bits;
    j["verdict"] = r.pass ? "PASS" : "FAIL";
    return j.dump(2) + "\n";
}

std::string design_report_to_json(const DesignReport &r) {
    ordered_json j;
    j["label"] = r.label;
    j["d"] = r.d;
    j["s"] = r.s;
    ordered_json rows = ordered_json::array();
    for (const auto &row : r.rows) {
        ordered_json o;
        o["t"] = row.t;
        o["lambda"] = row.lambda;
        o["method"] = row.method;
        if (row.method != "dense-svd") {
            o["iterations"] = row.iterations;
            o["residual"] = row.residual;
        }
        rows.push_back(std::move(o));
    }
    j["rows"] = std::move(rows);
    if (r.epsilon2) {
        j["epsilon2_bound"] = r.epsilon2->epsilon;
        j["vacuous"] = r.epsilon2->vacuous;
    }
    return j.dump(2) + "\n";
}

std::string design_report_table(const DesignReport &r) {
    std::string out = fmt::format("ensemble {} (d={}, s={})\n{:>3}  {:>14}  {:<16}  {}\n", r.label, r.d, r.s, "t",
                                  "lambda", "method", "note");
    for (const auto &row : r.rows) {
        std::string note;
        if (row.method != "dense-svd") note = fmt::format("iterations={} residual={:.3g}", row.iterations, row.residual);
        out += fmt::format("{:>3}  {:>14.6e}  {:<16}  {}\n", row.t, row.lambda, row.method, note);
    }
    if (r.epsilon2) {
        out += fmt::format("epsilon_2 bound lambda_2 d^4 = {:.6e}{}\n", r.epsilon2->epsilon,
                           r.epsilon2->vacuous ? " (vacuous)" : "");
    }
    return out;
}

std::string bound_checks_table(const std::vector<BoundCheck> &checks) {
    std::string out = fmt::format("{:<22} {:<24} {:>2}  {:>13}  {:>13}  {:>10}  {:<7} {}\n", "check", "channel", "d",
                                  "bound", "empirical", "slack", "verdict", "params");
    for (const auto &c : checks) {
        out += fmt::format("{:<22} {:<24} {:>2}  {:>13.6e}  {:>13.6e}  {:>10.3e}  {:<7} {}{}\n", c.suite, c.channel,
                           c.d, c.bound, c.empirical, c.slack, c.pass ? "PASS" : "FAIL", c.params,
                           c.vacuous ? " [vacuous bound]" : "");
    }
    return out;
}

std::string bound_checks_csv(const std::vector<BoundCheck> &checks) {
    std::string out = "suite,channel,d,params,bound,empirical,slack,vacuous,verdict\n";
    for (const auto &c : checks) {
        out += fmt::format("{},{},{},{},{},{},{},{},{}\n", c.suite, csv_field(c.channel), c.d, csv_field(c.params),
                           c.bound, c.empirical, c.slack, c.vacuous ? 1 : 0, c.pass ? "PASS" : "FAIL");
    }
    return out;
}

}  // namespace agf
