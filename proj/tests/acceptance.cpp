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

// Acceptance checks. Prints one PASS/FAIL line per criterion, optionally
// followed by indented detail lines. Exit status is nonzero if any selected
// criterion fails.

#include <fmt/core.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "agf/bounds.hpp"
#include "agf/ensembles.hpp"
#include "agf/error.hpp"
#include "agf/estimators.hpp"
#include "agf/harness.hpp"
#include "agf/noise.hpp"
#include "agf/prg.hpp"
#include "cli.hpp"

using namespace agf;

namespace {

struct Verdict {
    bool pass = true;
    std::vector<std::string> details;
    void check(bool ok, std::string text) {
        pass = pass && ok;
        details.push_back(fmt::format("{} {}", ok ? "ok  " : "FAIL", text));
    }
};

std::string g_cli;  // path of the agf executable; empty runs the CLI in-process

Verdict oracle_exactness() {
    Verdict v;
    double worst = 0.0;
    for (int d : {2, 3, 4, 8}) {
        worst = std::max(worst, std::abs(exact_average_fidelity(KrausChannel::identity(d)) - 1.0));
        for (int i = 0; i <= 10; ++i) {
            const double p = i / 10.0;
            const auto ch = parse_noise(fmt::format("depolarizing:{}", p), d);
            worst = std::max(worst, std::abs(exact_average_fidelity(ch.channel) - (1.0 - p + p / d)));
        }
    }
    v.check(worst <= 1e-9, fmt::format("max |oracle - closed form| = {:.3g} (tol 1e-9)", worst));
    return v;
}

Verdict haar_convergence() {
    Verdict v;
    const int n = 100000;
    for (int d : {2, 4}) {
        const auto ch = parse_noise("depolarizing:0.2", d);
        EntropySource e(derive_key(0xacce55, d));
        double acc = 0.0;
        for (int i = 0; i < n; ++i) acc += gate_fidelity(ch.channel, haar_random_unitary(d, e));
        const double gap = std::abs(acc / n - exact_average_fidelity(ch.channel));
        const double tol = 3.0 * std::sqrt(26.0 / (d * static_cast<double>(n)));
        v.check(gap <= tol, fmt::format("d={} |mean - oracle| = {:.3g} (tol {:.3g})", d, gap, tol));
    }
    return v;
}

Verdict design_exactness() {
    Verdict v;
    const auto c = clifford1q();
    for (const auto &spec : standard_noise_specs()) {
        const auto ch = parse_noise(spec, 2);
        double acc = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) acc += gate_fidelity(ch.channel, c.member(i));
        const double gap = std::abs(acc / 24.0 - exact_average_fidelity(ch.channel));
        v.check(gap <= 1e-9, fmt::format("{} group average gap {:.3g} (tol 1e-9)", spec, gap));
    }
    return v;
}

Verdict spectral_checker() {
    Verdict v;
    TpeOptions dense;
    dense.method = LambdaMethod::DenseSvd;
    const auto c = clifford1q(), p = pauli1q();
    for (int t : {1, 2, 3}) {
        const double l = tpe_lambda(c, t, dense).lambda;
        v.check(l <= 1e-9, fmt::format("lambda_{}(clifford1q) = {:.3g} <= 1e-9", t, l));
    }
    const double l4 = tpe_lambda(c, 4, dense).lambda;
    v.check(l4 > 0.01, fmt::format("lambda_4(clifford1q) = {:.6g} > 0.01", l4));
    const double p1 = tpe_lambda(p, 1, dense).lambda;
    v.check(p1 <= 1e-9, fmt::format("lambda_1(pauli1q) = {:.3g} <= 1e-9", p1));
    const double p2 = tpe_lambda(p, 2, dense).lambda;
    v.check(p2 > 0.5, fmt::format("lambda_2(pauli1q) = {:.6g} > 0.5", p2));
    return v;
}

Verdict prg_exhaustive() {
    Verdict v;
    const auto a = exhaustive_kwise_audit(4, 16, Theta::from_value(0.25));
    v.check(a.pass, fmt::format("r={} seeds={} subsets={} max l1={:.6g} max bias={:.6g} (theta 0.25)", a.plan.r,
                                a.seeds, a.subsets, a.max_l1, a.max_bias));
    return v;
}

EstimationConfig kwise_config() {
    EstimationConfig cfg;
    cfg.algorithm = Algorithm::KwiseDesign;
    cfg.epsilon = 0.05;
    cfg.delta = 0.1;
    cfg.ensemble = std::make_shared<const UnitaryEnsemble>(clifford1q());
    cfg.seed = Seed::parse("acce97");
    return cfg;
}

Verdict kwise_contract() {
    Verdict v;
    const auto ch = parse_noise("depolarizing:0.2", 2);
    const auto r = harness_confidence(ch.channel, kwise_config(), 500);
    v.check(r.pass, fmt::format("{}/{} within eps, fraction {:.4f} >= threshold {:.4f}", r.successes, r.repeats,
                                r.fraction, r.threshold));
    return v;
}

Verdict ledger_ordering() {
    Verdict v;
    const auto ch = parse_noise("depolarizing:0.2", 2);
    auto cfg = kwise_config();
    const auto kw = run_estimator(ch.channel, cfg);
    cfg.algorithm = Algorithm::DesignIid;
    const auto iid = run_estimator(ch.channel, cfg);
    v.check(kw.ledger.total() < iid.ledger.total(),
            fmt::format("ledger kwise {} < iid {}", kw.ledger.total(), iid.ledger.total()));
    const auto planned = plan_estimation(kwise_config(), 2);
    const auto expect = tape_seed_length(planned.tape_k_bits, planned.tape_bits, *planned.theta);
    v.check(kw.ledger.total() == planned.tape_seed_bits && planned.tape_seed_bits == expect,
            fmt::format("ledger {} == planned r {} (reference formula {:.1f})", kw.ledger.total(), expect,
                        planned.reference_seed_bits));
    return v;
}

Verdict planner_arithmetic() {
    Verdict v;
    const auto kp = kwise_parameters(0.2, 0.5);
    v.check(kp.n == 400 && kp.k == 12,
            fmt::format("kwise eps=0.2 delta=0.5: n={} k={} (expected n=400 k=12)", kp.n, kp.k));
    bool raised = false;
    std::string msg;
    try {
        check_single_qtpe_dimension(0.2, 0.5, 2);
    } catch (const PreconditionError &e) {
        raised = true;
        msg = e.what();
    }
    v.check(raised, fmt::format("single-qtpe d=2 raises PreconditionError: {}", msg));
    const auto a = two_phase_parameters(0.2, 0.5, 1024);
    v.check(a.l == 5 && a.t == 250, fmt::format("two-phase d=1024: l={} t={} (expected 5, 250)", a.l, a.t));
    const auto b = two_phase_parameters(0.2, 0.5, 1 << 20);
    v.check(b.t == 1, fmt::format("two-phase d=2^20: t={} (expected 1, phase 2 draws no tape bits)", b.t));
    return v;
}

Verdict bound_suite() {
    Verdict v;
    const std::vector<std::string> channels{"depolarizing:0.2", "amplitude_damping:0.3", "over_rotation:z,0.5"};
    const std::vector<int> dims{2, 4};
    BoundSuiteOptions opts;
    for (const char *suite : {"variance", "tail", "moment", "prop1"}) {
        for (const auto &c : run_bound_suite(suite, channels, dims, opts)) {
            v.check(c.pass, fmt::format("{} {} d={} {}: empirical {:.4g} <= bound {:.4g} + {:.3g}{}", c.suite,
                                        c.channel, c.d, c.params, c.empirical, c.bound, c.slack,
                                        c.vacuous ? " (vacuous)" : ""));
        }
    }
    return v;
}

std::string run_cli(const std::vector<std::string> &args) {
    if (g_cli.empty()) {
        std::vector<std::string> full{"agf"};
        full.insert(full.end(), args.begin(), args.end());
        std::ostringstream out, err;
        const int code = cli::run(full, out, err);
        return fmt::format("exit={}\n{}", code, out.str());
    }
    std::string cmd = g_cli;
    for (const auto &a : args) cmd += " '" + a + "'";
    cmd += " 2>/dev/null";
    std::string text;
    FILE *pipe = popen(cmd.c_str(), "r");
    if (!pipe) return "popen failed";
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) text.append(buf, got);
    const int status = pclose(pipe);
    return fmt::format("exit={}\n{}", status, text);
}

Verdict cli_determinism() {
    Verdict v;
    const std::vector<std::vector<std::string>> cases{
        {"estimate", "--channel", "depolarizing:0.2", "--epsilon", "0.1", "--delta", "0.2", "--seed", "d5", "--emit-trials"},
        {"estimate", "--algorithm", "two-phase", "--epsilon", "0.2", "--delta", "0.5", "--seed", "d5", "--waive-preconditions",
         "--claimed-lambda", "0", "--format", "csv"},
        {"harness", "--channel", "amplitude_damping:0.3", "--epsilon", "0.1", "--delta", "0.2", "--repeats", "50",
         "--jobs", "2", "--seed", "d5"},
        {"check-design", "--ensemble", "clifford1q", "--t", "1,2,3,4"},
        {"validate", "--suite", "variance", "--channel", "depolarizing:0.2", "--d", "2", "--samples", "20000"},
        {"validate", "--suite", "prg", "--n", "16", "--k", "4", "--theta", "0.25"},
        {"gen-bits", "--k", "4", "--n", "64", "--theta", "2^-10", "--seed", "3a5c9f0d1b"},
    };
    for (const auto &args : cases) {
        const std::string first = run_cli(args), second = run_cli(args);
        const bool ran = first.rfind("exit=0\n", 0) == 0 && first.size() > 7;
        v.check(ran && first == second, fmt::format("{} ({} bytes{})", args[0], first.size(), ran ? "" : ", bad run"));
    }
    return v;
}

struct Criterion {
    int id;
    const char *name;
    double limit_s;
    std::function<Verdict()> fn;
};

}  // namespace

int main(int argc, char **argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--criterion" && i + 1 < argc) only = std::stoi(argv[++i]);
        else if (a == "--cli" && i + 1 < argc) g_cli = argv[++i];
        else {
            fmt::print(stderr, "usage: agf_acceptance [--criterion N] [--cli PATH]\n");
            return 2;
        }
    }
    const std::vector<Criterion> all{
        {1, "oracle exactness", 1, oracle_exactness},
        {2, "Haar convergence", 30, haar_convergence},
        {3, "design exactness", 1, design_exactness},
        {4, "spectral checker", 10, spectral_checker},
        {5, "PRG exhaustive bias", 300, prg_exhaustive},
        {6, "k-wise estimator contract", 300, kwise_contract},
        {7, "ledger ordering", 60, ledger_ordering},
        {8, "planner arithmetic", 1, planner_arithmetic},
        {9, "bound suite", 600, bound_suite},
        {10, "CLI determinism", 600, cli_determinism},
    };
    bool all_pass = true;
    for (const auto &c : all) {
        if (only && c.id != only) continue;
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.fn();
        } catch (const std::exception &e) {
            v.check(false, fmt::format("threw: {}", e.what()));
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        v.check(secs <= c.limit_s, fmt::format("runtime {:.2f} s (limit {:.0f} s)", secs, c.limit_s));
        all_pass = all_pass && v.pass;
        fmt::print("criterion {:2}: {} {}\n", c.id, v.pass ? "PASS" : "FAIL", c.name);
        for (const auto &d : v.details) fmt::print("    {}\n", d);
        std::fflush(stdout);
    }
    return all_pass ? 0 : 1;
}
