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

#include "agf/bounds.hpp"

#include <bit>
#include <cmath>

#include <fmt/format.h>

#include "agf/error.hpp"

namespace agf {

namespace {

constexpr double kExactSlack = 1e-9;

BoundCheck make_check(std::string suite, const std::string &channel, int d, std::string params, double bound,
                      double empirical, double slack, bool probability) {
    BoundCheck c{std::move(suite), channel, d, std::move(params), bound, empirical, slack, false, false};
    c.vacuous = probability && bound >= 1.0;
    c.pass = empirical <= bound + slack;
    return c;
}

double proportion_sigma(double q, std::uint64_t trials) {
    return std::sqrt(q * (1.0 - q) / static_cast<double>(trials));
}

}  // namespace

LambdaBound certified_lambda(const UnitaryEnsemble &e, int t, const TpeOptions &opts) {
    try {
        return {tpe_lambda(e, t, opts).lambda, false};
    } catch (const CapacityError &) {
        return {1.0, true};
    }
}

UnitaryEnsemble suite_ensemble(int d) {
    if (d == 2) return clifford1q();
    if (d > 2 && std::has_single_bit(static_cast<unsigned>(d))) {
        return builtin_ensemble(fmt::format("clifford_product:{}", std::countr_zero(static_cast<unsigned>(d))), d);
    }
    throw ConfigError(fmt::format("no built-in Clifford ensemble at d = {}", d));
}

double ensemble_moment(const KrausChannel &ch, const UnitaryEnsemble &e, int l, double a) {
    double acc = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) acc += std::pow(gate_fidelity(ch, e.member(i)) - a, l);
    return acc / static_cast<double>(e.size());
}

double haar_moment(const KrausChannel &ch, int l, double a) {
    const int d = ch.dim();
    ComplexMatrix m = ComplexMatrix::Zero(d * d, d * d);
    for (const auto &k : ch.kraus_ops()) m += kron(k, k.adjoint());
    m -= a * ComplexMatrix::Identity(d * d, d * d);
    const ComplexMatrix ml = kron_power(m, l);
    const HaarTwirlProjector proj(d, 2 * l);
    return proj.apply(ml)(0, 0).real();
}

BoundCheck check_variance(const NoiseModel &noise, const BoundSuiteOptions &opts) {
    const int d = noise.channel.dim();
    EntropySource entropy(derive_key(opts.seed.key(), 11));
    std::vector<double> xs(opts.samples);
    double mean = 0.0;
    for (auto &x : xs) {
        x = gate_fidelity(noise.channel, haar_random_unitary(d, entropy));
        mean += x;
    }
    const double n = static_cast<double>(opts.samples);
    mean /= n;
    double m2 = 0.0, m4 = 0.0;
    for (double x : xs) {
        const double c = (x - mean) * (x - mean);
        m2 += c;
        m4 += c * c;
    }
    m2 /= n;
    m4 /= n;
    const double sigma = std::sqrt(std::max(0.0, m4 - m2 * m2) / n);
    return make_check("variance", noise.spec, d, fmt::format("samples={}", opts.samples), 26.0 / d, m2, 3.0 * sigma,
                      false);
}

BoundCheck check_haar_tail(const NoiseModel &noise, const BoundSuiteOptions &opts) {
    const int d = noise.channel.dim();
    const double fbar = exact_average_fidelity(noise.channel);
    EntropySource entropy(derive_key(opts.seed.key(), 12));
    std::uint64_t hits = 0;
    for (std::uint64_t j = 0; j < opts.tail_trials; ++j) {
        double avg = 0.0;
        for (std::uint64_t i = 0; i < opts.t; ++i) avg += gate_fidelity(noise.channel, haar_random_unitary(d, entropy));
        avg /= static_cast<double>(opts.t);
        if (std::abs(avg - fbar) > opts.delta_prime) ++hits;
    }
    const double q = static_cast<double>(hits) / static_cast<double>(opts.tail_trials);
    const double dp = opts.delta_prime;
    const double bound = 4.0 * std::exp(-dp * dp * d * static_cast<double>(opts.t) / 256.0);
    return make_check("tail", noise.spec, d,
                      fmt::format("t={} delta'={} trials={}", opts.t, dp, opts.tail_trials), bound, q,
                      3.0 * proportion_sigma(q, opts.tail_trials), true);
}

std::vector<BoundCheck> check_moment_gap(const NoiseModel &noise, const UnitaryEnsemble &e,
                                         const BoundSuiteOptions &opts) {
    const int d = noise.channel.dim();
    if (e.dim() != d) throw DimensionError("ensemble and channel dimensions differ");
    const double fbar = exact_average_fidelity(noise.channel);
    std::vector<BoundCheck> out;
    for (int l : {1, 2}) {
        const LambdaBound lam = certified_lambda(e, 2 * l, opts.tpe);
        for (double a : {0.0, fbar}) {
            const double gap = std::abs(ensemble_moment(noise.channel, e, l, a) - haar_moment(noise.channel, l, a));
            const double bound = lam.value * std::pow((1.0 + std::abs(a)) * d, l);
            out.push_back(make_check("moment", noise.spec, d,
                                     fmt::format("ensemble={} l={} a={:.6g} lambda_{}={:.6g}{}", e.label(), l, a,
                                                 2 * l, lam.value, lam.trivial ? " (trivial)" : ""),
                                     bound, gap, kExactSlack, false));
        }
    }
    return out;
}

BoundCheck check_prop1(const NoiseModel &noise, const UnitaryEnsemble &e, const BoundSuiteOptions &opts) {
    const int d = noise.channel.dim();
    if (e.dim() != d) throw DimensionError("ensemble and channel dimensions differ");
    const double fbar = exact_average_fidelity(noise.channel);
    std::vector<double> fid(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) fid[i] = gate_fidelity(noise.channel, e.member(i));

    EntropySource entropy(derive_key(opts.seed.key(), 13));
    std::uint64_t hits = 0;
    for (std::uint64_t j = 0; j < opts.prop1_trials; ++j) {
        double avg = 0.0;
        for (std::uint64_t i = 0; i < opts.t; ++i) avg += fid[draw_index(entropy, e.size())];
        avg /= static_cast<double>(opts.t);
        if (std::abs(avg - fbar) > opts.delta_prime) ++hits;
    }
    const double q = static_cast<double>(hits) / static_cast<double>(opts.prop1_trials);
    const LambdaBound lam = certified_lambda(e, 4, opts.tpe);
    const double dp = opts.delta_prime;
    const double bound =
        (26.0 / (d * static_cast<double>(opts.t)) + lam.value * 4.0 * d * static_cast<double>(d)) / (dp * dp);
    return make_check("prop1", noise.spec, d,
                      fmt::format("ensemble={} t={} delta'={} lambda_4={:.6g}{}", e.label(), opts.t, dp, lam.value,
                                  lam.trivial ? " (trivial)" : ""),
                      bound, q, 3.0 * proportion_sigma(q, opts.prop1_trials), true);
}

namespace {

// Fraction of repeats whose mean of g(Y_i) = [Y_i < 5], Y_i uniform on 16
// values drawn from `tape_for`, deviates from 5/16 by more than eps.
template <class TapeFor>
double deviation_rate(std::uint64_t repeats, std::uint64_t n, double eps, TapeFor &&tape_for) {
    constexpr std::uint64_t kSet = 16;
    constexpr double kP = 5.0 / 16.0;
    std::uint64_t hits = 0;
    for (std::uint64_t j = 0; j < repeats; ++j) {
        const BiasedTape tape = tape_for(j);
        const auto sample = sample_indices(tape, kSet, n);
        std::uint64_t ones = 0;
        for (auto y : sample.indices) ones += y < 5 ? 1 : 0;
        if (std::abs(static_cast<double>(ones) / static_cast<double>(n) - kP) > eps) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(repeats);
}

}  // namespace

std::vector<BoundCheck> run_prg_suite(std::uint64_t k, std::uint64_t n, Theta theta, const BoundSuiteOptions &opts) {
    std::vector<BoundCheck> out;
    const std::string label = fmt::format("n={} k={} theta={}", n, k, theta.to_string());

    const KwiseAudit audit = exhaustive_kwise_audit(k, n, theta);
    out.push_back(make_check("prg-exhaustive", "-", 0,
                             fmt::format("{} r={} seeds={} subsets={} max_bias={:.6g}", label, audit.plan.r,
                                         audit.seeds, audit.subsets, audit.max_bias),
                             theta.value(), audit.max_l1, 1e-12, false));

    {
        // Local decoding over a mid-sized tape.
        const std::uint64_t kk = 16, nn = 4000;
        const Theta th = Theta::from_log2_inv(40);
        EntropySource entropy(derive_key(opts.seed.key(), 21));
        const BitString seed = entropy.take_bitstring(tape_seed_length(kk, nn, th));
        const BiasedTape tape = generate_tape(kk, nn, th, seed);
        std::uint64_t mismatches = 0;
        for (std::uint64_t i = 1; i <= nn; ++i) mismatches += tape.bit(i) != decode_tape_bit(kk, nn, th, seed, i);
        out.push_back(make_check("prg-local-decoding", "-", 0, fmt::format("n={} k={} r={}", nn, kk, seed.size()),
                                 0.0, static_cast<double>(mismatches), 0.0, false));
    }

    const std::uint64_t repeats = 2000, trials = 1000;
    const double eps = 0.1;
    {
        const double rate = deviation_rate(repeats, trials, eps, [&](std::uint64_t j) {
            EntropySource entropy(derive_key(opts.seed.split(j).key(), 22));
            return BiasedTape::uniform(entropy.take_bitstring(trials * 4));
        });
        const double bound = 2.0 * std::exp(-eps * eps * static_cast<double>(trials) / 3.0);
        out.push_back(make_check("prg-independent-tail", "-", 0,
                                 fmt::format("n={} eps={} repeats={}", trials, eps, repeats), bound, rate,
                                 3.0 * proportion_sigma(rate, repeats), true));
    }
    {
        const double nn = static_cast<double>(trials);
        const auto kk = static_cast<std::uint64_t>(planner_ceil(std::exp(-1.0 / 3.0) * eps * eps * nn));
        // theta (n/eps)^k = 2^-10
        const Theta th = Theta::from_log2_inv(static_cast<double>(kk) * std::log2(nn / eps) + 10.0);
        const double rate = deviation_rate(repeats, trials, eps, [&](std::uint64_t j) {
            EntropySource entropy(derive_key(opts.seed.split(j).key(), 23));
            const std::uint64_t r = tape_seed_length(kk * 4, trials * 4, th);
            return generate_tape(kk * 4, trials * 4, th, entropy.take_bitstring(r));
        });
        const double bound = std::exp(-static_cast<double>(kk) / 2.0) + std::exp2(-10.0);
        out.push_back(make_check("prg-kwise-tail", "-", 0,
                                 fmt::format("n={} eps={} k={} repeats={}", trials, eps, kk, repeats), bound, rate,
                                 3.0 * proportion_sigma(rate, repeats), true));
    }
    return out;
}

std::vector<BoundCheck> run_bound_suite(const std::string &suite, const std::vector<std::string> &channels,
                                        const std::vector<int> &dims, const BoundSuiteOptions &opts) {
    if (suite != "variance" && suite != "tail" && suite != "moment" && suite != "prop1") {
        throw ConfigError(fmt::format("unknown bound suite '{}'", suite));
    }
    std::vector<BoundCheck> out;
    for (int d : dims) {
        for (const auto &spec : channels) {
            const NoiseModel noise = parse_noise(spec, d);
            if (suite == "variance") {
                out.push_back(check_variance(noise, opts));
            } else if (suite == "tail") {
                out.push_back(check_haar_tail(noise, opts));
            } else {
                const UnitaryEnsemble e = suite_ensemble(d);
                if (suite == "moment") {
                    for (auto &c : check_moment_gap(noise, e, opts)) out.push_back(std::move(c));
                } else {
                    out.push_back(check_prop1(noise, e, opts));
                }
            }
        }
    }
    return out;
}

}  // namespace agf
