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

#include "agf/estimators.hpp"

#include <chrono>
#include <cmath>
#include <unordered_map>

#include <fmt/format.h>

#include "agf/error.hpp"

namespace agf {

namespace {

constexpr double kExactDesignLambda = 1e-10;

void check_eps_delta(double epsilon, double delta) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw ParameterError(fmt::format("epsilon must lie in (0, 1), got {}", epsilon));
    if (!(delta > 0.0 && delta < 1.0)) throw ParameterError(fmt::format("delta must lie in (0, 1), got {}", delta));
}

std::uint64_t to_count(double x) {
    if (!(x >= 0.0) || x > 9.0e18) throw CapacityError(fmt::format("planned count {} is out of range", x));
    return static_cast<std::uint64_t>(x);
}

// Either waive a failed precondition into a warning, or throw.
void precondition(EstimationPlan &plan, bool waive, const std::string &message) {
    if (!waive) throw PreconditionError(message);
    plan.diagnostic = true;
    plan.warnings.push_back("waived: " + message);
}

const UnitaryEnsemble &require_ensemble(const EstimationConfig &cfg, int d) {
    if (!cfg.ensemble) {
        throw ParameterError(fmt::format("{} needs an ensemble", algorithm_name(cfg.algorithm)));
    }
    if (cfg.ensemble->dim() != d) {
        throw DimensionError(fmt::format("ensemble '{}' has d = {} but the channel has d = {}", cfg.ensemble->label(),
                                         cfg.ensemble->dim(), d));
    }
    return *cfg.ensemble;
}

std::optional<DesignReportEntry> try_lambda(const UnitaryEnsemble &e, int t, const TpeOptions &opts) {
    try {
        return tpe_lambda(e, t, opts);
    } catch (const CapacityError &) {
        return std::nullopt;
    }
}

// Places a k-wise tape of n indices of the given width into the plan.
void plan_index_tape(EstimationPlan &plan, std::uint64_t n, std::uint64_t k, Theta theta, unsigned width) {
    plan.k_indices = k;
    plan.theta = theta;
    plan.tape_bits = n * width;
    plan.tape_k_bits = k * width;
    plan.tape_seed_bits = width == 0 ? 0 : tape_seed_length(plan.tape_k_bits, plan.tape_bits, theta);
}

}  // namespace

std::string_view algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::NaiveHaar:
            return "naive-haar";
        case Algorithm::DesignIid:
            return "iid-design";
        case Algorithm::KwiseDesign:
            return "kwise-design";
        case Algorithm::SingleQtpe:
            return "single-qtpe";
        case Algorithm::TwoPhase:
            return "two-phase";
    }
    return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
    for (auto a : {Algorithm::NaiveHaar, Algorithm::DesignIid, Algorithm::KwiseDesign, Algorithm::SingleQtpe,
                   Algorithm::TwoPhase}) {
        if (algorithm_name(a) == name) return a;
    }
    throw ConfigError(fmt::format("unknown algorithm '{}'", name));
}

bool basic_procedure(const KrausChannel &ch, const UnitaryOperator &v, MeasurementStream &meas) {
    return meas.uniform() < gate_fidelity(ch, v);
}

std::uint64_t chernoff_trials(double epsilon, double delta) {
    check_eps_delta(epsilon, delta);
    return to_count(planner_ceil(3.0 / (epsilon * epsilon) * std::log(2.0 / delta)));
}

KwiseParameters kwise_parameters(double epsilon, double delta, std::optional<std::uint64_t> n_override) {
    check_eps_delta(epsilon, delta);
    KwiseParameters p;
    p.n = n_override ? *n_override : to_count(planner_ceil(16.0 * std::log2(2.0 / delta) / (epsilon * epsilon)));
    const double e2n = epsilon * epsilon * static_cast<double>(p.n);
    p.k = to_count(planner_ceil(std::exp(-1.0 / 3.0) * e2n));
    if (p.k < 2 || p.k > p.n) {
        throw ParameterError(fmt::format("k = ceil(e^(-1/3) eps^2 n) = {} is outside [2, n = {}]", p.k, p.n));
    }
    p.theta = Theta::from_log2_inv(std::log2(2.0 / delta) + e2n / 4.0 * std::log2(static_cast<double>(p.n) / epsilon));
    return p;
}

std::uint64_t single_qtpe_trials(double epsilon, double delta) {
    check_eps_delta(epsilon, delta);
    return to_count(planner_ceil(12.0 * std::log2(4.0 / delta) / (epsilon * epsilon)));
}

void check_single_qtpe_dimension(double epsilon, double delta, int d) {
    const double lhs = 108.0 / (epsilon * epsilon * d);
    const double rhs = delta / 2.0;
    if (!(lhs < rhs)) {
        throw PreconditionError(fmt::format(
            "precondition 108/(eps^2 d) < delta/2 fails: 108/({}^2 * {}) = {:.6g} >= {:.6g} (needs d > {:.6g})", epsilon, d, lhs,
            rhs, 216.0 / (epsilon * epsilon * delta)));
    }
}

TwoPhaseParameters two_phase_parameters(double epsilon, double delta, int d, std::optional<std::uint64_t> n_override) {
    check_eps_delta(epsilon, delta);
    if (d < 1) throw ParameterError("dimension must be >= 1");
    const double e2 = epsilon * epsilon;
    TwoPhaseParameters p;
    p.l = to_count(planner_ceil(std::log2(16.0 / delta)));
    p.t = to_count(planner_ceil(2048.0 * static_cast<double>(p.l) / (e2 * d)));
    p.log2_lambda = static_cast<double>(p.l) * std::log2(e2 / (32.0 * d * static_cast<double>(d)));
    p.n = n_override ? *n_override : to_count(planner_ceil(16.0 * std::log2(4.0 / delta) / e2));
    const double e2n = e2 * static_cast<double>(p.n);
    p.theta =
        Theta::from_log2_inv(std::log2(4.0 / delta) + e2n / 16.0 * std::log2(static_cast<double>(p.n) / epsilon));
    p.k = to_count(planner_ceil(std::exp(-1.0 / 3.0) * e2n / 4.0));
    p.reference_r = e2n * std::log2(static_cast<double>(p.t)) + 2.0 * p.theta.log2_inv();
    return p;
}

void check_two_phase_dimension(double epsilon, double delta, int d) {
    check_eps_delta(epsilon, delta);
    const double lhs = 4.0 * std::log2(16.0 / delta);
    const double rhs = d <= 1 ? INFINITY : std::pow(static_cast<double>(d), 1.0 / 6.0) / (10.0 * std::log2(d));
    if (!(lhs < rhs)) {
        throw PreconditionError(fmt::format(
            "precondition 4 log(16/delta) < d^(1/6) / (10 log d) fails: {:.6g} >= {:.6g} at d = {}", lhs, rhs, d));
    }
}

EstimationPlan plan_estimation(const EstimationConfig &cfg, int d) {
    check_eps_delta(cfg.epsilon, cfg.delta);
    if (d < 1) throw ParameterError("dimension must be >= 1");
    EstimationPlan plan;
    plan.algorithm = cfg.algorithm;
    plan.d = d;
    plan.statistical_epsilon = cfg.epsilon;
    const double eps = cfg.epsilon, delta = cfg.delta;

    switch (cfg.algorithm) {
        case Algorithm::NaiveHaar: {
            plan.n = cfg.n_override ? *cfg.n_override : chernoff_trials(eps, delta);
            break;
        }
        case Algorithm::DesignIid: {
            const auto &e = require_ensemble(cfg, d);
            plan.s = e.size();
            plan.index_width = index_width(plan.s);
            const auto row = try_lambda(e, 2, cfg.tpe);
            if (row) {
                plan.lambda = row->lambda;
            } else if (cfg.claimed_lambda) {
                plan.lambda = *cfg.claimed_lambda;
                plan.warnings.push_back("lambda_2 too costly to compute; trusting the claimed value");
            } else {
                throw PlanningError("cannot certify the ensemble: lambda_2 is too costly to compute and none was claimed");
            }
            const bool exact = *plan.lambda <= kExactDesignLambda;
            plan.design_epsilon = design_epsilon_from_lambda(*plan.lambda, d).epsilon;
            if (!exact) {
                if (*plan.design_epsilon >= eps / 2.0) {
                    throw PlanningError(fmt::format(
                        "certified design epsilon lambda_2 d^4 = {} is not below epsilon/2 = {}; the ensemble is too "
                        "coarse for this target",
                        *plan.design_epsilon, eps / 2.0));
                }
                plan.statistical_epsilon = eps / 2.0;
            }
            plan.n = cfg.n_override ? *cfg.n_override : chernoff_trials(plan.statistical_epsilon, delta);
            break;
        }
        case Algorithm::KwiseDesign: {
            const auto &e = require_ensemble(cfg, d);
            plan.s = e.size();
            plan.index_width = index_width(plan.s);
            const auto kp = kwise_parameters(eps, delta, cfg.n_override);
            plan.n = kp.n;
            plan_index_tape(plan, kp.n, kp.k, kp.theta, plan.index_width);
            plan.reference_seed_bits = static_cast<double>(sampling_seed_length(eps, kp.n, plan.s, kp.theta));
            if (static_cast<double>(plan.tape_seed_bits) > plan.reference_seed_bits) {
                plan.warnings.push_back(fmt::format("implemented seed length {} exceeds the sampling formula's {}",
                                                    plan.tape_seed_bits, plan.reference_seed_bits));
            }
            if (const auto row = try_lambda(e, 2, cfg.tpe)) {
                plan.lambda = row->lambda;
                const double e2 = design_epsilon_from_lambda(row->lambda, d).epsilon;
                if (row->lambda > kExactDesignLambda && e2 >= eps / 2.0) {
                    plan.warnings.push_back(fmt::format(
                        "ensemble is not certified as an eps/2-approximate 2-design (lambda_2 d^4 = {})", e2));
                }
                plan.design_epsilon = e2;
            }
            break;
        }
        case Algorithm::SingleQtpe: {
            const auto &e = require_ensemble(cfg, d);
            plan.s = e.size();
            plan.index_width = index_width(plan.s);
            try {
                check_single_qtpe_dimension(eps, delta, d);
            } catch (const PreconditionError &err) {
                precondition(plan, cfg.waive_preconditions, err.what());
            }
            plan.n = cfg.n_override ? *cfg.n_override : single_qtpe_trials(eps, delta);
            const double required = 1.0 / (4.0 * d * static_cast<double>(d) * d);
            if (const auto row = try_lambda(e, 4, cfg.tpe)) {
                plan.lambda = row->lambda;
                if (cfg.claimed_lambda && *cfg.claimed_lambda + 1e-9 < row->lambda) {
                    plan.warnings.push_back(
                        fmt::format("claimed lambda {} is below the computed lambda_4 = {}", *cfg.claimed_lambda, row->lambda));
                }
            } else if (cfg.claimed_lambda) {
                plan.lambda = *cfg.claimed_lambda;
                plan.warnings.push_back("lambda_4 too costly to compute; trusting the claimed value");
            } else {
                plan.warnings.push_back("lambda_4 too costly to compute and none claimed; qTPE property unverified");
            }
            if (plan.lambda && *plan.lambda > required) {
                precondition(plan, cfg.waive_preconditions,
                             fmt::format("qTPE requirement lambda_4 <= 1/(4 d^3) = {} fails: lambda_4 = {}", required,
                                         *plan.lambda));
            }
            break;
        }
        case Algorithm::TwoPhase: {
            const auto &e = require_ensemble(cfg, d);
            plan.s = e.size();
            plan.index_width = index_width(plan.s);
            const auto tp = two_phase_parameters(eps, delta, d, cfg.n_override);
            try {
                check_two_phase_dimension(eps, delta, d);
            } catch (const PreconditionError &err) {
                precondition(plan, cfg.waive_preconditions, err.what());
            }
            plan.l = tp.l;
            plan.t = tp.t;
            plan.n = tp.n;
            if (tp.t > cfg.t_cap) {
                throw CapacityError(fmt::format("phase 1 size t = {} exceeds the cap {}", tp.t, cfg.t_cap));
            }
            const double required_log2 = tp.log2_lambda;
            if (cfg.claimed_lambda) {
                plan.lambda = *cfg.claimed_lambda;
                if (std::log2(*cfg.claimed_lambda) > required_log2) {
                    precondition(plan, cfg.waive_preconditions,
                                 fmt::format("qTPE requirement lambda <= (eps^2/(2^5 d^2))^l = 2^{} fails: claimed {}",
                                             required_log2, *cfg.claimed_lambda));
                }
                plan.warnings.push_back(fmt::format("lambda_{} cannot be computed; trusting the claimed value", 4 * tp.l));
            } else {
                plan.warnings.push_back(
                    fmt::format("lambda_{} cannot be computed and none claimed; qTPE property unverified", 4 * tp.l));
            }
            if (tp.t > 1) {
                const unsigned wt = index_width(tp.t);
                if (tp.k < 2) throw ParameterError(fmt::format("phase 2 k = {} is below 2", tp.k));
                plan_index_tape(plan, tp.n, tp.k, tp.theta, wt);
                plan.reference_seed_bits = tp.reference_r;
            } else {
                plan.theta = tp.theta;
                plan.k_indices = tp.k;
            }
            break;
        }
    }
    if (plan.n == 0) throw ParameterError("planned trial count is zero");
    return plan;
}

namespace {

class FidelityCache {
   public:
    FidelityCache(const KrausChannel &ch, const UnitaryEnsemble &e) : ch_(ch), e_(e) {}
    double operator()(std::uint64_t i) {
        auto it = memo_.find(i);
        if (it != memo_.end()) return it->second;
        const double p = gate_fidelity(ch_, e_.member(static_cast<std::size_t>(i)));
        memo_.emplace(i, p);
        return p;
    }

   private:
    const KrausChannel &ch_;
    const UnitaryEnsemble &e_;
    std::unordered_map<std::uint64_t, double> memo_;
};

struct Recorder {
    EstimationResult &result;
    bool keep;
    MeasurementStream &meas;
    void trial(std::uint64_t i, std::uint64_t id, double p) {
        const bool b = meas.uniform() < p;
        result.successes += b ? 1 : 0;
        if (keep) result.trials.push_back({i, id, p, b});
    }
};

}  // namespace

EstimationResult run_estimator(const KrausChannel &ch, const EstimationConfig &cfg, EntropySource &entropy,
                               MeasurementStream &meas) {
    const auto start = std::chrono::steady_clock::now();
    const int d = ch.dim();
    EstimationResult result;
    result.plan = plan_estimation(cfg, d);
    const EstimationPlan &plan = result.plan;
    result.algorithm = cfg.algorithm;
    result.d = d;
    result.epsilon = cfg.epsilon;
    result.delta = cfg.delta;
    result.seed = cfg.seed.hex();
    result.exact_reference = exact_average_fidelity(ch);
    result.n_trials = plan.n;
    result.diagnostic = plan.diagnostic;

    if (cfg.check_assumptions) {
        const bool half = cfg.algorithm == Algorithm::SingleQtpe || cfg.algorithm == Algorithm::TwoPhase;
        const double bound = half ? result.exact_reference / 2.0 : result.exact_reference;
        if (!(cfg.epsilon < bound)) {
            precondition(result.plan, cfg.waive_preconditions,
                         fmt::format("assumption eps < {} fails: {} >= {}", half ? "F/2" : "F", cfg.epsilon, bound));
            result.diagnostic = true;
        }
    }

    if (cfg.emit_trials) result.trials.reserve(plan.n);
    Recorder rec{result, cfg.emit_trials, meas};

    switch (cfg.algorithm) {
        case Algorithm::NaiveHaar: {
            for (std::uint64_t i = 0; i < plan.n; ++i) {
                const UnitaryOperator v = haar_random_unitary(d, entropy);
                rec.trial(i, i, gate_fidelity(ch, v));
            }
            result.ledger.record("haar_unitaries", plan.n * haar_sample_bits(d));
            break;
        }
        case Algorithm::DesignIid: {
            FidelityCache fid(ch, *cfg.ensemble);
            for (std::uint64_t i = 0; i < plan.n; ++i) {
                const std::uint64_t idx = draw_index(entropy, plan.s);
                rec.trial(i, idx, fid(idx));
            }
            result.ledger.record("ensemble_indices", plan.n * plan.index_width);
            break;
        }
        case Algorithm::KwiseDesign: {
            FidelityCache fid(ch, *cfg.ensemble);
            std::vector<std::uint64_t> indices(plan.n, 0);
            if (plan.index_width > 0) {
                const BitString seed = entropy.take_bitstring(plan.tape_seed_bits);
                const BiasedTape tape = generate_tape(plan.tape_k_bits, plan.tape_bits, *plan.theta, seed);
                indices = sample_indices(tape, plan.s, plan.n).indices;
            }
            for (std::uint64_t i = 0; i < plan.n; ++i) rec.trial(i, indices[i], fid(indices[i]));
            result.ledger.record("tape_seed", plan.tape_seed_bits);
            break;
        }
        case Algorithm::SingleQtpe: {
            const std::uint64_t idx = draw_index(entropy, plan.s);
            const double p = gate_fidelity(ch, cfg.ensemble->member(static_cast<std::size_t>(idx)));
            for (std::uint64_t i = 0; i < plan.n; ++i) rec.trial(i, idx, p);
            result.ledger.record("unitary_index", plan.index_width);
            break;
        }
        case Algorithm::TwoPhase: {
            FidelityCache fid(ch, *cfg.ensemble);
            std::vector<std::uint64_t> chosen(plan.t);
            for (auto &c : chosen) c = draw_index(entropy, plan.s);
            result.ledger.record("phase1_indices", plan.t * plan.index_width);
            std::vector<std::uint64_t> positions(plan.n, 0);
            if (plan.t > 1) {
                const BitString seed = entropy.take_bitstring(plan.tape_seed_bits);
                const BiasedTape tape = generate_tape(plan.tape_k_bits, plan.tape_bits, *plan.theta, seed);
                positions = sample_indices(tape, plan.t, plan.n).indices;
            }
            result.ledger.record("phase2_tape_seed", plan.tape_seed_bits);
            for (std::uint64_t i = 0; i < plan.n; ++i) {
                const std::uint64_t id = chosen[positions[i]];
                rec.trial(i, id, fid(id));
            }
            break;
        }
    }

    result.estimate = static_cast<double>(result.successes) / static_cast<double>(plan.n);
    if (cfg.timing) {
        result.elapsed_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    return result;
}

EstimationResult run_estimator(const KrausChannel &ch, const EstimationConfig &cfg) {
    EntropySource entropy(derive_key(cfg.seed.key(), 1));
    MeasurementStream meas(derive_key(cfg.seed.key(), 2));
    return run_estimator(ch, cfg, entropy, meas);
}

namespace {

EstimationConfig base_config(Algorithm a, double epsilon, double delta, std::shared_ptr<const UnitaryEnsemble> e,
                             const Seed &seed) {
    EstimationConfig cfg;
    cfg.algorithm = a;
    cfg.epsilon = epsilon;
    cfg.delta = delta;
    cfg.ensemble = std::move(e);
    cfg.seed = seed;
    return cfg;
}

}  // namespace

EstimationResult estimate_naive_haar(const KrausChannel &ch, double epsilon, double delta, const Seed &seed) {
    return run_estimator(ch, base_config(Algorithm::NaiveHaar, epsilon, delta, nullptr, seed));
}

EstimationResult estimate_design_iid(const KrausChannel &ch, double epsilon, double delta,
                                     std::shared_ptr<const UnitaryEnsemble> ensemble, const Seed &seed) {
    return run_estimator(ch, base_config(Algorithm::DesignIid, epsilon, delta, std::move(ensemble), seed));
}

EstimationResult estimate_kwise_design(const KrausChannel &ch, double epsilon, double delta,
                                       std::shared_ptr<const UnitaryEnsemble> ensemble, const Seed &seed) {
    return run_estimator(ch, base_config(Algorithm::KwiseDesign, epsilon, delta, std::move(ensemble), seed));
}

EstimationResult estimate_single_qtpe(const KrausChannel &ch, double epsilon, double delta,
                                      std::shared_ptr<const UnitaryEnsemble> ensemble,
                                      std::optional<double> claimed_lambda, const Seed &seed,
                                      bool waive_preconditions) {
    auto cfg = base_config(Algorithm::SingleQtpe, epsilon, delta, std::move(ensemble), seed);
    cfg.claimed_lambda = claimed_lambda;
    cfg.waive_preconditions = waive_preconditions;
    return run_estimator(ch, cfg);
}

EstimationResult estimate_two_phase(const KrausChannel &ch, double epsilon, double delta,
                                    std::shared_ptr<const UnitaryEnsemble> ensemble,
                                    std::optional<double> claimed_lambda, const Seed &seed,
                                    bool waive_preconditions) {
    auto cfg = base_config(Algorithm::TwoPhase, epsilon, delta, std::move(ensemble), seed);
    cfg.claimed_lambda = claimed_lambda;
    cfg.waive_preconditions = waive_preconditions;
    return run_estimator(ch, cfg);
}

}  // namespace agf
