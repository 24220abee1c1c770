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

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "agf/ensembles.hpp"
#include "agf/prg.hpp"
#include "agf/quantum.hpp"
#include "agf/random.hpp"

namespace agf {

enum class Algorithm { NaiveHaar, DesignIid, KwiseDesign, SingleQtpe, TwoPhase };

/// naive-haar, iid-design, kwise-design, single-qtpe, two-phase.
std::string_view algorithm_name(Algorithm a);
Algorithm parse_algorithm(std::string_view name);

/// Prepare V|0>, apply the channel, undo V, measure |0><0| by strong
/// simulation: p = gate_fidelity(ch, v), then one uniform draw u and
/// success iff u < p.
bool basic_procedure(const KrausChannel &ch, const UnitaryOperator &v, MeasurementStream &meas);

// Planner arithmetic. Logs are base 2 except the Chernoff count, which
// comes from the natural-log tail 2 exp(-eps^2 n / 3).

/// n = ceil(3 eps^-2 ln(2/delta)).
std::uint64_t chernoff_trials(double epsilon, double delta);

struct KwiseParameters {
    std::uint64_t n = 0;  // ceil(16 log(2/delta) / eps^2)
    std::uint64_t k = 0;  // ceil(e^{-1/3} eps^2 n)
    Theta theta = Theta::exact();  // (delta/2) (eps/n)^{eps^2 n / 4}
};
/// Throws ParameterError when k falls outside [2, n]. `n_override` replaces
/// the planned n before k and theta are derived.
KwiseParameters kwise_parameters(double epsilon, double delta, std::optional<std::uint64_t> n_override = {});

/// n = ceil(12 log(4/delta) / eps^2).
std::uint64_t single_qtpe_trials(double epsilon, double delta);
/// Throws PreconditionError naming the inequality 108/(eps^2 d) < delta/2.
void check_single_qtpe_dimension(double epsilon, double delta, int d);

struct TwoPhaseParameters {
    std::uint64_t l = 0;          // ceil(log(16/delta))
    std::uint64_t t = 0;          // ceil(2^11 l / (eps^2 d))
    double log2_lambda = 0.0;     // l log(eps^2 / (2^5 d^2))
    std::uint64_t n = 0;          // ceil(16 log(4/delta) / eps^2)
    Theta theta = Theta::exact(); // (delta/4) (eps/n)^{eps^2 n / 16}
    std::uint64_t k = 0;          // ceil(e^{-1/3} (eps/2)^2 n)
    double reference_r = 0.0;     // eps^2 n log t + 2 log(1/theta)
};
TwoPhaseParameters two_phase_parameters(double epsilon, double delta, int d,
                                        std::optional<std::uint64_t> n_override = {});
/// 4 log(16/delta) < d^{1/6} / (10 log d); PreconditionError otherwise.
void check_two_phase_dimension(double epsilon, double delta, int d);

struct EstimationConfig {
    Algorithm algorithm = Algorithm::KwiseDesign;
    double epsilon = 0.05;
    double delta = 0.1;
    /// Required by every algorithm except naive-haar.
    std::shared_ptr<const UnitaryEnsemble> ensemble;
    /// qTPE lambda asserted by the caller, used when it cannot be computed.
    std::optional<double> claimed_lambda;
    Seed seed = Seed::from_key(0);
    /// Run algorithms 4 and 5 outside their stated regime; the result is
    /// flagged as diagnostic.
    bool waive_preconditions = false;
    /// Also check eps < F (or F/2) against the oracle.
    bool check_assumptions = false;
    bool emit_trials = false;
    /// Record wall-clock time; off by default so results are byte-stable.
    bool timing = false;
    std::optional<std::uint64_t> n_override;
    TpeOptions tpe;
    std::uint64_t t_cap = std::uint64_t{1} << 20;
};

/// Derived parameters of one run. Fields irrelevant to the algorithm stay 0.
struct EstimationPlan {
    Algorithm algorithm = Algorithm::NaiveHaar;
    int d = 0;
    std::uint64_t s = 0;
    std::uint64_t n = 0;
    double statistical_epsilon = 0.0;
    std::optional<double> lambda;          // measured or claimed qTPE / design lambda
    std::optional<double> design_epsilon;  // lambda_2 d^4 for iid-design
    unsigned index_width = 0;
    // k-wise tape (kwise-design and phase 2 of two-phase)
    std::uint64_t k_indices = 0;
    std::optional<Theta> theta;
    std::uint64_t tape_bits = 0;       // tape length n * width
    std::uint64_t tape_k_bits = 0;     // k * width
    std::uint64_t tape_seed_bits = 0;  // implemented r
    double reference_seed_bits = 0.0;  // formula r the implemented one is compared with
    // two-phase
    std::uint64_t l = 0;
    std::uint64_t t = 0;
    bool diagnostic = false;
    std::vector<std::string> warnings;
};

/// Plans a run for dimension d. Throws ParameterError, PlanningError,
/// PreconditionError or CapacityError as the algorithm dictates.
EstimationPlan plan_estimation(const EstimationConfig &cfg, int d);

struct TrialRecord {
    std::uint64_t index = 0;
    std::uint64_t unitary_id = 0;
    double probability = 0.0;
    bool bit = false;
    friend bool operator==(const TrialRecord &, const TrialRecord &) = default;
};

struct EstimationResult {
    Algorithm algorithm = Algorithm::NaiveHaar;
    int d = 0;
    double epsilon = 0.0;
    double delta = 0.0;
    double estimate = 0.0;
    double exact_reference = 0.0;
    std::uint64_t n_trials = 0;
    std::uint64_t successes = 0;
    RandomnessLedger ledger;
    std::string seed;
    double elapsed_ms = 0.0;
    bool diagnostic = false;
    std::vector<TrialRecord> trials;  // filled when emit_trials
    EstimationPlan plan;
};

/// Runs the configured algorithm. All ledgered randomness is drawn from an
/// EntropySource keyed by derive_key(seed, 1); measurement outcomes come
/// from derive_key(seed, 2).
EstimationResult run_estimator(const KrausChannel &ch, const EstimationConfig &cfg);

/// Same, with caller-owned streams so tests can audit every bit drawn.
EstimationResult run_estimator(const KrausChannel &ch, const EstimationConfig &cfg, EntropySource &entropy,
                               MeasurementStream &meas);

EstimationResult estimate_naive_haar(const KrausChannel &ch, double epsilon, double delta, const Seed &seed);
EstimationResult estimate_design_iid(const KrausChannel &ch, double epsilon, double delta,
                                     std::shared_ptr<const UnitaryEnsemble> ensemble, const Seed &seed);
EstimationResult estimate_kwise_design(const KrausChannel &ch, double epsilon, double delta,
                                       std::shared_ptr<const UnitaryEnsemble> ensemble, const Seed &seed);
EstimationResult estimate_single_qtpe(const KrausChannel &ch, double epsilon, double delta,
                                      std::shared_ptr<const UnitaryEnsemble> ensemble,
                                      std::optional<double> claimed_lambda, const Seed &seed,
                                      bool waive_preconditions = false);
EstimationResult estimate_two_phase(const KrausChannel &ch, double epsilon, double delta,
                                    std::shared_ptr<const UnitaryEnsemble> ensemble,
                                    std::optional<double> claimed_lambda, const Seed &seed,
                                    bool waive_preconditions = false);

}  // namespace agf
