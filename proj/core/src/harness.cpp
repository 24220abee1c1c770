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

#include "agf/harness.hpp"

#include <cmath>

namespace agf {

double harness_threshold(double delta, std::uint64_t repeats) {
    return 1.0 - delta - 3.0 * std::sqrt(delta * (1.0 - delta) / static_cast<double>(repeats));
}

HarnessReport harness_confidence(const KrausChannel &ch, const EstimationConfig &base, std::uint64_t repeats,
                                 unsigned jobs) {
    HarnessReport report;
    report.algorithm = base.algorithm;
    report.epsilon = base.epsilon;
    report.delta = base.delta;
    report.repeats = repeats;
    report.reference = exact_average_fidelity(ch);
    report.estimates.assign(repeats, 0.0);

    // Planning errors surface here, before any threads start.
    const EstimationPlan plan = plan_estimation(base, ch.dim());
    report.n_trials = plan.n;

    std::vector<std::uint64_t> ledgers(repeats, 0);
    parallel_for(repeats, jobs, [&](std::uint64_t i) {
        EstimationConfig cfg = base;
        cfg.seed = base.seed.split(i);
        cfg.emit_trials = false;
        cfg.timing = false;
        const EstimationResult r = run_estimator(ch, cfg);
        report.estimates[i] = r.estimate;
        ledgers[i] = r.ledger.total();
    });
    for (double e : report.estimates) {
        if (std::abs(e - report.reference) <= base.epsilon) ++report.successes;
    }
    report.ledger_bits = repeats ? ledgers[0] : 0;
    report.fraction = repeats ? static_cast<double>(report.successes) / static_cast<double>(repeats) : 0.0;
    report.threshold = harness_threshold(base.delta, repeats);
    report.pass = repeats > 0 && report.fraction >= report.threshold;
    return report;
}

}  // namespace agf
