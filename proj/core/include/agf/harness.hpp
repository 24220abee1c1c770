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
#include <string>
#include <vector>

#include "agf/estimators.hpp"

namespace agf {

struct HarnessReport {
    Algorithm algorithm = Algorithm::NaiveHaar;
    double epsilon = 0.0;
    double delta = 0.0;
    double reference = 0.0;
    std::uint64_t repeats = 0;
    std::uint64_t successes = 0;  // runs with |estimate - reference| <= epsilon
    double fraction = 0.0;
    /// 1 - delta - 3 sqrt(delta (1 - delta) / repeats)
    double threshold = 0.0;
    bool pass = false;
    std::uint64_t n_trials = 0;
    std::uint64_t ledger_bits = 0;  // of repeat 0; every repeat spends the same
    std::vector<double> estimates;  // by repeat index
};

double harness_threshold(double delta, std::uint64_t repeats);

/// Runs `repeats` independent estimations with seeds base.seed.split(i).
/// Repeats are spread over `jobs` threads; the report does not depend on
/// the thread count.
HarnessReport harness_confidence(const KrausChannel &ch, const EstimationConfig &base, std::uint64_t repeats,
                                 unsigned jobs = 1);

/// Runs fn(i) for i in [0, count) on `jobs` threads, rethrowing the first
/// exception by index.
template <class Fn>
void parallel_for(std::uint64_t count, unsigned jobs, Fn &&fn);

}  // namespace agf

#include "agf/detail/parallel.hpp"
