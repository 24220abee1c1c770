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

#include "agf/ensembles.hpp"
#include "agf/noise.hpp"
#include "agf/prg.hpp"
#include "agf/random.hpp"

namespace agf {

/// One one-sided check: pass iff empirical <= bound + slack, where slack is
/// three standard errors of the empirical side (or 1e-9 when it is exact).
struct BoundCheck {
    std::string suite;
    std::string channel;
    int d = 0;
    std::string params;
    double bound = 0.0;
    double empirical = 0.0;
    double slack = 0.0;
    bool vacuous = false;  // bound >= 1 on a probability
    bool pass = false;
};

struct BoundSuiteOptions {
    std::uint64_t samples = 100000;      // Haar draws for the variance check
    std::uint64_t tail_trials = 2000;    // t-averages per tail estimate
    std::uint64_t t = 16;                // unitaries per average
    double delta_prime = 0.05;           // deviation threshold of the tail checks
    std::uint64_t prop1_trials = 20000;
    Seed seed = Seed::from_key(0x5eed);
    TpeOptions tpe;
};

/// lambda_t of the ensemble, or the always-valid bound 1 = ||G - I||_inf
/// upper limit when the spectral computation is out of budget.
struct LambdaBound {
    double value = 1.0;
    bool trivial = true;
};
LambdaBound certified_lambda(const UnitaryEnsemble &e, int t, const TpeOptions &opts);

/// Clifford stand-in at dimension d: clifford1q for d = 2, a tensor power of
/// it for d = 2^q. Throws ConfigError otherwise.
UnitaryEnsemble suite_ensemble(int d);

/// E over the ensemble members of (F(V) - a)^l, summed exactly.
double ensemble_moment(const KrausChannel &ch, const UnitaryEnsemble &e, int l, double a);
/// Haar value of the same moment: <0^{2l}| I_{2l}(M^{⊗l}) |0^{2l}> with
/// M = sum_k A_k ⊗ A_k^dagger - a I.
double haar_moment(const KrausChannel &ch, int l, double a);

/// Var_V[F(V)] under Haar against 26/d.
BoundCheck check_variance(const NoiseModel &noise, const BoundSuiteOptions &opts);
/// Pr[|mean of t Haar fidelities - F| > delta'] against 4 exp(-delta'^2 d t / 256).
BoundCheck check_haar_tail(const NoiseModel &noise, const BoundSuiteOptions &opts);
/// Moment gap for l in {1, 2} and a in {0, F} against lambda_{2l} ((1+|a|) d)^l.
std::vector<BoundCheck> check_moment_gap(const NoiseModel &noise, const UnitaryEnsemble &e,
                                         const BoundSuiteOptions &opts);
/// Tail of t-averages over the ensemble against delta'^-2 (26/(d t) + lambda_4 (2d)^2).
BoundCheck check_prop1(const NoiseModel &noise, const UnitaryEnsemble &e, const BoundSuiteOptions &opts);

/// Generator checks: exhaustive k-wise audit at (k, n, theta), local
/// decoding against bulk output, the fully independent Chernoff tail and
/// the limited-independence tail.
std::vector<BoundCheck> run_prg_suite(std::uint64_t k, std::uint64_t n, Theta theta, const BoundSuiteOptions &opts);

/// `suite` is variance, tail, moment or prop1; runs it for every channel
/// spec at every dimension.
std::vector<BoundCheck> run_bound_suite(const std::string &suite, const std::vector<std::string> &channels,
                                        const std::vector<int> &dims, const BoundSuiteOptions &opts);

}  // namespace agf
