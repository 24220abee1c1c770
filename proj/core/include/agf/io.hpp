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

#include <string>
#include <string_view>
#include <vector>

#include "agf/bounds.hpp"
#include "agf/ensembles.hpp"
#include "agf/estimators.hpp"
#include "agf/harness.hpp"

namespace agf {

/// {"d": int, "label": string, "unitaries": [ d x d arrays of [re, im] ]},
/// numbers written with 17 significant digits.
std::string ensemble_to_json(const UnitaryEnsemble &e);
/// Throws FormatError on malformed or unknown content (including weights),
/// ValidationError(index) for a member that is not unitary within 1e-8 or
/// has the wrong shape.
UnitaryEnsemble ensemble_from_json(std::string_view text);
void save_ensemble(const UnitaryEnsemble &e, const std::string &path);
UnitaryEnsemble load_ensemble(const std::string &path);

/// {algorithm, d, epsilon, delta, estimate, exact_reference, n_trials,
/// ledger: [{label, bits}], seed, elapsed_ms, trials?}, plus "diagnostic":
/// true for runs with waived preconditions. Trials appear when recorded.
std::string result_to_json(const EstimationResult &r);
/// Inverse of result_to_json for the serialized fields; rejects unknown keys.
EstimationResult result_from_json(std::string_view text);

std::string result_csv_header();
std::string result_csv_row(const EstimationResult &r);

std::string harness_csv_header();
std::string harness_csv_row(const HarnessReport &r);
std::string harness_to_json(const HarnessReport &r);

std::string design_report_to_json(const DesignReport &r);
std::string design_report_table(const DesignReport &r);

std::string bound_checks_table(const std::vector<BoundCheck> &checks);
std::string bound_checks_csv(const std::vector<BoundCheck> &checks);

/// Whole file as text; FormatError when it cannot be read.
std::string read_text_file(const std::string &path);
void write_text_file(const std::string &path, const std::string &text);

}  // namespace agf
