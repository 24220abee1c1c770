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

#include <optional>
#include <string>
#include <vector>

#include "agf/quantum.hpp"

namespace agf {

/// Generalized Pauli X: |j> -> |j+1 mod d>.
ComplexMatrix shift_operator(int d);
/// Generalized Pauli Z: |j> -> omega^j |j>, omega = exp(2 pi i / d).
ComplexMatrix clock_operator(int d);

/// A preset channel together with its average fidelity in closed form where
/// one is known. Compositions carry no closed form; the Kraus oracle is the
/// reference for them.
struct NoiseModel {
    std::string spec;  // canonical text, re-parses to the same channel
    KrausChannel channel;
    std::optional<double> closed_form;
};

/// One preset. kinds and parameters:
///   identity
///   depolarizing:p         E(rho) = (1-p) rho + p I/d, Weyl Kraus set
///   dephasing:p            (1-p) rho + p Z rho Z^dagger, Z the clock operator
///   amplitude_damping:g    decay of every level j >= 1 into |0>
///   over_rotation:axis,a   exp(-i a sigma_axis / 2) on levels 0 and 1
///   unitary:axis           X (shift), Z (clock) or Y = i X Z
/// Throws ConfigError for unknown kinds, ParameterError for bad values.
NoiseModel noise_preset(const std::string &kind, const std::vector<std::string> &params, int d);

/// `kind[:p[,p]]` terms joined by '+', applied left to right.
NoiseModel parse_noise(const std::string &spec, int d, int max_dim = kDefaultMaxDimension);

/// Presets used by the validation suites and acceptance checks.
std::vector<std::string> standard_noise_specs();

}  // namespace agf
