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

#include "agf/noise.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <fmt/format.h>

#include "agf/error.hpp"

namespace agf {

ComplexMatrix shift_operator(int d) {
    ComplexMatrix x = ComplexMatrix::Zero(d, d);
    for (int j = 0; j < d; ++j) x((j + 1) % d, j) = 1.0;
    return x;
}

ComplexMatrix clock_operator(int d) {
    ComplexMatrix z = ComplexMatrix::Zero(d, d);
    for (int j = 0; j < d; ++j) z(j, j) = std::polar(1.0, 2.0 * std::numbers::pi * j / d);
    return z;
}

namespace {

double parse_number(const std::string &kind, const std::string &text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument("bad");
        return v;
    } catch (const std::logic_error &) {
        throw ParameterError(fmt::format("{}: cannot parse parameter '{}'", kind, text));
    }
}

double probability(const std::string &kind, const std::vector<std::string> &params) {
    if (params.size() != 1) throw ParameterError(fmt::format("{} takes exactly one parameter", kind));
    const double p = parse_number(kind, params[0]);
    if (p < 0.0 || p > 1.0) throw ParameterError(fmt::format("{}: parameter {} outside [0, 1]", kind, p));
    return p;
}

ComplexMatrix two_level(int d, int axis, double angle) {
    // exp(-i a sigma / 2) = cos(a/2) I - i sin(a/2) sigma
    const double c = std::cos(angle / 2.0), s = std::sin(angle / 2.0);
    const Complex i1(0.0, 1.0);
    ComplexMatrix w = ComplexMatrix::Identity(d, d);
    switch (axis) {
        case 'x':
            w(0, 0) = c;
            w(1, 1) = c;
            w(0, 1) = -i1 * s;
            w(1, 0) = -i1 * s;
            break;
        case 'y':
            w(0, 0) = c;
            w(1, 1) = c;
            w(0, 1) = -s;
            w(1, 0) = s;
            break;
        default:
            w(0, 0) = std::polar(1.0, -angle / 2.0);
            w(1, 1) = std::polar(1.0, angle / 2.0);
    }
    return w;
}

int parse_axis(const std::string &kind, const std::string &text) {
    if (text == "x" || text == "y" || text == "z") return text[0];
    throw ParameterError(fmt::format("{}: axis must be x, y or z, got '{}'", kind, text));
}

double unitary_fidelity(const ComplexMatrix &w) {
    const double d = static_cast<double>(w.rows());
    return (std::norm(w.trace()) + d) / (d * d + d);
}

}  // namespace

NoiseModel noise_preset(const std::string &kind, const std::vector<std::string> &params, int d) {
    if (d < 1) throw ParameterError(fmt::format("dimension must be >= 1, got {}", d));
    const double dd = static_cast<double>(d);
    if (kind == "identity") {
        if (!params.empty()) throw ParameterError("identity takes no parameters");
        return {"identity", KrausChannel::identity(d), 1.0};
    }
    if (kind == "depolarizing") {
        const double p = probability(kind, params);
        std::vector<ComplexMatrix> ops;
        const ComplexMatrix x = shift_operator(d), z = clock_operator(d);
        ComplexMatrix xa = ComplexMatrix::Identity(d, d);
        for (int a = 0; a < d; ++a) {
            ComplexMatrix w = xa;
            for (int b = 0; b < d; ++b) {
                const double weight = (a == 0 && b == 0) ? 1.0 - p + p / (dd * dd) : p / (dd * dd);
                if (weight > 0.0) ops.push_back(std::sqrt(weight) * w);
                w = w * z;
            }
            xa = xa * x;
        }
        return {fmt::format("depolarizing:{}", params[0]), KrausChannel(std::move(ops)), 1.0 - p + p / dd};
    }
    if (kind == "dephasing") {
        const double p = probability(kind, params);
        std::vector<ComplexMatrix> ops{std::sqrt(1.0 - p) * ComplexMatrix::Identity(d, d)};
        if (p > 0.0) ops.push_back(std::sqrt(p) * clock_operator(d));
        // Tr Z = 0 for d >= 2; at d = 1 every channel is trivial.
        const double f = d == 1 ? 1.0 : (dd * (1.0 - p) + 1.0) / (dd + 1.0);
        if (d == 1) ops = {ComplexMatrix::Identity(1, 1)};
        return {fmt::format("dephasing:{}", params[0]), KrausChannel(std::move(ops)), f};
    }
    if (kind == "amplitude_damping") {
        const double g = probability(kind, params);
        std::vector<ComplexMatrix> ops;
        ComplexMatrix a0 = ComplexMatrix::Identity(d, d) * std::sqrt(1.0 - g);
        a0(0, 0) = 1.0;
        ops.push_back(a0);
        if (g > 0.0) {
            for (int j = 1; j < d; ++j) {
                ComplexMatrix aj = ComplexMatrix::Zero(d, d);
                aj(0, j) = std::sqrt(g);
                ops.push_back(aj);
            }
        }
        const double tr = 1.0 + (dd - 1.0) * std::sqrt(1.0 - g);
        return {fmt::format("amplitude_damping:{}", params[0]), KrausChannel(std::move(ops)),
                (tr * tr + dd) / (dd * dd + dd)};
    }
    if (kind == "over_rotation") {
        if (params.size() != 2) throw ParameterError("over_rotation takes an axis and an angle");
        if (d < 2) throw ParameterError("over_rotation needs d >= 2");
        const int axis = parse_axis(kind, params[0]);
        const double angle = parse_number(kind, params[1]);
        ComplexMatrix w = two_level(d, axis, angle);
        const double f = unitary_fidelity(w);
        return {fmt::format("over_rotation:{},{}", params[0], params[1]), KrausChannel::unitary(w), f};
    }
    if (kind == "unitary") {
        if (params.size() != 1) throw ParameterError("unitary takes one axis");
        const int axis = parse_axis(kind, params[0]);
        ComplexMatrix w;
        if (axis == 'x') {
            w = shift_operator(d);
        } else if (axis == 'z') {
            w = clock_operator(d);
        } else {
            w = Complex(0.0, 1.0) * shift_operator(d) * clock_operator(d);
        }
        const double f = unitary_fidelity(w);
        return {fmt::format("unitary:{}", params[0]), KrausChannel::unitary(w), f};
    }
    throw ConfigError(fmt::format("unknown channel kind '{}'", kind));
}

NoiseModel parse_noise(const std::string &spec, int d, int max_dim) {
    if (d < 1 || d > max_dim) throw ParameterError(fmt::format("dimension {} outside 1..{}", d, max_dim));
    if (spec.empty()) throw ConfigError("empty channel spec");
    std::vector<std::string> terms;
    std::stringstream ss(spec);
    for (std::string term; std::getline(ss, term, '+');) terms.push_back(term);
    if (spec.back() == '+') terms.emplace_back();

    std::optional<NoiseModel> acc;
    for (const auto &term : terms) {
        if (term.empty()) throw ConfigError(fmt::format("empty term in channel spec '{}'", spec));
        const auto colon = term.find(':');
        const std::string kind = term.substr(0, colon);
        std::vector<std::string> params;
        if (colon != std::string::npos) {
            std::stringstream ps(term.substr(colon + 1));
            for (std::string p; std::getline(ps, p, ',');) params.push_back(p);
            if (params.empty()) throw ConfigError(fmt::format("missing parameters in '{}'", term));
        }
        NoiseModel m = noise_preset(kind, params, d);
        if (!acc) {
            acc = std::move(m);
        } else {
            acc = NoiseModel{acc->spec + "+" + m.spec, KrausChannel::compose(acc->channel, m.channel), std::nullopt};
        }
    }
    return std::move(*acc);
}

std::vector<std::string> standard_noise_specs() {
    return {"depolarizing:0.2", "amplitude_damping:0.3", "over_rotation:z,0.5", "dephasing:0.25", "unitary:x"};
}

}  // namespace agf
