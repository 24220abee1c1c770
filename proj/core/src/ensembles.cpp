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

#include "agf/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>

#include "agf/error.hpp"

namespace agf {

UnitaryEnsemble::UnitaryEnsemble(std::string label, std::vector<UnitaryOperator> members)
    : label_(std::move(label)), members_(std::move(members)) {
    if (members_.empty()) {
        throw ValidationError("ensemble needs at least one unitary");
    }
    dim_ = members_.front().dim();
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (members_[i].dim() != dim_) {
            throw ValidationError("ensemble member " + std::to_string(i) + " has dimension " +
                                      std::to_string(members_[i].dim()) + ", expected " + std::to_string(dim_),
                                  static_cast<long>(i));
        }
    }
    size_ = members_.size();
}

UnitaryEnsemble UnitaryEnsemble::product(std::string label, std::vector<UnitaryEnsemble> factors) {
    if (factors.empty()) {
        throw ValidationError("product ensemble needs at least one factor");
    }
    UnitaryEnsemble out;
    out.label_ = std::move(label);
    out.dim_ = 1;
    out.size_ = 1;
    for (auto &f : factors) {
        if (f.is_product()) {
            throw ValidationError("product factors must be explicit ensembles");
        }
        if (out.size_ > (std::size_t{1} << 40) / f.size()) {
            throw CapacityError("product ensemble is too large to index");
        }
        out.dim_ *= f.dim();
        out.size_ *= f.size();
    }
    out.factors_ = std::move(factors);
    return out;
}

UnitaryOperator UnitaryEnsemble::member(std::size_t i) const {
    if (i >= size_) {
        throw ParameterError("ensemble index " + std::to_string(i) + " out of range");
    }
    if (factors_.empty()) {
        return members_[i];
    }
    std::vector<std::size_t> digits(factors_.size());
    for (std::size_t f = factors_.size(); f-- > 0;) {
        digits[f] = i % factors_[f].size();
        i /= factors_[f].size();
    }
    ComplexMatrix m = ComplexMatrix::Identity(1, 1);
    for (std::size_t f = 0; f < factors_.size(); ++f) {
        m = kron(m, factors_[f].members_[digits[f]].matrix());
    }
    return UnitaryOperator(std::move(m), 1e-9);
}

namespace {

ComplexMatrix normalize_phase(ComplexMatrix m) {
    // First nonzero entry in row-major order becomes positive real.
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            const double mag = std::abs(m(i, j));
            if (mag > 1e-9) {
                m *= std::conj(m(i, j)) / mag;
                return m;
            }
        }
    }
    return m;
}

std::vector<long long> phase_key(const ComplexMatrix &m) {
    std::vector<long long> key;
    key.reserve(static_cast<std::size_t>(2 * m.size()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            key.push_back(std::llround(m(i, j).real() * 1e8));
            key.push_back(std::llround(m(i, j).imag() * 1e8));
        }
    }
    return key;
}

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
    ComplexMatrix m(2, 2);
    m << a, b, c, d;
    return m;
}

std::vector<UnitaryOperator> group_closure(const std::vector<ComplexMatrix> &generators, int d) {
    std::vector<UnitaryOperator> out;
    std::set<std::vector<long long>> seen;
    std::deque<ComplexMatrix> queue;
    ComplexMatrix id = ComplexMatrix::Identity(d, d);
    seen.insert(phase_key(id));
    queue.push_back(id);
    while (!queue.empty()) {
        ComplexMatrix g = std::move(queue.front());
        queue.pop_front();
        out.emplace_back(g, 1e-9);
        for (const auto &gen : generators) {
            ComplexMatrix h = normalize_phase(gen * g);
            auto key = phase_key(h);
            if (seen.insert(std::move(key)).second) {
                queue.push_back(std::move(h));
            }
        }
    }
    return out;
}

}  // namespace

UnitaryEnsemble clifford1q() {
    const double r = 1.0 / std::sqrt(2.0);
    const Complex i(0.0, 1.0);
    const ComplexMatrix h = mat2(r, r, r, -r);
    const ComplexMatrix s = mat2(1.0, 0.0, 0.0, i);
    return UnitaryEnsemble("clifford1q", group_closure({h, s}, 2));
}

UnitaryEnsemble pauli1q() {
    const Complex i(0.0, 1.0);
    std::vector<UnitaryOperator> m;
    m.emplace_back(mat2(1.0, 0.0, 0.0, 1.0));
    m.emplace_back(mat2(0.0, 1.0, 1.0, 0.0));
    m.emplace_back(mat2(0.0, -i, i, 0.0));
    m.emplace_back(mat2(1.0, 0.0, 0.0, -1.0));
    return UnitaryEnsemble("pauli1q", std::move(m));
}

UnitaryEnsemble builtin_ensemble(std::string_view name, int d) {
    if (name == "clifford1q") return clifford1q();
    if (name == "pauli1q") return pauli1q();
    if (name == "identity_only") {
        if (d < 1) throw ConfigError("identity_only needs d >= 1");
        return UnitaryEnsemble("identity_only", {UnitaryOperator::identity(d)});
    }
    for (std::string_view prefix : {std::string_view("clifford_product:"), std::string_view("pauli_product:")}) {
        if (name.substr(0, prefix.size()) == prefix) {
            const std::string count(name.substr(prefix.size()));
            int q = 0;
            try {
                std::size_t used = 0;
                q = std::stoi(count, &used);
                if (used != count.size()) q = 0;
            } catch (const std::exception &) {
                q = 0;
            }
            if (q < 1 || q > 8) {
                throw ConfigError("ensemble '" + std::string(name) + "': qubit count must be in [1, 8]");
            }
            const bool cliff = prefix.front() == 'c';
            std::vector<UnitaryEnsemble> factors(static_cast<std::size_t>(q), cliff ? clifford1q() : pauli1q());
            return UnitaryEnsemble::product(std::string(name), std::move(factors));
        }
    }
    throw ConfigError("unknown ensemble '" + std::string(name) + "'");
}

MomentOperator::MomentOperator(const UnitaryEnsemble &e, int t, std::size_t entry_cap) : dim_(e.dim()), t_(t) {
    if (t < 1) {
        throw ParameterError("tensor power must be >= 1");
    }
    side_ = checked_pow(static_cast<std::size_t>(dim_), t, std::size_t{1} << 20);
    if (side_ * side_ > entry_cap / std::max<std::size_t>(e.size(), 1)) {
        throw CapacityError("moment operator: " + std::to_string(e.size()) + " members of side " +
                            std::to_string(side_) + " exceed the entry cap");
    }
    powers_.reserve(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
        powers_.push_back(kron_power(e.member(i).matrix(), t));
    }
}

ComplexMatrix MomentOperator::apply(const ComplexMatrix &m) const {
    if (static_cast<std::size_t>(m.rows()) != side_ || static_cast<std::size_t>(m.cols()) != side_) {
        throw DimensionError("moment operator input has the wrong shape");
    }
    ComplexMatrix out = ComplexMatrix::Zero(m.rows(), m.cols());
    for (const auto &k : powers_) {
        out.noalias() += k * m * k.adjoint();
    }
    return out / static_cast<double>(powers_.size());
}

ComplexMatrix MomentOperator::apply_adjoint(const ComplexMatrix &m) const {
    if (static_cast<std::size_t>(m.rows()) != side_ || static_cast<std::size_t>(m.cols()) != side_) {
        throw DimensionError("moment operator input has the wrong shape");
    }
    ComplexMatrix out = ComplexMatrix::Zero(m.rows(), m.cols());
    for (const auto &k : powers_) {
        out.noalias() += k.adjoint() * m * k;
    }
    return out / static_cast<double>(powers_.size());
}

ComplexMatrix MomentOperator::dense(std::size_t dense_cap) const {
    const std::size_t rows = side_ * side_;
    if (rows > dense_cap) {
        throw CapacityError("dense moment operator needs " + std::to_string(rows) + " rows; cap is " +
                            std::to_string(dense_cap));
    }
    const auto n = static_cast<Eigen::Index>(rows);
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    for (const auto &k : powers_) {
        out += kron(k, k.conjugate());
    }
    return out / static_cast<double>(powers_.size());
}

int cycle_count(std::span<const int> perm) {
    std::vector<bool> seen(perm.size(), false);
    int cycles = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        ++cycles;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
            seen[j] = true;
        }
    }
    return cycles;
}

HaarTwirlProjector::HaarTwirlProjector(int d, int t, int max_t) : dim_(d), t_(t) {
    if (t < 1 || t > max_t) {
        throw CapacityError("Haar twirl projector supports 1 <= t <= " + std::to_string(max_t) + ", got " +
                            std::to_string(t));
    }
    if (d < 1) {
        throw ParameterError("dimension must be >= 1");
    }
    side_ = checked_pow(static_cast<std::size_t>(d), t, std::size_t{1} << 24);

    std::vector<int> p(static_cast<std::size_t>(t));
    std::iota(p.begin(), p.end(), 0);
    do {
        perms_.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));

    const std::size_t np = perms_.size();
    std::vector<std::uint32_t> digits(static_cast<std::size_t>(t));
    std::vector<std::uint32_t> moved(static_cast<std::size_t>(t));
    maps_.assign(np, std::vector<std::uint32_t>(side_));
    for (std::size_t j = 0; j < side_; ++j) {
        std::size_t x = j;
        for (int k = t - 1; k >= 0; --k) {
            digits[static_cast<std::size_t>(k)] = static_cast<std::uint32_t>(x % static_cast<std::size_t>(d));
            x /= static_cast<std::size_t>(d);
        }
        for (std::size_t a = 0; a < np; ++a) {
            for (int k = 0; k < t; ++k) {
                moved[static_cast<std::size_t>(perms_[a][static_cast<std::size_t>(k)])] = digits[static_cast<std::size_t>(k)];
            }
            std::size_t idx = 0;
            for (int k = 0; k < t; ++k) {
                idx = idx * static_cast<std::size_t>(d) + moved[static_cast<std::size_t>(k)];
            }
            maps_[a][j] = static_cast<std::uint32_t>(idx);
        }
    }

    gram_.resize(static_cast<Eigen::Index>(np), static_cast<Eigen::Index>(np));
    std::vector<int> inv(static_cast<std::size_t>(t));
    std::vector<int> comp(static_cast<std::size_t>(t));
    for (std::size_t a = 0; a < np; ++a) {
        for (int k = 0; k < t; ++k) inv[static_cast<std::size_t>(perms_[a][static_cast<std::size_t>(k)])] = k;
        for (std::size_t b = 0; b < np; ++b) {
            for (int k = 0; k < t; ++k) comp[static_cast<std::size_t>(k)] = inv[static_cast<std::size_t>(perms_[b][static_cast<std::size_t>(k)])];
            gram_(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = std::pow(static_cast<double>(d), cycle_count(comp));
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram_);
    const double top = es.eigenvalues().maxCoeff();
    Eigen::VectorXd inv_ev = Eigen::VectorXd::Zero(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < inv_ev.size(); ++i) {
        if (es.eigenvalues()(i) > 1e-10 * top) {
            inv_ev(i) = 1.0 / es.eigenvalues()(i);
            ++rank_;
        }
    }
    gram_pinv_ = es.eigenvectors() * inv_ev.asDiagonal() * es.eigenvectors().transpose();
}

ComplexMatrix HaarTwirlProjector::permutation_operator(std::size_t index) const {
    const auto n = static_cast<Eigen::Index>(side_);
    ComplexMatrix p = ComplexMatrix::Zero(n, n);
    for (std::size_t j = 0; j < side_; ++j) {
        p(static_cast<Eigen::Index>(maps_[index][j]), static_cast<Eigen::Index>(j)) = 1.0;
    }
    return p;
}

ComplexMatrix HaarTwirlProjector::apply(const ComplexMatrix &m) const {
    if (static_cast<std::size_t>(m.rows()) != side_ || static_cast<std::size_t>(m.cols()) != side_) {
        throw DimensionError("twirl projector input has the wrong shape");
    }
    const std::size_t np = perms_.size();
    Eigen::VectorXcd b(static_cast<Eigen::Index>(np));
    for (std::size_t a = 0; a < np; ++a) {
        Complex s = 0.0;
        for (std::size_t j = 0; j < side_; ++j) {
            s += m(static_cast<Eigen::Index>(maps_[a][j]), static_cast<Eigen::Index>(j));
        }
        b(static_cast<Eigen::Index>(a)) = s;
    }
    const Eigen::VectorXcd c = gram_pinv_.cast<Complex>() * b;
    ComplexMatrix out = ComplexMatrix::Zero(m.rows(), m.cols());
    for (std::size_t a = 0; a < np; ++a) {
        for (std::size_t j = 0; j < side_; ++j) {
            out(static_cast<Eigen::Index>(maps_[a][j]), static_cast<Eigen::Index>(j)) += c(static_cast<Eigen::Index>(a));
        }
    }
    return out;
}

ComplexMatrix HaarTwirlProjector::dense(std::size_t dense_cap) const {
    const std::size_t rows = side_ * side_;
    if (rows > dense_cap) {
        throw CapacityError("dense twirl projector needs " + std::to_string(rows) + " rows; cap is " +
                            std::to_string(dense_cap));
    }
    const std::size_t np = perms_.size();
    ComplexMatrix v = ComplexMatrix::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(np));
    for (std::size_t a = 0; a < np; ++a) {
        for (std::size_t j = 0; j < side_; ++j) {
            v(static_cast<Eigen::Index>(maps_[a][j] * side_ + j), static_cast<Eigen::Index>(a)) = 1.0;
        }
    }
    return v * gram_pinv_.cast<Complex>() * v.adjoint();
}

namespace {

DesignReportEntry lambda_dense(const MomentOperator &g, const HaarTwirlProjector &p, const TpeOptions &opts) {
    const ComplexMatrix a = g.dense(opts.dense_cap) - p.dense(opts.dense_cap);
    Eigen::BDCSVD<ComplexMatrix> svd(a);
    DesignReportEntry e;
    e.t = g.tensor_power();
    e.lambda = svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
    e.method = "dense-svd";
    return e;
}

DesignReportEntry lambda_power(const MomentOperator &g, const HaarTwirlProjector &p, const TpeOptions &opts) {
    const auto n = static_cast<Eigen::Index>(g.side());
    CounterStream rng(0x5eed0f7a3b1dULL);
    ComplexMatrix x(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const double re = rng.uniform() - 0.5;
            const double im = rng.uniform() - 0.5;
            x(i, j) = Complex(re, im);
        }
    }
    x /= x.norm();

    DesignReportEntry e;
    e.t = g.tensor_power();
    e.method = "power-iteration";
    double mu = 0.0;
    for (int it = 1; it <= opts.max_iterations; ++it) {
        const ComplexMatrix y = g.apply(x) - p.apply(x);
        const ComplexMatrix z = g.apply_adjoint(y) - p.apply(y);
        mu = y.squaredNorm();
        const double residual = (z - mu * x).norm();
        const double zn = z.norm();
        e.iterations = it;
        e.residual = residual;
        if (zn < 1e-14 || residual <= opts.tolerance * std::max(1.0, mu)) {
            e.lambda = std::sqrt(std::max(mu, 0.0));
            return e;
        }
        x = z / zn;
    }
    throw ConvergenceError("power iteration did not converge in " + std::to_string(opts.max_iterations) +
                               " iterations (residual " + std::to_string(e.residual) + ")",
                           e.residual);
}

}  // namespace

DesignReportEntry tpe_lambda(const UnitaryEnsemble &e, int t, const TpeOptions &opts) {
    HaarTwirlProjector proj(e.dim(), t);
    const std::size_t rows = proj.side() * proj.side();
    LambdaMethod method = opts.method;
    if (method == LambdaMethod::Auto) {
        method = rows <= opts.dense_cap ? LambdaMethod::DenseSvd : LambdaMethod::PowerIteration;
    }
    if (method == LambdaMethod::PowerIteration) {
        const double side = static_cast<double>(proj.side());
        const double work = static_cast<double>(e.size()) * side * side * side;
        if (work > opts.work_cap) {
            throw CapacityError("matrix-free lambda for " + e.label() + " at t=" + std::to_string(t) +
                                " needs ~" + std::to_string(work) + " flops per iteration; cap is " +
                                std::to_string(opts.work_cap));
        }
    }
    MomentOperator g(e, t);
    return method == LambdaMethod::DenseSvd ? lambda_dense(g, proj, opts) : lambda_power(g, proj, opts);
}

DesignEpsilon design_epsilon_from_lambda(double lambda2, int d) {
    if (lambda2 < 0.0) {
        throw ParameterError("lambda must be non-negative");
    }
    const double d4 = std::pow(static_cast<double>(d), 4);
    DesignEpsilon out;
    out.epsilon = lambda2 * d4;
    out.vacuous = out.epsilon > 2.0;
    return out;
}

DesignReport check_design(const UnitaryEnsemble &e, std::span<const int> ts, const TpeOptions &opts) {
    DesignReport report;
    report.label = e.label();
    report.d = e.dim();
    report.s = e.size();
    for (int t : ts) {
        report.rows.push_back(tpe_lambda(e, t, opts));
        if (t == 2) {
            report.epsilon2 = design_epsilon_from_lambda(report.rows.back().lambda, e.dim());
        }
    }
    return report;
}

}  // namespace agf
