// Copyright 2026 The gpcqc Authors
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

#include "gpcqc/lcu.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "gpcqc/error.hpp"
#include "gpcqc/qsp.hpp"

namespace gpcqc {

namespace {

void check_cap(std::size_t width, const char *what) {
    if (width > kMaxSimQubits)
        throw WidthCapError(std::string(what) + ": width " + std::to_string(width) + " exceeds cap " +
                                std::to_string(kMaxSimQubits),
                            width, kMaxSimQubits);
}

std::vector<std::uint32_t> ancilla_qubits(const LcuPlan &plan) {
    std::vector<std::uint32_t> q(plan.ancilla_count);
    for (std::size_t b = 0; b < plan.ancilla_count; ++b) q[b] = static_cast<std::uint32_t>(plan.data_width + b);
    return q;
}

std::vector<double> magnitudes(const LcuPlan &plan) {
    std::vector<double> a;
    a.reserve(plan.terms.size());
    for (const auto &t : plan.terms) a.push_back(t.magnitude);
    return a;
}

}  // namespace

std::size_t ancilla_count_for(std::size_t terms) {
    std::size_t a = 0;
    while ((std::size_t{1} << a) < terms) ++a;
    return a;
}

LcuPlan make_lcu_plan(std::vector<LcuTerm> terms, ExpansionKind kind, std::vector<MultiIndex> indices) {
    if (terms.empty()) throw DomainError("LCU plan needs at least one term");
    std::size_t width = 0;
    for (const auto &t : terms) width = std::max(width, t.circuit.num_qubits());
    LcuPlan plan;
    plan.kind = kind;
    plan.indices = std::move(indices);
    plan.data_width = width;
    for (auto &t : terms) {
        if (t.sign != 1 && t.sign != -1) throw DomainError("LCU term sign must be +1 or -1");
        LcuTerm term{t.magnitude, t.sign, t.circuit.widened(width)};
        if (t.sign < 0) term.circuit.phase(std::numbers::pi);
        plan.l1_norm += t.magnitude;
        plan.terms.push_back(std::move(term));
    }
    plan.ancilla_count = ancilla_count_for(plan.terms.size());
    validate_plan(plan);
    return plan;
}

void validate_plan(const LcuPlan &plan) {
    if (plan.terms.empty()) throw DomainError("LCU plan has no terms");
    if (!plan.indices.empty() && plan.indices.size() != plan.terms.size())
        throw DomainError("LCU plan index list does not match its terms");
    double l1 = 0.0;
    for (const auto &t : plan.terms) {
        if (!(t.magnitude >= 0.0) || !std::isfinite(t.magnitude))
            throw DomainError("LCU magnitudes must be finite and non-negative");
        if (t.circuit.num_qubits() != plan.data_width)
            throw DomainError("LCU sub-circuits must share the data width");
        l1 += t.magnitude;
    }
    if (!(l1 > 0.0)) throw DomainError("LCU plan has zero l1 norm");
    if (std::abs(l1 - plan.l1_norm) > 1e-12 * std::max(1.0, l1))
        throw DomainError("LCU plan l1_norm does not match its magnitudes");
    if (plan.ancilla_count != ancilla_count_for(plan.terms.size()))
        throw DomainError("LCU ancilla count must be ceil(log2 T)");
}

MatrixXc build_state_prep(std::span<const double> a) {
    if (a.empty()) throw DomainError("state prep needs at least one magnitude");
    double l1 = 0.0;
    for (double v : a) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("state prep magnitudes must be non-negative");
        l1 += v;
    }
    if (!(l1 > 0.0)) throw DomainError("state prep magnitudes are all zero");
    const std::size_t dim = std::size_t{1} << ancilla_count_for(a.size());
    const auto n = static_cast<Eigen::Index>(dim);

    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t j = 0; j < a.size(); ++j) f(static_cast<Eigen::Index>(j), 0) = std::sqrt(a[j] / l1);
    f.col(0).normalize();

    Eigen::Index filled = 1;
    Eigen::VectorXd w(n);
    for (Eigen::Index i = 0; i < n && filled < n; ++i) {
        w.setZero();
        w(i) = 1.0;
        for (int pass = 0; pass < 2; ++pass)
            for (Eigen::Index k = 0; k < filled; ++k) w -= f.col(k).dot(w) * f.col(k);
        const double norm = w.norm();
        // Any residual below this is one of at most a few nearly dependent vectors.
        if (norm < 1e-3) continue;
        f.col(filled++) = w / norm;
    }
    if (filled != n) throw Error("state prep completion failed");
    return f.cast<Complex>();
}

Circuit build_controlled_unitary(const LcuPlan &plan, bool enforce_cap) {
    validate_plan(plan);
    const std::size_t width = plan.total_width();
    if (enforce_cap) check_cap(width, "controlled unitary");
    const auto controls = ancilla_qubits(plan);
    Circuit uc(width);
    for (std::size_t j = 0; j < plan.terms.size(); ++j) {
        const Circuit &sub = plan.terms[j].circuit;
        if (sub.empty()) continue;
        const Circuit block = sub.widened(width);
        if (controls.empty()) {
            for (const auto &g : block.ops()) uc.append(g);
            continue;
        }
        std::vector<bool> pattern(controls.size());
        for (std::size_t b = 0; b < controls.size(); ++b) pattern[b] = ((j >> b) & 1U) != 0;
        uc.controlled(block, controls, pattern);
    }
    return uc;
}

Circuit assemble_wlcu(const LcuPlan &plan, bool enforce_cap) {
    const Circuit uc = build_controlled_unitary(plan, enforce_cap);
    if (plan.ancilla_count == 0) return uc;
    const MatrixXc f = build_state_prep(magnitudes(plan));
    const auto anc = ancilla_qubits(plan);
    Circuit w(plan.total_width());
    // F carries the T - 1 free amplitudes; F^dagger reuses them.
    w.unitary(anc, f, static_cast<std::uint32_t>(plan.terms.size() - 1));
    for (const auto &g : uc.ops()) w.append(g);
    w.unitary(anc, f.adjoint(), 0);
    return w;
}

HadamardResult hadamard_test(const Circuit &w, const StateVector &input, std::span<const double> y,
                             std::optional<ShotSpec> shots) {
    if (input.num_qubits() != w.num_qubits())
        throw DomainError("hadamard_test: input width does not match the circuit");
    const std::size_t width = w.num_qubits() + 1;
    check_cap(width, "hadamard test");
    Circuit c(width);
    c.h(0);
    c.controlled(w.shifted(1, width), {0}, {true});
    c.h(0);

    StateVector psi(width);
    auto amps = psi.amplitudes();
    amps[0] = 0.0;
    const auto in = input.amplitudes();
    for (std::size_t i = 0; i < in.size(); ++i) amps[i << 1] = in[i];
    apply(c, psi, y);

    HadamardResult r;
    r.exact = z0_expectation(psi);
    r.p0 = std::clamp((1.0 + r.exact) / 2.0, 0.0, 1.0);
    if (shots) {
        if (shots->shots == 0) throw DomainError("hadamard_test: shot count must be positive");
        std::mt19937_64 engine(shots->seed);
        std::binomial_distribution<std::uint64_t> draw(shots->shots, r.p0);
        const double p0_hat = static_cast<double>(draw(engine)) / static_cast<double>(shots->shots);
        r.p0_hat = p0_hat;
        r.estimate = 2.0 * p0_hat - 1.0;
    }
    return r;
}

LcuPlan compile_expansion(const GpcExpansion &expansion) {
    if (expansion.empty()) throw DomainError("compile_expansion: empty expansion");
    const bool taylor = expansion.kind() == ExpansionKind::Taylor;
    const GpcExpansion classical =
        taylor || expansion.basis() == Basis::Classical ? expansion : convert_basis(expansion, Basis::Classical);
    std::vector<LcuTerm> terms;
    std::vector<MultiIndex> indices;
    terms.reserve(classical.size());
    indices.reserve(classical.size());
    for (const auto &[nu, c] : classical.terms()) {
        if (c == 0.0) continue;
        LcuTerm t;
        t.magnitude = std::abs(c);
        t.sign = c < 0.0 ? -1 : 1;
        t.circuit = taylor ? monomial_circuit(nu) : tensor_chebyshev_circuit(nu);
        terms.push_back(std::move(t));
        indices.push_back(nu);
    }
    if (terms.empty()) throw DomainError("compile_expansion: all coefficients are zero");
    return make_lcu_plan(std::move(terms), expansion.kind(), std::move(indices));
}

const char *to_string(EvalMode mode) {
    switch (mode) {
        case EvalMode::Amplitude: return "amplitude";
        case EvalMode::Hadamard: return "hadamard";
        case EvalMode::HadamardShots: return "hadamard-shots";
    }
    return "?";
}

LcuEvaluator::LcuEvaluator(const LcuPlan &plan) : wlcu_(assemble_wlcu(plan)), l1_(plan.l1_norm) {}

EvalResult LcuEvaluator::evaluate(std::span<const double> y, const EvalOptions &options) const {
    EvalResult r;
    switch (options.mode) {
        case EvalMode::Amplitude:
            r.value = l1_ * amp_00(wlcu_, y).real();
            break;
        case EvalMode::Hadamard:
            r.value = l1_ * hadamard_test(wlcu_, StateVector(wlcu_.num_qubits()), y).exact;
            break;
        case EvalMode::HadamardShots: {
            if (options.shots == 0) throw DomainError("evaluate: shot count must be positive");
            const auto h = hadamard_test(wlcu_, StateVector(wlcu_.num_qubits()), y,
                                         ShotSpec{options.shots, options.seed});
            r.value = l1_ * *h.estimate;
            r.stderr_value = l1_ / std::sqrt(static_cast<double>(options.shots));
            break;
        }
    }
    return r;
}

EvalResult evaluate(const LcuPlan &plan, std::span<const double> y, const EvalOptions &options) {
    return LcuEvaluator(plan).evaluate(y, options);
}

ResourceReport resource_report(const LcuPlan &plan, const CostModel &model) {
    validate_plan(plan);
    const Circuit w = assemble_wlcu(plan, false);
    const Metrics m = metrics(w, model);
    ResourceReport r;
    r.data_width = plan.data_width;
    r.ancilla_width = plan.ancilla_count;
    r.ir_depth = m.depth;
    r.modeled_depth = m.modeled_depth;
    r.size = m.size;
    r.terms = plan.terms.size();
    r.l1_norm = plan.l1_norm;
    for (const auto &nu : plan.indices) {
        r.max_nu0 = std::max(r.max_nu0, nu.nnz());
        r.max_nu1 = std::max(r.max_nu1, nu.l1());
        r.max_nuinf = std::max(r.max_nuinf, nu.linf());
    }
    for (const auto &t : plan.terms) r.max_term_depth = std::max(r.max_term_depth, metrics(t.circuit, model).depth);

    const double n = static_cast<double>(plan.terms.size());
    const double log2n = std::log2(std::max(n, 1.0));
    const double lnn = std::log(std::max(n, 1.0));
    if (plan.kind == ExpansionKind::Taylor) {
        r.reference.push_back({"width", "taylor", "1 + 2 log(n)", 1.0 + 2.0 * lnn});
        r.reference.push_back({"depth", "taylor", "1 + n log^2(n)", 1.0 + n * lnn * lnn});
    } else {
        const double d = static_cast<double>(std::max<std::size_t>(r.max_nu0, 1));
        r.reference.push_back({"width", "finite_dim", "d + log2(n)", d + log2n});
        r.reference.push_back({"depth", "finite_dim", "n^(1+1/d) log2(n)", std::pow(n, 1.0 + 1.0 / d) * log2n});
        r.reference.push_back({"depth", "per_term_sum", "n log2(n) max_nuinf",
                               n * log2n * static_cast<double>(r.max_nuinf)});
        r.reference.push_back({"width", "infinite_dim", "n", n});
        r.reference.push_back({"depth", "infinite_dim", "n + log(n)", n + lnn});
    }
    return r;
}

}  // namespace gpcqc
