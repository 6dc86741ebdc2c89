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

#include "gpcqc/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "gpcqc/error.hpp"

namespace gpcqc {

namespace {

using Index = std::uint64_t;

// Control condition accumulated through nested CONTROLLED gates.
struct Condition {
    Index mask = 0;
    Index value = 0;
    std::vector<std::uint32_t> qubits;  // control qubits, unsorted
};

// Spreads the bits of r over the positions not listed in fixed (sorted ascending).
inline Index deposit(Index r, std::span<const std::uint32_t> fixed) {
    for (auto p : fixed) {
        const Index low = r & ((Index{1} << p) - 1);
        r = ((r >> p) << (p + 1)) | low;
    }
    return r;
}

std::vector<std::uint32_t> fixed_positions(std::span<const std::uint32_t> targets, const Condition &cond) {
    std::vector<std::uint32_t> pos(targets.begin(), targets.end());
    pos.insert(pos.end(), cond.qubits.begin(), cond.qubits.end());
    std::sort(pos.begin(), pos.end());
    return pos;
}

void apply_1q(std::span<Complex> amps, std::size_t n, std::uint32_t target, const Matrix2c &m,
              const Condition &cond) {
    const std::uint32_t tq[1] = {target};
    const auto pos = fixed_positions(tq, cond);
    const Index count = Index{1} << (n - pos.size());
    const Index tbit = Index{1} << target;
    const Complex m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
    for (Index r = 0; r < count; ++r) {
        const Index i0 = deposit(r, pos) | cond.value;
        const Index i1 = i0 | tbit;
        const Complex a0 = amps[i0], a1 = amps[i1];
        amps[i0] = m00 * a0 + m01 * a1;
        amps[i1] = m10 * a0 + m11 * a1;
    }
}

void apply_dense(std::span<Complex> amps, std::size_t n, std::span<const std::uint32_t> targets,
                 const MatrixXc &m, const Condition &cond) {
    const auto pos = fixed_positions(targets, cond);
    const Index count = Index{1} << (n - pos.size());
    const std::size_t dim = std::size_t{1} << targets.size();
    std::vector<Index> offset(dim, 0);
    for (std::size_t s = 0; s < dim; ++s)
        for (std::size_t b = 0; b < targets.size(); ++b)
            if ((s >> b) & 1U) offset[s] |= Index{1} << targets[b];
    Eigen::VectorXcd in(static_cast<Eigen::Index>(dim)), out(static_cast<Eigen::Index>(dim));
    for (Index r = 0; r < count; ++r) {
        const Index base = deposit(r, pos) | cond.value;
        bool any = false;
        for (std::size_t s = 0; s < dim; ++s) {
            in[static_cast<Eigen::Index>(s)] = amps[base | offset[s]];
            any = any || in[static_cast<Eigen::Index>(s)] != Complex(0.0, 0.0);
        }
        if (!any) continue;
        out.noalias() = m * in;
        for (std::size_t s = 0; s < dim; ++s) amps[base | offset[s]] = out[static_cast<Eigen::Index>(s)];
    }
}

void apply_phase(std::span<Complex> amps, std::size_t n, double theta, const Condition &cond) {
    const Complex f = std::polar(1.0, theta);
    if (cond.qubits.empty()) {
        for (auto &a : amps) a *= f;
        return;
    }
    const auto pos = fixed_positions({}, cond);
    const Index count = Index{1} << (n - pos.size());
    for (Index r = 0; r < count; ++r) amps[deposit(r, pos) | cond.value] *= f;
}

void apply_ops(const Circuit &c, std::span<Complex> amps, std::size_t n, std::span<const double> y,
               const Condition &cond) {
    for (const auto &g : c.ops()) {
        switch (g.kind) {
            case GateKind::Phase:
                apply_phase(amps, n, g.param.resolve(y), cond);
                break;
            case GateKind::Unitary:
                apply_dense(amps, n, g.targets, *g.matrix, cond);
                break;
            case GateKind::Controlled: {
                Condition inner = cond;
                for (std::size_t i = 0; i < g.controls.size(); ++i) {
                    const Index bit = Index{1} << g.controls[i];
                    inner.mask |= bit;
                    if (g.pattern[i]) inner.value |= bit;
                    inner.qubits.push_back(g.controls[i]);
                }
                apply_ops(*g.block, amps, n, y, inner);
                break;
            }
            default:
                apply_1q(amps, n, g.targets[0], gate_matrix(g, y), cond);
                break;
        }
    }
}

void check_width(std::size_t n) {
    if (n > kMaxSimQubits)
        throw WidthCapError("statevector width " + std::to_string(n) + " exceeds cap " +
                                std::to_string(kMaxSimQubits),
                            n, kMaxSimQubits);
}

}  // namespace

StateVector::StateVector(std::size_t num_qubits) : num_qubits_(num_qubits) {
    check_width(num_qubits);
    amps_.assign(std::size_t{1} << num_qubits, Complex(0.0, 0.0));
    amps_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
    const std::size_t dim = amplitudes.size();
    if (dim == 0 || (dim & (dim - 1)) != 0) throw DomainError("amplitude count must be a power of two");
    std::size_t n = 0;
    while ((std::size_t{1} << n) < dim) ++n;
    check_width(n);
    StateVector s(0);
    s.num_qubits_ = n;
    s.amps_ = std::move(amplitudes);
    if (std::abs(s.norm() - 1.0) > 1e-12) throw DomainError("state is not normalized to 1e-12");
    return s;
}

StateVector StateVector::basis(std::size_t num_qubits, std::size_t index) {
    StateVector s(num_qubits);
    if (index >= s.dimension()) throw DomainError("basis index out of range");
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
}

double StateVector::norm() const {
    double sum = 0.0;
    for (const auto &a : amps_) sum += std::norm(a);
    return std::sqrt(sum);
}

void apply(const Circuit &circuit, StateVector &state, std::span<const double> y) {
    if (state.num_qubits() != circuit.num_qubits())
        throw DomainError("state has " + std::to_string(state.num_qubits()) + " qubits, circuit has " +
                          std::to_string(circuit.num_qubits()));
    apply_ops(circuit, state.amplitudes(), circuit.num_qubits(), y, Condition{});
}

StateVector run(const Circuit &circuit, const StateVector &input, std::span<const double> y) {
    StateVector out = input;
    apply(circuit, out, y);
    return out;
}

Complex amp_00(const Circuit &circuit, std::span<const double> y) {
    StateVector s(circuit.num_qubits());
    apply(circuit, s, y);
    return s[0];
}

double z0_expectation(const StateVector &state) {
    double p0 = 0.0, p1 = 0.0;
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (i & 1U)
            p1 += std::norm(amps[i]);
        else
            p0 += std::norm(amps[i]);
    }
    return std::clamp(p0 - p1, -1.0, 1.0);
}

double z0_expectation(const Circuit &circuit, std::span<const double> y) {
    StateVector s(circuit.num_qubits());
    apply(circuit, s, y);
    return z0_expectation(s);
}

MatrixXc circuit_matrix(const Circuit &circuit, std::span<const double> y) {
    const std::size_t n = circuit.num_qubits();
    if (n > 12) throw WidthCapError("circuit_matrix limited to 12 qubits", n, 12);
    const std::size_t dim = std::size_t{1} << n;
    MatrixXc m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) {
        const StateVector col = run(circuit, StateVector::basis(n, i), y);
        for (std::size_t r = 0; r < dim; ++r)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) = col[r];
    }
    return m;
}

}  // namespace gpcqc
