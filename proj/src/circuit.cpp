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

#include "gpcqc/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gpcqc/error.hpp"

namespace gpcqc {

namespace {

constexpr double kUnitaryTol = 1e-12;
constexpr double kDomainSlack = 1e-12;

void check_unitary(const MatrixXc &m, const char *what) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw DomainError(std::string(what) + ": matrix must be square");
    const MatrixXc defect = m.adjoint() * m - MatrixXc::Identity(m.rows(), m.cols());
    if (defect.cwiseAbs().maxCoeff() > kUnitaryTol)
        throw DomainError(std::string(what) + ": matrix is not unitary to 1e-12");
}

void check_qubit(std::uint32_t q, std::size_t width) {
    if (q >= width)
        throw DomainError("qubit " + std::to_string(q) + " out of range for width " + std::to_string(width));
}

Gate remap_gate(const Gate &g, std::span<const std::uint32_t> map, std::size_t new_width) {
    Gate out = g;
    for (auto &t : out.targets) t = map[t];
    for (auto &c : out.controls) c = map[c];
    if (g.block) out.block = std::make_shared<const Circuit>(g.block->remapped(map, new_width));
    return out;
}

Gate rebind_gate(const Gate &g, std::span<const std::int32_t> slot_map) {
    Gate out = g;
    if (out.param.bound()) {
        const auto s = static_cast<std::size_t>(out.param.slot);
        if (s >= slot_map.size()) throw DomainError("rebound: slot map too short");
        out.param.slot = slot_map[s];
    }
    if (g.block) out.block = std::make_shared<const Circuit>(g.block->rebound(slot_map));
    return out;
}

// Depth layering shared by IR and modeled depth.
struct Layering {
    std::vector<std::size_t> level;
    std::size_t depth = 0;

    explicit Layering(std::size_t width) : level(width, 0) {}

    void place(std::span<const std::uint32_t> qubits, std::size_t duration) {
        if (qubits.empty() || duration == 0) return;
        std::size_t start = 0;
        for (auto q : qubits) start = std::max(start, level[q]);
        const std::size_t end = start + duration;
        for (auto q : qubits) level[q] = end;
        depth = std::max(depth, end);
    }
};

std::size_t layered_depth(const Circuit &c, const CostModel &model, bool modeled);

std::size_t gate_duration(const Gate &g, const CostModel &model, bool modeled) {
    switch (g.kind) {
        case GateKind::Phase:
            return 0;
        case GateKind::Unitary:
            return modeled ? (std::size_t{1} << g.targets.size()) : 1;
        case GateKind::Controlled: {
            std::size_t d = layered_depth(*g.block, model, modeled);
            if (modeled)
                d += static_cast<std::size_t>(
                    std::ceil(model.ctrl_overhead * static_cast<double>(g.controls.size())));
            return d;
        }
        default:
            return 1;
    }
}

std::size_t layered_depth(const Circuit &c, const CostModel &model, bool modeled) {
    Layering layers(c.num_qubits());
    for (const auto &g : c.ops()) layers.place(g.qubits(), gate_duration(g, model, modeled));
    return layers.depth;
}

}  // namespace

double Param::resolve(std::span<const double> y) const {
    if (!bound()) return value;
    const auto s = static_cast<std::size_t>(slot);
    if (s >= y.size())
        throw DomainError("parameter slot y[" + std::to_string(s) + "] not provided");
    double x = y[s];
    if (!(std::abs(x) <= 1.0 + kDomainSlack))
        throw DomainError("parameter y[" + std::to_string(s) + "] outside [-1,1]");
    x = std::clamp(x, -1.0, 1.0);
    return value * std::acos(x);
}

const char *to_string(GateKind kind) {
    switch (kind) {
        case GateKind::RX: return "RX";
        case GateKind::RY: return "RY";
        case GateKind::RZ: return "RZ";
        case GateKind::H: return "H";
        case GateKind::X: return "X";
        case GateKind::Phase: return "PHASE";
        case GateKind::Generic1Q: return "GENERIC_1Q";
        case GateKind::Unitary: return "UNITARY";
        case GateKind::Controlled: return "CONTROLLED";
    }
    return "?";
}

std::vector<std::uint32_t> Gate::qubits() const {
    std::vector<std::uint32_t> q = targets;
    q.insert(q.end(), controls.begin(), controls.end());
    if (block)
        for (const auto &g : block->ops()) {
            auto inner = g.qubits();
            q.insert(q.end(), inner.begin(), inner.end());
        }
    std::sort(q.begin(), q.end());
    q.erase(std::unique(q.begin(), q.end()), q.end());
    return q;
}

Circuit &Circuit::append(Gate gate) {
    for (auto t : gate.targets) check_qubit(t, num_qubits_);
    switch (gate.kind) {
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ:
        case GateKind::H:
        case GateKind::X:
            if (gate.targets.size() != 1) throw DomainError("single-qubit gate needs exactly one target");
            break;
        case GateKind::Phase:
            if (!gate.targets.empty()) throw DomainError("PHASE takes no targets");
            break;
        case GateKind::Generic1Q:
            if (gate.targets.size() != 1 || !gate.matrix || gate.matrix->rows() != 2)
                throw DomainError("GENERIC_1Q needs one target and a 2x2 matrix");
            check_unitary(*gate.matrix, "GENERIC_1Q");
            break;
        case GateKind::Unitary: {
            if (gate.targets.empty() || !gate.matrix)
                throw DomainError("UNITARY needs targets and a matrix");
            auto sorted = gate.targets;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                throw DomainError("UNITARY targets must be distinct");
            if (gate.matrix->rows() != (Eigen::Index{1} << gate.targets.size()))
                throw DomainError("UNITARY matrix dimension does not match 2^targets");
            check_unitary(*gate.matrix, "UNITARY");
            break;
        }
        case GateKind::Controlled: {
            if (!gate.block) throw DomainError("CONTROLLED needs a block");
            if (gate.controls.size() != gate.pattern.size())
                throw DomainError("CONTROLLED pattern length must match controls");
            if (gate.block->num_qubits() > num_qubits_)
                throw DomainError("CONTROLLED block wider than host circuit");
            for (auto c : gate.controls) check_qubit(c, num_qubits_);
            auto sorted = gate.controls;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                throw DomainError("CONTROLLED controls must be distinct");
            for (const auto &inner : gate.block->ops())
                for (auto q : inner.qubits())
                    if (std::binary_search(sorted.begin(), sorted.end(), q))
                        throw DomainError("CONTROLLED block acts on one of its controls");
            gate.targets.clear();
            break;
        }
    }
    ops_.push_back(std::move(gate));
    return *this;
}

Circuit &Circuit::rx(std::uint32_t q, Param p, bool counted) {
    Gate g;
    g.kind = GateKind::RX;
    g.targets = {q};
    g.param = p;
    g.counted_params = counted ? 1 : 0;
    return append(std::move(g));
}

Circuit &Circuit::ry(std::uint32_t q, Param p, bool counted) {
    Gate g;
    g.kind = GateKind::RY;
    g.targets = {q};
    g.param = p;
    g.counted_params = counted ? 1 : 0;
    return append(std::move(g));
}

Circuit &Circuit::rz(std::uint32_t q, Param p, bool counted) {
    Gate g;
    g.kind = GateKind::RZ;
    g.targets = {q};
    g.param = p;
    g.counted_params = counted ? 1 : 0;
    return append(std::move(g));
}

Circuit &Circuit::h(std::uint32_t q) {
    Gate g;
    g.kind = GateKind::H;
    g.targets = {q};
    return append(std::move(g));
}

Circuit &Circuit::x(std::uint32_t q) {
    Gate g;
    g.kind = GateKind::X;
    g.targets = {q};
    return append(std::move(g));
}

Circuit &Circuit::phase(double theta) {
    Gate g;
    g.kind = GateKind::Phase;
    g.param = Param::literal(theta);
    return append(std::move(g));
}

Circuit &Circuit::generic1q(std::uint32_t q, const Matrix2c &m) {
    Gate g;
    g.kind = GateKind::Generic1Q;
    g.targets = {q};
    g.matrix = std::make_shared<const MatrixXc>(m);
    return append(std::move(g));
}

Circuit &Circuit::unitary(std::vector<std::uint32_t> targets, const MatrixXc &m, std::uint32_t counted_params) {
    Gate g;
    g.kind = GateKind::Unitary;
    g.targets = std::move(targets);
    g.matrix = std::make_shared<const MatrixXc>(m);
    g.counted_params = counted_params;
    return append(std::move(g));
}

Circuit &Circuit::controlled(const Circuit &block, std::vector<std::uint32_t> controls, std::vector<bool> pattern) {
    Gate g;
    g.kind = GateKind::Controlled;
    g.block = std::make_shared<const Circuit>(block);
    g.controls = std::move(controls);
    g.pattern = std::move(pattern);
    return append(std::move(g));
}

std::size_t Circuit::param_count() const {
    std::size_t n = 0;
    for (const auto &g : ops_) {
        n += g.counted_params;
        if (g.block) n += g.block->param_count();
    }
    return n;
}

std::size_t Circuit::slot_count() const {
    std::size_t n = 0;
    for (const auto &g : ops_) {
        if (g.param.bound()) n = std::max(n, static_cast<std::size_t>(g.param.slot) + 1);
        if (g.block) n = std::max(n, g.block->slot_count());
    }
    return n;
}

Circuit Circuit::remapped(std::span<const std::uint32_t> map, std::size_t new_width) const {
    if (map.size() < num_qubits_) throw DomainError("remapped: qubit map too short");
    for (std::size_t q = 0; q < num_qubits_; ++q) check_qubit(map[q], new_width);
    Circuit out(new_width);
    for (const auto &g : ops_) out.append(remap_gate(g, map, new_width));
    return out;
}

Circuit Circuit::shifted(std::uint32_t offset, std::size_t new_width) const {
    std::vector<std::uint32_t> map(num_qubits_);
    for (std::size_t q = 0; q < num_qubits_; ++q) map[q] = static_cast<std::uint32_t>(q) + offset;
    return remapped(map, new_width);
}

Circuit Circuit::widened(std::size_t new_width) const {
    if (new_width < num_qubits_) throw DomainError("widened: new width smaller than current");
    Circuit out(new_width);
    out.ops_ = ops_;
    return out;
}

Circuit Circuit::rebound(std::span<const std::int32_t> slot_map) const {
    Circuit out(num_qubits_);
    out.ops_.reserve(ops_.size());
    for (const auto &g : ops_) out.ops_.push_back(rebind_gate(g, slot_map));
    return out;
}

Circuit compose(const Circuit &first, const Circuit &second) {
    Circuit out(std::max(first.num_qubits(), second.num_qubits()));
    for (const auto &g : first.ops()) out.append(g);
    for (const auto &g : second.ops()) out.append(g);
    return out;
}

Circuit tensor(std::span<const Circuit> circuits) {
    std::size_t width = 0;
    for (const auto &c : circuits) width += c.num_qubits();
    Circuit out(width);
    std::uint32_t offset = 0;
    for (const auto &c : circuits) {
        const Circuit moved = c.shifted(offset, width);
        for (const auto &g : moved.ops()) out.append(g);
        offset += static_cast<std::uint32_t>(c.num_qubits());
    }
    return out;
}

Metrics metrics(const Circuit &circuit, const CostModel &model) {
    Metrics m;
    m.width = circuit.num_qubits();
    m.depth = layered_depth(circuit, model, false);
    m.modeled_depth = layered_depth(circuit, model, true);
    m.size = circuit.param_count();
    return m;
}

Matrix2c gate_matrix(const Gate &gate, std::span<const double> y) {
    using namespace std::complex_literals;
    Matrix2c m;
    switch (gate.kind) {
        case GateKind::RX: {
            const double t = gate.param.resolve(y) / 2.0;
            m << std::cos(t), -1i * std::sin(t), -1i * std::sin(t), std::cos(t);
            return m;
        }
        case GateKind::RY: {
            const double t = gate.param.resolve(y) / 2.0;
            m << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
            return m;
        }
        case GateKind::RZ: {
            const double t = gate.param.resolve(y) / 2.0;
            m << std::polar(1.0, -t), 0.0, 0.0, std::polar(1.0, t);
            return m;
        }
        case GateKind::H: {
            const double r = 1.0 / std::numbers::sqrt2;
            m << r, r, r, -r;
            return m;
        }
        case GateKind::X:
            m << 0.0, 1.0, 1.0, 0.0;
            return m;
        case GateKind::Generic1Q:
            return *gate.matrix;
        default:
            throw DomainError(std::string("gate_matrix: ") + to_string(gate.kind) + " is not a single-qubit gate");
    }
}

}  // namespace gpcqc
