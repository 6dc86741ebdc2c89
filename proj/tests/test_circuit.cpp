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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gpcqc/circuit.hpp"
#include "gpcqc/error.hpp"
#include "gpcqc/statevector.hpp"

using namespace gpcqc;

namespace {

std::vector<Complex> random_amplitudes(std::mt19937_64 &rng, std::size_t n) {
    std::normal_distribution<double> g;
    std::vector<Complex> a(std::size_t{1} << n);
    double s = 0.0;
    for (auto &v : a) {
        v = Complex(g(rng), g(rng));
        s += std::norm(v);
    }
    for (auto &v : a) v /= std::sqrt(s);
    return a;
}

Matrix2c random_unitary2(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
    const double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    using namespace std::complex_literals;
    Matrix2c m;
    m << std::exp(1i * a) * std::cos(b), std::exp(1i * c) * std::sin(b),
        -std::exp(1i * (d - c)) * std::sin(b), std::exp(1i * (d - a)) * std::cos(b);
    return m;
}

// Random circuit over n qubits from the full gate alphabet.
Circuit random_circuit(std::mt19937_64 &rng, std::size_t n, int gates) {
    std::uniform_real_distribution<double> ang(-3.0, 3.0);
    Circuit c(n);
    for (int i = 0; i < gates; ++i) {
        const auto q = static_cast<std::uint32_t>(rng() % n);
        switch (rng() % 8) {
            case 0: c.rx(q, Param::literal(ang(rng))); break;
            case 1: c.ry(q, Param::literal(ang(rng))); break;
            case 2: c.rz(q, Param::literal(ang(rng))); break;
            case 3: c.h(q); break;
            case 4: c.x(q); break;
            case 5: c.phase(ang(rng)); break;
            case 6: c.generic1q(q, random_unitary2(rng)); break;
            default: {
                if (n < 2) {
                    c.h(q);
                    break;
                }
                const auto ctrl = static_cast<std::uint32_t>((q + 1 + rng() % (n - 1)) % n);
                Circuit block(n);
                block.ry(q, Param::literal(ang(rng)));
                block.phase(ang(rng));
                c.controlled(block, {ctrl}, {(rng() & 1U) != 0});
            }
        }
    }
    return c;
}

// Kronecker oracle: the dense matrix of a single-qubit gate on qubit q of n.
MatrixXc embed(const Matrix2c &g, std::uint32_t q, std::size_t n) {
    MatrixXc m = MatrixXc::Identity(1, 1);
    for (std::size_t k = n; k-- > 0;) {
        const MatrixXc f = k == q ? MatrixXc(g) : MatrixXc(MatrixXc::Identity(2, 2));
        MatrixXc next(m.rows() * 2, m.cols() * 2);
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j) next.block(i * 2, j * 2, 2, 2) = m(i, j) * f;
        m = next;
    }
    return m;
}

}  // namespace

TEST(Run, IdentityAndHadamard) {
    std::mt19937_64 rng(1);
    const auto psi = StateVector::from_amplitudes(random_amplitudes(rng, 3));
    const auto out = run(Circuit(3), psi);
    for (std::size_t i = 0; i < psi.dimension(); ++i) EXPECT_EQ(out[i], psi[i]);

    Circuit h(1);
    h.h(0);
    const auto s = run(h, StateVector(1));
    EXPECT_NEAR(s[0].real(), 1.0 / std::numbers::sqrt2, 1e-15);
    EXPECT_NEAR(s[1].real(), 1.0 / std::numbers::sqrt2, 1e-15);
}

TEST(Run, XInvolutionOnRandomState) {
    std::mt19937_64 rng(2);
    const auto psi = StateVector::from_amplitudes(random_amplitudes(rng, 4));
    Circuit c(4);
    c.x(2).x(2);
    const auto out = run(c, psi);
    for (std::size_t i = 0; i < psi.dimension(); ++i) EXPECT_LE(std::abs(out[i] - psi[i]), 1e-14);
}

TEST(Run, DimensionMismatch) {
    EXPECT_THROW(run(Circuit(2), StateVector(3)), DomainError);
    EXPECT_THROW(StateVector(25), WidthCapError);
}

TEST(Run, UnitarityOnRandomCircuits) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 1 + rng() % 5;
        const auto c = random_circuit(rng, n, 25);
        for (int k = 0; k < 20; ++k) {
            const auto psi = StateVector::from_amplitudes(random_amplitudes(rng, n));
            EXPECT_NEAR(run(c, psi).norm(), 1.0, 1e-12);
        }
    }
}

TEST(Run, SingleQubitGatesMatchKroneckerOracle) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 1 + rng() % 4;
        const auto q = static_cast<std::uint32_t>(rng() % n);
        const auto g = random_unitary2(rng);
        Circuit c(n);
        c.generic1q(q, g);
        EXPECT_LE((circuit_matrix(c) - embed(g, q, n)).cwiseAbs().maxCoeff(), 1e-14);
    }
}

TEST(Run, ControlledMatchesProjectorOracle) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 3;
        const auto g = random_unitary2(rng);
        Circuit block(n);
        block.generic1q(0, g);
        const bool pat1 = rng() & 1U, pat2 = rng() & 1U;
        Circuit c(n);
        c.controlled(block, {1, 2}, {pat1, pat2});
        // Oracle: sum over control values of projector (x) (g or I).
        MatrixXc want = MatrixXc::Zero(8, 8);
        for (std::size_t i = 0; i < 8; ++i)
            for (std::size_t j = 0; j < 8; ++j) {
                if ((i >> 1) != (j >> 1)) continue;
                const bool on = (((i >> 1) & 1U) == pat1) && (((i >> 2) & 1U) == pat2);
                const Complex v = on ? g(static_cast<Eigen::Index>(i & 1U), static_cast<Eigen::Index>(j & 1U))
                                     : Complex((i & 1U) == (j & 1U) ? 1.0 : 0.0);
                want(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
            }
        EXPECT_LE((circuit_matrix(c) - want).cwiseAbs().maxCoeff(), 1e-14);
    }
}

TEST(Run, DenseUnitaryMatchesMatrix) {
    std::mt19937_64 rng(6);
    // Random 4x4 unitary from a QR of a Gaussian matrix.
    std::normal_distribution<double> g;
    MatrixXc a(4, 4);
    for (Eigen::Index i = 0; i < 4; ++i)
        for (Eigen::Index j = 0; j < 4; ++j) a(i, j) = Complex(g(rng), g(rng));
    const MatrixXc u = Eigen::HouseholderQR<MatrixXc>(a).householderQ();
    Circuit c(2);
    c.unitary({0, 1}, u);
    EXPECT_LE((circuit_matrix(c) - u).cwiseAbs().maxCoeff(), 1e-14);
    // Swapped target order permutes the matrix index bits.
    Circuit s(2);
    s.unitary({1, 0}, u);
    const MatrixXc m = circuit_matrix(s);
    auto swap = [](Eigen::Index k) { return ((k & 1) << 1) | ((k >> 1) & 1); };
    for (Eigen::Index i = 0; i < 4; ++i)
        for (Eigen::Index j = 0; j < 4; ++j) EXPECT_LE(std::abs(m(i, j) - u(swap(i), swap(j))), 1e-14);

    Matrix2c bad;
    bad << 1.0, 1.0, 0.0, 1.0;
    EXPECT_THROW(Circuit(1).generic1q(0, bad), DomainError);
}

TEST(Amp00, Examples) {
    EXPECT_EQ(amp_00(Circuit(0)), Complex(1.0, 0.0));
    EXPECT_EQ(amp_00(Circuit(2)), Complex(1.0, 0.0));
    Circuit ry(1);
    ry.ry(0, Param::literal(2.0 * std::acos(0.3)));
    EXPECT_NEAR(amp_00(ry).real(), 0.3, 1e-15);
    Circuit ph(1);
    ph.phase(0.9);
    EXPECT_NEAR(std::abs(amp_00(ph) - std::polar(1.0, 0.9)), 0.0, 1e-15);
}

TEST(Amp00, BoundParameter) {
    Circuit c(1);
    c.ry(0, Param::arccos_of(2, 2.0));
    const std::vector<double> y{0.0, 0.0, -0.45};
    EXPECT_NEAR(amp_00(c, y).real(), -0.45, 1e-15);
    const std::vector<double> shortp{0.1};
    EXPECT_THROW(amp_00(c, shortp), DomainError);
    const std::vector<double> outside{0.0, 0.0, 1.5};
    EXPECT_THROW(amp_00(c, outside), DomainError);
}

TEST(Z0Expectation, ExamplesAndIdentity) {
    EXPECT_EQ(z0_expectation(Circuit(1)), 1.0);
    Circuit x(1);
    x.x(0);
    EXPECT_EQ(z0_expectation(x), -1.0);
    Circuit h(1);
    h.h(0);
    EXPECT_NEAR(z0_expectation(h), 0.0, 1e-15);

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + rng() % 5;
        const auto c = random_circuit(rng, n, 15);
        const auto s = run(c, StateVector(n));
        double p0 = 0.0;
        for (std::size_t i = 0; i < s.dimension(); i += 2) p0 += std::norm(s[i]);
        EXPECT_NEAR(z0_expectation(c), 2.0 * p0 - 1.0, 1e-14);
        EXPECT_LE(std::abs(z0_expectation(c)), 1.0);
    }
}

TEST(Metrics, Examples) {
    Circuit one(1);
    one.ry(0, Param::literal(0.3));
    EXPECT_EQ(metrics(one), (Metrics{1, 1, 1, 1}));
    Circuit two(2);
    two.ry(0, Param::literal(0.3)).ry(1, Param::literal(0.2));
    EXPECT_EQ(metrics(two).depth, 1u);
    Circuit chain(2);
    chain.h(0).h(0).h(1);
    EXPECT_EQ(metrics(chain).depth, 2u);
    EXPECT_EQ(metrics(chain).size, 0u);
    Circuit ph(1);
    ph.phase(1.0);
    EXPECT_EQ(metrics(ph).depth, 0u);
}

TEST(Metrics, ControlledCostModel) {
    Circuit block(4);
    block.ry(0, Param::literal(0.1)).ry(0, Param::literal(0.2)).ry(1, Param::literal(0.3));
    Circuit c(4);
    c.controlled(block, {2, 3}, {true, false});
    const auto m = metrics(c);
    EXPECT_EQ(m.depth, 2u);
    EXPECT_EQ(m.modeled_depth, 2u + 4u);
    EXPECT_EQ(m.size, 3u);
    const auto m5 = metrics(c, CostModel{5.0});
    EXPECT_EQ(m5.modeled_depth, 2u + 10u);
}

TEST(Tensor, Examples) {
    const std::vector<Circuit> ids{Circuit(1), Circuit(2), Circuit(1)};
    EXPECT_EQ(amp_00(tensor(ids)), Complex(1.0, 0.0));
    EXPECT_EQ(tensor(ids).num_qubits(), 4u);

    Circuit a(1), b(1);
    a.ry(0, Param::literal(2.0 * std::acos(0.5)));
    b.ry(0, Param::literal(2.0 * std::acos(-0.5)));
    const std::vector<Circuit> ab{a, b};
    EXPECT_NEAR(amp_00(tensor(ab)).real(), -0.25, 1e-15);

    std::vector<Circuit> ds;
    for (int d : {3, 7, 5}) {
        Circuit c(1);
        for (int i = 0; i < d; ++i) c.h(0);
        ds.push_back(c);
    }
    EXPECT_EQ(metrics(tensor(ds)).depth, 7u);
}

TEST(Tensor, FactorizationOnRandomTuples) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<Circuit> parts;
        std::size_t total = 0;
        Complex want(1.0, 0.0);
        while (true) {
            const std::size_t n = 1 + rng() % 4;
            if (total + n > 16) break;
            parts.push_back(random_circuit(rng, n, 12));
            want *= amp_00(parts.back());
            total += n;
        }
        const auto t = tensor(parts);
        EXPECT_EQ(t.num_qubits(), total);
        EXPECT_LE(std::abs(amp_00(t) - want), 1e-12);
    }
}

TEST(Compose, ConcatenatesAndTakesMaxWidth) {
    Circuit a(1), b(3);
    a.x(0);
    b.x(2);
    const auto c = compose(a, b);
    EXPECT_EQ(c.num_qubits(), 3u);
    EXPECT_EQ(c.ops().size(), 2u);
    EXPECT_EQ(run(c, StateVector(3))[0b101], Complex(1.0, 0.0));
}

TEST(Circuit, RejectsBadGates) {
    Circuit c(2);
    EXPECT_THROW(c.x(2), DomainError);
    Circuit block(2);
    block.x(1);
    EXPECT_THROW(c.controlled(block, {1}, {true}), DomainError);
    EXPECT_THROW(c.controlled(block, {0}, {}), DomainError);
}
