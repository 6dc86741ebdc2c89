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

#include <algorithm>
#include <cmath>
#include <random>

#include "gpcqc/error.hpp"
#include "gpcqc/gpc.hpp"
#include "gpcqc/qsp.hpp"
#include "gpcqc/statevector.hpp"

using namespace gpcqc;

namespace {

MultiIndex mi(std::initializer_list<std::uint32_t> dense) {
    std::vector<std::uint32_t> v(dense);
    return MultiIndex::from_dense(v);
}

std::vector<double> grid(int points) {
    std::vector<double> g(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) g[static_cast<std::size_t>(i)] = -1.0 + 2.0 * i / (points - 1);
    return g;
}

}  // namespace

TEST(SignalOperator, Examples) {
    EXPECT_LE((signal_operator(1.0) - Matrix2c::Identity()).cwiseAbs().maxCoeff(), 1e-16);
    const Matrix2c w0 = signal_operator(0.0);
    EXPECT_EQ(w0(0, 0), Complex(0.0, 0.0));
    EXPECT_EQ(w0(0, 1), Complex(0.0, 1.0));
    EXPECT_EQ(w0(1, 0), Complex(0.0, 1.0));
    EXPECT_THROW(signal_operator(1.01), DomainError);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double x = u(rng);
        const Matrix2c w = signal_operator(x);
        EXPECT_EQ(w(0, 0).real(), x);
        EXPECT_LE((w.adjoint() * w - Matrix2c::Identity()).cwiseAbs().maxCoeff(), 1e-14);
    }
}

TEST(QspUnitary, ExamplesAndMatrixPowerOracle) {
    const std::vector<double> one{0.7};
    const Matrix2c v = qsp_unitary(one, 0.2);
    EXPECT_LE(std::abs(v(0, 0) - std::polar(1.0, 0.7)), 1e-15);
    EXPECT_LE(std::abs(v(1, 1) - std::polar(1.0, -0.7)), 1e-15);
    EXPECT_EQ(v(0, 1), Complex(0.0, 0.0));

    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k <= 12; ++k) {
        const double x = u(rng);
        const std::vector<double> zeros(static_cast<std::size_t>(k) + 1, 0.0);
        Matrix2c power = Matrix2c::Identity();
        for (int i = 0; i < k; ++i) power *= signal_operator(x);
        const Matrix2c q = qsp_unitary(zeros, x);
        EXPECT_LE((q - power).cwiseAbs().maxCoeff(), 1e-13);
        EXPECT_NEAR(q(0, 0).real(), std::cos(k * std::acos(x)), 1e-13);
    }
}

TEST(QspUnitary, UnitaryAndCircuitAgree) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0), ph(-3.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> phases(1 + rng() % 8);
        for (auto &p : phases) p = ph(rng);
        const double x = u(rng);
        const Matrix2c v = qsp_unitary(phases, x);
        EXPECT_LE((v.adjoint() * v - Matrix2c::Identity()).cwiseAbs().maxCoeff(), 1e-13);
        const std::vector<double> y{x};
        EXPECT_LE((circuit_matrix(qsp_circuit(phases), y) - MatrixXc(v)).cwiseAbs().maxCoeff(), 1e-13);
    }
}

TEST(QspValidity, ChebyshevPairsPass) {
    const auto g = grid(201);
    for (std::size_t k = 0; k <= 32; ++k) {
        const auto r =
            qsp_validity_check(chebyshev_t_poly(k), chebyshev_u_poly(static_cast<std::int64_t>(k) - 1), k, g);
        EXPECT_TRUE(r.degree_ok) << k;
        EXPECT_TRUE(r.parity_ok) << k;
        EXPECT_TRUE(r.identity_ok) << k << " residual " << r.max_identity_residual;
    }
}

TEST(QspValidity, RejectsBadPolynomials) {
    const auto g = grid(101);
    const auto x2 = ComplexPolynomial::monomial({0.0, 0.0, 1.0});
    const auto r = qsp_validity_check(x2, ComplexPolynomial::monomial({}), 2, g);
    EXPECT_TRUE(r.degree_ok);
    EXPECT_TRUE(r.parity_ok);
    EXPECT_FALSE(r.identity_ok);
    EXPECT_FALSE(r.passed());

    // Every parity-violating perturbation of the Chebyshev pair is rejected.
    for (std::size_t k = 1; k <= 32; ++k) {
        const auto q0 = chebyshev_u_poly(static_cast<std::int64_t>(k) - 1);
        for (std::size_t j = (k + 1) % 2; j < k; j += 2) {
            auto p = chebyshev_t_poly(k);
            p.coeffs[j] += 1e-3;
            EXPECT_FALSE(qsp_validity_check(p, q0, k, g, 1e-9).parity_ok) << k << " " << j;
        }
        for (std::size_t j = k % 2; j < k; j += 2) {
            auto q = q0;
            q.coeffs.resize(std::max(q.coeffs.size(), j + 1));
            q.coeffs[j] += 1e-3;
            EXPECT_FALSE(qsp_validity_check(chebyshev_t_poly(k), q, k, g, 1e-9).parity_ok) << k << " " << j;
        }
    }

    EXPECT_FALSE(qsp_validity_check(ComplexPolynomial::monomial({0.5, 0.5}), {}, 1, g).parity_ok);
    EXPECT_FALSE(qsp_validity_check(chebyshev_t_poly(3), {}, 2, g).degree_ok);
}

TEST(QspValidity, BasesAgree) {
    // T~_3 = 4x^3 - 3x and U_2 = 4x^2 - 1 in the monomial basis.
    const auto g = grid(51);
    const auto p = ComplexPolynomial::monomial({0.0, -3.0, 0.0, 4.0});
    const auto q = ComplexPolynomial::monomial({-1.0, 0.0, 4.0});
    EXPECT_TRUE(qsp_validity_check(p, q, 3, g).passed());
    for (double x : g) {
        EXPECT_NEAR(std::abs(poly_eval(p, x) - poly_eval(chebyshev_t_poly(3), x)), 0.0, 1e-14);
        EXPECT_NEAR(std::abs(poly_eval(q, x) - poly_eval(chebyshev_u_poly(2), x)), 0.0, 1e-14);
    }
}

TEST(ChebyshevCircuit, IdentityAndResources) {
    const auto g = grid(201);
    for (std::uint32_t k = 0; k <= 64; ++k) {
        const auto c = chebyshev_circuit(k);
        EXPECT_EQ(metrics(c), (Metrics{1, 2 * k + 1, k + 1, 2 * k + 1}));
        for (double x : g) {
            const std::vector<double> y{x};
            EXPECT_LE(std::abs(amp_00(c, y).real() - std::cos(k * std::acos(x))), 1e-12);
            EXPECT_LE(std::abs(amp_00(c, y).imag()), 1e-12);
        }
    }
    const std::vector<double> half{0.5};
    EXPECT_NEAR(amp_00(chebyshev_circuit(3), half).real(), -1.0, 1e-14);
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::uint32_t k = 1; k <= 64; ++k)
        for (int i = 0; i < 100; ++i) {
            const double x = u(rng);
            const std::vector<double> y{x};
            EXPECT_LE(std::abs(amp_00(chebyshev_circuit(k), y).real() - std::cos(k * std::acos(x))), 1e-12);
        }
}

TEST(TensorChebyshevCircuit, ExamplesAndResources) {
    const std::vector<double> y{0.5, -0.5};
    EXPECT_NEAR(amp_00(tensor_chebyshev_circuit(mi({2, 1})), y).real(), 0.25, 1e-14);
    const auto m = metrics(tensor_chebyshev_circuit(mi({4, 1, 1})));
    EXPECT_EQ(m.width, 3u);
    EXPECT_EQ(m.depth, 9u);
    EXPECT_EQ(m.size, 9u);
    const auto zero = tensor_chebyshev_circuit(MultiIndex());
    EXPECT_EQ(zero.num_qubits(), 0u);
    EXPECT_EQ(amp_00(zero, y), Complex(1.0, 0.0));
}

TEST(TensorChebyshevCircuit, AgreesWithClassicalEvaluation) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<MultiIndex::Entry> entries;
        const std::size_t nnz = 1 + rng() % 6;
        std::vector<Coord> coords;
        while (coords.size() < nnz) {
            const Coord j = 1 + static_cast<Coord>(rng() % 12);
            if (std::find(coords.begin(), coords.end(), j) == coords.end()) coords.push_back(j);
        }
        for (Coord j : coords) entries.push_back({j, 1 + static_cast<std::uint32_t>(rng() % 8)});
        const auto nu = MultiIndex::from_entries(entries);
        std::vector<double> y(12);
        for (auto &v : y) v = u(rng);
        const auto c = tensor_chebyshev_circuit(nu);
        EXPECT_LE(std::abs(amp_00(c, y).real() - tensor_cheb_eval(nu, y, Basis::Classical)), 1e-12);
        const auto m = metrics(c);
        EXPECT_EQ(m.width, nu.nnz());
        EXPECT_EQ(m.depth, 2 * nu.linf() + 1);
        EXPECT_EQ(m.size, nu.l1() + nu.nnz());
    }
}

TEST(MonomialCircuit, ExamplesAndIdentity) {
    const std::vector<double> y1{0.7};
    EXPECT_NEAR(amp_00(monomial_circuit(MultiIndex::unit(1)), y1).real(), 0.7, 1e-15);
    const std::vector<double> y2{0.5, -0.4};
    EXPECT_NEAR(amp_00(monomial_circuit(mi({2, 1})), y2).real(), -0.1, 1e-15);
    const std::vector<double> ym{-1.0};
    EXPECT_NEAR(amp_00(monomial_circuit(mi({3})), ym).real(), -1.0, 1e-15);
    const auto m = metrics(monomial_circuit(mi({2, 0, 3})));
    EXPECT_EQ(m.width, 5u);
    EXPECT_EQ(m.depth, 1u);
    EXPECT_EQ(m.size, 5u);

    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<std::uint32_t> d(4);
        for (auto &v : d) v = static_cast<std::uint32_t>(rng() % 4);
        if (std::all_of(d.begin(), d.end(), [](auto v) { return v == 0; })) d[0] = 1;
        const auto nu = MultiIndex::from_dense(d);
        std::vector<double> y(4);
        for (auto &v : y) v = u(rng);
        double want = 1.0;
        for (std::size_t j = 0; j < 4; ++j) want *= std::pow(y[j], d[j]);
        EXPECT_LE(std::abs(amp_00(monomial_circuit(nu), y).real() - want), 1e-12);
    }
}
