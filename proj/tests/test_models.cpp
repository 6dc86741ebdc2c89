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
#include <random>

#include "gpcqc/error.hpp"
#include "gpcqc/models.hpp"

using namespace gpcqc;

namespace {

MultiIndex mi(std::initializer_list<std::uint32_t> dense) {
    std::vector<std::uint32_t> v(dense);
    return MultiIndex::from_dense(v);
}

std::vector<double> random_point(std::mt19937_64 &rng, std::size_t dim) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> y(dim);
    for (auto &v : y) v = u(rng);
    return y;
}

}  // namespace

TEST(RationalModel, Evaluation) {
    RationalAffineModel m;
    m.theta = 1.0;
    m.c = 2.0;
    m.b = {0.5};
    const std::vector<double> one{1.0}, zero{0.0};
    EXPECT_NEAR(eval_rational(m, one), 0.4, 1e-15);
    EXPECT_NEAR(eval_rational(m, zero), 0.5, 1e-15);
    EXPECT_EQ(m.margin(), 1.5);
}

TEST(RationalModel, ConfigValidation) {
    RationalAffineModel m;
    m.c = 1.0;
    m.b = {0.6, 0.5};
    EXPECT_THROW(m.validate(), ConfigError);
    const auto r = RationalAffineModel::from_rule(1.0, 1.5, 0.9, 3.0, 64);
    EXPECT_NO_THROW(r.validate());
    EXPECT_EQ(r.dimension(), 64u);
    EXPECT_NEAR(r.b[1], 0.9 / 8.0, 1e-16);
    const auto d2 = RationalAffineModel::from_rule(1.0, 1.5, 0.9, 3.0, 64, 2);
    EXPECT_EQ(d2.active_dims(), 2u);
    EXPECT_EQ(d2.b[2], 0.0);
}

TEST(RationalModel, UniformBound) {
    const auto m = RationalAffineModel::from_rule(1.0, 1.5, 0.9, 3.0, 16);
    std::mt19937_64 rng(1);
    for (int i = 0; i < 10000; ++i) {
        const auto y = random_point(rng, 16);
        EXPECT_LE(std::abs(eval_rational(m, y)), m.theta / m.margin());
    }
}

TEST(RationalModel, TaylorSeriesConvergesMonotonically) {
    const auto m = RationalAffineModel::from_rule(1.0, 2.0, 0.8, 2.0, 2);
    const std::vector<double> y{0.7, -0.6};
    double prev = 1e300;
    for (std::uint32_t k = 1; k <= 12; ++k) {
        std::vector<MultiIndex> members;
        for (const auto &nu : tensor_product_set(2, k))
            if (nu.l1() <= k) members.push_back(nu);
        const auto t = taylor_coefficients(m, IndexSet(members));
        const double err = std::abs(eval_truncated(t, y) - eval_rational(m, y));
        EXPECT_LT(err, prev);
        prev = err;
    }
    EXPECT_LT(prev, 1e-5);
}

TEST(RationalModel, LaplaceCoefficientsMatchTensorQuadrature) {
    // Independent oracle: Gauss-Chebyshev quadrature in three dimensions with
    // enough nodes that the geometric tail is below roundoff.
    const auto m = RationalAffineModel::from_rule(1.3, 1.5, 0.9, 2.0, 3);
    const auto set = tensor_product_set(3, 4);
    const auto laplace = rational_cheb_coefficients(m, set);
    const ScalarField f = [&](std::span<const double> y) { return eval_rational(m, y); };
    const auto quad = cheb_coefficients(f, set, 64);
    for (const auto &[nu, c] : quad.terms()) EXPECT_NEAR(laplace.coeff(nu), c, 1e-12) << nu.to_string();
}

TEST(RationalModel, LaplaceCoefficientsNegativeAndZeroB) {
    RationalAffineModel m;
    m.theta = 0.7;
    m.c = 1.2;
    m.b = {-0.5, 0.0, 0.4};
    const auto set = tensor_product_set(3, 3);
    const auto laplace = rational_cheb_coefficients(m, set);
    const ScalarField f = [&](std::span<const double> y) { return eval_rational(m, y); };
    const auto quad = cheb_coefficients(f, set, 80);
    for (const auto &[nu, c] : quad.terms()) EXPECT_NEAR(laplace.coeff(nu), c, 1e-12) << nu.to_string();
}

TEST(RationalModel, LaplaceCoefficientsInHighDimension) {
    // D = 64: coefficients of indices supported on the first two coordinates
    // equal those of the 2-D marginal field integrated over the rest, checked
    // through the reconstruction value at y = 0 for a rich set.
    const auto m = RationalAffineModel::from_rule(1.0, 1.5, 0.9, 3.0, 64);
    const auto c = rational_cheb_coefficients(m, tensor_product_set(1, 0));
    // c_0 = E[f] must lie between the values at the extreme parameters.
    EXPECT_GT(c.coeff(MultiIndex()), 1.0 / (1.5 + 0.9 * 1.2020569031595942));
    EXPECT_LT(c.coeff(MultiIndex()), 1.0 / (1.5 - 0.9 * 1.2020569031595942));
    EXPECT_THROW(rational_cheb_coefficients(m, IndexSet({MultiIndex::unit(65)})), DomainError);
}

TEST(RationalModel, MeanSquareMatchesParsevalAndQuadrature) {
    const auto m = RationalAffineModel::from_rule(1.0, 1.5, 0.9, 2.0, 2);
    const ScalarField f2 = [&](std::span<const double> y) {
        const double v = eval_rational(m, y);
        return v * v;
    };
    const auto quad = cheb_coefficients(f2, tensor_product_set(2, 1), 80);
    EXPECT_NEAR(rational_mean_square(m), quad.coeff(MultiIndex()), 1e-12);

    const auto c = rational_cheb_coefficients(m, tensor_product_set(2, 30));
    EXPECT_NEAR(rational_mean_square(m), c.l2_norm() * c.l2_norm(), 1e-12);
}

TEST(RationalModel, Holomorphy) {
    const auto m = RationalAffineModel::from_rule(1.0, 1.5, 0.9, 3.0, 64);
    const auto h = holomorphy_params(m);
    EXPECT_NEAR(h.params.p, 1.0 / 3.0 + 0.05, 1e-15);
    EXPECT_FALSE(h.finite_dimensional);
    EXPECT_EQ(h.margin, m.margin());
    EXPECT_NEAR(h.params.eps, m.margin() / 2.0, 1e-15);
    EXPECT_NO_THROW(h.params.validate());

    const auto d2 = RationalAffineModel::from_rule(1.0, 1.5, 0.9, 3.0, 64, 2);
    const auto h2 = holomorphy_params(d2);
    EXPECT_TRUE(h2.finite_dimensional);
    EXPECT_EQ(h2.finite_dim, 2u);
}

TEST(DiffusionModel, ConstantCoefficientClosedForm) {
    Diffusion1DModel m;
    m.cells = 64;
    m.c_b = 0.0;
    const double h = m.h();
    const std::vector<double> y(m.D, 0.3);
    const double g = solve_diffusion(m, y);
    EXPECT_LE(std::abs(g - 1.0 / 12.0), 4.0 * h * h);
    // Nodal values of a quadratic are exact for this scheme.
    const auto u = solve_diffusion_field(m, y);
    for (std::size_t i = 0; i <= m.cells; ++i) {
        const double x = static_cast<double>(i) * h;
        EXPECT_NEAR(u[i], x * (1.0 - x) / 2.0, 1e-14);
    }
    m.a0 = 2.0;
    EXPECT_LE(std::abs(solve_diffusion(m, y) - 1.0 / 24.0), 4.0 * h * h);
}

TEST(DiffusionModel, SelfConvergenceOrderTwo) {
    Diffusion1DModel m;
    m.c_b = 0.3;
    m.s = 2.0;
    m.D = 4;
    const std::vector<double> y{0.8, -0.5, 0.3, 0.9};
    m.cells = 32;
    const double g1 = solve_diffusion(m, y);
    m.cells = 64;
    const double g2 = solve_diffusion(m, y);
    m.cells = 128;
    const double g3 = solve_diffusion(m, y);
    const double ratio = (g1 - g2) / (g2 - g3);
    EXPECT_GE(ratio, 3.5);
    EXPECT_LE(ratio, 4.5);
}

TEST(DiffusionModel, EvenModeSymmetry) {
    Diffusion1DModel m;
    m.c_b = 0.3;
    m.D = 4;
    m.cells = 100;
    std::vector<double> y(4, 0.0);
    y[1] = 0.7;
    const double plus = solve_diffusion(m, y);
    y[1] = -0.7;
    EXPECT_NEAR(solve_diffusion(m, y), plus, 1e-14);
}

TEST(DiffusionModel, BoundednessAndEllipticity) {
    Diffusion1DModel m;
    m.c_b = 0.3;
    m.D = 6;
    m.cells = 32;
    EXPECT_NO_THROW(m.validate());
    const double bound = 1.0 / (8.0 * (1.0 - m.kappa) * m.a0);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 2000; ++i) {
        const auto y = random_point(rng, m.D);
        const double g = solve_diffusion(m, y);
        EXPECT_GT(g, 0.0);
        EXPECT_LE(g, bound);
    }
    Diffusion1DModel bad = m;
    bad.c_b = 2.0;
    EXPECT_THROW(bad.validate(), ConfigError);
    const auto h = holomorphy_params(m);
    EXPECT_GT(h.margin, 0.0);
    EXPECT_NEAR(h.params.p, 0.55, 1e-15);
}

TEST(ModelVariant, Dispatch) {
    const Model rm = RationalAffineModel::from_rule(1.0, 2.0, 0.5, 2.0, 3);
    const Model dm = Diffusion1DModel{};
    EXPECT_EQ(model_dimension(rm), 3u);
    EXPECT_EQ(model_dimension(dm), 4u);
    const std::vector<double> y{0.0, 0.0, 0.0, 0.0};
    EXPECT_NEAR(as_field(rm)(y), 0.5, 1e-15);
    EXPECT_NE(model_id(rm), model_id(dm));
}
