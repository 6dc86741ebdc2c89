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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "gpcqc/error.hpp"
#include "gpcqc/experiments.hpp"
#include "gpcqc/lcu.hpp"
#include "gpcqc/qsp.hpp"
#include "gpcqc/statevector.hpp"

namespace gpcqc {

namespace {

class Battery {
  public:
    explicit Battery(VerifyReport &report) : report_(report) {}

    // Passes when measured <= tolerance.
    void le(const char *module, const char *name, double measured, double tolerance) {
        report_.checks.push_back({module, name, measured <= tolerance, measured, tolerance});
    }
    // Passes when lo <= measured <= hi; tolerance records the half width.
    void within(const char *module, const char *name, double measured, double lo, double hi) {
        report_.checks.push_back({module, name, measured >= lo && measured <= hi, measured, (hi - lo) / 2.0});
    }

  private:
    VerifyReport &report_;
};

std::vector<double> draw_uniform(std::mt19937_64 &rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> y(n);
    for (auto &v : y) v = u(rng);
    return y;
}

MultiIndex random_index(std::mt19937_64 &rng, std::size_t max_nnz, Coord max_coord, std::uint32_t max_deg) {
    const std::size_t nnz = 1 + rng() % max_nnz;
    std::vector<MultiIndex::Entry> entries;
    std::vector<Coord> used;
    while (used.size() < nnz) {
        const Coord j = 1 + static_cast<Coord>(rng() % max_coord);
        if (std::find(used.begin(), used.end(), j) != used.end()) continue;
        used.push_back(j);
        entries.push_back({j, 1 + static_cast<std::uint32_t>(rng() % max_deg)});
    }
    return MultiIndex::from_entries(entries);
}

Circuit random_unitary_circuit(std::mt19937_64 &rng, std::size_t n) {
    std::uniform_real_distribution<double> ang(-3.0, 3.0);
    Circuit c(n);
    for (int i = 0, gates = 1 + static_cast<int>(rng() % 5); i < gates; ++i) {
        const auto q = static_cast<std::uint32_t>(rng() % n);
        switch (rng() % 3) {
            case 0: c.rx(q, Param::literal(ang(rng))); break;
            case 1: c.ry(q, Param::literal(ang(rng))); break;
            default: c.h(q);
        }
    }
    return c;
}

void check_indexset(Battery &b, std::mt19937_64 &rng) {
    const auto params = HolomorphyParams::from_rule(0.9, 3.0, 16, 0.2, 1.0 / 3.0 + 0.05);
    double failures = 0.0;
    IndexSet prev;
    for (std::size_t n = 1; n <= 60; ++n) {
        const IndexSet s = select_apriori(n, params);
        const StructureFlags f = validate_structure(s);
        if (!f.is_dc || !f.is_anchored || s.size() != n) failures += 1.0;
        for (const auto &nu : prev)
            if (!s.contains(nu)) failures += 1.0;
        prev = s;
    }
    b.le("indexset", "apriori_dc_anchored_nested", failures, 0.0);

    const IndexSet t = tensor_product_set(3, 4);
    b.le("indexset", "tensor_cardinality_and_dc",
         std::abs(static_cast<double>(t.size()) - 125.0) + (validate_structure(t).is_dc ? 0.0 : 1.0), 0.0);

    failures = 0.0;
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const IndexSet pool = tensor_product_set(2, 5);
        std::vector<std::pair<MultiIndex, double>> coeffs;
        for (const auto &nu : pool) coeffs.emplace_back(nu, u(rng));
        const std::size_t n = 1 + rng() % pool.size();
        const IndexSet sel = select_greedy(coeffs, n);
        double kept = 1e300, dropped = 0.0;
        for (const auto &[nu, c] : coeffs) {
            if (sel.contains(nu)) kept = std::min(kept, std::abs(c));
            else dropped = std::max(dropped, std::abs(c));
        }
        if (sel.size() != n || kept < dropped) failures += 1.0;
    }
    b.le("indexset", "greedy_keeps_largest", failures, 0.0);
}

void check_gpc(Battery &b, std::mt19937_64 &rng, bool corrupt) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);

    // Quadrature recovers a random polynomial exactly.
    {
        const IndexSet set = tensor_product_set(2, 3);
        std::vector<GpcExpansion::Term> terms;
        for (const auto &nu : set) terms.emplace_back(nu, u(rng));
        const GpcExpansion g(ExpansionKind::Chebyshev, Basis::Onb, terms);
        const ScalarField f = [&](std::span<const double> y) { return eval_truncated(g, y); };
        const GpcExpansion q = cheb_coefficients(f, set, 8);
        double dev = 0.0;
        for (const auto &[nu, c] : g.terms()) dev = std::max(dev, std::abs(q.coeff(nu) - c));
        b.le("gpc", "quadrature_exactness", dev, 1e-12);
    }

    // Parseval under the Chebyshev measure, with the value computed through
    // the classical basis so that a wrong conversion factor is visible.
    {
        std::vector<GpcExpansion::Term> terms;
        terms.emplace_back(MultiIndex(), 0.3);
        while (terms.size() < 10) {
            const MultiIndex nu = random_index(rng, 3, 3, 4);
            if (std::none_of(terms.begin(), terms.end(), [&](const auto &t) { return t.first == nu; }))
                terms.emplace_back(nu, u(rng));
        }
        const GpcExpansion g(ExpansionKind::Chebyshev, Basis::Onb, terms);
        GpcExpansion classical = convert_basis(g, Basis::Classical);
        if (corrupt) {
            std::vector<GpcExpansion::Term> bad;
            for (const auto &[nu, c] : classical.terms()) bad.emplace_back(nu, c * onb_factor(nu));
            classical = GpcExpansion(ExpansionKind::Chebyshev, Basis::Classical, bad);
        }
        MeasureSampler sampler(3, rng());
        const SampleSet s = make_sample_set(sampler, 100000, false);
        std::vector<double> v(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) v[i] = eval_truncated(classical, s.point(i));
        const auto [ms, se] = mean_square(v, s.mc_count);
        const double norm2 = g.l2_norm() * g.l2_norm();
        b.le("gpc", "parseval_within_3_stderr", std::abs(ms - norm2) / se, 3.0);
    }

    // Taylor coefficients against central finite differences at 0.
    {
        const auto m = RationalAffineModel::from_rule(1.0, 2.0, 0.8, 2.0, 3);
        const IndexSet set({MultiIndex::unit(1), MultiIndex::unit(2), MultiIndex::from_entries({{1, 2}}),
                            MultiIndex::from_entries({{1, 1}, {2, 1}})});
        const GpcExpansion t = taylor_coefficients(m, set);
        const double h = 1e-3;
        auto f = [&](double a, double c) {
            const std::vector<double> y{a, c, 0.0};
            return eval_rational(m, y);
        };
        const double d1 = (f(h, 0) - f(-h, 0)) / (2 * h);
        const double d2 = (f(0, h) - f(0, -h)) / (2 * h);
        const double d11 = (f(h, 0) - 2 * f(0, 0) + f(-h, 0)) / (h * h) / 2.0;
        const double d12 = (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4 * h * h);
        const double rel = std::max({std::abs(d1 / t.coeff(MultiIndex::unit(1)) - 1.0),
                                     std::abs(d2 / t.coeff(MultiIndex::unit(2)) - 1.0),
                                     std::abs(d11 / t.coeff(MultiIndex::from_entries({{1, 2}})) - 1.0),
                                     std::abs(d12 / t.coeff(MultiIndex::from_entries({{1, 1}, {2, 1}})) - 1.0)});
        b.le("gpc", "taylor_finite_differences", rel, 1e-5);
    }
}

void check_models(Battery &b, std::mt19937_64 &rng) {
    {
        const auto m = RationalAffineModel::from_rule(1.3, 1.5, 0.9, 2.0, 3);
        const IndexSet set = tensor_product_set(3, 3);
        const GpcExpansion lap = rational_cheb_coefficients(m, set);
        const ScalarField f = [&](std::span<const double> y) { return eval_rational(m, y); };
        const GpcExpansion quad = cheb_coefficients(f, set, 64);
        double dev = 0.0;
        for (const auto &[nu, c] : quad.terms()) dev = std::max(dev, std::abs(lap.coeff(nu) - c));
        b.le("models", "laplace_vs_quadrature", dev, 1e-12);
    }
    {
        const auto m = RationalAffineModel::from_rule(1.0, 1.5, 0.9, 3.0, 16);
        double worst = 0.0;
        for (int i = 0; i < 10000; ++i) worst = std::max(worst, std::abs(eval_rational(m, draw_uniform(rng, 16))));
        b.le("models", "rational_uniform_bound", worst, m.theta / m.margin());
    }
    {
        Diffusion1DModel d;
        d.cells = 64;
        const std::vector<double> y(d.D, 0.5);
        b.le("models", "diffusion_constant_coefficient", std::abs(solve_diffusion(d, y) - 1.0 / 12.0),
             4.0 * d.h() * d.h());
        d.c_b = 0.3;
        const std::vector<double> yr{0.8, -0.5, 0.3, 0.9};
        d.cells = 32;
        const double g1 = solve_diffusion(d, yr);
        d.cells = 64;
        const double g2 = solve_diffusion(d, yr);
        d.cells = 128;
        const double g3 = solve_diffusion(d, yr);
        b.within("models", "diffusion_richardson_ratio", (g1 - g2) / (g2 - g3), 3.5, 4.5);
    }
}

void check_qsp(Battery &b, std::mt19937_64 &rng) {
    double dev = 0.0, metric_failures = 0.0;
    for (std::uint32_t k = 0; k <= 16; ++k) {
        const Circuit c = chebyshev_circuit(k);
        if (!(metrics(c) == Metrics{1, 2 * k + 1, k + 1, 2 * k + 1})) metric_failures += 1.0;
        for (int i = 0; i <= 50; ++i) {
            const std::vector<double> y{-1.0 + i / 25.0};
            dev = std::max(dev, std::abs(amp_00(c, y) - Complex(std::cos(k * std::acos(y[0])), 0.0)));
        }
    }
    b.le("qsp", "chebyshev_identity", dev, 1e-12);
    b.le("qsp", "chebyshev_metrics", metric_failures, 0.0);

    double residual = 0.0;
    std::vector<double> grid(101);
    for (int i = 0; i <= 100; ++i) grid[static_cast<std::size_t>(i)] = -1.0 + i / 50.0;
    for (std::size_t k = 0; k <= 16; ++k) {
        const auto r = qsp_validity_check(chebyshev_t_poly(k), chebyshev_u_poly(static_cast<std::int64_t>(k) - 1),
                                          k, grid);
        residual = std::max(residual, r.passed() ? r.max_identity_residual : 1.0);
    }
    b.le("qsp", "chebyshev_pair_validity", residual, 1e-10);

    dev = 0.0;
    metric_failures = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const MultiIndex nu = random_index(rng, 6, 12, 8);
        const auto y = draw_uniform(rng, 12);
        const Circuit c = tensor_chebyshev_circuit(nu);
        dev = std::max(dev, std::abs(amp_00(c, y).real() - tensor_cheb_eval(nu, y, Basis::Classical)));
        const Metrics m = metrics(c);
        if (m.width != nu.nnz() || m.depth != 2 * nu.linf() + 1) metric_failures += 1.0;
    }
    b.le("qsp", "tensor_identity", dev, 1e-12);
    b.le("qsp", "tensor_metrics", metric_failures, 0.0);

    dev = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const MultiIndex nu = random_index(rng, 3, 4, 3);
        const auto y = draw_uniform(rng, 4);
        double want = 1.0;
        for (const auto &e : nu.entries()) want *= std::pow(y[e.coord - 1], e.exponent);
        dev = std::max(dev, std::abs(amp_00(monomial_circuit(nu), y).real() - want));
    }
    b.le("qsp", "monomial_identity", dev, 1e-12);
}

void check_lcu(Battery &b, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double dev = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> a(1 + rng() % 16);
        for (auto &v : a) v = u(rng) + 1e-3;
        const MatrixXc f = build_state_prep(a);
        dev = std::max(dev, (f.adjoint() * f - MatrixXc::Identity(f.rows(), f.cols())).cwiseAbs().maxCoeff());
    }
    b.le("lcu", "state_prep_unitarity", dev, 1e-12);

    double lcu_dev = 0.0, had_dev = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t d = 1 + rng() % 3, t = 1 + rng() % 8;
        std::vector<LcuTerm> terms;
        MatrixXc dense = MatrixXc::Zero(1 << d, 1 << d);
        for (std::size_t j = 0; j < t; ++j) {
            LcuTerm term{u(rng) + 0.01, (rng() & 1U) ? 1 : -1, random_unitary_circuit(rng, d)};
            dense += term.sign * term.magnitude * circuit_matrix(term.circuit);
            terms.push_back(std::move(term));
        }
        const LcuPlan plan = make_lcu_plan(std::move(terms));
        const Circuit w = assemble_wlcu(plan);
        // |0...0> on the data register.
        const Complex amp = plan.l1_norm * amp_00(w);
        lcu_dev = std::max(lcu_dev, std::abs(amp - dense(0, 0)));
        const double had = plan.l1_norm * hadamard_test(w, StateVector(w.num_qubits())).exact;
        had_dev = std::max(had_dev, std::abs(had - amp.real()));
    }
    b.le("lcu", "lcu_identity", lcu_dev, 1e-12);
    b.le("lcu", "hadamard_matches_amplitude", had_dev, 1e-12);
}

void check_experiments(Battery &b, std::uint64_t seed) {
    const Model model = RationalAffineModel::from_rule(1.0, 1.5, 0.9, 3.0, 4);
    SweepConfig cfg;
    cfg.selector = SelectorKind::Apriori;
    cfg.n_list = {4, 8, 16};
    cfg.samples = 1000;
    cfg.seed = seed;
    const SweepResult classical = sweep(model, cfg);
    cfg.backend = Backend::Circuit;
    const SweepResult circuit = sweep(model, cfg);
    double dev = 0.0;
    for (std::size_t i = 0; i < classical.rows.size(); ++i) {
        dev = std::max(dev, std::abs(classical.rows[i].l2_error - circuit.rows[i].l2_error));
        dev = std::max(dev, std::abs(classical.rows[i].linf_error - circuit.rows[i].linf_error));
    }
    b.le("experiments", "backend_equivalence", dev, 1e-9);

    std::vector<double> n, e1, e2;
    for (double v : {4.0, 9.0, 16.0, 25.0, 36.0, 49.0}) {
        n.push_back(v);
        e1.push_back(std::pow(v, -2.0));
        e2.push_back(3.0 * std::exp(-0.5 * std::sqrt(v)));
    }
    const RateFit alg = fit_rate(n, e1, RateLaw::Algebraic);
    const RateFit ex = fit_rate(n, e2, RateLaw::Exponential, 2);
    b.le("experiments", "fit_algebraic_synthetic", std::abs(alg.slope_or_gamma + 2.0), 1e-10);
    b.le("experiments", "fit_exponential_synthetic", std::abs(ex.slope_or_gamma - 0.5), 1e-10);
}

}  // namespace

VerifyReport verify_suite(const VerifyOptions &options) {
    VerifyReport report;
    report.seed = options.seed;
    Battery b(report);
    std::mt19937_64 rng(options.seed);
    check_indexset(b, rng);
    check_gpc(b, rng, options.corrupt_onb_factor);
    check_models(b, rng);
    check_qsp(b, rng);
    check_lcu(b, rng);
    check_experiments(b, options.seed);
    return report;
}

}  // namespace gpcqc
