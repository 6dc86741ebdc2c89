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

#include "gpcqc/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <variant>

#include "gpcqc/error.hpp"
#include "gpcqc/lcu.hpp"
#include "gpcqc/parallel.hpp"
#include "gpcqc/statevector.hpp"

namespace gpcqc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Upper bound on quadrature points when the automatic node count is used.
constexpr std::size_t kAutoQuadraturePoints = 2'000'000;

std::size_t ipow(std::size_t base, std::size_t exp) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (r > std::numeric_limits<std::size_t>::max() / base) throw SizeError("sweep: (k+1)^d overflows");
        r *= base;
    }
    return r;
}

std::size_t auto_nodes(const IndexSet &set) {
    const std::size_t dim = std::max<std::size_t>(set.max_coord(), 1);
    const std::size_t min_nodes = order_stats(set).max_nuinf + 1;
    std::size_t m = std::max<std::size_t>(2 * min_nodes, 8);
    while (m > min_nodes) {
        double points = std::pow(static_cast<double>(m), static_cast<double>(dim));
        if (points <= static_cast<double>(kAutoQuadraturePoints)) break;
        --m;
    }
    return m;
}

GpcExpansion coefficients(const Model &model, const IndexSet &set, ExpansionKind kind,
                          std::size_t nodes_per_dim) {
    if (kind == ExpansionKind::Taylor) {
        const auto *rm = std::get_if<RationalAffineModel>(&model);
        if (!rm) throw ConfigError("kind: taylor expansions are available for the rational model only");
        return taylor_coefficients(*rm, set);
    }
    if (const auto *rm = std::get_if<RationalAffineModel>(&model)) return rational_cheb_coefficients(*rm, set);
    const std::size_t m = nodes_per_dim ? nodes_per_dim : auto_nodes(set);
    return cheb_coefficients(as_field(model), set, m, model_id(model));
}

struct RowPlan {
    std::size_t n = 0;
    IndexSet set;
};

struct PlannedRows {
    std::vector<RowPlan> rows;
    GpcExpansion coefficients;  ///< on a set containing every row's set
};

PlannedRows plan_rows(const Model &model, const SweepConfig &config) {
    const std::size_t dim = model_dimension(model);
    const ModelHolomorphy hol = model_holomorphy(model);
    std::vector<RowPlan> rows;
    IndexSet master;
    switch (config.selector) {
        case SelectorKind::Apriori: {
            for (std::size_t n : config.n_list) rows.push_back({n, select_apriori(n, hol.params)});
            master = rows.back().set;
            break;
        }
        case SelectorKind::Greedy: {
            master = select_apriori(config.pool_factor * config.n_list.back(), hol.params);
            break;
        }
        case SelectorKind::Tensor: {
            std::size_t d = config.tensor_dims;
            if (d == 0) {
                if (!hol.finite_dimensional || hol.finite_dim == 0)
                    throw ConfigError("tensor_dims: required for a model with infinitely many active coordinates");
                d = hol.finite_dim;
            }
            if (d > dim) throw ConfigError("tensor_dims: exceeds the model dimension");
            for (std::uint32_t k : config.k_list) {
                const std::size_t n = ipow(static_cast<std::size_t>(k) + 1, d);
                rows.push_back({n, tensor_product_set(d, k)});
            }
            master = rows.back().set;
            break;
        }
    }
    GpcExpansion all = coefficients(model, master, config.kind, config.nodes_per_dim);
    if (config.selector == SelectorKind::Greedy) {
        for (std::size_t n : config.n_list) rows.push_back({n, select_greedy(all.terms(), n)});
    }
    return {std::move(rows), std::move(all)};
}

double sum_squares(const GpcExpansion &e) {
    double s = 0.0;
    for (const auto &[nu, c] : e.terms()) s += c * c;
    return s;
}

}  // namespace

const char *to_string(SelectorKind kind) {
    switch (kind) {
        case SelectorKind::Apriori: return "apriori";
        case SelectorKind::Greedy: return "greedy";
        case SelectorKind::Tensor: return "tensor";
    }
    return "?";
}

const char *to_string(Backend backend) { return backend == Backend::Classical ? "classical" : "circuit"; }

SelectorKind parse_selector(const std::string &text) {
    if (text == "apriori") return SelectorKind::Apriori;
    if (text == "greedy") return SelectorKind::Greedy;
    if (text == "tensor") return SelectorKind::Tensor;
    throw ConfigError("selector: expected apriori, greedy or tensor, got '" + text + "'");
}

Backend parse_backend(const std::string &text) {
    if (text == "classical") return Backend::Classical;
    if (text == "circuit") return Backend::Circuit;
    throw ConfigError("backend: expected classical or circuit, got '" + text + "'");
}

ExpansionKind parse_kind(const std::string &text) {
    if (text == "cheb" || text == "chebyshev") return ExpansionKind::Chebyshev;
    if (text == "taylor") return ExpansionKind::Taylor;
    throw ConfigError("kind: expected cheb or taylor, got '" + text + "'");
}

void SweepConfig::validate() const {
    if (selector == SelectorKind::Tensor) {
        if (k_list.empty()) throw ConfigError("k_list: must not be empty for the tensor selector");
        for (std::size_t i = 1; i < k_list.size(); ++i)
            if (k_list[i] <= k_list[i - 1]) throw ConfigError("k_list: must be strictly increasing");
    } else {
        if (n_list.empty()) throw ConfigError("n_list: must not be empty");
        if (n_list.front() == 0) throw ConfigError("n_list: entries must be positive");
        for (std::size_t i = 1; i < n_list.size(); ++i)
            if (n_list[i] <= n_list[i - 1]) throw ConfigError("n_list: must be strictly increasing");
    }
    if (samples < 1000) throw ConfigError("samples: at least 1000 Monte Carlo samples are required");
    if (pool_factor == 0) throw ConfigError("pool_factor: must be positive");
    if (width_cap == 0) throw ConfigError("width_cap: must be positive");
}

SweepResult sweep(const Model &model, const SweepConfig &config) {
    config.validate();
    SweepResult result;
    result.config = config;
    result.model_id = model_id(model);

    const std::size_t dim = model_dimension(model);
    const PlannedRows planned = plan_rows(model, config);
    const auto &rows = planned.rows;
    const auto &all = planned.coefficients;

    std::optional<double> norm2;
    if (config.kind == ExpansionKind::Chebyshev)
        if (const auto *rm = std::get_if<RationalAffineModel>(&model)) norm2 = rational_mean_square(*rm);

    MeasureSampler sampler(dim, config.seed);
    const SampleSet samples = make_sample_set(sampler, config.samples);
    result.mc_samples = samples.mc_count;
    result.corner_samples = samples.size() - samples.mc_count;

    const ScalarField f = as_field(model);
    std::vector<double> f_values(samples.size());
    parallel_for(samples.size(), [&](std::size_t i) { f_values[i] = f(samples.point(i)); });

    const std::size_t cap = std::min(config.width_cap, kMaxSimQubits);
    std::vector<double> g_values(samples.size());
    for (const auto &rp : rows) {
        const auto start = std::chrono::steady_clock::now();
        SweepRow row;
        row.n = rp.n;
        const GpcExpansion e = all.restrict_to(rp.set);
        row.max_nu1 = order_stats(rp.set).max_nu1;
        if (norm2) row.l2_exact = std::sqrt(std::max(0.0, *norm2 - sum_squares(e)));

        std::optional<LcuPlan> plan;
        bool nonzero = false;
        for (const auto &[nu, c] : e.terms()) nonzero = nonzero || c != 0.0;
        if (nonzero) {
            plan = compile_expansion(e);
            const ResourceReport rep = resource_report(*plan);
            row.data_width = rep.data_width;
            row.ancilla_width = rep.ancilla_width;
            row.ir_depth = rep.ir_depth;
            row.modeled_depth = rep.modeled_depth;
            row.size = rep.size;
        }

        bool evaluated = true;
        if (config.backend == Backend::Classical || !plan) {
            parallel_for(samples.size(), [&](std::size_t i) { g_values[i] = eval_truncated(e, samples.point(i)); });
        } else if (plan->total_width() > cap) {
            row.width_skipped = true;
            evaluated = false;
        } else {
            const LcuEvaluator ev(*plan);
            parallel_for(samples.size(), [&](std::size_t i) { g_values[i] = ev.evaluate(samples.point(i)).value; });
        }

        if (evaluated) {
            const ErrorNorms err = error_norms(f_values, g_values, samples.mc_count);
            row.l2_error = err.l2_rho;
            row.l2_stderr = err.l2_stderr;
            row.linf_error = err.linf;
        } else {
            row.l2_error = row.l2_stderr = row.linf_error = kNaN;
        }
        if (config.timing) {
            row.wall_time_ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        }
        result.rows.push_back(std::move(row));
    }
    return result;
}

GpcExpansion expand(const Model &model, const SweepConfig &config) {
    SweepConfig last = config;
    if (!last.n_list.empty()) last.n_list = {last.n_list.back()};
    if (!last.k_list.empty()) last.k_list = {last.k_list.back()};
    last.validate();
    auto planned = plan_rows(model, last);
    return planned.coefficients.restrict_to(planned.rows.back().set);
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw SizeError("fit_line: x and y differ in length");
    const std::size_t n = x.size();
    if (n < 2) throw DomainError("fit_line: at least two points are required");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw DomainError("fit_line: x values are all equal");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ssr += r * r;
    }
    fit.r2 = syy > 0.0 ? 1.0 - ssr / syy : (ssr == 0.0 ? 1.0 : 0.0);
    return fit;
}

RateFit fit_rate(std::span<const double> n, std::span<const double> err, RateLaw law, std::size_t d) {
    if (n.size() != err.size()) throw SizeError("fit_rate: n and error columns differ in length");
    if (law == RateLaw::Exponential && d == 0) throw DomainError("fit_rate: d must be positive");
    std::vector<double> x, y;
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (!(std::isfinite(err[i]) && err[i] > 0.0 && n[i] > 0.0)) continue;
        x.push_back(law == RateLaw::Algebraic ? std::log(n[i]) : std::pow(n[i], 1.0 / static_cast<double>(d)));
        y.push_back(std::log(err[i]));
    }
    if (x.size() < 4)
        throw DomainError("fit_rate: " + std::to_string(x.size()) + " usable rows, at least 4 are required");
    const LineFit line = fit_line(x, y);
    RateFit fit;
    fit.law = law == RateLaw::Algebraic ? "algebraic" : "exponential(d=" + std::to_string(d) + ")";
    fit.slope_or_gamma = law == RateLaw::Algebraic ? line.slope : -line.slope;
    fit.r2 = line.r2;
    fit.C = std::exp(line.intercept);
    fit.n_used = x.size();
    return fit;
}

RateFit fit_rate(const SweepResult &result, RateLaw law, std::size_t d, ErrorColumn column) {
    std::vector<double> n, err;
    for (const auto &row : result.rows) {
        if (row.width_skipped) continue;
        n.push_back(static_cast<double>(row.n));
        err.push_back(column == ErrorColumn::L2 ? row.l2_error : row.linf_error);
    }
    return fit_rate(n, err, law, d);
}

std::string sweep_csv(const SweepResult &result, const std::string &metadata) {
    std::string out = "# " + metadata + "\n";
    out += "n,l2_error,linf_error,data_width,ancilla_width,ir_depth,modeled_depth,size,max_nu1,wall_time_ms\n";
    char buf[512];
    for (const auto &r : result.rows) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%zu,%zu,%zu,%zu,%zu,%llu,%.17g\n", r.n, r.l2_error,
                      r.linf_error, r.data_width, r.ancilla_width, r.ir_depth, r.modeled_depth, r.size,
                      static_cast<unsigned long long>(r.max_nu1), r.wall_time_ms);
        out += buf;
    }
    return out;
}

bool VerifyReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck &c) { return c.passed; });
}

}  // namespace gpcqc
