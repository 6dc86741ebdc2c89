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

#include "gpcqc/gpc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gpcqc/error.hpp"
#include "gpcqc/models.hpp"
#include "gpcqc/parallel.hpp"

namespace gpcqc {

const char *to_string(Basis basis) { return basis == Basis::Classical ? "classical" : "onb"; }

const char *to_string(ExpansionKind kind) {
    return kind == ExpansionKind::Chebyshev ? "chebyshev" : "taylor";
}

double onb_factor(const MultiIndex &nu) {
    const std::size_t k = nu.nnz();
    double f = std::ldexp(1.0, static_cast<int>(k / 2));
    if (k % 2) f *= std::numbers::sqrt2;
    return f;
}

GpcExpansion::GpcExpansion(ExpansionKind kind, Basis basis, std::vector<Term> terms,
                           std::string model_id)
    : kind_(kind), basis_(basis), terms_(std::move(terms)), model_id_(std::move(model_id)) {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term &a, const Term &b) { return canonical_less(a.first, b.first); });
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (!std::isfinite(terms_[i].second)) {
            throw DomainError("gPC coefficient of " + terms_[i].first.to_string() + " is not finite");
        }
        if (i > 0 && terms_[i].first == terms_[i - 1].first) {
            throw DomainError("duplicate gPC index " + terms_[i].first.to_string());
        }
    }
}

double GpcExpansion::coeff(const MultiIndex &nu) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), nu, [](const Term &t, const MultiIndex &v) {
        return canonical_less(t.first, v);
    });
    return (it != terms_.end() && it->first == nu) ? it->second : 0.0;
}

IndexSet GpcExpansion::support() const {
    std::vector<MultiIndex> members;
    members.reserve(terms_.size());
    for (const auto &t : terms_) members.push_back(t.first);
    return IndexSet(std::move(members));
}

double GpcExpansion::l1_norm() const {
    double s = 0.0;
    for (const auto &t : terms_) s += std::abs(t.second);
    return s;
}

double GpcExpansion::l2_norm() const {
    double s = 0.0;
    for (const auto &t : terms_) s += t.second * t.second;
    return std::sqrt(s);
}

GpcExpansion GpcExpansion::restrict_to(const IndexSet &set) const {
    std::vector<Term> kept;
    kept.reserve(set.size());
    for (const auto &nu : set) {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), nu,
                                   [](const Term &t, const MultiIndex &v) { return canonical_less(t.first, v); });
        if (it == terms_.end() || !(it->first == nu)) {
            throw DomainError("restrict_to: index " + nu.to_string() + " has no stored coefficient");
        }
        kept.push_back(*it);
    }
    GpcExpansion out(kind_, basis_, std::move(kept), model_id_);
    out.quadrature_warning_ = quadrature_warning_;
    return out;
}

namespace {

double clamp_unit(double x) {
    if (!(std::abs(x) <= 1.0 + 1e-12)) {
        throw DomainError("Chebyshev argument outside [-1, 1]");
    }
    return std::clamp(x, -1.0, 1.0);
}

// T~_0..T~_kmax at x by the three-term recurrence.
void chebyshev_table(std::uint32_t kmax, double x, double *out) {
    out[0] = 1.0;
    if (kmax >= 1) out[1] = x;
    for (std::uint32_t k = 2; k <= kmax; ++k) out[k] = 2.0 * x * out[k - 1] - out[k - 2];
}

}  // namespace

double cheb_eval(std::uint32_t k, double x, Basis basis) {
    x = clamp_unit(x);
    const double v = std::cos(static_cast<double>(k) * std::acos(x));
    return (basis == Basis::Onb && k > 0) ? std::numbers::sqrt2 * v : v;
}

double tensor_cheb_eval(const MultiIndex &nu, std::span<const double> y, Basis basis) {
    if (nu.max_coord() > y.size()) {
        throw DomainError("tensor_cheb_eval: support of " + nu.to_string() +
                          " exceeds point dimension " + std::to_string(y.size()));
    }
    double v = 1.0;
    for (const auto &e : nu.entries()) v *= cheb_eval(e.exponent, y[e.coord - 1], basis);
    return v;
}

GpcExpansion cheb_coefficients(const ScalarField &f, const IndexSet &set, std::size_t nodes_per_dim,
                               std::string model_id) {
    if (nodes_per_dim == 0) throw DomainError("cheb_coefficients: nodes_per_dim must be >= 1");
    const std::size_t dim = set.max_coord();
    const std::uint32_t max_deg = set.empty() ? 0 : order_stats(set).max_nuinf;

    constexpr std::size_t kMaxPoints = 20'000'000;
    std::size_t points = 1;
    for (std::size_t j = 0; j < dim; ++j) {
        if (points > kMaxPoints / nodes_per_dim) {
            throw SizeError("cheb_coefficients: m^D quadrature points exceed " + std::to_string(kMaxPoints));
        }
        points *= nodes_per_dim;
    }

    const std::size_t m = nodes_per_dim;
    std::vector<double> nodes(m);
    for (std::size_t i = 1; i <= m; ++i) {
        nodes[i - 1] = std::cos((2.0 * static_cast<double>(i) - 1.0) * std::numbers::pi / (2.0 * static_cast<double>(m)));
    }
    // table[i * (max_deg + 1) + k] = T~_k(x_i)
    std::vector<double> table(m * (max_deg + 1));
    for (std::size_t i = 0; i < m; ++i) chebyshev_table(max_deg, nodes[i], &table[i * (max_deg + 1)]);

    // Fixed-size blocks of quadrature points, summed in block order, so the
    // result does not depend on the worker count.
    constexpr std::size_t kBlock = 4096;
    const std::size_t blocks = (points + kBlock - 1) / kBlock;
    std::vector<std::vector<double>> partial(blocks, std::vector<double>(set.size(), 0.0));
    parallel_for(blocks, [&](std::size_t blk) {
        std::vector<std::size_t> digit(dim);
        std::vector<double> y(dim);
        const std::size_t lo = blk * kBlock;
        const std::size_t hi = std::min(points, lo + kBlock);
        for (std::size_t p = lo; p < hi; ++p) {
            std::size_t r = p;
            for (std::size_t j = 0; j < dim; ++j) {
                digit[j] = r % m;
                r /= m;
                y[j] = nodes[digit[j]];
            }
            const double fv = f(y);
            auto &acc = partial[blk];
            for (std::size_t t = 0; t < set.size(); ++t) {
                double v = fv;
                for (const auto &e : set[t].entries()) v *= table[digit[e.coord - 1] * (max_deg + 1) + e.exponent];
                acc[t] += v;
            }
        }
    });
    std::vector<GpcExpansion::Term> terms;
    terms.reserve(set.size());
    const double scale = 1.0 / static_cast<double>(points);
    for (std::size_t t = 0; t < set.size(); ++t) {
        double s = 0.0;
        for (std::size_t blk = 0; blk < blocks; ++blk) s += partial[blk][t];
        terms.emplace_back(set[t], s * scale * onb_factor(set[t]));
    }
    GpcExpansion out(ExpansionKind::Chebyshev, Basis::Onb, std::move(terms), std::move(model_id));
    out.set_quadrature_warning(m < static_cast<std::size_t>(max_deg) + 1);
    return out;
}

GpcExpansion taylor_coefficients(const RationalAffineModel &model, const IndexSet &set) {
    double sum_abs = 0.0;
    for (double v : model.b) sum_abs += std::abs(v);
    if (!(model.c > sum_abs)) {
        throw DomainError("taylor_coefficients: c <= sum |b_j|, the series does not converge on U");
    }
    std::vector<GpcExpansion::Term> terms;
    terms.reserve(set.size());
    for (const auto &nu : set) {
        if (nu.max_coord() > model.dimension()) {
            throw DomainError("taylor_coefficients: index " + nu.to_string() + " beyond model dimension");
        }
        // theta (-1)^|nu| |nu|!/nu! prod (b_j/c)^nu_j / c, multinomial built incrementally.
        double t = model.theta / model.c;
        std::uint64_t running = 0;
        for (const auto &e : nu.entries()) {
            const double ratio = model.b[e.coord - 1] / model.c;
            for (std::uint32_t i = 1; i <= e.exponent; ++i) {
                ++running;
                t *= -ratio * static_cast<double>(running) / static_cast<double>(i);
            }
        }
        terms.emplace_back(nu, t);
    }
    return GpcExpansion(ExpansionKind::Taylor, Basis::Classical, std::move(terms), model.id());
}

double eval_truncated(const GpcExpansion &expansion, std::span<const double> y) {
    // Per-coordinate tables of T~_k(y_j) (or y_j^k), then products in canonical order.
    const auto terms = expansion.terms();
    Coord dim = 0;
    for (const auto &t : terms) dim = std::max(dim, t.first.max_coord());
    if (dim > y.size()) {
        throw DomainError("eval_truncated: point has " + std::to_string(y.size()) +
                          " coordinates, expansion needs " + std::to_string(dim));
    }
    std::vector<std::uint32_t> kmax(dim, 0);
    for (const auto &t : terms) {
        for (const auto &e : t.first.entries()) kmax[e.coord - 1] = std::max(kmax[e.coord - 1], e.exponent);
    }
    std::vector<std::size_t> offset(dim + 1, 0);
    for (std::size_t j = 0; j < dim; ++j) offset[j + 1] = offset[j] + kmax[j] + 1;
    std::vector<double> table(offset[dim]);
    const bool chebyshev = expansion.kind() == ExpansionKind::Chebyshev;
    for (std::size_t j = 0; j < dim; ++j) {
        double *row = &table[offset[j]];
        if (chebyshev) {
            chebyshev_table(kmax[j], clamp_unit(y[j]), row);
        } else {
            row[0] = 1.0;
            for (std::uint32_t k = 1; k <= kmax[j]; ++k) row[k] = row[k - 1] * y[j];
        }
    }
    const bool onb = chebyshev && expansion.basis() == Basis::Onb;
    double sum = 0.0;
    for (const auto &t : terms) {
        double v = t.second;
        for (const auto &e : t.first.entries()) v *= table[offset[e.coord - 1] + e.exponent];
        if (onb) v *= onb_factor(t.first);
        sum += v;
    }
    return sum;
}

GpcExpansion convert_basis(const GpcExpansion &expansion, Basis target) {
    if (expansion.kind() != ExpansionKind::Chebyshev) {
        throw DomainError("convert_basis: only Chebyshev expansions carry a basis normalization");
    }
    if (expansion.basis() == target) return expansion;
    std::vector<GpcExpansion::Term> terms(expansion.terms().begin(), expansion.terms().end());
    for (auto &t : terms) {
        const double f = onb_factor(t.first);
        t.second = (target == Basis::Classical) ? t.second * f : t.second / f;
    }
    GpcExpansion out(ExpansionKind::Chebyshev, target, std::move(terms), expansion.model_id());
    out.set_quadrature_warning(expansion.quadrature_warning());
    return out;
}

MeasureSampler::MeasureSampler(std::size_t dimension, std::uint64_t seed)
    : dimension_(dimension), seed_(seed), engine_(seed) {}

void MeasureSampler::draw(std::span<double> out) {
    if (out.size() != dimension_) throw DomainError("MeasureSampler::draw: wrong output size");
    for (auto &v : out) {
        // 53 random bits -> u in [0, 1); mt19937_64 output is fully specified.
        const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        v = std::cos(std::numbers::pi * u);
    }
}

std::vector<double> MeasureSampler::draw() {
    std::vector<double> y(dimension_);
    draw(y);
    return y;
}

SampleSet make_sample_set(MeasureSampler &sampler, std::size_t samples, bool with_corners) {
    SampleSet set;
    set.dimension = sampler.dimension();
    set.mc_count = samples;
    const std::size_t dim = set.dimension;
    const std::size_t corner_dims = with_corners ? std::min(dim, kMaxCornerDims) : 0;
    const std::size_t corners = (with_corners && dim > 0) ? (std::size_t{1} << corner_dims) : 0;
    set.coords.resize((samples + corners) * dim);
    for (std::size_t i = 0; i < samples; ++i) {
        sampler.draw(std::span<double>(set.coords).subspan(i * dim, dim));
    }
    for (std::size_t c = 0; c < corners; ++c) {
        double *row = &set.coords[(samples + c) * dim];
        for (std::size_t j = 0; j < corner_dims; ++j) row[j] = ((c >> j) & 1u) ? 1.0 : -1.0;
    }
    return set;
}

std::pair<double, double> mean_square(std::span<const double> values, std::size_t mc_count) {
    if (mc_count == 0 || mc_count > values.size()) throw DomainError("mean_square: bad sample count");
    double mean = 0.0;
    for (std::size_t i = 0; i < mc_count; ++i) mean += values[i] * values[i];
    mean /= static_cast<double>(mc_count);
    double var = 0.0;
    for (std::size_t i = 0; i < mc_count; ++i) {
        const double d = values[i] * values[i] - mean;
        var += d * d;
    }
    var /= static_cast<double>(mc_count > 1 ? mc_count - 1 : 1);
    return {mean, std::sqrt(var / static_cast<double>(mc_count))};
}

ErrorNorms error_norms(std::span<const double> f_values, std::span<const double> g_values,
                       std::size_t mc_count) {
    if (f_values.size() != g_values.size()) throw DomainError("error_norms: value count mismatch");
    std::vector<double> diff(f_values.size());
    ErrorNorms out;
    for (std::size_t i = 0; i < diff.size(); ++i) {
        diff[i] = f_values[i] - g_values[i];
        out.linf = std::max(out.linf, std::abs(diff[i]));
    }
    const auto [ms, se] = mean_square(diff, mc_count);
    out.l2_rho = std::sqrt(ms);
    out.l2_stderr = out.l2_rho > 0.0 ? se / (2.0 * out.l2_rho) : 0.0;
    out.mc_samples = mc_count;
    out.corner_samples = f_values.size() - mc_count;
    return out;
}

ErrorNorms error_norms(const ScalarField &f, const GpcExpansion &expansion, std::size_t samples,
                       MeasureSampler &sampler) {
    if (samples < 1000) throw DomainError("error_norms: at least 1000 samples required");
    const SampleSet set = make_sample_set(sampler, samples);
    std::vector<double> fv(set.size()), gv(set.size());
    parallel_for(set.size(), [&](std::size_t i) {
        fv[i] = f(set.point(i));
        gv[i] = eval_truncated(expansion, set.point(i));
    });
    return error_norms(fv, gv, set.mc_count);
}

}  // namespace gpcqc
