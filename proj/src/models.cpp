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

#include "gpcqc/models.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_bessel.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "gpcqc/error.hpp"
#include "gpcqc/parallel.hpp"

namespace gpcqc {

namespace {

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

// Fixed exp-sinh rule for int_0^inf g(t) dt: t = exp(pi/2 sinh s).
struct ExpSinhRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const ExpSinhRule &exp_sinh_rule() {
    static const ExpSinhRule rule = [] {
        ExpSinhRule r;
        constexpr double h = 1.0 / 32.0;
        constexpr double s_lo = -4.5;
        constexpr double s_hi = 4.5;
        for (double s = s_lo; s <= s_hi + 1e-12; s += h) {
            const double t = std::exp(0.5 * std::numbers::pi * std::sinh(s));
            if (t == 0.0 || !std::isfinite(t)) continue;
            r.nodes.push_back(t);
            r.weights.push_back(h * t * 0.5 * std::numbers::pi * std::cosh(s));
        }
        return r;
    }();
    return rule;
}

// log(e^{-x} I_k(x)) for k = 0..kmax; -inf where the value underflows.
void log_scaled_bessel(std::uint32_t kmax, double x, std::vector<double> &out) {
    out.assign(kmax + 1, -std::numeric_limits<double>::infinity());
    if (x == 0.0) {
        out[0] = 0.0;
        return;
    }
    for (std::uint32_t k = 0; k <= kmax; ++k) {
        gsl_sf_result r;
        const int status = gsl_sf_bessel_In_scaled_e(static_cast<int>(k), x, &r);
        if (status == GSL_SUCCESS || status == GSL_EUNDRFLW) {
            if (r.val > 0.0) out[k] = std::log(r.val);
        }
    }
}

struct GslHandlerOff {
    GslHandlerOff() { gsl_set_error_handler_off(); }
};

}  // namespace

RationalAffineModel RationalAffineModel::from_rule(double theta, double c, double c_b, double s,
                                                   std::size_t D, std::size_t active_dims) {
    RationalAffineModel m;
    m.theta = theta;
    m.c = c;
    m.rule_c_b = c_b;
    m.rule_s = s;
    m.b.assign(D, 0.0);
    const std::size_t limit = active_dims > 0 ? std::min(active_dims, D) : D;
    for (std::size_t j = 1; j <= limit; ++j) {
        m.b[j - 1] = c_b * std::pow(static_cast<double>(j), -s);
    }
    m.validate();
    return m;
}

std::size_t RationalAffineModel::active_dims() const noexcept {
    for (std::size_t j = b.size(); j > 0; --j) {
        if (b[j - 1] != 0.0) return j;
    }
    return 0;
}

double RationalAffineModel::margin() const noexcept {
    double s = 0.0;
    for (double v : b) s += std::abs(v);
    return c - s;
}

void RationalAffineModel::validate() const {
    if (!std::isfinite(theta)) throw ConfigError("model.theta must be finite");
    if (!std::isfinite(c)) throw ConfigError("model.c must be finite");
    for (double v : b) {
        if (!std::isfinite(v)) throw ConfigError("model.b_rule produces a non-finite b_j");
    }
    if (!(margin() > 0.0)) {
        throw ConfigError("model.c must exceed sum |b_j| (margin " + format_double(margin()) + ")");
    }
}

std::string RationalAffineModel::id() const {
    return "rational(theta=" + format_double(theta) + ",c=" + format_double(c) +
           ",c_b=" + format_double(rule_c_b) + ",s=" + format_double(rule_s) +
           ",D=" + std::to_string(b.size()) + ",active=" + std::to_string(active_dims()) + ")";
}

double eval_rational(const RationalAffineModel &model, std::span<const double> y) {
    double z = model.c;
    const std::size_t n = std::min(y.size(), model.b.size());
    for (std::size_t j = 0; j < n; ++j) {
        if (std::abs(y[j]) > 1.0 + 1e-12) {
            throw DomainError("eval_rational: |y_" + std::to_string(j + 1) + "| > 1");
        }
        z += model.b[j] * y[j];
    }
    return model.theta / z;
}

GpcExpansion rational_cheb_coefficients(const RationalAffineModel &model, const IndexSet &set) {
    static const GslHandlerOff gsl_off;
    model.validate();
    if (set.max_coord() > model.dimension()) {
        throw DomainError("rational_cheb_coefficients: index support beyond model dimension");
    }
    const auto &rule = exp_sinh_rule();
    const std::size_t D = model.dimension();
    const double m = model.margin();

    std::vector<std::uint32_t> kmax(D, 0);
    for (const auto &nu : set) {
        for (const auto &e : nu.entries()) kmax[e.coord - 1] = std::max(kmax[e.coord - 1], e.exponent);
    }

    // Per node: log e^{-t m} + sum_j log Ihat_0(t|b_j|), and the per-coordinate
    // log-ratio tables log Ihat_k - log Ihat_0 for the coordinates in use.
    const std::size_t nodes = rule.nodes.size();
    std::vector<double> base(nodes);
    std::vector<std::vector<std::vector<double>>> ratio(nodes);
    parallel_for(nodes, [&](std::size_t q) {
        const double t = rule.nodes[q];
        double acc = -t * m;
        ratio[q].resize(D);
        std::vector<double> logs;
        for (std::size_t j = 0; j < D; ++j) {
            log_scaled_bessel(kmax[j], t * std::abs(model.b[j]), logs);
            acc += logs[0];
            ratio[q][j].resize(kmax[j] + 1);
            for (std::uint32_t k = 0; k <= kmax[j]; ++k) ratio[q][j][k] = logs[k] - logs[0];
        }
        base[q] = acc;
    });

    std::vector<GpcExpansion::Term> terms(set.size());
    parallel_for(set.size(), [&](std::size_t i) {
        const MultiIndex &nu = set[i];
        double sign = 1.0;
        for (const auto &e : nu.entries()) {
            // E[e^{-t b y} T~_k(y)] = I_k(-t b) = (-sign b)^k I_k(t|b|).
            if (model.b[e.coord - 1] > 0.0 && (e.exponent & 1u)) sign = -sign;
        }
        double sum = 0.0;
        for (std::size_t q = 0; q < nodes; ++q) {
            double lg = base[q];
            for (const auto &e : nu.entries()) lg += ratio[q][e.coord - 1][e.exponent];
            if (lg > -745.0) sum += rule.weights[q] * std::exp(lg);
        }
        terms[i] = {nu, model.theta * sign * sum * onb_factor(nu)};
    });
    return GpcExpansion(ExpansionKind::Chebyshev, Basis::Onb, std::move(terms), model.id());
}

double rational_mean_square(const RationalAffineModel &model) {
    static const GslHandlerOff gsl_off;
    model.validate();
    // E[(c + z)^-2] = int_0^inf t e^{-tc} E[e^{-tz}] dt.
    const auto &rule = exp_sinh_rule();
    const double m = model.margin();
    std::vector<double> logs;
    double sum = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double t = rule.nodes[q];
        double lg = -t * m + std::log(t);
        for (double bj : model.b) {
            log_scaled_bessel(0, t * std::abs(bj), logs);
            lg += logs[0];
        }
        if (lg > -745.0) sum += rule.weights[q] * std::exp(lg);
    }
    return model.theta * model.theta * sum;
}

double Diffusion1DModel::psi_amplitude(std::size_t j) const {
    return c_b * std::pow(static_cast<double>(j), -s);
}

double Diffusion1DModel::coefficient(double x, std::span<const double> y) const {
    double a = a0;
    const std::size_t n = std::min(y.size(), D);
    for (std::size_t j = 1; j <= n; ++j) {
        a += y[j - 1] * psi_amplitude(j) * std::sin(static_cast<double>(j) * std::numbers::pi * x);
    }
    return a;
}

void Diffusion1DModel::validate() const {
    if (cells < 2) throw ConfigError("model.h must be at most 1/2");
    if (!(a0 > 0.0)) throw ConfigError("model.a0 must be > 0");
    if (!(kappa > 0.0 && kappa < 1.0)) throw ConfigError("model.kappa must lie in (0, 1)");
    const double h_ = h();
    for (std::size_t i = 0; i < cells; ++i) {
        const double x = (static_cast<double>(i) + 0.5) * h_;
        double dev = 0.0;
        for (std::size_t j = 1; j <= D; ++j) {
            dev += std::abs(psi_amplitude(j) * std::sin(static_cast<double>(j) * std::numbers::pi * x));
        }
        if (a0 - dev < (1.0 - kappa) * a0) {
            throw ConfigError("model.b_rule violates ellipticity a(x,y) >= (1 - kappa) a0 at x = " +
                              format_double(x));
        }
    }
}

std::string Diffusion1DModel::id() const {
    return "diffusion1d(a0=" + format_double(a0) + ",c_b=" + format_double(c_b) +
           ",s=" + format_double(s) + ",D=" + std::to_string(D) +
           ",cells=" + std::to_string(cells) + ",kappa=" + format_double(kappa) + ")";
}

std::vector<double> solve_diffusion_field(const Diffusion1DModel &model, std::span<const double> y) {
    const std::size_t N = model.cells;
    const double h = model.h();
    // a_{i+1/2} for i = 0..N-1
    std::vector<double> a(N);
    for (std::size_t i = 0; i < N; ++i) {
        a[i] = model.coefficient((static_cast<double>(i) + 0.5) * h, y);
        if (!(a[i] > 0.0)) throw DomainError("solve_diffusion: coefficient not positive");
    }
    // Unknowns u_1..u_{N-1}: -a_{i-1/2} u_{i-1} + (a_{i-1/2} + a_{i+1/2}) u_i - a_{i+1/2} u_{i+1} = h^2.
    const std::size_t n = N - 1;
    std::vector<double> diag(n), upper(n), rhs(n, h * h);
    for (std::size_t k = 0; k < n; ++k) {
        diag[k] = a[k] + a[k + 1];
        upper[k] = -a[k + 1];
    }
    // Thomas elimination; the system is symmetric, strictly diagonally dominant in the first row.
    for (std::size_t k = 1; k < n; ++k) {
        const double w = upper[k - 1] / diag[k - 1];
        diag[k] -= w * upper[k - 1];
        rhs[k] -= w * rhs[k - 1];
    }
    std::vector<double> u(N + 1, 0.0);
    for (std::size_t k = n; k-- > 0;) {
        const double next = (k + 1 < n) ? u[k + 2] : 0.0;
        if (diag[k] == 0.0) throw DomainError("solve_diffusion: singular system");
        u[k + 1] = (rhs[k] - upper[k] * next) / diag[k];
    }
    return u;
}

double solve_diffusion(const Diffusion1DModel &model, std::span<const double> y) {
    const auto u = solve_diffusion_field(model, y);
    double sum = 0.0;
    for (std::size_t i = 1; i + 1 < u.size(); ++i) sum += u[i];
    return model.h() * sum;
}

namespace {

double declared_p(double s) { return std::min(1.0, 1.0 / s + 0.05); }

double rule_tail(double c_b, double s, std::size_t D) {
    if (c_b == 0.0) return 0.0;
    if (s <= 1.0) return std::numeric_limits<double>::infinity();
    return std::abs(c_b) * std::pow(static_cast<double>(D), 1.0 - s) / (s - 1.0);
}

}  // namespace

ModelHolomorphy holomorphy_params(const RationalAffineModel &model) {
    ModelHolomorphy out;
    out.margin = model.margin();
    const std::size_t active = model.active_dims();
    out.finite_dimensional = active < model.dimension() || model.rule_c_b == 0.0;
    out.finite_dim = active;
    out.params.b.resize(active);
    for (std::size_t j = 0; j < active; ++j) {
        // Zero entries inside the active range would stop the frontier search;
        // keep them tiny but positive.
        out.params.b[j] = std::max(std::abs(model.b[j]), 1e-300);
    }
    out.params.eps = out.margin / 2.0;
    out.params.p = out.finite_dimensional ? 1.0 : declared_p(model.rule_s);
    out.params.tau = 0.0;
    out.tail_bound = out.finite_dimensional ? 0.0 : rule_tail(model.rule_c_b, model.rule_s, model.dimension());
    return out;
}

ModelHolomorphy holomorphy_params(const Diffusion1DModel &model) {
    ModelHolomorphy out;
    double sum = 0.0;
    out.params.b.resize(model.D);
    for (std::size_t j = 1; j <= model.D; ++j) {
        out.params.b[j - 1] = std::max(std::abs(model.psi_amplitude(j)) / model.a0, 1e-300);
        sum += std::abs(model.psi_amplitude(j)) / model.a0;
    }
    out.margin = 1.0 - sum;
    out.params.eps = std::max(out.margin, 1e-12) / 2.0;
    out.finite_dimensional = model.c_b == 0.0;
    out.finite_dim = model.c_b == 0.0 ? 0 : model.D;
    out.params.p = declared_p(model.s);
    out.params.tau = 0.0;
    out.tail_bound = rule_tail(model.c_b / model.a0, model.s, model.D);
    return out;
}

ScalarField as_field(const Model &model) {
    return std::visit(
        [](const auto &m) -> ScalarField {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, RationalAffineModel>) {
                return [m](std::span<const double> y) { return eval_rational(m, y); };
            } else {
                return [m](std::span<const double> y) { return solve_diffusion(m, y); };
            }
        },
        model);
}

std::size_t model_dimension(const Model &model) {
    return std::visit([](const auto &m) { return m.dimension(); }, model);
}

std::string model_id(const Model &model) {
    return std::visit([](const auto &m) { return m.id(); }, model);
}

ModelHolomorphy model_holomorphy(const Model &model) {
    return std::visit([](const auto &m) { return holomorphy_params(m); }, model);
}

}  // namespace gpcqc
