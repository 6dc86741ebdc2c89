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

#include "gpcqc/serialize.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <memory>

#include "gpcqc/error.hpp"

namespace gpcqc {

namespace {

GateKind gate_kind_from(const std::string &s) {
    static const GateKind kinds[] = {GateKind::RX,    GateKind::RY,        GateKind::RZ,
                                     GateKind::H,     GateKind::X,         GateKind::Phase,
                                     GateKind::Generic1Q, GateKind::Unitary, GateKind::Controlled};
    for (GateKind k : kinds)
        if (s == to_string(k)) return k;
    throw ConfigError("circuit: unknown gate kind '" + s + "'");
}

Json matrix_to_json(const MatrixXc &m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

MatrixXc matrix_from_json(const Json &j) {
    const auto n = static_cast<Eigen::Index>(j.size());
    MatrixXc m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const Json &row = j.at(static_cast<std::size_t>(r));
        if (static_cast<Eigen::Index>(row.size()) != n) throw ConfigError("circuit: matrix must be square");
        for (Eigen::Index c = 0; c < n; ++c) {
            const Json &e = row.at(static_cast<std::size_t>(c));
            m(r, c) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
        }
    }
    return m;
}

Json param_to_json(const Param &p) {
    if (!p.bound()) return Json{{"value", p.value}};
    return Json{{"scale", p.value}, {"arg", "y[" + std::to_string(p.slot + 1) + "]"}};
}

Param param_from_json(const Json &j) {
    if (j.contains("value")) return Param::literal(j.at("value").get<double>());
    const std::string arg = j.at("arg").get<std::string>();
    int coord = 0;
    const bool framed = arg.size() > 3 && arg.compare(0, 2, "y[") == 0 && arg.back() == ']';
    const char *last = arg.data() + arg.size() - 1;
    if (!framed || std::from_chars(arg.data() + 2, last, coord).ptr != last || coord < 1)
        throw ConfigError("circuit: malformed parameter argument '" + arg + "'");
    return Param::arccos_of(coord - 1, j.at("scale").get<double>());
}

template <class T>
T field(const Json &j, const char *key, const std::string &prefix) {
    if (!j.contains(key)) throw ConfigError(prefix + key + ": missing");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception &) {
        throw ConfigError(prefix + key + ": wrong type");
    }
}

template <class T>
T field_or(const Json &j, const char *key, T fallback, const std::string &prefix) {
    return j.contains(key) ? field<T>(j, key, prefix) : fallback;
}

}  // namespace

Json to_json(const MultiIndex &nu) {
    Json out = Json::array();
    for (const auto &e : nu.entries()) out.push_back({e.coord, e.exponent});
    return out;
}

MultiIndex multi_index_from_json(const Json &j) {
    if (!j.is_array()) throw ConfigError("multi-index: expected an array of [j, v] pairs");
    std::vector<MultiIndex::Entry> entries;
    for (const auto &e : j) {
        if (!e.is_array() || e.size() != 2) throw ConfigError("multi-index: expected [j, v] pairs");
        entries.push_back({e.at(0).get<Coord>(), e.at(1).get<std::uint32_t>()});
    }
    return MultiIndex::from_entries(std::move(entries));
}

Json to_json(const IndexSet &set) {
    Json out = Json::array();
    for (const auto &nu : set) out.push_back(Json{{"idx", to_json(nu)}});
    return out;
}

IndexSet index_set_from_json(const Json &j) {
    if (!j.is_array()) throw ConfigError("index set: expected an array");
    std::vector<MultiIndex> members;
    for (const auto &e : j) members.push_back(multi_index_from_json(e.at("idx")));
    return IndexSet(std::move(members));
}

Json to_json(const GpcExpansion &expansion) {
    Json coeffs = Json::array();
    for (const auto &[nu, c] : expansion.terms()) coeffs.push_back({to_json(nu), c});
    return Json{{"kind", to_string(expansion.kind())},
                {"basis", to_string(expansion.basis())},
                {"model_id", expansion.model_id()},
                {"quadrature_warning", expansion.quadrature_warning()},
                {"coeffs", std::move(coeffs)}};
}

GpcExpansion expansion_from_json(const Json &j) {
    const std::string p = "coefficients.";
    const ExpansionKind kind = parse_kind(field<std::string>(j, "kind", p));
    const std::string basis = field_or<std::string>(j, "basis", "onb", p);
    if (basis != "onb" && basis != "classical") throw ConfigError("coefficients.basis: expected onb or classical");
    if (!j.contains("coeffs") || !j.at("coeffs").is_array()) throw ConfigError("coefficients.coeffs: missing");
    std::vector<GpcExpansion::Term> terms;
    for (const auto &t : j.at("coeffs")) {
        if (!t.is_array() || t.size() != 2) throw ConfigError("coefficients.coeffs: expected [index, value] pairs");
        terms.emplace_back(multi_index_from_json(t.at(0)), t.at(1).get<double>());
    }
    GpcExpansion e(kind, basis == "onb" ? Basis::Onb : Basis::Classical, std::move(terms),
                   field_or<std::string>(j, "model_id", "", p));
    e.set_quadrature_warning(field_or<bool>(j, "quadrature_warning", false, p));
    return e;
}

std::string expansion_csv(const GpcExpansion &expansion, const std::string &metadata) {
    std::string out = "# " + metadata + "\nnu,nu0,nu1,nuinf,coeff\n";
    char buf[64];
    for (const auto &[nu, c] : expansion.terms()) {
        std::snprintf(buf, sizeof buf, "%.17g", c);
        out += nu.to_string() + "," + std::to_string(nu.nnz()) + "," + std::to_string(nu.l1()) + "," +
               std::to_string(nu.linf()) + "," + buf + "\n";
    }
    return out;
}

Json to_json(const Circuit &circuit) {
    Json ops = Json::array();
    for (const Gate &g : circuit.ops()) {
        Json op{{"kind", to_string(g.kind)}};
        switch (g.kind) {
            case GateKind::RX:
            case GateKind::RY:
            case GateKind::RZ:
                op["targets"] = g.targets;
                op["param"] = param_to_json(g.param);
                break;
            case GateKind::H:
            case GateKind::X: op["targets"] = g.targets; break;
            case GateKind::Phase: op["param"] = param_to_json(g.param); break;
            case GateKind::Generic1Q:
            case GateKind::Unitary:
                op["targets"] = g.targets;
                op["matrix"] = matrix_to_json(*g.matrix);
                break;
            case GateKind::Controlled:
                op["controls"] = g.controls;
                op["pattern"] = std::vector<int>(g.pattern.begin(), g.pattern.end());
                op["block"] = to_json(*g.block);
                break;
        }
        op["counted_params"] = g.counted_params;
        ops.push_back(std::move(op));
    }
    return Json{{"num_qubits", circuit.num_qubits()}, {"ops", std::move(ops)}};
}

Circuit circuit_from_json(const Json &j) {
    try {
        Circuit c(j.at("num_qubits").get<std::size_t>());
        for (const auto &op : j.at("ops")) {
            Gate g;
            g.kind = gate_kind_from(op.at("kind").get<std::string>());
            if (op.contains("targets")) g.targets = op.at("targets").get<std::vector<std::uint32_t>>();
            if (op.contains("param")) g.param = param_from_json(op.at("param"));
            if (op.contains("matrix")) g.matrix = std::make_shared<const MatrixXc>(matrix_from_json(op.at("matrix")));
            if (g.kind == GateKind::Controlled) {
                g.block = std::make_shared<const Circuit>(circuit_from_json(op.at("block")));
                g.controls = op.at("controls").get<std::vector<std::uint32_t>>();
                for (int v : op.at("pattern").get<std::vector<int>>()) g.pattern.push_back(v != 0);
            }
            g.counted_params = op.value("counted_params", 0U);
            c.append(std::move(g));
        }
        return c;
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(std::string("circuit: ") + e.what());
    }
}

Json to_json(const Metrics &m) {
    return Json{{"width", m.width}, {"depth", m.depth}, {"size", m.size}, {"modeled_depth", m.modeled_depth}};
}

Json to_json(const LcuPlan &plan) {
    Json terms = Json::array();
    for (std::size_t i = 0; i < plan.terms.size(); ++i) {
        const LcuTerm &t = plan.terms[i];
        Json term{{"magnitude", t.magnitude}, {"sign", t.sign}};
        if (!plan.indices.empty()) term["index"] = to_json(plan.indices[i]);
        term["circuit"] = to_json(t.circuit);
        terms.push_back(std::move(term));
    }
    return Json{{"kind", to_string(plan.kind)},
                {"data_width", plan.data_width},
                {"ancilla_count", plan.ancilla_count},
                {"l1_norm", plan.l1_norm},
                {"terms", std::move(terms)}};
}

LcuPlan plan_from_json(const Json &j) {
    const std::string p = "plan.";
    LcuPlan plan;
    plan.kind = parse_kind(field<std::string>(j, "kind", p));
    plan.data_width = field<std::size_t>(j, "data_width", p);
    plan.ancilla_count = field<std::size_t>(j, "ancilla_count", p);
    plan.l1_norm = field<double>(j, "l1_norm", p);
    if (!j.contains("terms") || !j.at("terms").is_array()) throw ConfigError("plan.terms: missing");
    for (const auto &t : j.at("terms")) {
        LcuTerm term;
        term.magnitude = field<double>(t, "magnitude", p + "terms.");
        term.sign = field<int>(t, "sign", p + "terms.");
        if (!t.contains("circuit")) throw ConfigError("plan.terms.circuit: missing");
        term.circuit = circuit_from_json(t.at("circuit"));
        if (t.contains("index")) plan.indices.push_back(multi_index_from_json(t.at("index")));
        plan.terms.push_back(std::move(term));
    }
    try {
        validate_plan(plan);
    } catch (const DomainError &e) {
        throw ConfigError(std::string("plan: ") + e.what());
    }
    return plan;
}

Json to_json(const ResourceReport &r) {
    Json reference = Json::array();
    for (const auto &f : r.reference)
        reference.push_back(
            Json{{"quantity", f.quantity}, {"regime", f.regime}, {"formula", f.formula}, {"value", f.value}});
    return Json{{"data_width", r.data_width},
                {"ancilla_width", r.ancilla_width},
                {"ir_depth", r.ir_depth},
                {"modeled_depth", r.modeled_depth},
                {"size", r.size},
                {"terms", r.terms},
                {"l1_norm", r.l1_norm},
                {"max_nu0", r.max_nu0},
                {"max_nu1", r.max_nu1},
                {"max_nuinf", r.max_nuinf},
                {"max_term_depth", r.max_term_depth},
                {"reference", std::move(reference)}};
}

Json to_json(const RateFit &fit) {
    return Json{{"law", fit.law},
                {"slope_or_gamma", fit.slope_or_gamma},
                {"r2", fit.r2},
                {"C", fit.C},
                {"n_used", fit.n_used}};
}

Json to_json(const VerifyReport &report) {
    Json checks = Json::array();
    for (const auto &c : report.checks)
        checks.push_back(Json{{"module", c.module},
                              {"name", c.name},
                              {"passed", c.passed},
                              {"measured", c.measured},
                              {"tolerance", c.tolerance}});
    return Json{{"seed", report.seed}, {"passed", report.passed()}, {"checks", std::move(checks)}};
}

Model model_from_json(const Json &j) {
    const std::string p = "model.";
    if (!j.is_object()) throw ConfigError("model: expected a JSON object");
    const std::string type = field<std::string>(j, "type", p);
    if (type == "rational") {
        RationalAffineModel m;
        const double theta = field_or<double>(j, "theta", 1.0, p);
        const double c = field<double>(j, "c", p);
        if (j.contains("b")) {
            m.theta = theta;
            m.c = c;
            m.b = field<std::vector<double>>(j, "b", p);
        } else {
            if (!j.contains("b_rule") || !j.at("b_rule").is_object())
                throw ConfigError("model.b_rule: missing (or give an explicit model.b)");
            const Json &rule = j.at("b_rule");
            const double c_b = field<double>(rule, "c_b", p + "b_rule.");
            const double s = field<double>(rule, "s", p + "b_rule.");
            const auto D = field<std::size_t>(j, "D", p);
            if (D == 0) throw ConfigError("model.D: must be positive");
            m = RationalAffineModel::from_rule(theta, c, c_b, s, D, field_or<std::size_t>(j, "active_dims", 0, p));
        }
        m.validate();
        return m;
    }
    if (type == "diffusion1d") {
        Diffusion1DModel m;
        m.a0 = field_or<double>(j, "a0", 1.0, p);
        if (j.contains("b_rule")) {
            const Json &rule = j.at("b_rule");
            m.c_b = field<double>(rule, "c_b", p + "b_rule.");
            m.s = field_or<double>(rule, "s", 2.0, p + "b_rule.");
        }
        m.D = field<std::size_t>(j, "D", p);
        const double h = field_or<double>(j, "h", 1.0 / 128.0, p);
        if (!(h > 0.0 && h <= 0.5)) throw ConfigError("model.h: must lie in (0, 1/2]");
        m.cells = static_cast<std::size_t>(std::lround(1.0 / h));
        m.kappa = field_or<double>(j, "kappa", 0.5, p);
        m.validate();
        return m;
    }
    throw ConfigError("model.type: expected rational or diffusion1d, got '" + type + "'");
}

Json model_to_json(const Model &model) {
    if (const auto *m = std::get_if<RationalAffineModel>(&model)) {
        // Rule-built models round-trip through their rule; others through b.
        const auto rebuilt = RationalAffineModel::from_rule(m->theta, m->c, m->rule_c_b, m->rule_s, m->b.size(),
                                                            m->active_dims() < m->b.size() ? m->active_dims() : 0);
        if (rebuilt.b == m->b && m->rule_c_b != 0.0) {
            Json out{{"type", "rational"},
                     {"theta", m->theta},
                     {"c", m->c},
                     {"b_rule", Json{{"c_b", m->rule_c_b}, {"s", m->rule_s}}},
                     {"D", m->b.size()}};
            if (m->active_dims() < m->b.size()) out["active_dims"] = m->active_dims();
            return out;
        }
        return Json{{"type", "rational"}, {"theta", m->theta}, {"c", m->c}, {"b", m->b}};
    }
    const auto &d = std::get<Diffusion1DModel>(model);
    return Json{{"type", "diffusion1d"},
                {"a0", d.a0},
                {"b_rule", Json{{"c_b", d.c_b}, {"s", d.s}}},
                {"D", d.D},
                {"h", d.h()},
                {"kappa", d.kappa}};
}

Json parse_json(std::string_view text, const std::string &what) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ConfigError(what + ": invalid JSON (" + e.what() + ")");
    }
}

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw Error("sha256: digest failed");
    static const char *hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xF];
    }
    return out;
}

std::string config_hash(const Json &config) { return sha256_hex(config.dump()); }

}  // namespace gpcqc
