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

#include "gpcqc/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "gpcqc/error.hpp"
#include "gpcqc/lcu.hpp"
#include "gpcqc/parallel.hpp"

namespace gpcqc {

namespace {

namespace fs = std::filesystem;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string read_file(const std::string &path, const std::string &what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(what + ": cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path &path, const std::string &content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw Error("write failed for '" + path.string() + "'");
}

std::vector<double> parse_doubles(const std::string &text, const std::string &what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos)
            throw ConfigError(what + ": cannot parse '" + item + "' as a number");
        out.push_back(v);
    }
    return out;
}

struct Meta {
    std::string hash;
    std::uint64_t seed = 0;

    Json json() const { return Json{{"tool_version", GPCQC_VERSION}, {"config_hash", hash}, {"seed", seed}}; }
    std::string line() const {
        return std::string("tool_version=") + GPCQC_VERSION + " config_hash=" + hash + " seed=" + std::to_string(seed);
    }
    // Metadata first, then the payload fields.
    Json wrap(const Json &payload) const {
        Json out = json();
        for (const auto &[k, v] : payload.items()) out[k] = v;
        return out;
    }
};

Model load_model(const RunConfig &cfg) {
    if (cfg.model.is_null()) throw ConfigError("model: required (--model FILE or \"model\" in --config)");
    return model_from_json(cfg.model);
}

Json sweep_config_json(const RunConfig &cfg, const Model &model, const char *command) {
    const SweepConfig &s = cfg.sweep;
    return Json{{"command", command},
                {"model", model_to_json(model)},
                {"selector", to_string(s.selector)},
                {"n_list", s.n_list},
                {"k_list", s.k_list},
                {"tensor_dims", s.tensor_dims},
                {"kind", to_string(s.kind)},
                {"backend", to_string(s.backend)},
                {"samples", s.samples},
                {"seed", s.seed},
                {"pool_factor", s.pool_factor},
                {"nodes_per_dim", s.nodes_per_dim},
                {"width_cap", s.width_cap},
                {"timing", s.timing}};
}

std::string dump(const Json &j) { return j.dump(2) + "\n"; }

int cmd_expand(const RunConfig &cfg, std::ostream &out) {
    const Model model = load_model(cfg);
    const Json effective = sweep_config_json(cfg, model, "expand");
    const Meta meta{config_hash(effective), cfg.sweep.seed};
    const GpcExpansion e = expand(model, cfg.sweep);
    const fs::path dir(cfg.out_dir);
    write_file(dir / "expansion.json", dump(meta.wrap(Json{{"config", effective},
                                                             {"dimension", model_dimension(model)},
                                                             {"support_size", e.size()},
                                                             {"l1_norm", e.l1_norm()},
                                                             {"l2_norm", e.l2_norm()},
                                                             {"expansion", to_json(e)}})));
    write_file(dir / "expansion.csv", expansion_csv(e, meta.line()));
    out << "support_size " << e.size() << "\n"
        << "l1_norm " << fmt(e.l1_norm()) << "\n"
        << "l2_norm " << fmt(e.l2_norm()) << "\n";
    if (e.quadrature_warning()) out << "warning: quadrature used fewer nodes than max|nu|_inf + 1\n";
    return kExitOk;
}

int cmd_circuit(const RunConfig &cfg, std::ostream &out) {
    if (cfg.coeffs_path.empty()) throw ConfigError("coeffs: required (--coeffs FILE)");
    const std::string text = read_file(cfg.coeffs_path, "coeffs");
    const Json j = parse_json(text, "coeffs");
    const GpcExpansion e = expansion_from_json(j.contains("expansion") ? j.at("expansion") : j);
    const Json effective{{"command", "circuit"}, {"coeffs_sha256", sha256_hex(text)}, {"width_cap", cfg.sweep.width_cap}};
    const std::uint64_t seed = j.value("seed", std::uint64_t{0});
    const Meta meta{config_hash(effective), seed};

    const LcuPlan plan = compile_expansion(e);
    const ResourceReport report = resource_report(plan);
    const std::size_t cap = std::min(cfg.sweep.width_cap, kMaxSimQubits);
    if (plan.total_width() > cap)
        throw WidthCapError("circuit: instantiated width " + std::to_string(plan.total_width()) + " exceeds cap " +
                                std::to_string(cap),
                            plan.total_width(), cap);

    const fs::path dir(cfg.out_dir);
    Json plan_doc{{"config", effective}};
    if (j.contains("dimension")) plan_doc["dimension"] = j.at("dimension");
    plan_doc["plan"] = to_json(plan);
    write_file(dir / "plan.json", dump(meta.wrap(plan_doc)));
    write_file(dir / "resources.json", dump(meta.wrap(Json{{"config", effective}, {"report", to_json(report)}})));
    out << "terms " << report.terms << "\n"
        << "data_width " << report.data_width << "\n"
        << "ancilla_width " << report.ancilla_width << "\n"
        << "ir_depth " << report.ir_depth << "\n"
        << "modeled_depth " << report.modeled_depth << "\n"
        << "size " << report.size << "\n"
        << "l1_norm " << fmt(report.l1_norm) << "\n";
    return kExitOk;
}

int cmd_eval(const RunConfig &cfg, std::ostream &out) {
    if (cfg.plan_path.empty()) throw ConfigError("plan: required (--plan FILE)");
    if (cfg.y.empty()) throw ConfigError("y: required (--y LIST)");
    const std::string text = read_file(cfg.plan_path, "plan");
    const Json j = parse_json(text, "plan");
    const LcuPlan plan = plan_from_json(j.contains("plan") ? j.at("plan") : j);

    std::size_t required = 0;
    for (const auto &nu : plan.indices) required = std::max<std::size_t>(required, nu.max_coord());
    for (const auto &t : plan.terms) required = std::max(required, t.circuit.slot_count());
    const std::size_t allowed = j.contains("dimension") ? j.at("dimension").get<std::size_t>() : 0;
    if (cfg.y.size() < required || (allowed && cfg.y.size() > allowed)) {
        throw ConfigError("y: expected " +
                          (allowed ? "between " + std::to_string(required) + " and " + std::to_string(allowed)
                                   : "at least " + std::to_string(required)) +
                          " values, got " + std::to_string(cfg.y.size()));
    }
    for (double v : cfg.y)
        if (!(std::abs(v) <= 1.0)) throw ConfigError("y: every coordinate must lie in [-1, 1]");

    const Json effective{{"command", "eval"},
                         {"plan_sha256", sha256_hex(text)},
                         {"y", cfg.y},
                         {"shots", cfg.shots},
                         {"seed", cfg.sweep.seed}};
    const Meta meta{config_hash(effective), cfg.sweep.seed};

    Json result{{"config", effective}};
    if (!plan.indices.empty()) {
        std::vector<GpcExpansion::Term> terms;
        for (std::size_t i = 0; i < plan.terms.size(); ++i)
            terms.emplace_back(plan.indices[i], plan.terms[i].sign * plan.terms[i].magnitude);
        const double classical = eval_truncated(GpcExpansion(plan.kind, Basis::Classical, terms), cfg.y);
        result["classical"] = classical;
        out << "classical " << fmt(classical) << "\n";
    }
    const LcuEvaluator ev(plan);
    const double amp = ev.evaluate(cfg.y).value;
    result["circuit"] = amp;
    out << "circuit " << fmt(amp) << "\n";
    if (cfg.shots > 0) {
        const EvalResult r = ev.evaluate(cfg.y, {EvalMode::HadamardShots, cfg.shots, cfg.sweep.seed});
        result["estimate"] = r.value;
        result["stderr"] = r.stderr_value;
        out << "estimate " << fmt(r.value) << "\n"
            << "stderr " << fmt(r.stderr_value) << "\n";
    }
    write_file(fs::path(cfg.out_dir) / "eval.json", dump(meta.wrap(result)));
    return kExitOk;
}

Json fit_or_error(const SweepResult &r, RateLaw law, std::size_t d, ErrorColumn column) {
    try {
        return to_json(fit_rate(r, law, d, column));
    } catch (const DomainError &e) {
        return Json{{"error", e.what()}};
    }
}

int cmd_sweep(const RunConfig &cfg, std::ostream &out) {
    const Model model = load_model(cfg);
    const Json effective = sweep_config_json(cfg, model, "sweep");
    const Meta meta{config_hash(effective), cfg.sweep.seed};
    const SweepResult r = sweep(model, cfg.sweep);

    RateLaw law = RateLaw::Algebraic;
    std::size_t d = 1;
    if (cfg.sweep.selector == SelectorKind::Tensor) {
        law = RateLaw::Exponential;
        const ModelHolomorphy hol = model_holomorphy(model);
        d = cfg.sweep.tensor_dims ? cfg.sweep.tensor_dims : hol.finite_dim;
    }
    const fs::path dir(cfg.out_dir);
    write_file(dir / "sweep.csv", sweep_csv(r, meta.line()));
    write_file(dir / "fit.json", dump(meta.wrap(Json{{"l2", fit_or_error(r, law, d, ErrorColumn::L2)},
                                                     {"linf", fit_or_error(r, law, d, ErrorColumn::Linf)}})));
    write_file(dir / "config.json", dump(meta.wrap(Json{{"config", effective}})));

    out << "n l2_error linf_error data_width ancilla_width ir_depth modeled_depth size max_nu1\n";
    for (const auto &row : r.rows) {
        out << row.n << " " << fmt(row.l2_error) << " " << fmt(row.linf_error) << " " << row.data_width << " "
            << row.ancilla_width << " " << row.ir_depth << " " << row.modeled_depth << " " << row.size << " "
            << row.max_nu1 << (row.width_skipped ? " width-skipped" : "") << "\n";
    }
    return kExitOk;
}

int cmd_verify(const RunConfig &cfg, bool corrupt, std::ostream &out) {
    const Json effective{{"command", "verify"}, {"seed", cfg.sweep.seed}, {"corrupt_onb_factor", corrupt}};
    const Meta meta{config_hash(effective), cfg.sweep.seed};
    const VerifyReport report = verify_suite({cfg.sweep.seed, corrupt});
    out << "seed " << report.seed << "\n";
    for (const auto &c : report.checks) {
        char line[256];
        std::snprintf(line, sizeof line, "%-4s %-12s %-32s measured %-12.4g tolerance %.4g\n",
                      c.passed ? "PASS" : "FAIL", c.module.c_str(), c.name.c_str(), c.measured, c.tolerance);
        out << line;
    }
    out << (report.passed() ? "all checks passed\n" : "verification FAILED\n");
    write_file(fs::path(cfg.out_dir) / "verify.json", dump(meta.wrap(to_json(report))));
    return report.passed() ? kExitOk : kExitVerify;
}

}  // namespace

void RunConfig::apply(const Json &o) {
    if (!o.is_object()) throw ConfigError("config: expected a JSON object");
    auto get = [&](const char *key, auto &target) {
        if (!o.contains(key)) return;
        try {
            o.at(key).get_to(target);
        } catch (const nlohmann::json::exception &) {
            throw ConfigError(std::string("config.") + key + ": wrong type");
        }
    };
    if (o.contains("model")) model = o.at("model");
    if (o.contains("model_file")) {
        std::string path;
        get("model_file", path);
        model = parse_json(read_file(path, "config.model_file"), "config.model_file");
    }
    std::string text;
    if (o.contains("selector")) {
        get("selector", text);
        sweep.selector = parse_selector(text);
    }
    if (o.contains("kind")) {
        get("kind", text);
        sweep.kind = parse_kind(text);
    }
    if (o.contains("backend")) {
        get("backend", text);
        sweep.backend = parse_backend(text);
    }
    get("n_list", sweep.n_list);
    get("k_list", sweep.k_list);
    get("tensor_dims", sweep.tensor_dims);
    get("samples", sweep.samples);
    get("seed", sweep.seed);
    get("pool_factor", sweep.pool_factor);
    get("nodes_per_dim", sweep.nodes_per_dim);
    get("width_cap", sweep.width_cap);
    get("timing", sweep.timing);
    get("shots", shots);
    get("coeffs", coeffs_path);
    get("plan", plan_path);
    get("y", y);
    get("out", out_dir);
    get("threads", threads);
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"gpcqc: gPC expansions compiled to quantum circuits"};
    app.set_version_flag("--version", GPCQC_VERSION);
    app.require_subcommand(1);

    RunConfig cfg;
    std::string model_path, config_path, selector = "apriori", kind = "cheb", backend = "classical", y_text;
    bool corrupt = false;

    auto common = [&](CLI::App *sub) {
        sub->add_option("--config", config_path, "JSON run configuration; its fields override flags");
        sub->add_option("--seed", cfg.sweep.seed, "RNG seed")->capture_default_str();
        sub->add_option("--out", cfg.out_dir, "output directory")->capture_default_str();
        sub->add_option("--threads", cfg.threads, "worker threads (0 = all cores)")->capture_default_str();
        sub->add_option("--width-cap", cfg.sweep.width_cap, "largest simulated width")->capture_default_str();
    };
    auto selection = [&](CLI::App *sub) {
        sub->add_option("--model", model_path, "model configuration JSON");
        sub->add_option("--selector", selector, "apriori | greedy | tensor")->capture_default_str();
        sub->add_option("--n", cfg.sweep.n_list, "comma separated index set sizes")->delimiter(',');
        sub->add_option("--k", cfg.sweep.k_list, "comma separated tensor degrees")->delimiter(',');
        sub->add_option("--d", cfg.sweep.tensor_dims, "tensor selector dimension (0 = model's finite dimension)");
        sub->add_option("--kind", kind, "cheb | taylor")->capture_default_str();
        sub->add_option("--pool-factor", cfg.sweep.pool_factor, "greedy candidate pool factor")->capture_default_str();
        sub->add_option("--nodes", cfg.sweep.nodes_per_dim, "quadrature nodes per dimension (0 = auto)");
    };

    CLI::App *expand_cmd = app.add_subcommand("expand", "compute gPC coefficients");
    common(expand_cmd);
    selection(expand_cmd);

    CLI::App *circuit_cmd = app.add_subcommand("circuit", "compile coefficients to an LCU plan");
    common(circuit_cmd);
    circuit_cmd->add_option("--coeffs", cfg.coeffs_path, "expansion JSON from expand");

    CLI::App *eval_cmd = app.add_subcommand("eval", "evaluate a plan at a parameter point");
    common(eval_cmd);
    eval_cmd->add_option("--plan", cfg.plan_path, "plan JSON from circuit");
    eval_cmd->add_option("--y", y_text, "comma separated parameter values");
    eval_cmd->add_option("--shots", cfg.shots, "Hadamard-test shots (0 = exact only)")->capture_default_str();

    CLI::App *sweep_cmd = app.add_subcommand("sweep", "convergence sweep with rate fits");
    common(sweep_cmd);
    selection(sweep_cmd);
    sweep_cmd->add_option("--backend", backend, "classical | circuit")->capture_default_str();
    sweep_cmd->add_option("--samples", cfg.sweep.samples, "Monte Carlo samples")->capture_default_str();
    sweep_cmd->add_flag("--timing", cfg.sweep.timing, "record wall time per row");

    CLI::App *verify_cmd = app.add_subcommand("verify", "run the invariant battery");
    common(verify_cmd);
    verify_cmd->add_flag("--corrupt-onb-factor", corrupt, "inject a basis conversion fault")->group("");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        cfg.sweep.selector = parse_selector(selector);
        cfg.sweep.kind = parse_kind(kind);
        cfg.sweep.backend = parse_backend(backend);
        if (!model_path.empty()) cfg.model = parse_json(read_file(model_path, "model"), "model");
        if (!y_text.empty()) cfg.y = parse_doubles(y_text, "y");
        if (!config_path.empty()) cfg.apply(parse_json(read_file(config_path, "config"), "config"));
        set_max_threads(cfg.threads);

        if (expand_cmd->parsed()) return cmd_expand(cfg, out);
        if (circuit_cmd->parsed()) return cmd_circuit(cfg, out);
        if (eval_cmd->parsed()) return cmd_eval(cfg, out);
        if (sweep_cmd->parsed()) return cmd_sweep(cfg, out);
        return cmd_verify(cfg, corrupt, out);
    } catch (const WidthCapError &e) {
        err << "error: " << e.what() << "\n";
        return kExitWidthCap;
    } catch (const ConfigError &e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DomainError &e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const SizeError &e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ExhaustionError &e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace gpcqc
