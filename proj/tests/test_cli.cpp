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
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gpcqc/cli.hpp"

using namespace gpcqc;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class CliTest : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("gpcqc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string write(const std::string &name, const std::string &content) {
        std::ofstream(dir_ / name) << content;
        return (dir_ / name).string();
    }
    std::string path(const std::string &name) const { return (dir_ / name).string(); }

    std::string rational_model() {
        return write("model.json", R"({"type":"rational","theta":1,"c":1.5,"b_rule":{"c_b":0.9,"s":3},"D":4})");
    }

    fs::path dir_;
};

double value_after(const std::string &text, const std::string &key) {
    const auto pos = text.find(key + " ");
    if (pos == std::string::npos) return NAN;
    return std::stod(text.substr(pos + key.size() + 1));
}

}  // namespace

TEST_F(CliTest, ExpandTensorWritesFiveCoefficients) {
    const CliRun r = run({"expand", "--model", rational_model(), "--selector", "tensor", "--k", "4", "--d", "1", "--out",
                       path("a")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("support_size 5"), std::string::npos);
    const Json j = Json::parse(slurp(path("a/expansion.json")));
    EXPECT_EQ(j["expansion"]["coeffs"].size(), 5u);
    EXPECT_EQ(j["tool_version"], GPCQC_VERSION);
    EXPECT_EQ(j["config_hash"].get<std::string>().size(), 64u);
    EXPECT_EQ(j["seed"], 0);
    const std::string csv = slurp(path("a/expansion.csv"));
    EXPECT_EQ(csv.rfind("# tool_version=", 0), 0u);
    EXPECT_NE(csv.find(j["config_hash"].get<std::string>()), std::string::npos);
}

TEST_F(CliTest, ExpandConstantModelHasOneNonzeroCoefficient) {
    const std::string model = write("const.json", R"({"type":"rational","theta":2,"c":4,"b":[0.0,0.0]})");
    const CliRun r = run({"expand", "--model", model, "--selector", "tensor", "--k", "3", "--d", "2", "--out", path("c")});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = Json::parse(slurp(path("c/expansion.json")));
    int nonzero = 0;
    for (const auto &t : j["expansion"]["coeffs"]) nonzero += t[1].get<double>() != 0.0;
    EXPECT_EQ(nonzero, 1);
    EXPECT_NEAR(j["expansion"]["coeffs"][0][1].get<double>(), 0.5, 1e-14);
}

TEST_F(CliTest, ExpandIsByteIdentical) {
    const std::string model = rational_model();
    ASSERT_EQ(run({"expand", "--model", model, "--n", "20", "--out", path("x")}).code, 0);
    ASSERT_EQ(run({"expand", "--model", model, "--n", "20", "--out", path("y")}).code, 0);
    EXPECT_EQ(slurp(path("x/expansion.json")), slurp(path("y/expansion.json")));
    EXPECT_EQ(slurp(path("x/expansion.csv")), slurp(path("y/expansion.csv")));
}

TEST_F(CliTest, CircuitConstantAndTensorPlans) {
    const std::string coeffs = write("c.json", R"({"kind":"chebyshev","basis":"onb","coeffs":[[[],0.8]]})");
    CliRun r = run({"circuit", "--coeffs", coeffs, "--out", path("p")});
    ASSERT_EQ(r.code, 0) << r.err;
    Json plan = Json::parse(slurp(path("p/plan.json")));
    EXPECT_EQ(plan["plan"]["terms"].size(), 1u);
    EXPECT_EQ(plan["plan"]["ancilla_count"], 0);

    const std::string model =
        write("m2.json", R"({"type":"rational","c":1.5,"b_rule":{"c_b":0.9,"s":2},"D":2})");
    ASSERT_EQ(run({"expand", "--model", model, "--selector", "tensor", "--k", "3", "--d", "2", "--out", path("t")}).code,
              0);
    r = run({"circuit", "--coeffs", path("t/expansion.json"), "--out", path("t")});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json rep = Json::parse(slurp(path("t/resources.json")));
    EXPECT_EQ(rep["report"]["ancilla_width"], 4);

    // The report is the library's report for the same plan.
    const GpcExpansion e = expansion_from_json(Json::parse(slurp(path("t/expansion.json")))["expansion"]);
    EXPECT_EQ(rep["report"], to_json(resource_report(compile_expansion(e))));

    EXPECT_EQ(run({"circuit", "--coeffs", path("t/expansion.json"), "--width-cap", "5", "--out", path("t")}).code,
              kExitWidthCap);
    EXPECT_EQ(run({"circuit", "--coeffs", path("missing.json")}).code, kExitConfig);
}

TEST_F(CliTest, EvalProductAndShots) {
    const std::string coeffs = write("p.json", R"({"kind":"chebyshev","basis":"onb","coeffs":[[[[1,1],[2,1]],0.5]]})");
    ASSERT_EQ(run({"circuit", "--coeffs", coeffs, "--out", path("e")}).code, 0);
    CliRun r = run({"eval", "--plan", path("e/plan.json"), "--y", "0.5,-0.5", "--out", path("e")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(value_after(r.out, "classical"), -0.25, 1e-14);
    EXPECT_NEAR(value_after(r.out, "circuit"), -0.25, 1e-14);

    r = run({"eval", "--plan", path("e/plan.json"), "--y", "0.5,-0.5", "--shots", "1000000", "--seed", "3", "--out",
             path("e")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(value_after(r.out, "estimate"), -0.25, 5.0 * 1.0 * 1e-3);
    EXPECT_NEAR(value_after(r.out, "stderr"), 1e-3, 1e-15);
    const Json j = Json::parse(slurp(path("e/eval.json")));
    EXPECT_EQ(j["seed"], 3);

    EXPECT_EQ(run({"eval", "--plan", path("e/plan.json"), "--y", "0.5"}).code, kExitConfig);
    EXPECT_EQ(run({"eval", "--plan", path("e/plan.json"), "--y", "0.5,abc"}).code, kExitConfig);
    EXPECT_EQ(run({"eval", "--plan", path("e/plan.json"), "--y", "0.5,2"}).code, kExitConfig);
}

TEST_F(CliTest, EvalAtZeroApproachesConstantTerm) {
    // f(0) = theta / c; odd terms vanish at the origin so only the endpoints are compared.
    const std::string model = rational_model();
    std::vector<double> errs;
    for (const char *n : {"1", "40"}) {
        const std::string out = path(std::string("z") + n);
        ASSERT_EQ(run({"expand", "--model", model, "--n", n, "--out", out}).code, 0);
        ASSERT_EQ(run({"circuit", "--coeffs", out + "/expansion.json", "--out", out}).code, 0);
        const CliRun r = run({"eval", "--plan", out + "/plan.json", "--y", "0,0,0,0", "--out", out});
        ASSERT_EQ(r.code, 0) << r.err;
        errs.push_back(std::abs(value_after(r.out, "circuit") - 1.0 / 1.5));
    }
    EXPECT_LT(errs[1], errs[0]);
    EXPECT_LT(errs[1], 1e-2);
}

TEST_F(CliTest, SweepArtifactsAndDeterminism) {
    const std::string model = rational_model();
    const std::vector<std::string> base{"sweep", "--model", model, "--n", "2,4,8,16", "--samples", "1000", "--seed", "9"};
    auto with_out = [&](const std::string &d) {
        auto a = base;
        a.push_back("--out");
        a.push_back(path(d));
        return a;
    };
    CliRun r = run(with_out("s1"));
    ASSERT_EQ(r.code, 0) << r.err;
    ASSERT_EQ(run(with_out("s2")).code, 0);
    for (const char *f : {"sweep.csv", "fit.json", "config.json"})
        EXPECT_EQ(slurp(path(std::string("s1/") + f)), slurp(path(std::string("s2/") + f))) << f;
    const std::string csv = slurp(path("s1/sweep.csv"));
    EXPECT_NE(csv.find("seed=9"), std::string::npos);
    const Json fit = Json::parse(slurp(path("s1/fit.json")));
    EXPECT_EQ(fit["l2"]["n_used"], 4);
    EXPECT_LT(fit["l2"]["slope_or_gamma"].get<double>(), 0.0);

    // The --config file overrides flags.
    const std::string cfg = write("cfg.json", R"({"n_list":[3,6,12,24],"seed":2})");
    auto a = with_out("s3");
    a.push_back("--config");
    a.push_back(cfg);
    ASSERT_EQ(run(a).code, 0);
    EXPECT_NE(slurp(path("s3/sweep.csv")).find("\n24,"), std::string::npos);
    EXPECT_EQ(Json::parse(slurp(path("s3/config.json")))["seed"], 2);

    EXPECT_EQ(run({"sweep", "--model", model, "--out", path("s4")}).code, kExitConfig);
    EXPECT_EQ(run({"sweep", "--n", "4", "--out", path("s4")}).code, kExitConfig);
}

TEST_F(CliTest, ConfigErrorsNameTheField) {
    const std::string bad = write("bad.json", R"({"type":"rational","b_rule":{"c_b":0.9,"s":3},"D":4})");
    CliRun r = run({"expand", "--model", bad, "--n", "4", "--out", path("b")});
    EXPECT_EQ(r.code, kExitConfig);
    EXPECT_NE(r.err.find("model.c"), std::string::npos);
    r = run({"expand", "--model", rational_model(), "--selector", "best", "--n", "4"});
    EXPECT_EQ(r.code, kExitConfig);
    EXPECT_NE(r.err.find("selector"), std::string::npos);
    EXPECT_EQ(run({"frobnicate"}).code, kExitConfig);
    EXPECT_EQ(run({}).code, kExitConfig);
}

TEST_F(CliTest, VerifyExitCodes) {
    CliRun r = run({"verify", "--seed", "13", "--out", path("v")});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("seed 13"), std::string::npos);
    const Json j = Json::parse(slurp(path("v/verify.json")));
    EXPECT_EQ(j["seed"], 13);
    EXPECT_TRUE(j["passed"].get<bool>());
    r = run({"verify", "--corrupt-onb-factor", "--out", path("v")});
    EXPECT_EQ(r.code, kExitVerify);
    EXPECT_NE(r.out.find("FAIL"), std::string::npos);
}

TEST_F(CliTest, BinaryReportsExitCodes) {
    const std::string bin = GPCQC_CLI_PATH;
    auto status = [](const std::string &cmd) {
        const int s = std::system((cmd + " >/dev/null 2>&1").c_str());
        return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
    };
    EXPECT_EQ(status(bin + " --version"), 0);
    EXPECT_EQ(status(bin + " expand --n 4"), kExitConfig);
    EXPECT_EQ(status(bin + " expand --model " + rational_model() + " --n 4 --out " + path("bin")), 0);
}
