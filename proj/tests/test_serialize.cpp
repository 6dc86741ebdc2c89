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

#include <random>

#include "gpcqc/error.hpp"
#include "gpcqc/lcu.hpp"
#include "gpcqc/qsp.hpp"
#include "gpcqc/serialize.hpp"

using namespace gpcqc;

TEST(Serialize, MultiIndexAndIndexSet) {
    const auto nu = MultiIndex::from_entries({{3, 2}, {1, 1}});
    EXPECT_EQ(to_json(nu).dump(), "[[1,1],[3,2]]");
    EXPECT_EQ(multi_index_from_json(to_json(nu)), nu);
    EXPECT_EQ(to_json(MultiIndex()).dump(), "[]");
    const IndexSet s = tensor_product_set(2, 2);
    EXPECT_EQ(index_set_from_json(to_json(s)), s);
    EXPECT_EQ(to_json(IndexSet({MultiIndex::unit(2)})).dump(), R"([{"idx":[[2,1]]}])");
    EXPECT_THROW(multi_index_from_json(Json::parse("[[1]]")), ConfigError);
}

TEST(Serialize, ExpansionRoundTripAndCsv) {
    const GpcExpansion e(ExpansionKind::Chebyshev, Basis::Onb,
                         {{MultiIndex(), 0.5}, {MultiIndex::unit(1), -0.1}, {MultiIndex::from_entries({{1, 1}, {2, 3}}), 1e-17}},
                         "m");
    const GpcExpansion back = expansion_from_json(to_json(e));
    ASSERT_EQ(back.size(), e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
        EXPECT_EQ(back.terms()[i].first, e.terms()[i].first);
        EXPECT_EQ(back.terms()[i].second, e.terms()[i].second);
    }
    EXPECT_EQ(back.model_id(), "m");
    EXPECT_EQ(back.basis(), Basis::Onb);
    EXPECT_EQ(expansion_csv(e, "meta"),
              "# meta\nnu,nu0,nu1,nuinf,coeff\n0,0,0,0,0.5\n1:1,1,1,1,-0.10000000000000001\n"
              "1:1;2:3,2,4,3,1.0000000000000001e-17\n");
    EXPECT_THROW(expansion_from_json(Json::parse(R"({"coeffs": []})")), ConfigError);
}

TEST(Serialize, CircuitRoundTrip) {
    Circuit block(3);
    block.rz(0, Param::arccos_of(1, -2.0));
    block.phase(0.3);
    Circuit c(3);
    c.h(0);
    c.rx(1, Param::arccos_of(0, -2.0), false);
    c.ry(2, Param::literal(0.7));
    c.x(1);
    c.unitary({2, 0}, build_state_prep(std::vector<double>{1.0, 2.0, 3.0}), 3);
    c.controlled(block, {2}, {false});
    const Json j = to_json(c);
    EXPECT_EQ(j["ops"][1]["param"]["arg"], "y[1]");
    const Circuit back = circuit_from_json(j);
    EXPECT_EQ(to_json(back).dump(), j.dump());
    EXPECT_EQ(metrics(back), metrics(c));
    const std::vector<double> y{0.3, -0.6};
    EXPECT_LE(std::abs(amp_00(back, y) - amp_00(c, y)), 1e-15);

    Json bad = j;
    bad["ops"][1]["param"]["arg"] = "y[0]";
    EXPECT_THROW(circuit_from_json(bad), ConfigError);
    bad["ops"][1]["param"]["arg"] = "z[1]";
    EXPECT_THROW(circuit_from_json(bad), ConfigError);
    bad = j;
    bad["ops"][0]["kind"] = "CCX";
    EXPECT_THROW(circuit_from_json(bad), ConfigError);
}

TEST(Serialize, PlanRoundTrip) {
    const GpcExpansion e(ExpansionKind::Chebyshev, Basis::Onb,
                         {{MultiIndex(), 0.4}, {MultiIndex::unit(1), -0.3}, {MultiIndex::from_entries({{1, 1}, {2, 2}}), 0.2}});
    const LcuPlan plan = compile_expansion(e);
    const LcuPlan back = plan_from_json(to_json(plan));
    EXPECT_EQ(back.indices, plan.indices);
    EXPECT_EQ(back.ancilla_count, plan.ancilla_count);
    EXPECT_EQ(to_json(back).dump(), to_json(plan).dump());
    const std::vector<double> y{0.2, 0.9};
    EXPECT_NEAR(evaluate(back, y).value, evaluate(plan, y).value, 1e-15);

    Json broken = to_json(plan);
    broken["l1_norm"] = 5.0;
    EXPECT_THROW(plan_from_json(broken), ConfigError);
}

TEST(Serialize, ModelConfig) {
    const Json rj = Json::parse(R"({"type":"rational","theta":1,"c":1.5,"b_rule":{"c_b":0.9,"s":3},"D":64})");
    const Model m = model_from_json(rj);
    const auto &r = std::get<RationalAffineModel>(m);
    EXPECT_EQ(r.dimension(), 64u);
    EXPECT_NEAR(r.b[2], 0.9 / 27.0, 1e-17);
    EXPECT_EQ(model_to_json(m), rj);
    EXPECT_EQ(model_to_json(model_from_json(model_to_json(m))), rj);

    const Json d2 = Json::parse(R"({"type":"rational","c":1.5,"b_rule":{"c_b":0.9,"s":3},"D":8,"active_dims":2})");
    EXPECT_EQ(std::get<RationalAffineModel>(model_from_json(d2)).active_dims(), 2u);
    EXPECT_EQ(model_to_json(model_from_json(d2))["active_dims"], 2);

    const Json explicit_b = Json::parse(R"({"type":"rational","c":2,"b":[0.5]})");
    EXPECT_EQ(std::get<RationalAffineModel>(model_from_json(explicit_b)).b, std::vector<double>{0.5});

    const Json dj = Json::parse(R"({"type":"diffusion1d","b_rule":{"c_b":0.3,"s":2},"D":4,"h":0.015625,"kappa":0.5})");
    const Model dm = model_from_json(dj);
    const auto &d = std::get<Diffusion1DModel>(dm);
    EXPECT_EQ(d.cells, 64u);
    EXPECT_EQ(d.a0, 1.0);

    auto message = [](const char *text) {
        try {
            model_from_json(Json::parse(text));
        } catch (const ConfigError &e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    EXPECT_NE(message(R"({"type":"rational","b_rule":{"c_b":0.9,"s":3},"D":4})").find("model.c"), std::string::npos);
    EXPECT_NE(message(R"({"type":"rational","c":"x","b":[]})").find("model.c"), std::string::npos);
    EXPECT_NE(message(R"({"type":"poly"})").find("model.type"), std::string::npos);
    EXPECT_NE(message(R"({"type":"rational","c":1,"b":[0.6,0.5]})").find("margin"), std::string::npos);
    EXPECT_NE(message(R"({"type":"diffusion1d","b_rule":{"c_b":2,"s":2},"D":4})").find("ellipticity"),
              std::string::npos);
    EXPECT_NE(message(R"({"type":"diffusion1d","D":4,"h":0.9})").find("model.h"), std::string::npos);
    EXPECT_THROW(parse_json("{", "model"), ConfigError);
}

TEST(Serialize, Sha256AndConfigHash) {
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    const Json a{{"seed", 1}, {"n", {1, 2}}};
    Json b = a;
    EXPECT_EQ(config_hash(a), config_hash(b));
    b["seed"] = 2;
    EXPECT_NE(config_hash(a), config_hash(b));
}

TEST(Serialize, ReportsAndFits) {
    const GpcExpansion e(ExpansionKind::Chebyshev, Basis::Onb, {{MultiIndex(), 0.8}});
    const Json r = to_json(resource_report(compile_expansion(e)));
    EXPECT_EQ(r["ancilla_width"], 0);
    EXPECT_EQ(r["terms"], 1);
    const Json f = to_json(RateFit{"algebraic", -2.0, 1.0, 3.0, 5});
    EXPECT_EQ(f.dump(), R"({"law":"algebraic","slope_or_gamma":-2.0,"r2":1.0,"C":3.0,"n_used":5})");
}
