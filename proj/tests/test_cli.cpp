#include "lyap/runcfg.hpp"

#include "lyap/closed_form.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <sstream>

using namespace lyap;
using nlohmann::json;

TEST_CASE("model parsing: inline fields and presets") {
    DisorderModel m = parse_model_json(
        R"({"means": {"alpha": 0.1, "w": -0.2, "u": 0.3},
            "cov": [[0.4, 0.01, 0.02], [0.01, 0.5, 0.03], [0.02, 0.03, 0.6]]})");
    CHECK(m.means.alpha == doctest::Approx(0.1));
    CHECK(m.means.w == doctest::Approx(-0.2));
    CHECK(m.daa() == doctest::Approx(0.4));
    CHECK(m.dwu() == doctest::Approx(0.03));

    DisorderModel h = parse_model_json(
        R"({"preset": "hyperbolic_bm", "preset_args": {"epsilon": 0.8}})");
    CHECK(h.means.w == doctest::Approx(-0.4));
    CHECK(h.duu() == doctest::Approx(1.0));

    DisorderModel z1 = parse_model_json(R"({"preset": "zd_example1"})");
    CHECK(z1.daa() == doctest::Approx(1.0));
    CHECK(z1.duu() == doctest::Approx(2.0));

    CHECK_THROWS(parse_model_json(R"({"preset": "nope"})"));
    CHECK_THROWS(parse_model_json(R"({"cov": [[1]]})"));
}

TEST_CASE("exponent command emits the family and values") {
    RunConfig cfg;
    cfg.command = "omega";
    cfg.config_json = R"({"cov": [[1, 0, 0], [0, 1, 0], [0, 0, 0]]})";
    RunResult res = run(cfg);
    REQUIRE(res.status == 0);
    json out = json::parse(res.output);
    CHECK(out.at("gamma").get<double>() == doctest::Approx(0.456946).epsilon(1e-5));
    CHECK(std::abs(out.at("j").get<double>()) < 1e-12);
    CHECK(out.at("family").get<std::string>() == "elliptic (regime I)");
}

TEST_CASE("classification command") {
    RunConfig cfg;
    cfg.command = "classify";
    cfg.config_json = R"({"means": {"alpha":0.2,"w":0.15,"u":0.9},
                          "cov": [[0,0,0],[0,0.35,0],[0,0,0]]})";
    RunResult res = run(cfg);
    REQUIRE(res.status == 0);
    json out = json::parse(res.output);
    CHECK(out.at("label").get<std::string>() == "2d");
    CHECK(out.at("family").get<std::string>() == "Bessel (real index)");
}

TEST_CASE("validation command reports every route and the spread") {
    RunConfig cfg;
    cfg.command = "validate";
    cfg.config_json = R"({"preset": "hyperbolic_bm", "preset_args": {"epsilon": 0.5}})";
    cfg.steps = 200000;
    cfg.replicas = 4;
    cfg.grid = 1024;
    cfg.dt = 0.02;
    RunResult res = run(cfg);
    REQUIRE(res.status == 0);
    json out = json::parse(res.output);
    CHECK(out.at("closed").at("gamma").get<double>() == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(out.at("fp").at("gamma").get<double>() == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(out.contains("max_pairwise_delta_gamma"));
    // the stochastic routes run at the model's own scale here, so allow their
    // discretization bias
    CHECK(out.at("mc").at("gamma").get<double>() == doctest::Approx(0.25).epsilon(0.2));
}

TEST_CASE("byte-identical reruns") {
    RunConfig cfg;
    cfg.command = "mc";
    cfg.config_json = R"({"means": {"alpha": 0.05},
                          "cov": [[0.001,0,0],[0,0.002,0],[0,0,0.003]]})";
    cfg.steps = 50000;
    cfg.replicas = 3;
    cfg.seed = 424242;
    RunResult a = run(cfg);
    RunResult b = run(cfg);
    REQUIRE(a.status == 0);
    CHECK(a.output == b.output);
}

TEST_CASE("scan: exact header, lossless rows") {
    RunConfig cfg;
    cfg.command = "scan";
    cfg.config_json = R"({"cov": [[1, 0, 0], [0, 1, 0], [0, 0, 0]]})";
    cfg.sweep = "duu=0.1:1.3:7";
    cfg.format = "csv";
    RunResult res = run(cfg);
    REQUIRE(res.status == 0);

    std::stringstream ss(res.output);
    std::string header;
    std::getline(ss, header);
    CHECK(header == "param,value,gamma,j,family,route,stderr_gamma,stderr_j");

    std::string line;
    int rows = 0;
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        ++rows;
        // param,value,gamma,...
        std::stringstream ls(line);
        std::string param, value, gamma;
        std::getline(ls, param, ',');
        std::getline(ls, value, ',');
        std::getline(ls, gamma, ',');
        DisorderModel m;
        m.set_cov(1.0, 0, 0, 1.0, 0, std::stod(value));
        const double direct = omega_closed(m).gamma();
        CHECK(std::abs(direct - std::stod(gamma)) < 1e-12 * std::max(1.0, direct));
    }
    CHECK(rows == 7);
}

TEST_CASE("error paths map to exit codes") {
    RunConfig cfg;
    cfg.command = "omega";
    cfg.config_json = R"({"cov": [[1, 2], [3]]})";
    CHECK(run(cfg).status == 2);

    cfg.config_json = "";
    CHECK(run(cfg).status == 2);

    // vanishing essential part with a nontrivial exponent: unsupported family
    cfg.config_json = R"({"means": {"alpha": 0.3, "w": 0.05},
                          "cov": [[0.1,0,0.1],[0,0.05,0],[0.1,0,0.2]]})";
    CHECK(run(cfg).status == 3);

    cfg.command = "scan";
    cfg.config_json = R"({"cov": [[1,0,0],[0,1,0],[0,0,0]]})";
    cfg.sweep = "bogus=0:1:5";
    CHECK(run(cfg).status == 2);
}
