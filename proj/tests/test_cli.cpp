#include "test_util.hpp"

#include "xshap/cli.hpp"

#include <doctest.h>

#include <cstdio>
#include <sstream>

using namespace xshap;
using namespace xshap::testing;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult drive(const RunConfig& config) {
    std::ostringstream out, err;
    int code = run(config, out, err);
    return {code, out.str(), err.str()};
}

RunConfig on_rstar(RunConfig::Command command) {
    RunConfig config;
    config.command = command;
    config.model_path = fixture("rstar_tree.json");
    config.instance_path = fixture("rstar_instance.json");
    return config;
}

} // namespace

TEST_CASE("score reports exact fractions") {
    RunConfig config = on_rstar(RunConfig::Command::score);
    config.charfn = "e";
    RunResult result = drive(config);
    CHECK(result.code == 0);
    CHECK(result.out == "charfn: e\n1: 0/1\n2: 1/4\n");

    config.charfn = "a";
    CHECK(drive(config).out == "charfn: a\n1: 1/1\n2: 0/1\n");

    config.charfn = "n";
    CHECK(drive(config).out == "charfn: n\n1: -1/1\n2: 0/1\n");

    SUBCASE("decimal mode is opt-in") {
        config.charfn = "e";
        config.decimal = true;
        CHECK(drive(config).out == "charfn: e\n1: 0.000000\n2: 0.250000\n");
    }
    SUBCASE("json mirrors the table") {
        config.charfn = "e";
        config.format = "json";
        RunResult json = drive(config);
        Json doc = Json::parse(json.out);
        CHECK(doc["charfn"] == "e");
        CHECK(doc["scores"][1]["score"] == "1/4");
    }
}

TEST_CASE("baseline scores go through the CLI") {
    RunConfig config;
    config.command = RunConfig::Command::score;
    config.model_path = fixture("ite_model.json");
    config.instance_path = fixture("ite_instance.json");
    config.charfn = "b";
    config.baseline_text = "0,0";
    RunResult result = drive(config);
    CHECK(result.code == 0);
    CHECK(result.out == "charfn: b\n1: 0/1\n2: 1/1\n");
    CHECK(result.err.empty());

    SUBCASE("a baseline overlapping the instance warns") {
        config.baseline_text = "1,0";
        CHECK(drive(config).err.find("warning") != std::string::npos);
    }
    SUBCASE("the baseline is mandatory") {
        config.baseline_text.clear();
        CHECK_THROWS_AS(drive(config), argument_error);
    }
}

TEST_CASE("sampled scores are deterministic per seed") {
    RunConfig config = on_rstar(RunConfig::Command::score);
    config.charfn = "s";
    config.approx = 200;
    config.seed = 42;
    RunResult first = drive(config);
    RunResult second = drive(config);
    CHECK(first.out == second.out);
    CHECK(first.out.find("0.500000") != std::string::npos);
}

TEST_CASE("explanation commands") {
    RunConfig config = on_rstar(RunConfig::Command::explain);
    CHECK(drive(config).out ==
          "axps: {1}\ncxps: {1}\nrelevant: {1}\nirrelevant: {2}\n");

    config.explain_mode = RunConfig::ExplainMode::one_axp;
    CHECK(drive(config).out == "axp: {1}\n");

    RunConfig relevancy = on_rstar(RunConfig::Command::relevancy);
    CHECK(drive(relevancy).out == "relevant: {1}\nirrelevant: {2}\n");
}

TEST_CASE("adversarial search from the command line") {
    RunConfig config = on_rstar(RunConfig::Command::adversarial);
    config.norm_p = "0";
    config.eps_text = "2";
    CHECK(drive(config).out == "adversarial: (0,0)\n");

    config.fix = {1};
    CHECK(drive(config).out == "adversarial: none\n");

    SUBCASE("bad feature numbers are rejected") {
        config.fix = {9};
        CHECK_THROWS_AS(drive(config), argument_error);
    }
    SUBCASE("eps is required") {
        config.fix.clear();
        config.eps_text.clear();
        CHECK_THROWS_AS(drive(config), argument_error);
    }
}

TEST_CASE("audit reports mismatches with witnesses") {
    RunConfig config = on_rstar(RunConfig::Command::audit);
    config.charfn = "e";
    RunResult result = drive(config);
    CHECK(result.out.find("mismatch: yes") != std::string::npos);
    CHECK(result.out.find("irrelevant feature 2") != std::string::npos);

    config.charfn = "a";
    CHECK(drive(config).out.find("mismatch: no") != std::string::npos);

    SUBCASE("sweeps cover every instance") {
        config.charfn = "a";
        config.sweep = true;
        config.sweep_delta_text = "1/2";
        RunResult sweep = drive(config);
        CHECK(sweep.out.find("sweep over 4 instances") != std::string::npos);
        CHECK(sweep.out.find("mismatches: 0") != std::string::npos);

        config.charfn = "e";
        CHECK(drive(config).out.find("mismatches: 1") != std::string::npos);
    }
    SUBCASE("the baseline kind has no relevancy semantics of its own") {
        config.charfn = "b";
        CHECK_THROWS_AS(drive(config), argument_error);
    }
}

TEST_CASE("transform writes a loadable similarity model") {
    std::string path = "sigma_test_model.json"; // test working directory
    RunConfig config = on_rstar(RunConfig::Command::transform);
    config.out_path = path;
    RunResult result = drive(config);
    CHECK(result.code == 0);
    CHECK(result.err.empty()); // sigma is non-constant here

    Model sigma = load_model(path);
    ExplanationProblem transformed(sigma, Point{{1, 1}});
    CHECK(exact_shap(CharFnTag::e, transformed).scores ==
          std::vector<Rational>{rat("1/2"), 0});
    std::remove(path.c_str());
}

TEST_CASE("selftest runs clean") {
    RunConfig config;
    config.command = RunConfig::Command::selftest;
    config.selftest_models = 6;
    config.seed = 7;
    RunResult result = drive(config);
    CHECK(result.code == 0);
    CHECK(result.out.find("all oracle differentials passed") != std::string::npos);
}

TEST_CASE("reports are byte-deterministic") {
    for (RunConfig::Command command :
         {RunConfig::Command::score, RunConfig::Command::explain, RunConfig::Command::audit}) {
        RunConfig config = on_rstar(command);
        config.charfn = "s";
        CHECK(drive(config).out == drive(config).out);
        config.format = "json";
        CHECK(drive(config).out == drive(config).out);
    }
}

TEST_CASE("missing inputs are user errors") {
    RunConfig config;
    config.command = RunConfig::Command::score;
    CHECK_THROWS_AS(drive(config), argument_error);
    config.model_path = fixture("rstar_tree.json");
    CHECK_THROWS_AS(drive(config), argument_error);
    config.instance_path = fixture("no_such_file.json");
    CHECK_THROWS_AS(drive(config), schema_error);
}
