#pragma once

#include "xshap/shapley.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace xshap {

// One fully parsed invocation. The CLI front end fills this in; run() does
// the work and writes a deterministic report. Exit codes: 0 success, 2 user
// or input error, 3 internal-consistency failure (mapped in the front end).
struct RunConfig {
    enum class Command { score, explain, relevancy, adversarial, audit, transform, selftest };
    enum class ExplainMode { all, one_axp, relevancy };

    Command command = Command::score;
    std::string model_path;
    std::string instance_path;

    std::string charfn = "e";
    std::string baseline_text; // point for --charfn b

    int approx = 0; // sampled permutations; 0 = exact
    std::uint64_t seed = 0;

    ExplainMode explain_mode = ExplainMode::all;

    std::string norm_p = "0"; // 0|1|2|inf
    std::string eps_text;
    std::vector<int> fix; // 1-based features to hold fixed

    bool sweep = false;
    std::string sweep_delta_text; // threshold for --sweep runs

    std::string out_path; // transform target file

    std::string format = "table"; // table|json
    bool decimal = false;         // print scores as fixed-point decimals

    std::uint64_t point_cap = kDefaultPointCap;
    std::uint64_t subset_cap = kDefaultSubsetCap;

    int selftest_models = 50;
};

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

} // namespace xshap
