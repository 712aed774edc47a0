#include "xshap/cli.hpp"
#include "xshap/errors.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace {

// Caps may also come from the environment so scripts can raise them without
// touching every invocation.
std::uint64_t env_cap(const char* name, std::uint64_t fallback) {
    const char* text = std::getenv(name);
    if (!text) return fallback;
    char* end = nullptr;
    unsigned long long v = std::strtoull(text, &end, 10);
    if (end == text || *end != '\0' || v == 0) return fallback;
    return v;
}

void add_common(CLI::App* cmd, xshap::RunConfig& config, bool wants_instance = true) {
    cmd->add_option("-m,--model", config.model_path, "model JSON file");
    if (wants_instance) cmd->add_option("-i,--instance", config.instance_path, "instance JSON file");
    cmd->add_option("--format", config.format, "output format: table|json")
        ->check(CLI::IsMember({"table", "json"}));
    cmd->add_flag("--decimal", config.decimal, "print scores as fixed-point decimals");
    cmd->add_option("--max-points", config.point_cap, "enumeration cap on feature-space points");
    cmd->add_option("--subset-cap", config.subset_cap, "cap on 2^m subset walks");
}

} // namespace

int main(int argc, char** argv) {
    xshap::RunConfig config;
    config.point_cap = env_cap("XSHAP_MAX_POINTS", xshap::kDefaultPointCap);
    config.subset_cap = env_cap("XSHAP_MAX_SUBSETS", xshap::kDefaultSubsetCap);

    CLI::App app{"exact SHAP scores, formal explanations and score audits for discrete models"};
    app.require_subcommand(1);

    bool exact_flag = false;

    CLI::App* score = app.add_subcommand("score", "exact or sampled SHAP scores");
    add_common(score, config);
    score->add_option("--charfn", config.charfn, "characteristic function: e|s|a|c|n|b");
    score->add_option("--baseline", config.baseline_text, "baseline point for --charfn b");
    score->add_option("--approx", config.approx, "sample this many feature permutations");
    score->add_flag("--exact", exact_flag, "exact computation (the default)");
    score->add_option("--seed", config.seed, "RNG seed for --approx");

    CLI::App* explain = app.add_subcommand("explain", "abductive and contrastive explanations");
    add_common(explain, config);
    bool opt_all = false, opt_one = false, opt_rel = false;
    explain->add_flag("--all", opt_all, "all AXps and CXps (the default)");
    explain->add_flag("--one-axp", opt_one, "a single abductive explanation");
    explain->add_flag("--relevancy", opt_rel, "relevant/irrelevant feature split only");

    CLI::App* relevancy = app.add_subcommand("relevancy", "relevant/irrelevant feature split");
    add_common(relevancy, config);

    CLI::App* adversarial = app.add_subcommand("adversarial", "norm-bounded adversarial search");
    add_common(adversarial, config);
    adversarial->add_option("--p", config.norm_p, "norm: 0|1|2|inf");
    adversarial->add_option("--eps", config.eps_text, "norm radius (rational)");
    adversarial->add_option("--fix", config.fix, "1-based features that must keep their value");

    CLI::App* audit = app.add_subcommand("audit", "relevancy-mismatch audit");
    add_common(audit, config);
    audit->add_option("--charfn", config.charfn, "characteristic function: e|s|a|c|n");
    audit->add_flag("--sweep", config.sweep, "audit every point of the space as the instance");
    audit->add_option("--delta", config.sweep_delta_text, "threshold for --sweep runs");

    CLI::App* transform = app.add_subcommand("transform", "write the similarity-predicate model");
    add_common(transform, config);
    transform->add_option("-o,--out", config.out_path, "output model file");

    CLI::App* selftest = app.add_subcommand("selftest", "engine-vs-oracle differential tests");
    add_common(selftest, config, false);
    selftest->add_option("--models", config.selftest_models, "number of random models");
    selftest->add_option("--seed", config.seed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (exact_flag && config.approx > 0) {
        std::cerr << "error: --exact and --approx are mutually exclusive\n";
        return 2;
    }

    if (score->parsed()) config.command = xshap::RunConfig::Command::score;
    if (explain->parsed()) {
        config.command = xshap::RunConfig::Command::explain;
        if (opt_one + opt_rel + opt_all > 1) {
            std::cerr << "error: pick one of --all, --one-axp, --relevancy\n";
            return 2;
        }
        config.explain_mode = opt_one   ? xshap::RunConfig::ExplainMode::one_axp
                              : opt_rel ? xshap::RunConfig::ExplainMode::relevancy
                                        : xshap::RunConfig::ExplainMode::all;
    }
    if (relevancy->parsed()) config.command = xshap::RunConfig::Command::relevancy;
    if (adversarial->parsed()) config.command = xshap::RunConfig::Command::adversarial;
    if (audit->parsed()) config.command = xshap::RunConfig::Command::audit;
    if (transform->parsed()) config.command = xshap::RunConfig::Command::transform;
    if (selftest->parsed()) config.command = xshap::RunConfig::Command::selftest;

    try {
        return xshap::run(config, std::cout, std::cerr);
    } catch (const xshap::internal_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const xshap::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
