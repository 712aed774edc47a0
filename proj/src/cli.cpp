#include "xshap/cli.hpp"

#include "xshap/audit.hpp"
#include "xshap/errors.hpp"
#include "xshap/model_io.hpp"
#include "xshap/selftest.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace xshap {

namespace {

std::string feature_set_str(FeatureMask mask) {
    std::string out = "{";
    bool first = true;
    for (int i = 0; mask >> i; ++i) {
        if (!mask_has(mask, i)) continue;
        if (!first) out += ",";
        out += std::to_string(i + 1);
        first = false;
    }
    return out + "}";
}

Json feature_set_json(FeatureMask mask) {
    Json arr = Json::array();
    for (int i = 0; mask >> i; ++i) {
        if (mask_has(mask, i)) arr.push_back(i + 1);
    }
    return arr;
}

std::string double6(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(6) << v;
    return os.str();
}

void emit_json(std::ostream& out, const Json& doc) { out << doc.dump(2) << "\n"; }

struct Loaded {
    Model model;
    ExplanationProblem problem;
};

Loaded load_problem(const RunConfig& config) {
    if (config.model_path.empty()) throw argument_error("--model is required");
    if (config.instance_path.empty()) throw argument_error("--instance is required");
    Model model = load_model(config.model_path, {config.point_cap});
    Instance instance = load_instance(config.instance_path, model.space());
    ExplanationProblem problem(model, instance.point, instance.delta);
    return {std::move(model), std::move(problem)};
}

CharFn build_charfn(const RunConfig& config, const ExplanationProblem& problem,
                    std::ostream& err) {
    CharFnTag tag = parse_charfn_tag(config.charfn);
    if (tag == CharFnTag::b) {
        if (config.baseline_text.empty()) {
            throw argument_error("--charfn b needs --baseline <point>");
        }
        Point baseline = parse_point_text(config.baseline_text, problem.space());
        for (const std::string& warning : baseline_warnings(problem, baseline)) {
            err << "warning: " << warning << "\n";
        }
        return make_baseline_charfn(problem, std::move(baseline));
    }
    return make_charfn(tag, problem);
}

int run_score(const RunConfig& config, std::ostream& out, std::ostream& err) {
    Loaded loaded = load_problem(config);
    CharFn cf = build_charfn(config, loaded.problem, err);

    if (config.approx > 0) {
        std::vector<double> scores = sample_shap(cf, config.approx, config.seed);
        if (config.format == "json") {
            Json doc;
            doc["command"] = "score";
            doc["charfn"] = cf.name;
            doc["exact"] = false;
            doc["permutations"] = config.approx;
            doc["seed"] = config.seed;
            Json rows = Json::array();
            for (size_t i = 0; i < scores.size(); ++i) {
                rows.push_back({{"feature", i + 1}, {"score", double6(scores[i])}});
            }
            doc["scores"] = std::move(rows);
            emit_json(out, doc);
        } else {
            out << "charfn: " << cf.name << " (approx, " << config.approx
                << " permutations, seed " << config.seed << ")\n";
            for (size_t i = 0; i < scores.size(); ++i) {
                out << (i + 1) << ": " << double6(scores[i]) << "\n";
            }
        }
        return 0;
    }

    std::vector<Rational> scores = exact_scores(cf, config.subset_cap);
    auto show = [&](const Rational& r) {
        return config.decimal ? to_decimal_string(r) : to_fraction_string(r);
    };
    if (config.format == "json") {
        Json doc;
        doc["command"] = "score";
        doc["charfn"] = cf.name;
        doc["exact"] = true;
        Json rows = Json::array();
        for (size_t i = 0; i < scores.size(); ++i) {
            rows.push_back({{"feature", i + 1}, {"score", show(scores[i])}});
        }
        doc["scores"] = std::move(rows);
        emit_json(out, doc);
    } else {
        out << "charfn: " << cf.name << "\n";
        for (size_t i = 0; i < scores.size(); ++i) {
            out << (i + 1) << ": " << show(scores[i]) << "\n";
        }
    }
    return 0;
}

int run_explain(const RunConfig& config, std::ostream& out, RunConfig::ExplainMode mode) {
    Loaded loaded = load_problem(config);
    const int m = loaded.problem.num_features();

    if (mode == RunConfig::ExplainMode::one_axp) {
        FeatureMask axp = find_axp(loaded.problem, full_mask(m));
        if (config.format == "json") {
            emit_json(out, Json{{"command", "explain"}, {"axp", feature_set_json(axp)}});
        } else {
            out << "axp: " << feature_set_str(axp) << "\n";
        }
        return 0;
    }

    ExplanationSet expl = enumerate_explanations(loaded.problem, config.subset_cap);
    FeatureMask irrelevant = full_mask(m) & ~expl.relevant;
    if (config.format == "json") {
        Json doc;
        doc["command"] = mode == RunConfig::ExplainMode::relevancy ? "relevancy" : "explain";
        if (mode == RunConfig::ExplainMode::all) {
            Json axps = Json::array();
            for (FeatureMask s : expl.axps) axps.push_back(feature_set_json(s));
            Json cxps = Json::array();
            for (FeatureMask s : expl.cxps) cxps.push_back(feature_set_json(s));
            doc["axps"] = std::move(axps);
            doc["cxps"] = std::move(cxps);
        }
        doc["relevant"] = feature_set_json(expl.relevant);
        doc["irrelevant"] = feature_set_json(irrelevant);
        emit_json(out, doc);
    } else {
        if (mode == RunConfig::ExplainMode::all) {
            out << "axps:";
            for (FeatureMask s : expl.axps) out << " " << feature_set_str(s);
            out << "\ncxps:";
            for (FeatureMask s : expl.cxps) out << " " << feature_set_str(s);
            out << "\n";
        }
        out << "relevant: " << feature_set_str(expl.relevant) << "\n";
        out << "irrelevant: " << feature_set_str(irrelevant) << "\n";
    }
    return 0;
}

NormSpec parse_norm(const RunConfig& config) {
    NormSpec norm;
    if (config.norm_p == "0") {
        norm.p = NormP::p0;
    } else if (config.norm_p == "1") {
        norm.p = NormP::p1;
    } else if (config.norm_p == "2") {
        norm.p = NormP::p2;
    } else if (config.norm_p == "inf") {
        norm.p = NormP::pinf;
    } else {
        throw argument_error("--p must be one of 0|1|2|inf");
    }
    if (config.eps_text.empty()) throw argument_error("--eps is required");
    norm.eps = parse_rational(config.eps_text);
    if (norm.eps <= 0) throw argument_error("--eps must be positive");
    return norm;
}

int run_adversarial(const RunConfig& config, std::ostream& out) {
    Loaded loaded = load_problem(config);
    NormSpec norm = parse_norm(config);
    const int m = loaded.problem.num_features();

    FeatureMask fixed = 0;
    for (int feature : config.fix) {
        if (feature < 1 || feature > m) {
            throw argument_error("--fix feature " + std::to_string(feature) + " outside 1.." +
                                 std::to_string(m));
        }
        fixed |= FeatureMask{1} << (feature - 1);
    }

    std::optional<Point> found =
        find_adversarial(loaded.problem, norm,
                         fixed ? std::optional<FeatureMask>(fixed) : std::nullopt);
    if (config.format == "json") {
        Json doc;
        doc["command"] = "adversarial";
        doc["p"] = config.norm_p;
        doc["eps"] = config.eps_text;
        doc["found"] = found.has_value();
        doc["point"] = found ? point_to_json(loaded.problem.space(), *found) : Json(nullptr);
        emit_json(out, doc);
    } else if (found) {
        out << "adversarial: " << point_str(loaded.problem.space(), *found) << "\n";
    } else {
        out << "adversarial: none\n";
    }
    return 0;
}

Json witness_json(const MismatchWitness& w) {
    return Json{{"irrelevant", w.irrelevant_feature + 1},
                {"relevant", w.relevant_feature + 1},
                {"irrelevant_abs", to_fraction_string(w.irrelevant_abs)},
                {"relevant_abs", to_fraction_string(w.relevant_abs)}};
}

void witness_table(std::ostream& out, const MismatchWitness& w) {
    out << "  irrelevant feature " << (w.irrelevant_feature + 1)
        << " |sv| = " << to_fraction_string(w.irrelevant_abs) << " > relevant feature "
        << (w.relevant_feature + 1) << " |sv| = " << to_fraction_string(w.relevant_abs) << "\n";
}

int run_audit(const RunConfig& config, std::ostream& out, std::ostream& err) {
    CharFnTag tag = parse_charfn_tag(config.charfn);
    if (tag == CharFnTag::b) {
        throw argument_error("audit supports characteristic functions e|s|a|c|n");
    }

    if (config.sweep) {
        if (config.model_path.empty()) throw argument_error("--model is required");
        Model model = load_model(config.model_path, {config.point_cap});
        Rational delta = 0;
        if (!config.sweep_delta_text.empty()) {
            delta = parse_rational(config.sweep_delta_text);
        } else if (!config.instance_path.empty()) {
            delta = load_instance(config.instance_path, model.space()).delta;
        }
        SweepReport report = sweep_audit(model, delta, tag, config.subset_cap);
        if (config.format == "json") {
            Json doc;
            doc["command"] = "audit";
            doc["charfn"] = config.charfn;
            doc["sweep"] = true;
            Json rows = Json::array();
            for (const SweepRow& row : report.rows) {
                Json witnesses = Json::array();
                for (const MismatchWitness& w : row.witnesses) witnesses.push_back(witness_json(w));
                rows.push_back({{"point", point_to_json(model.space(), row.instance)},
                                {"mismatch", row.mismatch},
                                {"witnesses", std::move(witnesses)}});
            }
            doc["instances"] = std::move(rows);
            doc["mismatches"] = report.mismatch_count;
            emit_json(out, doc);
        } else {
            out << "charfn: " << config.charfn << "\n";
            out << "sweep over " << report.rows.size() << " instances\n";
            for (const SweepRow& row : report.rows) {
                out << point_str(model.space(), row.instance) << ": "
                    << (row.mismatch ? "mismatch" : "ok") << "\n";
                for (const MismatchWitness& w : row.witnesses) witness_table(out, w);
            }
            out << "mismatches: " << report.mismatch_count << "\n";
        }
        return 0;
    }

    Loaded loaded = load_problem(config);
    CharFn cf = build_charfn(config, loaded.problem, err);
    ScoreVector scores{exact_scores(cf, config.subset_cap), cf.name,
                       problem_fingerprint(loaded.problem)};
    FeatureMask relevant = relevant_features(loaded.problem, config.subset_cap);
    MismatchReport report = relevancy_mismatch(scores, relevant);

    if (config.format == "json") {
        Json doc;
        doc["command"] = "audit";
        doc["charfn"] = config.charfn;
        doc["instance"] = point_to_json(loaded.problem.space(), loaded.problem.instance());
        doc["relevant"] = feature_set_json(relevant);
        doc["mismatch"] = report.mismatch;
        Json witnesses = Json::array();
        for (const MismatchWitness& w : report.witnesses) witnesses.push_back(witness_json(w));
        doc["witnesses"] = std::move(witnesses);
        emit_json(out, doc);
    } else {
        out << "charfn: " << config.charfn << "\n";
        out << "instance: " << point_str(loaded.problem.space(), loaded.problem.instance())
            << "\n";
        out << "relevant: " << feature_set_str(relevant) << "\n";
        out << "mismatch: " << (report.mismatch ? "yes" : "no") << "\n";
        for (const MismatchWitness& w : report.witnesses) witness_table(out, w);
    }
    return 0;
}

int run_transform(const RunConfig& config, std::ostream& out, std::ostream& err) {
    Loaded loaded = load_problem(config);
    Model transform = similarity_transform(loaded.problem);

    bool constant = true;
    const auto& outputs = std::get<TabularModel>(transform.variant()).outputs;
    for (const Value& v : outputs) constant = constant && v == outputs.front();
    if (constant) {
        err << "warning: the similarity predicate is constant on this problem; the written "
               "model will fail non-constancy validation when loaded\n";
    }

    Json doc = serialize_model(transform);
    if (!config.out_path.empty()) {
        std::ofstream file(config.out_path);
        if (!file) throw argument_error("cannot write " + config.out_path);
        file << doc.dump(2) << "\n";
        if (config.format == "json") {
            emit_json(out, Json{{"command", "transform"}, {"path", config.out_path}});
        } else {
            out << "similarity model written to " << config.out_path << "\n";
        }
    } else {
        emit_json(out, doc);
    }
    return 0;
}

} // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    if (config.point_cap < 1 || config.subset_cap < 1) {
        throw argument_error("caps must be at least 1");
    }
    switch (config.command) {
        case RunConfig::Command::score:
            return run_score(config, out, err);
        case RunConfig::Command::explain:
            return run_explain(config, out, config.explain_mode);
        case RunConfig::Command::relevancy:
            return run_explain(config, out, RunConfig::ExplainMode::relevancy);
        case RunConfig::Command::adversarial:
            return run_adversarial(config, out);
        case RunConfig::Command::audit:
            return run_audit(config, out, err);
        case RunConfig::Command::transform:
            return run_transform(config, out, err);
        case RunConfig::Command::selftest:
            return run_selftest(config.selftest_models, config.seed, out) ? 0 : 3;
    }
    return 2;
}

} // namespace xshap
