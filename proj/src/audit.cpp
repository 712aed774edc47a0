#include "xshap/audit.hpp"

#include "xshap/errors.hpp"

#include <algorithm>

namespace xshap {

const Value* ValueRemap::find(const Value& v) const {
    for (const auto& [from, to] : entries) {
        if (from == v) return &to;
    }
    return nullptr;
}

std::vector<Value> realized_outputs(const Model& model) {
    std::vector<Value> seen;
    const std::uint64_t total = model.space().total_points();
    for (std::uint64_t rank = 0; rank < total; ++rank) {
        Value out = evaluate(model, point_from_rank(model.space(), rank)).value;
        if (std::find(seen.begin(), seen.end(), out) == seen.end()) {
            seen.push_back(std::move(out));
        }
    }
    return seen;
}

namespace {

bool all_numeric(const std::vector<Value>& values) {
    return std::all_of(values.begin(), values.end(),
                       [](const Value& v) { return v.is_number(); });
}

// Similarity status of a mapped output against the mapped target, under the
// semantics the remapped problem will get.
bool mapped_similar(const Value& mapped, const Value& mapped_q, bool numeric_threshold,
                    const Rational& delta) {
    if (numeric_threshold) return abs(mapped.num() - mapped_q.num()) <= delta;
    return mapped == mapped_q;
}

} // namespace

void validate_remap(const ExplanationProblem& problem, const ValueRemap& remap) {
    const std::vector<Value> realized = realized_outputs(problem.model());
    const Value& q = problem.target().value;

    std::vector<const Value*> mapped;
    for (const Value& b : realized) {
        const Value* to = remap.find(b);
        if (!to) throw argument_error("remap does not cover realized output " + b.str());
        mapped.push_back(to);
    }
    const Value* mapped_q = remap.find(q);

    if (remap.mode == RemapMode::weak) {
        for (size_t i = 0; i < realized.size(); ++i) {
            for (size_t j = i + 1; j < realized.size(); ++j) {
                if (*mapped[i] == *mapped[j]) {
                    throw argument_error("weak remap collapses outputs " + realized[i].str() +
                                         " and " + realized[j].str());
                }
            }
        }
    } else {
        for (size_t i = 0; i < realized.size(); ++i) {
            if (!(realized[i] == q) && *mapped[i] == *mapped_q) {
                throw argument_error("strong remap merges output " + realized[i].str() +
                                     " with the target class");
            }
        }
    }

    // With a positive threshold, "same scores" is only meaningful for remaps
    // that keep the similar/dissimilar split of outputs intact.
    if (problem.mode() == SimilarityMode::threshold && problem.delta() > 0) {
        bool mapped_numeric = true;
        for (const Value* to : mapped) mapped_numeric = mapped_numeric && to->is_number();
        for (size_t i = 0; i < realized.size(); ++i) {
            bool before = abs(realized[i].num() - q.num()) <= problem.delta();
            bool after = mapped_similar(*mapped[i], *mapped_q, mapped_numeric, problem.delta());
            if (before != after) {
                throw argument_error("remap changes the similarity status of output " +
                                     realized[i].str());
            }
        }
    }
}

ExplanationProblem apply_remap(const ExplanationProblem& problem, const ValueRemap& remap) {
    validate_remap(problem, remap);
    const FeatureSpace& space = problem.space();
    const std::uint64_t total = space.total_points();

    TabularModel tab;
    tab.outputs.reserve(total);
    for (std::uint64_t rank = 0; rank < total; ++rank) {
        Value out = evaluate(problem.model(), point_from_rank(space, rank)).value;
        const Value* to = remap.find(out);
        if (!to) throw argument_error("remap does not cover realized output " + out.str());
        tab.outputs.push_back(*to);
    }

    const bool numeric = all_numeric(tab.outputs);
    Rational delta = 0;
    if (problem.mode() == SimilarityMode::threshold && numeric) {
        tab.out_kind = OutputKind::real;
        delta = problem.delta();
    } else {
        tab.out_kind = numeric ? OutputKind::ordinal : OutputKind::categorical;
    }
    return ExplanationProblem(Model(space, std::move(tab)), problem.instance(), delta);
}

bool value_independence_test(const ExplanationProblem& problem, CharFnTag tag,
                             const ValueRemap& remap, std::uint64_t subset_cap) {
    ExplanationProblem remapped = apply_remap(problem, remap);
    std::vector<Rational> before = exact_scores(make_charfn(tag, problem), subset_cap);
    std::vector<Rational> after = exact_scores(make_charfn(tag, remapped), subset_cap);
    return before == after;
}

MismatchReport relevancy_mismatch(const ScoreVector& scores, FeatureMask relevant) {
    const int m = scores.size();
    if (relevant & ~full_mask(m)) {
        throw argument_error("relevant-feature set mentions features outside the score vector");
    }
    MismatchReport report;
    for (int i = 0; i < m; ++i) {
        if (mask_has(relevant, i)) continue;
        Rational abs_i = abs(scores.scores[i]);
        for (int j = 0; j < m; ++j) {
            if (!mask_has(relevant, j)) continue;
            Rational abs_j = abs(scores.scores[j]);
            if (abs_i > abs_j) {
                report.witnesses.push_back({i, j, abs_i, abs_j});
            }
        }
    }
    report.mismatch = !report.witnesses.empty();
    return report;
}

bool compliance_check(const ExplanationProblem& problem, CharFnTag tag,
                      std::uint64_t subset_cap) {
    ScoreVector scores = exact_shap(tag, problem, subset_cap);
    FeatureMask relevant = relevant_features(problem, subset_cap);
    for (int i = 0; i < scores.size(); ++i) {
        bool irrelevant = !mask_has(relevant, i);
        bool zero = scores.scores[i] == 0;
        if (irrelevant != zero) return false;
    }
    return true;
}

Model similarity_transform(const ExplanationProblem& problem) {
    const FeatureSpace& space = problem.space();
    const std::uint64_t total = space.total_points();
    TabularModel tab;
    tab.out_kind = OutputKind::ordinal;
    tab.outputs.reserve(total);
    for (std::uint64_t rank = 0; rank < total; ++rank) {
        tab.outputs.push_back(
            Value::number(similar(problem, point_from_rank(space, rank)) ? 1 : 0));
    }
    return Model(space, std::move(tab));
}

SweepReport sweep_audit(const Model& model, const Rational& delta, CharFnTag tag,
                        std::uint64_t subset_cap) {
    SweepReport report;
    const std::uint64_t total = model.space().total_points();
    for (std::uint64_t rank = 0; rank < total; ++rank) {
        Point v = point_from_rank(model.space(), rank);
        ExplanationProblem problem(model, v, delta);
        ScoreVector scores = exact_shap(tag, problem, subset_cap);
        FeatureMask relevant = relevant_features(problem, subset_cap);
        MismatchReport row = relevancy_mismatch(scores, relevant);
        if (row.mismatch) ++report.mismatch_count;
        report.rows.push_back({std::move(v), row.mismatch, std::move(row.witnesses)});
    }
    return report;
}

} // namespace xshap
