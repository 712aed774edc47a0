#pragma once

#include "xshap/explain.hpp"

#include <vector>

namespace xshap {

// weak:   the remap must be injective on the realized outputs (a relabeling)
// strong: it must only keep the target class separated, b != q => u(b) != u(q)
enum class RemapMode { weak, strong };

// A remap of model output values. On problems with a positive threshold the
// remap must additionally preserve which outputs count as similar to the
// target, or score invariance is not a well-posed question.
struct ValueRemap {
    RemapMode mode = RemapMode::strong;
    std::vector<std::pair<Value, Value>> entries;

    const Value* find(const Value& v) const;
};

// Distinct outputs the model actually produces, in first-seen order.
std::vector<Value> realized_outputs(const Model& model);

// Throws argument_error if the remap misses a realized output or violates
// its mode's condition.
void validate_remap(const ExplanationProblem& problem, const ValueRemap& remap);

// The remapped problem: a tabular model computing remap(tau(x)) with target
// (v, remap(q)). The threshold carries over while the outputs stay numeric.
ExplanationProblem apply_remap(const ExplanationProblem& problem, const ValueRemap& remap);

// 1 iff the score vector is unchanged by the remap.
bool value_independence_test(const ExplanationProblem& problem, CharFnTag tag,
                             const ValueRemap& remap,
                             std::uint64_t subset_cap = kDefaultSubsetCap);

struct MismatchWitness {
    int irrelevant_feature = 0; // 0-based
    int relevant_feature = 0;
    Rational irrelevant_abs;
    Rational relevant_abs;
};

// Scores mislead when an irrelevant feature outweighs (strictly, in absolute
// value) some relevant feature; ties are not mismatches.
struct MismatchReport {
    bool mismatch = false;
    std::vector<MismatchWitness> witnesses;
};

MismatchReport relevancy_mismatch(const ScoreVector& scores, FeatureMask relevant);

// 1 iff every feature is irrelevant exactly when its score is zero.
bool compliance_check(const ExplanationProblem& problem, CharFnTag tag,
                      std::uint64_t subset_cap = kDefaultSubsetCap);

// Boolean tabular model computing the similarity predicate. Expected-value
// scores of the transform equal similarity scores of the original problem.
Model similarity_transform(const ExplanationProblem& problem);

struct SweepRow {
    Point instance;
    bool mismatch = false;
    std::vector<MismatchWitness> witnesses;
};

struct SweepReport {
    std::vector<SweepRow> rows;
    int mismatch_count = 0;
};

// Runs the relevancy-mismatch audit with every point of the feature space as
// the target instance.
SweepReport sweep_audit(const Model& model, const Rational& delta, CharFnTag tag,
                        std::uint64_t subset_cap = kDefaultSubsetCap);

} // namespace xshap
