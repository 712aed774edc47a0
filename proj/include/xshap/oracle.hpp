#pragma once

#include "xshap/explain.hpp"

#include <optional>

namespace xshap {

// Test-side budget, deliberately far below the engine caps.
struct OracleBudget {
    int max_features = 5;
    std::uint64_t max_points = 1024;
};

// Reference SHAP scores computed from the permutation form: the average
// over all m! feature orderings of each feature's marginal contribution.
// Shares only the model types with the engine; slices, the similarity
// predicate and all sums are re-derived here from the definitions.
ScoreVector oracle_shap(CharFnTag tag, const ExplanationProblem& problem,
                        const std::optional<Point>& baseline = std::nullopt,
                        const OracleBudget& budget = {});

// Reference explanation families from the literal definitions: every subset
// is classified by a full scan and minimality is checked against all proper
// subsets, with no pruning.
ExplanationSet oracle_explanations(const ExplanationProblem& problem,
                                   const OracleBudget& budget = {});

} // namespace xshap
