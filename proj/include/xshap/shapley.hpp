#pragma once

#include "xshap/charfn.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace xshap {

// Exact scoring walks all 2^m subsets; refuse anything beyond this many.
inline constexpr std::uint64_t kDefaultSubsetCap = std::uint64_t{1} << 20;

// Per-feature exact scores, tagged with the characteristic function and the
// problem they came from.
struct ScoreVector {
    std::vector<Rational> scores;
    std::string charfn;
    std::uint64_t fingerprint = 0;

    int size() const { return static_cast<int>(scores.size()); }
};

// Shapley kernel weight k!(m-k-1)!/m! for 0 <= k <= m-1.
Rational shapley_weight(int k, int m);

// Delta_i(S) = cf(S u {i}) - cf(S); requires i not in S.
Rational marginal_delta(const CharFn& cf, int feature, FeatureMask others);

// sv(i) = sum over S subseteq F\{i} of weight(|S|) * Delta_i(S), exactly.
// Every cf value is computed once and reused on both sides of the deltas.
std::vector<Rational> exact_scores(const CharFn& cf,
                                   std::uint64_t subset_cap = kDefaultSubsetCap);

ScoreVector exact_shap(CharFnTag tag, const ExplanationProblem& problem,
                       std::uint64_t subset_cap = kDefaultSubsetCap);
ScoreVector exact_shap_baseline(const ExplanationProblem& problem, const Point& baseline,
                                std::uint64_t subset_cap = kDefaultSubsetCap);

// Monte-Carlo estimate over uniformly sampled feature permutations.
// Deterministic for a fixed seed; estimates are plain doubles and are never
// fed into exactness-sensitive checks.
std::vector<double> sample_shap(const CharFn& cf, int permutations, std::uint64_t seed);

struct AxiomReport {
    Rational score_sum;
    Rational grand_difference;              // cf(F) - cf(empty)
    bool efficiency_ok = false;
    std::vector<int> dummy_features;        // 0-based features with Delta identically 0
    bool dummy_ok = false;
    std::vector<std::pair<int, int>> symmetric_pairs;
    bool symmetry_ok = false;

    bool ok() const { return efficiency_ok && dummy_ok && symmetry_ok; }
};

// Checks the efficiency, dummy and symmetry axioms against exact scores.
// An exact implementation reports zero violations.
AxiomReport axiom_report(const CharFn& cf, std::uint64_t subset_cap = kDefaultSubsetCap);

} // namespace xshap
