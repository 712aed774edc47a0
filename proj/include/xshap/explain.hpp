#pragma once

#include "xshap/shapley.hpp"

#include <optional>
#include <vector>

namespace xshap {

// Complete abductive/contrastive explanation families of a problem.
// AXps are the subset-minimal weak abductive explanations, CXps the
// subset-minimal weak contrastive ones; `relevant` is their common union.
struct ExplanationSet {
    std::vector<FeatureMask> axps;
    std::vector<FeatureMask> cxps;
    FeatureMask relevant = 0;
};

// True iff fixing S forces a similar output on the whole slice.
bool is_waxp(const ExplanationProblem& problem, FeatureMask subset);

// True iff freeing S admits some dissimilar point.
bool is_wcxp(const ExplanationProblem& problem, FeatureMask subset);

// Deletion-based minimization of a weak abductive explanation; visits
// features in ascending order, so the result is deterministic.
FeatureMask find_axp(const ExplanationProblem& problem, FeatureMask seed);

// Powerset scan with monotonicity pruning; verifies minimal-hitting-set
// duality in both directions before returning (internal_error if violated).
ExplanationSet enumerate_explanations(const ExplanationProblem& problem,
                                      std::uint64_t subset_cap = kDefaultSubsetCap);

FeatureMask relevant_features(const ExplanationProblem& problem,
                              std::uint64_t subset_cap = kDefaultSubsetCap);

enum class NormP { p0, p1, p2, pinf };

std::string norm_name(NormP p);

// l_p ball radius; eps must be positive.
struct NormSpec {
    NormP p = NormP::p0;
    Rational eps;
};

// True iff ||x - v||_p <= eps. p = 0 counts differing coordinates and is the
// only norm defined over categorical domains.
bool within_norm(const ExplanationProblem& problem, const NormSpec& norm, const Point& x);

// First point (in lexicographic order) that is dissimilar, within the norm
// ball, and agrees with v on `fixed`; nullopt if none exists.
std::optional<Point> find_adversarial(const ExplanationProblem& problem, const NormSpec& norm,
                                      std::optional<FeatureMask> fixed = std::nullopt);

// Constrained-adversarial-example/WCXp equivalence, checked with the
// Hamming norm at radius m (large enough to cover the space); must always
// hold.
bool adversarial_wcxp_equivalence(const ExplanationProblem& problem, FeatureMask subset);

} // namespace xshap
