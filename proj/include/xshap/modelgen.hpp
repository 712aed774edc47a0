#pragma once

#include "xshap/audit.hpp"

#include <functional>
#include <random>

namespace xshap {

// Deterministic generators for randomized suites. All randomness flows
// through the caller's engine, so a fixed seed reproduces a whole run.
using Rng = std::mt19937_64;

struct GenOptions {
    int min_features = 1;
    int max_features = 4;
    int min_domain = 2;
    int max_domain = 3;
    bool allow_regression = true;  // real outputs with a random threshold
    bool allow_categorical = true; // token class values
};

int pick_int(Rng& rng, int lo, int hi);

FeatureSpace random_space(Rng& rng, const GenOptions& options = {});

// Non-constant tabular model; classification (ordinal or token classes) or
// regression per the options.
Model random_tabular_model(Rng& rng, const GenOptions& options = {});

// Non-constant decision tree over the same kinds of outputs.
Model random_tree_model(Rng& rng, const GenOptions& options = {});

// Non-constant boolean circuit over `features` boolean inputs.
Model random_circuit_model(Rng& rng, int features);

// Non-constant tabular classifier with ordinal {0,1} outputs.
Model random_boolean_tabular(Rng& rng, const GenOptions& options = {});

// Non-constant ranking model with tabular heads.
Model random_ranking_model(Rng& rng, const GenOptions& options = {});

// Same function as an explicit table.
Model flatten_to_tabular(const Model& model);

// Random instance on a random tabular model; regression problems get a
// random threshold.
ExplanationProblem random_problem(Rng& rng, const GenOptions& options = {});

// As random_problem but the outputs are guaranteed numeric.
ExplanationProblem random_numeric_problem(Rng& rng, const GenOptions& options = {});

// Random instance over any model variant (tabular, tree, circuit, ranking).
ExplanationProblem random_problem_mixed(Rng& rng, const GenOptions& options = {});

// Upward-closed subset predicate generated from random seed sets.
std::function<bool(FeatureMask)> random_monotone_predicate(Rng& rng, int num_features);

// The hitting-set dual: S satisfies the dual iff F\S fails the primal.
std::function<bool(FeatureMask)> dual_predicate(std::function<bool(FeatureMask)> predicate,
                                                int num_features);

// Valid remaps of the problem's realized outputs (see audit.hpp for the
// validity conditions). Threshold problems get translations; classification
// problems get relabelings (weak) or class collapses away from the target
// (strong).
ValueRemap random_weak_remap(Rng& rng, const ExplanationProblem& problem);
ValueRemap random_strong_remap(Rng& rng, const ExplanationProblem& problem);

} // namespace xshap
