#pragma once

#include "xshap/model.hpp"

#include <functional>

namespace xshap {

// Similarity predicate sigma: true iff the model output at x is
// indistinguishable from the target output. Regression compares
// |model(x) - q| <= delta (non-strict); classification compares classes;
// ranking compares argmax indices.
bool similar(const ExplanationProblem& problem, const Point& x);

// Exact E[f(x) | x_S = v_S] over the uniform distribution.
Rational cond_expectation(const ExplanationProblem& problem, FeatureMask fixed,
                          const std::function<Rational(const Point&)>& f);

// Exact P(p(x) | x_S = v_S); always in [0,1].
Rational cond_probability(const ExplanationProblem& problem, FeatureMask fixed,
                          const std::function<bool(const Point&)>& p);

// Numeric view of the model; throws neutrality_error when the model's
// outputs are categorical.
std::function<Rational(const Point&)> numeric_eval(const ExplanationProblem& problem);

// Early-exit scan: true iff every point of Upsilon(S; v) is similar.
bool all_similar_on_slice(const ExplanationProblem& problem, FeatureMask fixed);

} // namespace xshap
