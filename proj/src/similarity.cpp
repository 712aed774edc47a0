#include "xshap/similarity.hpp"

#include "xshap/errors.hpp"

namespace xshap {

bool similar(const ExplanationProblem& problem, const Point& x) {
    switch (problem.mode()) {
        case SimilarityMode::threshold: {
            Rational diff = evaluate(problem.model(), x).value.num() - problem.target().value.num();
            return abs(diff) <= problem.delta();
        }
        case SimilarityMode::class_equality:
            return evaluate(problem.model(), x).value == problem.target().value;
        case SimilarityMode::argmax_equality:
            return ranking_select(problem.model(), x) ==
                   ranking_select(problem.model(), problem.instance());
    }
    return false;
}

Rational cond_expectation(const ExplanationProblem& problem, FeatureMask fixed,
                          const std::function<Rational(const Point&)>& f) {
    Rational sum = 0;
    std::uint64_t count = 0;
    for_each_consistent(problem.space(), fixed, problem.instance(), [&](const Point& x) {
        sum += f(x);
        ++count;
        return true;
    });
    return sum / Rational(count);
}

Rational cond_probability(const ExplanationProblem& problem, FeatureMask fixed,
                          const std::function<bool(const Point&)>& p) {
    std::uint64_t hits = 0;
    std::uint64_t count = 0;
    for_each_consistent(problem.space(), fixed, problem.instance(), [&](const Point& x) {
        if (p(x)) ++hits;
        ++count;
        return true;
    });
    return Rational(hits) / Rational(count);
}

std::function<Rational(const Point&)> numeric_eval(const ExplanationProblem& problem) {
    if (problem.model().output_kind() == OutputKind::categorical) {
        throw neutrality_error("model outputs are categorical; an expected value is undefined");
    }
    const Model* model = &problem.model();
    return [model](const Point& x) { return evaluate(*model, x).value.num(); };
}

bool all_similar_on_slice(const ExplanationProblem& problem, FeatureMask fixed) {
    bool all = true;
    for_each_consistent(problem.space(), fixed, problem.instance(), [&](const Point& x) {
        if (!similar(problem, x)) {
            all = false;
            return false;
        }
        return true;
    });
    return all;
}

} // namespace xshap
