#include "xshap/oracle.hpp"

#include "xshap/errors.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace xshap {

namespace {

void check_budget(const ExplanationProblem& problem, const OracleBudget& budget) {
    if (problem.num_features() > budget.max_features) {
        throw capacity_error("oracle budget allows at most " +
                             std::to_string(budget.max_features) + " features");
    }
    if (problem.space().total_points() > budget.max_points) {
        throw capacity_error("oracle budget allows at most " +
                             std::to_string(budget.max_points) + " points");
    }
}

std::vector<Point> all_points(const FeatureSpace& space) {
    const std::uint64_t total = space.total_points();
    std::vector<Point> pts;
    pts.reserve(total);
    for (std::uint64_t rank = 0; rank < total; ++rank) {
        pts.push_back(point_from_rank(space, rank));
    }
    return pts;
}

bool agrees_on(const Point& x, const Point& v, FeatureMask subset) {
    for (int i = 0; i < x.size(); ++i) {
        if (mask_has(subset, i) && x.vi[i] != v.vi[i]) return false;
    }
    return true;
}

// The similarity predicate, from its definition. For ranking models the
// argmax comparison is replaced by label equality, which the injective
// label map makes equivalent.
bool oracle_similar(const ExplanationProblem& problem, const Point& x) {
    ModelOutput out = evaluate(problem.model(), x);
    switch (problem.mode()) {
        case SimilarityMode::threshold: {
            Rational d = out.value.num() - problem.target().value.num();
            if (d < 0) d = -d;
            return d <= problem.delta();
        }
        case SimilarityMode::class_equality:
        case SimilarityMode::argmax_equality:
            return out.value == problem.target().value;
    }
    return false;
}

struct OracleCf {
    const ExplanationProblem* problem;
    CharFnTag tag;
    std::vector<Point> points;
    std::optional<Point> baseline;

    Rational similarity_fraction(FeatureMask subset) const {
        long long similar_count = 0;
        long long total = 0;
        for (const Point& x : points) {
            if (!agrees_on(x, problem->instance(), subset)) continue;
            ++total;
            if (oracle_similar(*problem, x)) ++similar_count;
        }
        return Rational(similar_count, total);
    }

    Rational operator()(FeatureMask subset) const {
        const FeatureMask full = full_mask(problem->num_features());
        switch (tag) {
            case CharFnTag::e: {
                Rational sum = 0;
                long long total = 0;
                for (const Point& x : points) {
                    if (!agrees_on(x, problem->instance(), subset)) continue;
                    sum += evaluate(problem->model(), x).value.num();
                    ++total;
                }
                return sum / total;
            }
            case CharFnTag::s:
                return similarity_fraction(subset);
            case CharFnTag::a:
                return similarity_fraction(subset) == 1 ? 1 : 0;
            case CharFnTag::n:
                return similarity_fraction(subset) < 1 ? 1 : 0;
            case CharFnTag::c:
                return similarity_fraction(full & ~subset) < 1 ? 1 : 0;
            case CharFnTag::b: {
                Point x = *baseline;
                for (int i = 0; i < problem->num_features(); ++i) {
                    if (mask_has(subset, i)) x.vi[i] = problem->instance().vi[i];
                }
                return evaluate(problem->model(), x).value.num();
            }
            default:
                throw argument_error("oracle has no dual-predicate characteristic function");
        }
    }
};

} // namespace

ScoreVector oracle_shap(CharFnTag tag, const ExplanationProblem& problem,
                        const std::optional<Point>& baseline, const OracleBudget& budget) {
    check_budget(problem, budget);
    if (tag == CharFnTag::b && !baseline) {
        throw argument_error("baseline characteristic function needs a baseline point");
    }
    if ((tag == CharFnTag::e || tag == CharFnTag::b) &&
        problem.model().output_kind() == OutputKind::categorical) {
        throw neutrality_error("oracle expected value needs numeric outputs");
    }

    const int m = problem.num_features();
    OracleCf cf{&problem, tag, all_points(problem.space()), baseline};

    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::vector<Rational> sums(m, Rational(0));
    long long permutations = 0;
    do {
        FeatureMask prefix = 0;
        Rational prev = cf(prefix);
        for (int feature : order) {
            prefix |= FeatureMask{1} << feature;
            Rational cur = cf(prefix);
            sums[feature] += cur - prev;
            prev = std::move(cur);
        }
        ++permutations;
    } while (std::next_permutation(order.begin(), order.end()));

    ScoreVector out;
    out.charfn = charfn_name(tag);
    out.fingerprint = problem_fingerprint(problem);
    out.scores.reserve(m);
    for (Rational& s : sums) out.scores.push_back(s / permutations);
    return out;
}

ExplanationSet oracle_explanations(const ExplanationProblem& problem,
                                   const OracleBudget& budget) {
    check_budget(problem, budget);
    const int m = problem.num_features();
    const FeatureMask full = full_mask(m);
    const std::vector<Point> points = all_points(problem.space());

    auto waxp = [&](FeatureMask s) {
        for (const Point& x : points) {
            if (agrees_on(x, problem.instance(), s) && !oracle_similar(problem, x)) return false;
        }
        return true;
    };
    auto wcxp = [&](FeatureMask s) {
        for (const Point& x : points) {
            if (agrees_on(x, problem.instance(), full & ~s) && !oracle_similar(problem, x)) {
                return true;
            }
        }
        return false;
    };

    // minimality against every proper subset, not just one-feature deletions
    auto minimal_wrt = [](FeatureMask s, auto&& pred) {
        if (s == 0) return true;
        for (FeatureMask t = (s - 1) & s;; t = (t - 1) & s) {
            if (pred(t)) return false;
            if (t == 0) break;
        }
        return true;
    };

    ExplanationSet out;
    for (FeatureMask s = 0;; ++s) {
        if (waxp(s) && minimal_wrt(s, waxp)) out.axps.push_back(s);
        if (wcxp(s) && minimal_wrt(s, wcxp)) out.cxps.push_back(s);
        if (s == full) break;
    }
    for (FeatureMask axp : out.axps) out.relevant |= axp;
    return out;
}

} // namespace xshap
