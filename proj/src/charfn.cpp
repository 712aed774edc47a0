#include "xshap/charfn.hpp"

#include "xshap/errors.hpp"

namespace xshap {

std::string charfn_name(CharFnTag tag) {
    switch (tag) {
        case CharFnTag::e: return "e";
        case CharFnTag::s: return "s";
        case CharFnTag::a: return "a";
        case CharFnTag::c: return "c";
        case CharFnTag::n: return "n";
        case CharFnTag::b: return "b";
        case CharFnTag::dual: return "dual";
    }
    return "?";
}

CharFnTag parse_charfn_tag(const std::string& name) {
    if (name == "e") return CharFnTag::e;
    if (name == "s") return CharFnTag::s;
    if (name == "a") return CharFnTag::a;
    if (name == "c") return CharFnTag::c;
    if (name == "n") return CharFnTag::n;
    if (name == "b") return CharFnTag::b;
    throw argument_error("unknown characteristic function \"" + name + "\" (expected e|s|a|c|n|b)");
}

CharFn make_charfn(CharFnTag tag, const ExplanationProblem& problem) {
    const int m = problem.num_features();
    const FeatureMask full = full_mask(m);
    const ExplanationProblem* E = &problem;
    CharFn cf{tag, charfn_name(tag), m, {}};
    switch (tag) {
        case CharFnTag::e: {
            auto tau = numeric_eval(problem);
            cf.eval = [E, tau](FeatureMask s) { return cond_expectation(*E, s, tau); };
            break;
        }
        case CharFnTag::s:
            cf.eval = [E](FeatureMask s) {
                return cond_probability(*E, s, [E](const Point& x) { return similar(*E, x); });
            };
            break;
        // a, c and n only need to know whether some point of the slice is
        // dissimilar, so they use the early-exit scan instead of the full
        // expectation.
        case CharFnTag::a:
            cf.eval = [E](FeatureMask s) { return Rational(all_similar_on_slice(*E, s) ? 1 : 0); };
            break;
        case CharFnTag::n:
            cf.eval = [E](FeatureMask s) { return Rational(all_similar_on_slice(*E, s) ? 0 : 1); };
            break;
        case CharFnTag::c:
            cf.eval = [E, full](FeatureMask s) {
                return Rational(all_similar_on_slice(*E, full & ~s) ? 0 : 1);
            };
            break;
        default:
            throw argument_error("make_charfn handles tags e, s, a, c, n only");
    }
    return cf;
}

std::vector<std::string> baseline_warnings(const ExplanationProblem& problem,
                                           const Point& baseline) {
    check_point(problem.space(), baseline);
    std::vector<std::string> warnings;
    const FeatureSpace& space = problem.space();
    for (int i = 0; i < space.size(); ++i) {
        if (space.domains[i].size() != 2) {
            warnings.push_back("feature " + std::to_string(i + 1) +
                               " is not boolean; the baseline characteristic function may be "
                               "ill-defined on this space");
        }
        if (baseline.vi[i] == problem.instance().vi[i]) {
            warnings.push_back("baseline agrees with the instance on feature " +
                               std::to_string(i + 1) +
                               "; that feature cannot influence the baseline scores");
        }
    }
    return warnings;
}

CharFn make_baseline_charfn(const ExplanationProblem& problem, Point baseline) {
    check_point(problem.space(), baseline);
    // Composed points tau(v on S, w off S) must be numeric to feed Shapley.
    numeric_eval(problem);
    const ExplanationProblem* E = &problem;
    const int m = problem.num_features();
    CharFn cf{CharFnTag::b, "b", m, {}};
    cf.eval = [E, w = std::move(baseline), m](FeatureMask s) {
        Point x = w;
        for (int i = 0; i < m; ++i) {
            if (mask_has(s, i)) x.vi[i] = E->instance().vi[i];
        }
        return evaluate(E->model(), x).value.num();
    };
    return cf;
}

CharFn make_predicate_charfn(std::string name, int num_features,
                             std::function<bool(FeatureMask)> predicate) {
    CharFn cf{CharFnTag::dual, std::move(name), num_features, {}};
    cf.eval = [pred = std::move(predicate)](FeatureMask s) { return Rational(pred(s) ? 1 : 0); };
    return cf;
}

Rational cf_value(const CharFn& cf, FeatureMask subset) {
    if (subset & ~full_mask(cf.num_features)) {
        throw argument_error("subset mentions features outside the problem");
    }
    return cf.eval(subset);
}

} // namespace xshap
