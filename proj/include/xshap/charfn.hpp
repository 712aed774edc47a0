#pragma once

#include "xshap/similarity.hpp"

#include <functional>
#include <string>
#include <vector>

namespace xshap {

// e: expected model value        E[tau | x_S = v_S]
// s: similarity probability      P(sigma | x_S = v_S)
// a: all-similar indicator       [cf_s(S) = 1]
// c: contrastive indicator       [cf_s(F\S) < 1]
// n: complement of a             [cf_s(S) < 1]
// b: baseline composition        tau(v on S, w off S)
// dual: indicator of an arbitrary subset predicate
enum class CharFnTag { e, s, a, c, n, b, dual };

std::string charfn_name(CharFnTag tag);
CharFnTag parse_charfn_tag(const std::string& name);

// A characteristic function bound to a fixed problem: a total real-valued
// map on the subsets of F. The closure may reference the problem it was
// built from; keep that problem alive while the CharFn is in use.
struct CharFn {
    CharFnTag tag = CharFnTag::e;
    std::string name;
    int num_features = 0;
    std::function<Rational(FeatureMask)> eval;
};

// Builders for tags e, s, a, c, n.
CharFn make_charfn(CharFnTag tag, const ExplanationProblem& problem);

// Baseline characteristic function; `baseline` must be a point of the space.
CharFn make_baseline_charfn(const ExplanationProblem& problem, Point baseline);

// Well-definedness caveats for a baseline: non-boolean domains, or
// coordinates where the baseline equals the instance.
std::vector<std::string> baseline_warnings(const ExplanationProblem& problem,
                                           const Point& baseline);

// Indicator characteristic function of an arbitrary subset predicate.
CharFn make_predicate_charfn(std::string name, int num_features,
                             std::function<bool(FeatureMask)> predicate);

// Evaluates with a bounds check on S.
Rational cf_value(const CharFn& cf, FeatureMask subset);

} // namespace xshap
