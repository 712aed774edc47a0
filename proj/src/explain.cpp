#include "xshap/explain.hpp"

#include "xshap/errors.hpp"

#include <string>

namespace xshap {

bool is_waxp(const ExplanationProblem& problem, FeatureMask subset) {
    const ExplanationProblem* E = &problem;
    return cond_probability(problem, subset, [E](const Point& x) { return similar(*E, x); }) == 1;
}

bool is_wcxp(const ExplanationProblem& problem, FeatureMask subset) {
    const FeatureMask complement = full_mask(problem.num_features()) & ~subset;
    const ExplanationProblem* E = &problem;
    return cond_probability(problem, complement,
                            [E](const Point& x) { return similar(*E, x); }) < 1;
}

FeatureMask find_axp(const ExplanationProblem& problem, FeatureMask seed) {
    if (!is_waxp(problem, seed)) {
        throw argument_error("find_axp seed is not a weak abductive explanation");
    }
    FeatureMask current = seed;
    for (int i = 0; i < problem.num_features(); ++i) {
        if (!mask_has(current, i)) continue;
        FeatureMask without = current & ~(FeatureMask{1} << i);
        if (is_waxp(problem, without)) current = without;
    }
    return current;
}

namespace {

bool hits_all(FeatureMask set, const std::vector<FeatureMask>& family) {
    for (FeatureMask member : family) {
        if ((set & member) == 0) return false;
    }
    return true;
}

bool minimal_hitting_set(FeatureMask set, const std::vector<FeatureMask>& family, int m) {
    if (!hits_all(set, family)) return false;
    for (int i = 0; i < m; ++i) {
        if (!mask_has(set, i)) continue;
        if (hits_all(set & ~(FeatureMask{1} << i), family)) return false;
    }
    return true;
}

void verify_duality(const ExplanationSet& out, int m) {
    for (FeatureMask axp : out.axps) {
        if (!minimal_hitting_set(axp, out.cxps, m)) {
            throw internal_error("an AXp is not a minimal hitting set of the CXps");
        }
    }
    for (FeatureMask cxp : out.cxps) {
        if (!minimal_hitting_set(cxp, out.axps, m)) {
            throw internal_error("a CXp is not a minimal hitting set of the AXps");
        }
    }
}

} // namespace

ExplanationSet enumerate_explanations(const ExplanationProblem& problem,
                                      std::uint64_t subset_cap) {
    const int m = problem.num_features();
    const std::uint64_t subsets = std::uint64_t{1} << m;
    if (subsets > subset_cap) {
        throw capacity_error("2^" + std::to_string(m) + " subsets exceed the subset cap of " +
                             std::to_string(subset_cap));
    }

    // waxp[S] by increasing mask: any WAXp subset makes S a WAXp without a
    // scan, since fixing more features can only shrink the slice.
    std::vector<char> waxp(subsets, 0);
    for (std::uint64_t s = 0; s < subsets; ++s) {
        bool known = false;
        for (int i = 0; i < m && !known; ++i) {
            const std::uint64_t bit = std::uint64_t{1} << i;
            if ((s & bit) && waxp[s & ~bit]) known = true;
        }
        waxp[s] = known || all_similar_on_slice(problem, static_cast<FeatureMask>(s));
    }

    const std::uint64_t full = subsets - 1;
    ExplanationSet out;
    for (std::uint64_t s = 0; s < subsets; ++s) {
        if (waxp[s]) {
            bool minimal = true;
            for (int i = 0; i < m && minimal; ++i) {
                const std::uint64_t bit = std::uint64_t{1} << i;
                if ((s & bit) && waxp[s & ~bit]) minimal = false;
            }
            if (minimal) out.axps.push_back(static_cast<FeatureMask>(s));
        }
        // S is a weak CXp iff fixing its complement does not pin the output.
        if (!waxp[full & ~s]) {
            bool minimal = true;
            for (int i = 0; i < m && minimal; ++i) {
                const std::uint64_t bit = std::uint64_t{1} << i;
                if ((s & bit) && !waxp[full & ~(s & ~bit)]) minimal = false;
            }
            if (minimal) out.cxps.push_back(static_cast<FeatureMask>(s));
        }
    }

    FeatureMask from_axps = 0;
    for (FeatureMask axp : out.axps) from_axps |= axp;
    FeatureMask from_cxps = 0;
    for (FeatureMask cxp : out.cxps) from_cxps |= cxp;
    if (from_axps != from_cxps) {
        throw internal_error("relevant features from AXps and from CXps disagree");
    }
    out.relevant = from_axps;

    verify_duality(out, m);
    return out;
}

FeatureMask relevant_features(const ExplanationProblem& problem, std::uint64_t subset_cap) {
    return enumerate_explanations(problem, subset_cap).relevant;
}

std::string norm_name(NormP p) {
    switch (p) {
        case NormP::p0: return "0";
        case NormP::p1: return "1";
        case NormP::p2: return "2";
        case NormP::pinf: return "inf";
    }
    return "?";
}

bool within_norm(const ExplanationProblem& problem, const NormSpec& norm, const Point& x) {
    if (norm.eps <= 0) throw argument_error("norm radius must be positive");
    const FeatureSpace& space = problem.space();
    const Point& v = problem.instance();
    if (norm.p == NormP::p0) {
        int changed = 0;
        for (int i = 0; i < space.size(); ++i) {
            if (x.vi[i] != v.vi[i]) ++changed;
        }
        return Rational(changed) <= norm.eps;
    }
    for (int i = 0; i < space.size(); ++i) {
        for (const Value& value : space.domains[i]) {
            if (!value.is_number()) {
                throw norm_error("l_" + norm_name(norm.p) +
                                 " is undefined over the categorical domain of feature " +
                                 std::to_string(i + 1) + "; use --p 0");
            }
        }
    }
    if (norm.p == NormP::p1) {
        Rational total = 0;
        for (int i = 0; i < space.size(); ++i) {
            total += abs(point_value(space, x, i).num() - point_value(space, v, i).num());
        }
        return total <= norm.eps;
    }
    if (norm.p == NormP::p2) {
        // compare squared distances to stay exact
        Rational total = 0;
        for (int i = 0; i < space.size(); ++i) {
            Rational d = point_value(space, x, i).num() - point_value(space, v, i).num();
            total += d * d;
        }
        return total <= norm.eps * norm.eps;
    }
    Rational worst = 0;
    for (int i = 0; i < space.size(); ++i) {
        Rational d = abs(point_value(space, x, i).num() - point_value(space, v, i).num());
        if (d > worst) worst = d;
    }
    return worst <= norm.eps;
}

std::optional<Point> find_adversarial(const ExplanationProblem& problem, const NormSpec& norm,
                                      std::optional<FeatureMask> fixed) {
    const FeatureMask fixed_mask = fixed.value_or(0);
    std::optional<Point> found;
    for_each_consistent(problem.space(), fixed_mask, problem.instance(), [&](const Point& x) {
        if (within_norm(problem, norm, x) && !similar(problem, x)) {
            found = x;
            return false;
        }
        return true;
    });
    return found;
}

bool adversarial_wcxp_equivalence(const ExplanationProblem& problem, FeatureMask subset) {
    const int m = problem.num_features();
    NormSpec covering{NormP::p0, Rational(m)};
    const FeatureMask complement = full_mask(m) & ~subset;
    bool adversarial_exists = find_adversarial(problem, covering, complement).has_value();
    return adversarial_exists == is_wcxp(problem, subset);
}

} // namespace xshap
