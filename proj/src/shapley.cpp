#include "xshap/shapley.hpp"

#include "xshap/errors.hpp"

#include <random>
#include <string>
#include <unordered_map>

namespace xshap {

Rational shapley_weight(int k, int m) {
    if (m < 1) throw argument_error("shapley_weight needs at least one feature");
    if (k < 0 || k > m - 1) {
        throw argument_error("shapley_weight: k = " + std::to_string(k) + " outside [0, " +
                             std::to_string(m - 1) + "]");
    }
    return Rational(factorial(k) * factorial(m - k - 1), factorial(m));
}

Rational marginal_delta(const CharFn& cf, int feature, FeatureMask others) {
    if (feature < 0 || feature >= cf.num_features) {
        throw argument_error("feature index out of range");
    }
    if (mask_has(others, feature)) {
        throw argument_error("marginal_delta: feature " + std::to_string(feature + 1) +
                             " already in the subset");
    }
    return cf_value(cf, others | (FeatureMask{1} << feature)) - cf_value(cf, others);
}

namespace {

// Every subset value, indexed by mask. The memoized table is what lets each
// cf(S) serve as both the "with i" and "without i" term.
std::vector<Rational> cf_table(const CharFn& cf, std::uint64_t subset_cap) {
    const int m = cf.num_features;
    if (m < 1) throw argument_error("characteristic function over zero features");
    const std::uint64_t subsets = std::uint64_t{1} << m;
    if (subsets > subset_cap) {
        throw capacity_error("2^" + std::to_string(m) + " subsets exceed the subset cap of " +
                             std::to_string(subset_cap));
    }
    std::vector<Rational> table(subsets);
    for (std::uint64_t s = 0; s < subsets; ++s) {
        table[s] = cf.eval(static_cast<FeatureMask>(s));
    }
    return table;
}

std::vector<Rational> scores_from_table(const std::vector<Rational>& table, int m) {
    std::vector<Rational> weights(m);
    for (int k = 0; k < m; ++k) weights[k] = shapley_weight(k, m);
    std::vector<Rational> sv(m, Rational(0));
    const std::uint64_t subsets = table.size();
    for (std::uint64_t s = 0; s < subsets; ++s) {
        const Rational& w = weights[mask_size(static_cast<FeatureMask>(s))];
        for (int i = 0; i < m; ++i) {
            if (mask_has(static_cast<FeatureMask>(s), i)) continue;
            sv[i] += w * (table[s | (std::uint64_t{1} << i)] - table[s]);
        }
    }
    return sv;
}

} // namespace

std::vector<Rational> exact_scores(const CharFn& cf, std::uint64_t subset_cap) {
    return scores_from_table(cf_table(cf, subset_cap), cf.num_features);
}

ScoreVector exact_shap(CharFnTag tag, const ExplanationProblem& problem,
                       std::uint64_t subset_cap) {
    CharFn cf = make_charfn(tag, problem);
    return {exact_scores(cf, subset_cap), cf.name, problem_fingerprint(problem)};
}

ScoreVector exact_shap_baseline(const ExplanationProblem& problem, const Point& baseline,
                                std::uint64_t subset_cap) {
    CharFn cf = make_baseline_charfn(problem, baseline);
    return {exact_scores(cf, subset_cap), cf.name, problem_fingerprint(problem)};
}

std::vector<double> sample_shap(const CharFn& cf, int permutations, std::uint64_t seed) {
    if (permutations < 1) throw argument_error("need at least one permutation");
    const int m = cf.num_features;
    std::mt19937_64 rng(seed);
    std::unordered_map<FeatureMask, double> memo;
    auto value = [&](FeatureMask s) {
        auto it = memo.find(s);
        if (it != memo.end()) return it->second;
        double v = cf.eval(s).convert_to<double>();
        memo.emplace(s, v);
        return v;
    };
    std::vector<int> perm(m);
    std::vector<double> acc(m, 0.0);
    for (int trial = 0; trial < permutations; ++trial) {
        for (int i = 0; i < m; ++i) perm[i] = i;
        // Hand-rolled Fisher-Yates: std::shuffle is implementation-defined,
        // and reports must be bit-identical for a fixed seed everywhere.
        for (int i = m - 1; i > 0; --i) {
            int j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
            std::swap(perm[i], perm[j]);
        }
        FeatureMask mask = 0;
        double prev = value(0);
        for (int feat : perm) {
            mask |= FeatureMask{1} << feat;
            double cur = value(mask);
            acc[feat] += cur - prev;
            prev = cur;
        }
    }
    for (double& a : acc) a /= permutations;
    return acc;
}

AxiomReport axiom_report(const CharFn& cf, std::uint64_t subset_cap) {
    const int m = cf.num_features;
    std::vector<Rational> table = cf_table(cf, subset_cap);
    std::vector<Rational> sv = scores_from_table(table, m);

    AxiomReport report;
    report.score_sum = Rational(0);
    for (const Rational& s : sv) report.score_sum += s;
    report.grand_difference = table.back() - table.front();
    report.efficiency_ok = report.score_sum == report.grand_difference;

    report.dummy_ok = true;
    const std::uint64_t subsets = table.size();
    for (int i = 0; i < m; ++i) {
        const std::uint64_t bit = std::uint64_t{1} << i;
        bool dummy = true;
        for (std::uint64_t s = 0; s < subsets && dummy; ++s) {
            if (s & bit) continue;
            if (table[s | bit] != table[s]) dummy = false;
        }
        if (dummy) {
            report.dummy_features.push_back(i);
            if (sv[i] != 0) report.dummy_ok = false;
        }
    }

    report.symmetry_ok = true;
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            const std::uint64_t bi = std::uint64_t{1} << i;
            const std::uint64_t bj = std::uint64_t{1} << j;
            bool interchangeable = true;
            for (std::uint64_t s = 0; s < subsets && interchangeable; ++s) {
                if (s & (bi | bj)) continue;
                if (table[s | bi] != table[s | bj]) interchangeable = false;
            }
            if (interchangeable) {
                report.symmetric_pairs.emplace_back(i, j);
                if (sv[i] != sv[j]) report.symmetry_ok = false;
            }
        }
    }
    return report;
}

} // namespace xshap
