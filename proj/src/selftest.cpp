#include "xshap/selftest.hpp"

#include "xshap/modelgen.hpp"
#include "xshap/oracle.hpp"

namespace xshap {

namespace {

bool scores_agree(const ScoreVector& a, const ScoreVector& b) {
    return a.scores == b.scores;
}

bool families_agree(const ExplanationSet& a, const ExplanationSet& b) {
    return a.axps == b.axps && a.cxps == b.cxps && a.relevant == b.relevant;
}

} // namespace

bool run_selftest(int num_models, std::uint64_t seed, std::ostream& out) {
    Rng rng(seed);
    GenOptions options;
    options.max_features = 4; // oracle walks m! permutations; keep it small

    int failures = 0;
    for (int trial = 0; trial < num_models; ++trial) {
        ExplanationProblem problem = random_problem_mixed(rng, options);
        const bool numeric = problem.model().output_kind() != OutputKind::categorical;

        for (CharFnTag tag : {CharFnTag::e, CharFnTag::s, CharFnTag::a, CharFnTag::c, CharFnTag::n}) {
            if (tag == CharFnTag::e && !numeric) continue;
            if (!scores_agree(exact_shap(tag, problem), oracle_shap(tag, problem))) {
                ++failures;
                out << "selftest: trial " << trial << " charfn " << charfn_name(tag)
                    << ": engine and oracle scores disagree\n";
            }
        }
        if (numeric && !problem.model().is_ranking()) {
            Point baseline;
            for (const auto& domain : problem.space().domains) {
                baseline.vi.push_back(pick_int(rng, 0, static_cast<int>(domain.size()) - 1));
            }
            if (!scores_agree(exact_shap_baseline(problem, baseline),
                              oracle_shap(CharFnTag::b, problem, baseline))) {
                ++failures;
                out << "selftest: trial " << trial << ": baseline scores disagree\n";
            }
        }
        if (!families_agree(enumerate_explanations(problem), oracle_explanations(problem))) {
            ++failures;
            out << "selftest: trial " << trial << ": explanation families disagree\n";
        }
    }

    if (failures == 0) {
        out << "selftest: " << num_models << " random models, all oracle differentials passed\n";
        return true;
    }
    out << "selftest: " << failures << " differential(s) FAILED over " << num_models
        << " models\n";
    return false;
}

} // namespace xshap
