#include "test_util.hpp"

#include "xshap/modelgen.hpp"

#include <doctest.h>

using namespace xshap;
using namespace xshap::testing;

TEST_CASE("weak explanation predicates on the running example") {
    ExplanationProblem problem = running_example();
    CHECK(is_waxp(problem, fm({1})));
    CHECK(!is_waxp(problem, fm({2})));
    CHECK(is_waxp(problem, fm({1, 2})));
    CHECK(!is_waxp(problem, 0));

    CHECK(is_wcxp(problem, fm({1})));
    CHECK(!is_wcxp(problem, fm({2})));
    CHECK(!is_wcxp(problem, 0));
    CHECK(is_wcxp(problem, fm({1, 2})));
}

TEST_CASE("deletion-based minimization") {
    ExplanationProblem problem = running_example();
    CHECK(find_axp(problem, fm({1, 2})) == fm({1}));
    CHECK(find_axp(problem, fm({1})) == fm({1}));
    CHECK(find_axp(first_feature_problem(), fm({1, 2})) == fm({1}));
    CHECK_THROWS_AS(find_axp(problem, fm({2})), argument_error);
}

TEST_CASE("full explanation families") {
    SUBCASE("running example") {
        ExplanationSet expl = enumerate_explanations(running_example());
        CHECK(expl.axps == std::vector<FeatureMask>{fm({1})});
        CHECK(expl.cxps == std::vector<FeatureMask>{fm({1})});
        CHECK(expl.relevant == fm({1}));
        CHECK(relevant_features(running_example()) == fm({1}));
    }
    SUBCASE("xor needs both features fixed and either freed") {
        ExplanationSet expl = enumerate_explanations(xor_problem());
        CHECK(expl.axps == std::vector<FeatureMask>{fm({1, 2})});
        CHECK(expl.cxps == std::vector<FeatureMask>{fm({1}), fm({2})});
        CHECK(expl.relevant == fm({1, 2}));
    }
    SUBCASE("a model reading one feature explains with that feature") {
        ExplanationSet expl = enumerate_explanations(first_feature_problem());
        CHECK(expl.axps == std::vector<FeatureMask>{fm({1})});
        CHECK(expl.cxps == std::vector<FeatureMask>{fm({1})});
    }
}

namespace {

bool hits_every(FeatureMask set, const std::vector<FeatureMask>& family) {
    for (FeatureMask member : family) {
        if ((set & member) == 0) return false;
    }
    return true;
}

} // namespace

TEST_CASE("the families are mutual minimal hitting sets") {
    Rng rng(61);
    for (int trial = 0; trial < 60; ++trial) {
        ExplanationProblem problem = random_problem(rng);
        ExplanationSet expl = enumerate_explanations(problem);
        for (FeatureMask axp : expl.axps) {
            REQUIRE(hits_every(axp, expl.cxps));
            for (int i = 0; i < problem.num_features(); ++i) {
                if (!mask_has(axp, i)) continue;
                REQUIRE(!hits_every(axp & ~(FeatureMask{1} << i), expl.cxps));
            }
        }
        for (FeatureMask cxp : expl.cxps) {
            REQUIRE(hits_every(cxp, expl.axps));
            for (int i = 0; i < problem.num_features(); ++i) {
                if (!mask_has(cxp, i)) continue;
                REQUIRE(!hits_every(cxp & ~(FeatureMask{1} << i), expl.axps));
            }
        }
    }
}

TEST_CASE("weak explanations are monotone") {
    Rng rng(67);
    for (int trial = 0; trial < 40; ++trial) {
        ExplanationProblem problem = random_problem(rng);
        const FeatureMask full = full_mask(problem.num_features());
        for (FeatureMask s = 0;; ++s) {
            if (is_waxp(problem, s)) {
                for (FeatureMask t = s;; t = (t + 1) | s) {
                    REQUIRE(is_waxp(problem, t));
                    if (t == full) break;
                }
            }
            if (is_wcxp(problem, s)) {
                for (FeatureMask t = s;; t = (t + 1) | s) {
                    REQUIRE(is_wcxp(problem, t));
                    if (t == full) break;
                }
            }
            if (s == full) break;
        }
    }
}

TEST_CASE("adversarial search on the running example") {
    ExplanationProblem problem = running_example();

    SUBCASE("unconstrained Hamming search flips feature 1") {
        std::optional<Point> adv = find_adversarial(problem, {NormP::p0, rat("2")});
        REQUIRE(adv.has_value());
        CHECK(adv->vi[0] == 0); // feature 1 must change for a dissimilar output
        CHECK(*adv == Point{{0, 0}}); // lexicographically first
    }
    SUBCASE("fixing feature 1 removes every adversarial point") {
        CHECK(!find_adversarial(problem, {NormP::p0, rat("2")}, fm({1})).has_value());
    }
    SUBCASE("a radius covering only v finds nothing") {
        CHECK(!find_adversarial(problem, {NormP::p0, rat("1/2")}).has_value());
    }
    SUBCASE("euclidean radius 1 reaches the dissimilar neighbor") {
        std::optional<Point> adv = find_adversarial(problem, {NormP::p2, rat("1")});
        REQUIRE(adv.has_value());
        CHECK(*adv == Point{{0, 1}});
    }
    SUBCASE("the radius must be positive") {
        CHECK_THROWS_AS(find_adversarial(problem, {NormP::p0, rat("0")}), argument_error);
    }
}

TEST_CASE("p >= 1 norms reject categorical domains") {
    FeatureSpace space;
    space.domains = {{Value::token("low"), Value::token("high")},
                     {Value::number(0), Value::number(1)}};
    TabularModel tab;
    tab.out_kind = OutputKind::ordinal;
    tab.outputs = {Value::number(0), Value::number(1), Value::number(1), Value::number(0)};
    ExplanationProblem problem(Model(space, std::move(tab)), Point{{0, 0}});
    CHECK_THROWS_AS(find_adversarial(problem, {NormP::p1, rat("1")}), norm_error);
    CHECK(find_adversarial(problem, {NormP::p0, rat("2")}).has_value());
}

TEST_CASE("constrained adversarial existence coincides with weak contrastive status") {
    ExplanationProblem rstar = running_example();
    CHECK(adversarial_wcxp_equivalence(rstar, fm({1})));
    CHECK(adversarial_wcxp_equivalence(rstar, fm({2})));
    CHECK(adversarial_wcxp_equivalence(rstar, 0));

    Rng rng(71);
    for (int trial = 0; trial < 40; ++trial) {
        ExplanationProblem problem = random_problem(rng);
        const FeatureMask full = full_mask(problem.num_features());
        for (FeatureMask s = 0;; ++s) {
            REQUIRE(adversarial_wcxp_equivalence(problem, s));
            if (s == full) break;
        }
    }
}
