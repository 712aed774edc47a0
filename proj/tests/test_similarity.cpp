#include "test_util.hpp"

#include "xshap/modelgen.hpp"

#include <doctest.h>

using namespace xshap;
using namespace xshap::testing;

TEST_CASE("similarity on the running example") {
    ExplanationProblem problem = running_example();
    CHECK(similar(problem, Point{{1, 0}}));  // |5/4 - 1| = 1/4 <= 1/2
    CHECK(!similar(problem, Point{{0, 1}})); // |7/4 - 1| = 3/4 > 1/2
    CHECK(!similar(problem, Point{{0, 0}}));
    CHECK(similar(problem, problem.instance()));
}

TEST_CASE("the threshold comparison is non-strict") {
    TabularModel tab;
    tab.out_kind = OutputKind::real;
    tab.outputs = {Value::number(0), Value::number(rat("1/2"))};
    ExplanationProblem problem(Model(boolean_space(1), std::move(tab)), Point{{0}}, rat("1/2"));
    CHECK(similar(problem, Point{{1}})); // exactly delta away
}

TEST_CASE("conditional expectation on the running example") {
    ExplanationProblem problem = running_example();
    auto rho = numeric_eval(problem);
    CHECK(cond_expectation(problem, 0, rho) == rat("3/4"));
    CHECK(cond_expectation(problem, fm({1, 2}), rho) == 1);
    CHECK(cond_expectation(problem, fm({2}), rho) == rat("11/8"));
    CHECK(cond_expectation(problem, fm({1}), rho) == rat("9/8"));
}

TEST_CASE("categorical outputs refuse expected values") {
    TabularModel tab;
    tab.out_kind = OutputKind::categorical;
    tab.outputs = {Value::token("red"), Value::token("green")};
    ExplanationProblem problem(Model(boolean_space(1), std::move(tab)), Point{{0}});
    CHECK_THROWS_AS(numeric_eval(problem), neutrality_error);
}

TEST_CASE("conditional probability of similarity") {
    ExplanationProblem problem = running_example();
    auto sigma = [&](const Point& x) { return similar(problem, x); };
    CHECK(cond_probability(problem, fm({1}), sigma) == 1);
    CHECK(cond_probability(problem, 0, sigma) == rat("1/2"));
    CHECK(cond_probability(problem, fm({1, 2}), sigma) == 1);
}

TEST_CASE("probability 1 means every slice point is similar") {
    Rng rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        ExplanationProblem problem = random_problem(rng);
        const FeatureMask full = full_mask(problem.num_features());
        auto sigma = [&](const Point& x) { return similar(problem, x); };
        for (FeatureMask s = 0; s <= full; ++s) {
            Rational p = cond_probability(problem, s, sigma);
            bool all = true, any_dissimilar = false;
            for (const Point& x : enumerate_consistent(problem.space(), s, problem.instance())) {
                if (similar(problem, x)) continue;
                all = false;
                any_dissimilar = true;
            }
            REQUIRE((p == 1) == all);
            REQUIRE((p < 1) == any_dissimilar);
            REQUIRE(all_similar_on_slice(problem, s) == all);
            if (s == full) break;
        }
    }
}

TEST_CASE("pinned slices stay pinned under larger fixed sets") {
    Rng rng(29);
    for (int trial = 0; trial < 40; ++trial) {
        ExplanationProblem problem = random_problem(rng);
        const FeatureMask full = full_mask(problem.num_features());
        auto sigma = [&](const Point& x) { return similar(problem, x); };
        for (FeatureMask s = 0; s <= full; ++s) {
            Rational p = cond_probability(problem, s, sigma);
            if (p == 0 || p == 1) {
                // every superset fixes more, so the slice shrinks
                for (FeatureMask t = s;; t = (t + 1) | s) {
                    REQUIRE(cond_probability(problem, t, sigma) == p);
                    if (t == full) break;
                }
            }
            if (s == full) break;
        }
    }
}

TEST_CASE("boolean classifiers with target class 1 make similarity the classifier") {
    Rng rng(31);
    int tested = 0;
    while (tested < 30) {
        Model model = random_boolean_tabular(rng);
        Point v;
        bool found = false;
        for (std::uint64_t rank = 0; rank < model.space().total_points() && !found; ++rank) {
            Point x = point_from_rank(model.space(), rank);
            if (evaluate(model, x).value == Value::number(1)) {
                v = x;
                found = true;
            }
        }
        REQUIRE(found); // non-constant boolean models realize class 1
        ExplanationProblem problem(std::move(model), std::move(v));
        for (std::uint64_t rank = 0; rank < problem.space().total_points(); ++rank) {
            Point x = point_from_rank(problem.space(), rank);
            bool kappa = evaluate(problem.model(), x).value == Value::number(1);
            REQUIRE(similar(problem, x) == kappa);
        }
        ++tested;
    }
}

TEST_CASE("ranking similarity is argmax equality") {
    Model model = load_model(fixture("ranking_model.json"));
    ExplanationProblem problem(model, Point{{1, 1}});
    for (std::uint64_t rank = 0; rank < model.space().total_points(); ++rank) {
        Point x = point_from_rank(model.space(), rank);
        CHECK(similar(problem, x) ==
              (ranking_select(model, x) == ranking_select(model, problem.instance())));
    }
}
