#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "cantorspec/gap_lemma.hpp"
#include "lattice_sets.hpp"

using namespace cantorspec;
using test_util::middle_halves;
using test_util::middle_thirds;

TEST_CASE("newhouse check on calibrated sets") {
    SECTION("two middle-thirds sets of equal level") {
        auto K = middle_thirds(3); // lattice [0, 27], tau = 1
        auto v = check_newhouse(K, K);
        REQUIRE(v.hypotheses_hold);
        REQUIRE(v.predicted_interval);
        CHECK(*v.predicted_interval == Interval(0, 54));
        CHECK(minkowski_sum(K, K) == IntervalUnion{{0, 54}});
    }
    SECTION("interval against a thin interval") {
        IntervalUnion K1{{0, 1}};
        IntervalUnion K2{{0.5, 0.6}};
        auto v = check_newhouse(K1, K2);
        REQUIRE(v.hypotheses_hold); // tau = +inf on both, hulls meet, no gaps
        REQUIRE(v.predicted_interval);
        CHECK(*v.predicted_interval == Interval(0.5, 1.6));
        CHECK(v.astels_sum == 2.0); // +inf contributes weight 1 each
    }
    SECTION("isolated point fails the product condition") {
        IntervalUnion K{{0, 0}, {1, 2}};
        auto v = check_newhouse(K, K);
        CHECK_FALSE(v.hypotheses_hold);
        CHECK_FALSE(v.predicted_interval.has_value());
        CHECK(std::find(v.failed_conditions.begin(), v.failed_conditions.end(),
                        "thickness product below 1") != v.failed_conditions.end());
    }
    SECTION("disjoint hulls are reported") {
        auto v = check_newhouse(IntervalUnion{{0, 1}}, IntervalUnion{{5, 6}});
        CHECK_FALSE(v.hypotheses_hold);
        CHECK(std::find(v.failed_conditions.begin(), v.failed_conditions.end(),
                        "hulls do not intersect") != v.failed_conditions.end());
    }
}

TEST_CASE("astels check") {
    SECTION("three middle-halves sets reach S = 1") {
        auto K = middle_halves(3); // tau = 1/2, weight 1/3
        std::vector<IntervalUnion> Ks{K, K, K};
        auto v = check_astels(Ks);
        REQUIRE(v.hypotheses_hold);
        CHECK(v.astels_sum == 1.0);
        REQUIRE(v.predicted_interval);
        const double top = 3.0 * K.sup();
        CHECK(*v.predicted_interval == Interval(0, top));
        CHECK(minkowski_sum(Ks).is_interval());
    }
    SECTION("two middle-thirds sets agree with the two-set check") {
        auto K = middle_thirds(4);
        auto astels = check_astels({K, K});
        auto newhouse = check_newhouse(K, K);
        REQUIRE(astels.predicted_interval);
        REQUIRE(newhouse.predicted_interval);
        CHECK(*astels.predicted_interval == *newhouse.predicted_interval);
        CHECK(astels.astels_sum == 1.0);
    }
    SECTION("S below one yields the thickness lower bound") {
        // tau = 1/3: unit parts separated by a triple-length gap
        IntervalUnion K{{0, 1}, {4, 5}};
        CHECK(thickness(K).tau == 1.0 / 3.0);
        auto v = check_astels({K, K});
        REQUIRE(v.hypotheses_hold);
        CHECK(v.astels_sum == 0.5);
        REQUIRE(v.predicted_tau_lower_bound);
        CHECK(*v.predicted_tau_lower_bound == 1.0);
        CHECK_FALSE(v.predicted_interval.has_value());
    }
    SECTION("too few sets") {
        CHECK_THROWS_AS(check_astels({IntervalUnion{{0, 1}}}), TooFewSets);
    }
}

TEST_CASE("astels ordering is taken literally, permutations on request") {
    IntervalUnion K1{{0, 1}};          // diam 1
    IntervalUnion K2{{10, 11}};        // diam 1
    IntervalUnion K3{{0, 1}, {3, 4}};  // gap 2, diam 4
    std::vector<IntervalUnion> bad_order{K3, K1, K2};

    auto literal = check_astels(bad_order);
    CHECK_FALSE(literal.hypotheses_hold); // max_gap(K3) = 2 > diam(K1) = 1

    auto searched = check_astels(bad_order, AstelsOrdering::search_permutations);
    REQUIRE(searched.hypotheses_hold);
    REQUIRE(searched.order_used);
    // the reordering must put the two intervals first
    CHECK((*searched.order_used)[2] == 0);
}

TEST_CASE("verify_prediction cross-checks against the exact sum") {
    SECTION("two middle-thirds level-4 sets") {
        auto K = middle_thirds(4);
        auto rep = verify_prediction({K, K});
        REQUIRE(rep.verdict.predicted_interval);
        CHECK(rep.interval_prediction_matches);
        CHECK_FALSE(rep.hard_failure);
        CHECK(rep.oracle_sum.is_interval());
    }
    SECTION("three middle-halves level-5 sets") {
        auto K = middle_halves(5);
        auto rep = verify_prediction({K, K, K});
        REQUIRE(rep.verdict.predicted_interval);
        CHECK(rep.interval_prediction_matches);
        CHECK_FALSE(rep.hard_failure);
    }
    SECTION("failed hypotheses still attach the oracle sum") {
        IntervalUnion wide_gap{{0, 1}, {5, 6}}; // gap 4 exceeds the other diameter
        IntervalUnion small{{0, 1}};
        auto rep = verify_prediction({wide_gap, small});
        CHECK_FALSE(rep.verdict.hypotheses_hold);
        CHECK_FALSE(rep.verdict.predicted_interval.has_value());
        CHECK_FALSE(rep.verdict.predicted_tau_lower_bound.has_value());
        CHECK_FALSE(rep.hard_failure);
        CHECK(rep.oracle_sum == minkowski_sum(wide_gap, small));
    }
    SECTION("isolated points trip the sum condition cleanly, not an error") {
        IntervalUnion P{{0, 0}, {1, 2}};
        auto rep = verify_prediction({P, P});
        CHECK(rep.verdict.hypotheses_hold); // the gap/diameter system is satisfied
        CHECK(rep.verdict.astels_sum == 0.0);
        REQUIRE(rep.verdict.predicted_tau_lower_bound);
        CHECK(*rep.verdict.predicted_tau_lower_bound == 0.0); // trivially true bound
        CHECK_FALSE(rep.hard_failure);
    }
    SECTION("tau lower bound is honored on an attaining pair") {
        IntervalUnion K{{0, 1}, {4, 5}};
        auto rep = verify_prediction({K, K});
        REQUIRE(rep.verdict.predicted_tau_lower_bound);
        REQUIRE(rep.oracle_tau);
        CHECK(*rep.oracle_tau >= *rep.verdict.predicted_tau_lower_bound);
        CHECK(rep.tau_bound_satisfied);
    }
}

TEST_CASE("verdicts are scale and translation covariant") {
    std::mt19937_64 rng(1203);
    for (int it = 0; it < 100; ++it) {
        auto A = test_util::random_cantor_like(rng);
        auto B = test_util::random_cantor_like(rng);
        auto v = check_astels({A, B});
        // power-of-two scale keeps lattice arithmetic exact
        auto A2 = affine_image(A, 8.0, -5.0);
        auto B2 = affine_image(B, 8.0, 11.0);
        auto v2 = check_astels({A2, B2});
        CHECK(v.hypotheses_hold == v2.hypotheses_hold);
        CHECK(v.astels_sum == v2.astels_sum);
        if (v.predicted_interval) {
            REQUIRE(v2.predicted_interval);
            CHECK(v2.predicted_interval->lo == 8.0 * v.predicted_interval->lo + 6.0);
            CHECK(v2.predicted_interval->hi == 8.0 * v.predicted_interval->hi + 6.0);
        }
        if (v.predicted_tau_lower_bound) {
            REQUIRE(v2.predicted_tau_lower_bound);
            CHECK(*v.predicted_tau_lower_bound == *v2.predicted_tau_lower_bound);
        }
    }
}

TEST_CASE("randomized soundness: predictions never contradict the exact sum") {
    std::mt19937_64 rng(777);
    int predictions = 0, bounds = 0;
    for (int it = 0; it < 2000; ++it) {
        std::vector<IntervalUnion> Ks;
        const int d = 2 + static_cast<int>(rng() % 3);
        for (int k = 0; k < d; ++k) {
            if (rng() % 2)
                Ks.push_back(test_util::random_cantor_like(rng));
            else
                Ks.push_back(test_util::random_lattice_union(rng));
        }
        auto rep = verify_prediction(Ks);
        if (rep.verdict.predicted_interval) ++predictions;
        if (rep.verdict.predicted_tau_lower_bound) ++bounds;
        REQUIRE_FALSE(rep.hard_failure);

        if (Ks.size() == 2) {
            auto nh = check_newhouse(Ks[0], Ks[1]);
            if (nh.predicted_interval) {
                auto sum = minkowski_sum(Ks);
                REQUIRE(sum.is_interval());
                REQUIRE(sum.parts().front() == *nh.predicted_interval);
                // two-set Astels with both tau >= 1 is never weaker
                const double t0 = thickness(Ks[0]).tau, t1 = thickness(Ks[1]).tau;
                if (t0 >= 1.0 && t1 >= 1.0) {
                    auto as = check_astels(Ks);
                    CHECK(as.predicted_interval.has_value());
                }
            }
        }
    }
    // the generator must actually exercise both conclusion branches
    CHECK(predictions > 50);
    CHECK(bounds > 20);
}
