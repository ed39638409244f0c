#include "sidsp/metrics.hpp"

#include <doctest.h>

using namespace sidsp;

TEST_CASE("hypervolume hand values") {
    CHECK(hypervolume_hso({{0, 0}}) == doctest::Approx(1.0));
    CHECK(hypervolume_hso({{0.5, 0.5}}) == doctest::Approx(0.25));
    CHECK(hypervolume_hso({{0.2, 0.6}, {0.6, 0.2}}) == doctest::Approx(0.48));
    CHECK(hypervolume_hso({}) == 0.0);
}

TEST_CASE("hypervolume closed form for a single point") {
    Rng rng(1);
    for (int i = 0; i < 50; ++i) {
        ObjectivePoint p{rng.uniform01(), rng.uniform01()};
        CHECK(hypervolume_hso({p}) == doctest::Approx((1 - p.f1) * (1 - p.f2)));
    }
}

TEST_CASE("hypervolume ignores order, duplicates and dominated points") {
    std::vector<ObjectivePoint> base = {{0.2, 0.6}, {0.6, 0.2}};
    double ref_val = hypervolume_hso(base);

    std::vector<ObjectivePoint> shuffled = {{0.6, 0.2}, {0.2, 0.6}};
    CHECK(hypervolume_hso(shuffled) == doctest::Approx(ref_val));

    std::vector<ObjectivePoint> dup = {{0.2, 0.6}, {0.6, 0.2}, {0.2, 0.6}};
    CHECK(hypervolume_hso(dup) == doctest::Approx(ref_val));

    std::vector<ObjectivePoint> plus_dominated = base;
    plus_dominated.push_back({0.7, 0.7});
    CHECK(hypervolume_hso(plus_dominated) == doctest::Approx(ref_val));

    std::vector<ObjectivePoint> plus_nondominated = base;
    plus_nondominated.push_back({0.1, 0.9});
    CHECK(hypervolume_hso(plus_nondominated) > ref_val + 1e-9);
}

TEST_CASE("hypervolume rejects points outside the unit box") {
    CHECK_THROWS_AS(hypervolume_hso({{1.5, 0.5}}), std::invalid_argument);
    CHECK_THROWS_AS(hypervolume_hso({{-0.2, 0.5}}), std::invalid_argument);
}

TEST_CASE("points at the reference contribute nothing") {
    CHECK(hypervolume_hso({{1.0, 1.0}}) == 0.0);
    CHECK(hypervolume_hso({{1.0, 0.0}}) == 0.0);
}

TEST_CASE("monte carlo agrees exactly on the full box") {
    Rng rng(3);
    auto est = hypervolume_mc({{0, 0}}, {1, 1}, 100000, rng);
    CHECK(est.value == doctest::Approx(1.0));
    CHECK(hypervolume_mc({}, {1, 1}, 1000, rng).value == 0.0);
}

TEST_CASE("monte carlo tracks the exact value on random fronts") {
    Rng rng(17);
    int within = 0;
    const int trials = 30;
    for (int t = 0; t < trials; ++t) {
        std::vector<ObjectivePoint> front;
        int n = (int)rng.uniform_int(1, 12);
        for (int i = 0; i < n; ++i) front.push_back({rng.uniform01(), rng.uniform01()});
        double exact = hypervolume_hso(front);
        auto est = hypervolume_mc(front, {1, 1}, 200000, rng);
        double err = std::abs(est.value - exact);
        if (err <= 3 * est.std_error + 1e-9) ++within;
    }
    CHECK(within >= trials - 1);  // ~99.7% per trial
}

TEST_CASE("front_stats means") {
    CHECK(front_stats({{0.3, 0.7}}) == std::pair<double, double>{0.3, 0.7});
    auto [v1, v2] = front_stats({{0.2, 0.8}, {0.4, 0.6}});
    CHECK(v1 == doctest::Approx(0.3));
    CHECK(v2 == doctest::Approx(0.7));
    CHECK_THROWS_AS(front_stats({}), std::invalid_argument);
}

TEST_CASE("pareto_filter keeps exactly the nondominated set") {
    auto front = pareto_filter({{0.5, 0.5}, {0.2, 0.2}, {0.1, 0.9}, {0.2, 0.2}});
    REQUIRE(front.size() == 2);
    CHECK(front[0] == ObjectivePoint{0.1, 0.9});
    CHECK(front[1] == ObjectivePoint{0.2, 0.2});
}
