#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dynrisk/case_study.hpp"
#include "dynrisk/model.hpp"
#include "support/generators.hpp"

using namespace dynrisk;
using Catch::Approx;

namespace {

bool mentions(const std::vector<std::string>& issues, const std::string& needle) {
    return std::any_of(issues.begin(), issues.end(), [&](const auto& s) { return s.find(needle) != std::string::npos; });
}

AssessmentInput small_valid_input() {
    AssessmentInput in;
    in.indices = {{"a", "A", IndexOrientation::benefit(), 0.5}, {"b", "B", IndexOrientation::cost(), 0.5}};
    in.periods = {"p1", "p2"};
    in.time_weights = {0.5, 0.5};
    in.areas = {{"x", Matrix{{1, 2}, {3, 4}}}, {"y", Matrix{{2, 1}, {4, 3}}}};
    return in;
}

}  // namespace

TEST_CASE("case study dataset is valid", "[model]") {
    const auto input = case_study_input();
    REQUIRE(find_input_issues(input).empty());
    CHECK(input.area_count() == 3);
    CHECK(input.index_count() == 15);
    CHECK(input.period_count() == 6);
    CHECK_NOTHROW(validate_input(input));
}

TEST_CASE("validate_input rejects a single period", "[model]") {
    auto in = small_valid_input();
    in.periods = {"p1"};
    in.time_weights = {1.0};
    for (auto& a : in.areas) a.values = Matrix{{1}, {2}};
    auto issues = find_input_issues(in);
    CHECK(mentions(issues, "T >= 2 required"));
    CHECK_THROWS_AS(validate_input(in), ValidationError);
}

TEST_CASE("validate_input reports weight sums outside tolerance", "[model]") {
    auto in = small_valid_input();
    in.indices[0].weight = 0.45;
    in.indices[1].weight = 0.45;
    auto issues = find_input_issues(in);
    REQUIRE(issues.size() == 1);
    CHECK(issues[0] == "index weights sum 0.90 outside tolerance");

    // 0.9999 is inside the tolerance.
    in.indices[0].weight = 0.4999;
    in.indices[1].weight = 0.5;
    CHECK(find_input_issues(in).empty());
}

TEST_CASE("validate_input lists every violation, not just the first", "[model]") {
    auto in = small_valid_input();
    in.indices[1].id = "a";
    in.indices.push_back({"c", "C", {OrientationKind::Interval, std::nullopt, std::nullopt}, 0.1});
    // area x keeps its 2x2 shape, which no longer matches m = 3
    in.areas[1].values = Matrix(3, 2, 1.0);
    in.areas[1].values(2, 1) = INFINITY;

    auto issues = find_input_issues(in);
    CHECK(mentions(issues, "duplicate index id"));
    CHECK(mentions(issues, "interval orientation missing bounds"));
    CHECK(mentions(issues, "index weights sum 1.10 outside tolerance"));
    CHECK(mentions(issues, "area 1 'x': values are 2x2, expected 3x2"));
    CHECK(mentions(issues, "area 2 'y': 1 non-finite entries"));

    try {
        validate_input(in);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.issues() == issues);
    }
}

TEST_CASE("validate_input shape and count checks", "[model]") {
    SECTION("one area") {
        auto in = small_valid_input();
        in.areas.pop_back();
        CHECK(mentions(find_input_issues(in), "n >= 2 required"));
    }
    SECTION("one index") {
        AssessmentInput in;
        in.indices = {{"a", "A", IndexOrientation::benefit(), 1.0}};
        in.periods = {"p1", "p2"};
        in.time_weights = {0.5, 0.5};
        in.areas = {{"x", Matrix{{1, 2}}}, {"y", Matrix{{2, 1}}}};
        CHECK(mentions(find_input_issues(in), "m >= 2 required"));
    }
    SECTION("area of wrong width names the area and expected T") {
        auto in = small_valid_input();
        in.areas[1].values = Matrix{{1, 2, 3}, {4, 5, 6}};
        CHECK(mentions(find_input_issues(in), "area 2 'y': values are 2x3, expected 2x2 (m indices x T=2 periods)"));
    }
    SECTION("interval bounds reversed and bounds on a non-interval index") {
        auto in = small_valid_input();
        in.indices[0].orientation = IndexOrientation::interval(5, 1);
        in.indices[1].orientation.interval_low = 2.0;
        auto issues = find_input_issues(in);
        CHECK(mentions(issues, "interval low bound exceeds high bound"));
        CHECK(mentions(issues, "only interval orientation may carry bounds"));
    }
    SECTION("time weights length") {
        auto in = small_valid_input();
        in.time_weights = {1.0};
        CHECK(mentions(find_input_issues(in), "time weights: 1 given for 2 periods"));
    }
    SECTION("non-positive weight") {
        auto in = small_valid_input();
        in.indices[0].weight = 0.0;
        in.indices[1].weight = 1.0;
        CHECK(mentions(find_input_issues(in), "outside (0, 1]"));
    }
}

TEST_CASE("validate_input is idempotent", "[model][property]") {
    testing::Rng rng(7);
    for (int k = 0; k < 50; ++k) {
        auto in = testing::random_input(rng, testing::random_shape(rng), true);
        auto once = validate_input(in);
        CHECK(once == in);
        CHECK(validate_input(once) == once);
    }
}

TEST_CASE("default schema matches the WUI index system", "[model]") {
    const auto schema = default_wui_schema();
    REQUIRE(schema.size() == 15);
    CHECK(schema.front().weight == 0.1458);
    CHECK(schema.front().name == "the Fuel Load in the WUI");
    CHECK(schema[7].name == "Precipitation Levels");
    CHECK(schema[7].weight == 0.0650);
    CHECK(schema.back().name == "Elevation Above Sea Level");
    double sum = 0.0;
    for (const auto& idx : schema) {
        sum += idx.weight;
        CHECK(idx.orientation == IndexOrientation::benefit());
    }
    CHECK(sum == Approx(0.9999).margin(1e-12));
}

TEST_CASE("default schema validates with any conforming area matrices", "[model][property]") {
    testing::Rng rng(11);
    for (int k = 0; k < 20; ++k) {
        AssessmentInput in;
        in.indices = default_wui_schema();
        in.periods = {"t1", "t2", "t3", "t4", "t5", "t6"};
        in.time_weights = {0.21, 0.15, 0.25, 0.12, 0.18, 0.09};
        const auto n = testing::uniform_size(rng, 2, 5);
        for (std::size_t i = 0; i < n; ++i) {
            in.areas.push_back({"a" + std::to_string(i), testing::random_matrix(rng, 15, 6, -100, 100)});
        }
        CHECK(find_input_issues(in).empty());
    }
}

TEST_CASE("resolve_weights renormalizes to exactly one", "[model]") {
    const auto in = case_study_input();
    const auto on = resolve_weights(in, true);
    CHECK(on.renormalized);
    CHECK(on.index_sum == Approx(0.9999).margin(1e-12));
    CHECK(std::accumulate(on.index.begin(), on.index.end(), 0.0) == Approx(1.0).margin(1e-15));
    CHECK(on.index[0] == Approx(0.1458 / 0.9999));

    const auto off = resolve_weights(in, false);
    CHECK_FALSE(off.renormalized);
    CHECK(off.index == in.index_weights());
    CHECK(off.time == in.time_weights);
}
