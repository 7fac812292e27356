#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include <cmath>
#include <set>

#include "geocon/rng.hpp"
#include "geocon/simulation.hpp"
#include "geocon/verify.hpp"

using namespace geocon;

namespace {

PointSource box_generator(std::uint64_t seed, int n, double side, double sep) {
    PointGenerator g;
    g.seed = seed;
    g.n = n;
    g.region = Rect{point2(0, 0), point2(side, side)};
    g.min_separation = sep;
    PointSource src;
    src.generator = g;
    return src;
}

}  // namespace

TEST_CASE("generate_points") {
    const PointSet a = generate_points(box_generator(7, 12, 30.0, 2.0));
    const PointSet b = generate_points(box_generator(7, 12, 30.0, 2.0));
    REQUIRE(a.size() == 12);
    for (int i = 0; i < 12; ++i) CHECK(a.points[i] == b.points[i]);
    for (int i = 0; i < 12; ++i)
        for (int j = i + 1; j < 12; ++j) CHECK(distance(a.points[i], a.points[j]) > 2.0);

    CHECK(generate_points(box_generator(1, 1, 5.0, 0.0)).size() == 1);
    CHECK_THROWS_AS(generate_points(box_generator(1, 50, 1.0, 2.0)), std::runtime_error);

    PointSource explicit_src;
    PointSet ps;
    ps.points = {point2(1, 2)};
    explicit_src.explicit_points = ps;
    CHECK(generate_points(explicit_src).size() == 1);
}

TEST_CASE("input patterns") {
    InputSpec spec;
    spec.pattern = InputPattern::AllZero;
    CHECK(input_bits(spec, 3) == std::vector<int>{0, 0, 0});
    spec.pattern = InputPattern::AllOne;
    CHECK(input_bits(spec, 3) == std::vector<int>{1, 1, 1});
    spec.pattern = InputPattern::Split;
    CHECK(input_bits(spec, 4) == std::vector<int>{0, 0, 1, 1});
    spec.pattern = InputPattern::Random;
    spec.seed = 5;
    CHECK(input_bits(spec, 8) == input_bits(spec, 8));
    spec.pattern = InputPattern::Explicit;
    spec.explicit_bits = {{0, 1}, {1, 0}};
    CHECK(input_bits(spec, 2) == std::vector<int>{1, 0});
    CHECK_THROWS_AS(input_bits(spec, 3), std::invalid_argument);
}

TEST_CASE("place_faults strategies") {
    PointSet ps;
    // a tight cluster of three plus nine scattered singletons
    ps.points = {point2(0, 0), point2(0.5, 0.2), point2(0.2, 0.6)};
    for (int i = 0; i < 9; ++i) ps.points.push_back(point2(5.0 + 3.0 * i, 7.0));
    const FaultModel fm{FaultShape::Square, 1.0, 1, Alignment::Axis};

    const PlacementStrategy greedy{PlacementKind::GreedyMaxPoints, 0, {}};
    const auto best = place_faults(ps, fm, greedy);
    REQUIRE(best.size() == 1);
    const auto covered = covered_indices(best[0], ps);
    CHECK(covered == std::vector<int>{0, 1, 2});

    // greedy never loses to the best of 100 random placements
    int random_best = 0;
    for (int s = 0; s < 100; ++s) {
        const PlacementStrategy rnd{PlacementKind::Random, static_cast<std::uint64_t>(s), {}};
        const auto shapes = place_faults(ps, fm, rnd);
        random_best = std::max(random_best, static_cast<int>(covered_indices(shapes[0], ps).size()));
    }
    CHECK(static_cast<int>(covered.size()) >= random_best);

    const PlacementStrategy rnd{PlacementKind::Random, 9, {}};
    const auto r1 = place_faults(ps, fm, rnd);
    const auto r2 = place_faults(ps, fm, rnd);
    CHECK(r1[0].anchor == r2[0].anchor);

    const Shape script = axis_square(point2(1, 1), 1.0);
    const PlacementStrategy scripted{PlacementKind::Scripted, 0, {script}};
    CHECK(place_faults(ps, fm, scripted)[0].anchor == script.anchor);

    CHECK_THROWS_AS(place_faults(ps, fm, PlacementStrategy{PlacementKind::GreedyMaxLeaders, 0, {}}),
                    std::invalid_argument);
}

TEST_CASE("execute composes the pipeline") {
    // same setup as the run_basic example, expressed as a scenario
    Scenario sc;
    const FaultModel fm{FaultShape::Square, 1.0, 1, Alignment::Any};
    sc.fault = fm;
    PointSet ps;
    const double spacing = 2.0 * fm.diameter();
    for (int i = 0; i < 12; ++i) ps.points.push_back(point2(spacing * (i % 4), spacing * (i / 4)));
    sc.points.explicit_points = ps;
    sc.placement = PlacementStrategy{PlacementKind::Scripted, 0, {oriented_square(point2(100, 100), 1.0, 0.0)}};
    sc.behavior_policy = Policy::Equivocate;
    sc.inputs.pattern = InputPattern::AllOne;

    const RunRecord rec = execute(sc);
    REQUIRE_FALSE(rec.outcome.refused);
    CHECK(rec.metrics.rounds == 3);
    CHECK(rec.metrics.f == 0);
    CHECK(rec.metrics.x == 12);
    CHECK(rec.metrics.verdicts.all());
    for (const auto& [id, bit] : rec.outcome.decisions) CHECK(bit == 1);
    CHECK(verify_message_bound(rec));

    // identical scenario, identical bytes
    const std::string dump1 = record_to_json(execute(sc)).dump();
    const std::string dump2 = record_to_json(execute(sc)).dump();
    CHECK(dump1 == dump2);
}

TEST_CASE("faulty set is exactly the union of covered processes") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
        const RunRecord rec = execute(
            verify::clustered_generic_scenario(Alignment::Any, 1, seed, Policy::Random, InputPattern::Split));
        REQUIRE_FALSE(rec.outcome.refused);
        std::set<ProcessId> expected;
        for (const Shape& placement : rec.placements)
            for (int i : covered_indices(placement, rec.points)) expected.insert(i);
        const std::set<ProcessId> actual(rec.outcome.faulty.begin(), rec.outcome.faulty.end());
        CHECK(actual == expected);
    }
}

TEST_CASE("execute refuses low coverage instances") {
    const RunRecord rec = execute(verify::low_coverage_scenario(2, 0));
    CHECK(rec.outcome.refused);
    CHECK(rec.coverage.value == 2);
    CHECK(rec.coverage.exact);
    CHECK(rec.outcome.refusal_reason.find("coverage") != std::string::npos);
}

TEST_CASE("verify_message_bound rejects inflated traces") {
    Scenario sc = verify::spread_basic_scenario(1, 3, Policy::Equivocate, InputPattern::AllOne);
    RunRecord rec = execute(sc);
    REQUIRE_FALSE(rec.outcome.refused);
    CHECK(verify_message_bound(rec));
    RunRecord inflated = rec;
    const long x = inflated.metrics.x;
    inflated.metrics.messages_per_round[0] = x * x + 1;
    inflated.metrics.messages_total += x * x + 1 - rec.metrics.messages_per_round[0];
    CHECK_FALSE(verify_message_bound(inflated));
}

TEST_CASE("scenario json round trip") {
    Scenario sc = verify::clustered_generic_scenario(Alignment::Axis, 1, 11, Policy::Scripted,
                                                     InputPattern::Split);
    const Json j1 = scenario_to_json(sc);
    const Scenario back = scenario_from_json(j1);
    const Json j2 = scenario_to_json(back);
    CHECK(j1.dump() == j2.dump());

    Scenario gen = verify::spread_basic_scenario(2, 4, Policy::Random, InputPattern::Random);
    const Json g1 = scenario_to_json(gen);
    CHECK(scenario_to_json(scenario_from_json(g1)).dump() == g1.dump());
}

TEST_CASE("shape json round trip") {
    const Shape s = oriented_square(point2(0.25, -1.5), 2.0, 0.3);
    const Shape back = shape_from_json(shape_to_json(s));
    CHECK(back.kind == s.kind);
    CHECK(back.size == s.size);
    CHECK(back.anchor == s.anchor);
    CHECK(back.rotation == s.rotation);
}

TEST_CASE("expand_config") {
    Json config;
    config["schema"] = 1;
    Json base = scenario_to_json(verify::spread_basic_scenario(1, 0, Policy::Equivocate, InputPattern::AllOne));
    config["sweep"] = Json{{"base", base}, {"seeds", Json::array({0, 4})},
                           {"vary", Json{{"m", Json::array({1, 2})}}}};
    const auto cells = expand_config(config);
    CHECK(cells.size() == 10);  // 2 values of m x 5 seeds
    CHECK(cells[0].fault.count == 1);
    CHECK(cells[5].fault.count == 2);
    // cell seeds derive deterministically
    const auto again = expand_config(config);
    for (std::size_t i = 0; i < cells.size(); ++i)
        CHECK(scenario_to_json(cells[i]).dump() == scenario_to_json(again[i]).dump());

    Json single;
    single["schema"] = 1;
    single["scenario"] = base;
    CHECK(expand_config(single).size() == 1);

    Json bad;
    bad["schema"] = 2;
    CHECK_THROWS_AS(expand_config(bad), std::invalid_argument);
}

TEST_CASE("metrics csv") {
    const RunRecord rec = execute(verify::spread_basic_scenario(1, 8, Policy::Equivocate,
                                                                InputPattern::AllOne));
    const std::string row = metrics_csv_row(rec);
    const std::string header = metrics_csv_header();
    CHECK(row.substr(0, 6) == "basic,");
    CHECK(std::count(row.begin(), row.end(), ',') == std::count(header.begin(), header.end(), ','));
}
