#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <set>

#include "geocon/protocols.hpp"
#include "geocon/simulation.hpp"
#include "geocon/verify.hpp"
#include "geocon/rng.hpp"

using namespace geocon;

namespace {

PointSet pts2(std::initializer_list<std::pair<double, double>> xs) {
    PointSet ps;
    for (const auto& [x, y] : xs) ps.points.push_back(point2(x, y));
    return ps;
}

PointSet grid(int count, double spacing) {
    PointSet ps;
    const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(count))));
    for (int i = 0; i < count; ++i) ps.points.push_back(point2(spacing * (i % cols), spacing * (i / cols)));
    return ps;
}

}  // namespace

TEST_CASE("fault model geometry") {
    CHECK(FaultModel{FaultShape::Square, 2.0, 1, Alignment::Any}.diameter() ==
          doctest::Approx(2.0 * std::sqrt(2.0)));
    CHECK(FaultModel{FaultShape::Circle, 2.0, 1, Alignment::Any}.diameter() == 2.0);
    CHECK(FaultModel{FaultShape::Cube, 1.0, 1, Alignment::Axis}.diameter() == doctest::Approx(std::sqrt(3.0)));
    CHECK(FaultModel{FaultShape::Square, 1.0, 1, Alignment::Any}.placement_kind() ==
          ShapeKind::OrientedSquare);
    CHECK(FaultModel{FaultShape::Square, 1.0, 1, Alignment::Axis}.placement_kind() == ShapeKind::AxisSquare);
    CHECK_THROWS_AS((FaultModel{FaultShape::Square, 1.0, 0, Alignment::Any}.validate()),
                    std::invalid_argument);
}

TEST_CASE("select_leaders_basic greedy admission") {
    const double d = 1.0;
    const LeaderSet all = select_leaders_basic(pts2({{0, 0}, {2, 0}, {4, 0}}), d);
    CHECK(all.leaders == std::vector<ProcessId>{0, 1, 2});

    // cluster within D/4: only the lexicographically smallest survives
    const LeaderSet one = select_leaders_basic(pts2({{0.1, 0.1}, {0.2, 0.05}, {0.0, 0.2}}), d);
    CHECK(one.leaders == std::vector<ProcessId>{2});

    // purity: recomputation is identical
    Rng rng(11);
    PointSet ps;
    for (int i = 0; i < 25; ++i) {
        const Point p = point2(rng.uniform(0, 10), rng.uniform(0, 10));
        ps.points.push_back(p);
    }
    const LeaderSet a = select_leaders_basic(ps, 1.5);
    const LeaderSet b = select_leaders_basic(ps, 1.5);
    CHECK(a.leaders == b.leaders);

    // maximality: every process is within D of some leader
    for (const Point& p : ps.points) {
        bool near = false;
        for (ProcessId l : a.leaders) near = near || distance(p, ps.points[l]) <= 1.5;
        CHECK(near);
    }
}

TEST_CASE("distance-D leaders are never covered pairwise by one fault area") {
    Rng rng(17);
    const FaultModel fm{FaultShape::Square, 1.0, 1, Alignment::Any};
    const double d = fm.diameter();
    for (int trial = 0; trial < 40; ++trial) {
        PointSet ps;
        const int n = 5 + rng.below(20);
        for (int i = 0; i < n; ++i) ps.points.push_back(point2(rng.uniform(0, 8), rng.uniform(0, 8)));
        const LeaderSet ls = select_leaders_basic(ps, d);
        for (int placement = 0; placement < 25; ++placement) {
            const Shape f = oriented_square(point2(rng.uniform(-1, 8), rng.uniform(-1, 8)), fm.size,
                                            rng.uniform(0.0, 1.5));
            int covered = 0;
            for (ProcessId l : ls.leaders) covered += contains(f, ps.points[l]) ? 1 : 0;
            CHECK(covered <= 1);
        }
    }
}

TEST_CASE("select_leaders_generic picks min-y then min-x") {
    PointSet ps = pts2({{1, 5}, {2, 3}, {0, 3}});
    CoverSet cs;
    cs.kind = ShapeKind::AxisSquare;
    cs.size = 3.0;
    cs.areas = {axis_square(point2(0, 3), 3.0)};
    const LeaderSet ls = select_leaders_generic(cs, ps);
    REQUIRE(ls.leaders.size() == 1);
    CHECK(ls.leaders[0] == 2);  // (0,3)

    PointSet two = pts2({{0, 0}, {10, 0}});
    CoverSet cs2;
    cs2.kind = ShapeKind::AxisSquare;
    cs2.size = 1.0;
    cs2.areas = {axis_square(point2(0, 0), 1.0), axis_square(point2(10, 0), 1.0)};
    const LeaderSet two_leaders = select_leaders_generic(cs2, two);
    CHECK(two_leaders.leaders == std::vector<ProcessId>{0, 1});
    CHECK(two_leaders.area_of == std::vector<int>{0, 1});

    // a cover that misses a point is rejected
    PointSet three = pts2({{0, 0}, {10, 0}, {20, 20}});
    CHECK_THROWS_AS(select_leaders_generic(cs2, three), std::invalid_argument);
}

TEST_CASE("check_basic_precondition") {
    const FaultModel m1{FaultShape::Square, 1.0, 1, Alignment::Any};
    const double d = m1.diameter();

    const SpreadReport ok = check_basic_precondition(grid(12, 2.0 * d), m1);
    CHECK(ok.ok);
    CHECK(ok.required == 12);
    CHECK(ok.witness_size >= 12);

    const SpreadReport small = check_basic_precondition(grid(11, 2.0 * d), m1);
    CHECK_FALSE(small.ok);
    CHECK(small.exact);  // N <= 20 decides exactly
    CHECK(small.witness_size == 11);

    const FaultModel m2{FaultShape::Square, 1.0, 2, Alignment::Any};
    const SpreadReport big = check_basic_precondition(grid(25, 2.0 * d), m2);
    CHECK(big.ok);
    CHECK(big.required == 21);
}

TEST_CASE("overlap_key_for and the tolerance formulas") {
    const FaultModel any_sq{FaultShape::Square, 1.0, 1, Alignment::Any};
    const FaultModel axis_sq{FaultShape::Square, 1.0, 1, Alignment::Axis};
    CHECK(overlap_key_for(any_sq, ShapeKind::AxisSquare, 1.0) == OverlapKey::SquareAnyOverSquares);
    CHECK(overlap_key_for(axis_sq, ShapeKind::AxisSquare, 1.0) == OverlapKey::SquareAxisOverSquares);
    const FaultModel small_sq{FaultShape::Square, 1.0 / std::sqrt(2.0), 1, Alignment::Any};
    CHECK(overlap_key_for(small_sq, ShapeKind::AxisSquare, 1.0) ==
          OverlapKey::SmallSquareOrCircleOverSquares);
    const FaultModel circ{FaultShape::Circle, 1.0, 1, Alignment::Any};
    CHECK(overlap_key_for(circ, ShapeKind::Circle, 1.0) == OverlapKey::CircleOverCircles);
    const FaultModel big_circ{FaultShape::Circle, std::sqrt(2.0), 1, Alignment::Any};
    CHECK(overlap_key_for(big_circ, ShapeKind::AxisSquare, 1.0) == OverlapKey::BigCircleOverSquares);
    CHECK(overlap_key_for(big_circ, ShapeKind::Circle, 1.0) == OverlapKey::BigCircleOverCircles);
    const FaultModel sph{FaultShape::Sphere, 1.0, 1, Alignment::Any};
    CHECK(overlap_key_for(sph, ShapeKind::Sphere, 1.0) == OverlapKey::SphereOverSpheres);
    // a same-size circular fault over square covers has no table row
    CHECK_THROWS_AS(overlap_key_for(circ, ShapeKind::AxisSquare, 1.0), std::invalid_argument);

    CHECK(tolerance_bound(any_sq, OverlapKey::SquareAnyOverSquares) == 15);
    const FaultModel circ_m2{FaultShape::Circle, 1.0, 2, Alignment::Any};
    CHECK(tolerance_bound(circ_m2, OverlapKey::CircleOverCircles) == 114);
    const FaultModel cube_axis{FaultShape::Cube, 1.0, 1, Alignment::Axis};
    CHECK(tolerance_bound(cube_axis, OverlapKey::CubeAxisOverCubes) == 17);
}

TEST_CASE("check_generic_precondition thresholds") {
    const auto fabricate = [](int k) {
        CoverSet cs;
        cs.kind = ShapeKind::AxisSquare;
        cs.size = 1.0;
        for (int i = 0; i < k; ++i) cs.areas.push_back(axis_square(point2(2.0 * i, 0), 1.0));
        return cs;
    };
    const FaultModel any_sq{FaultShape::Square, 1.0, 1, Alignment::Any};
    CHECK(check_generic_precondition(fabricate(22), any_sq).ok);
    CHECK_FALSE(check_generic_precondition(fabricate(21), any_sq).ok);
    CHECK(check_generic_precondition(fabricate(21), any_sq).required == 22);

    const FaultModel axis_sq{FaultShape::Square, 1.0, 1, Alignment::Axis};
    CHECK(check_generic_precondition(fabricate(13), axis_sq).ok);
    CHECK_FALSE(check_generic_precondition(fabricate(12), axis_sq).ok);

    CoverSet circles;
    circles.kind = ShapeKind::Circle;
    circles.size = 1.0;
    for (int i = 0; i < 85; ++i) circles.areas.push_back(circle(point2(2.0 * i, 0), 1.0));
    const FaultModel circ{FaultShape::Circle, 1.0, 1, Alignment::Any};
    const CoverReport rep = check_generic_precondition(circles, circ);
    CHECK(rep.ok);
    CHECK(rep.required == 85);
    CHECK(rep.n_f == 28);
}

TEST_CASE("compute_verdicts") {
    std::map<ProcessId, int> decisions{{0, 1}, {1, 1}, {2, 1}};
    const std::vector<int> inputs{1, 1, 1};
    const std::vector<ProcessId> correct{0, 1, 2};
    Verdicts v = compute_verdicts(decisions, inputs, correct);
    CHECK(v.all());

    decisions[1] = 0;  // forced disagreement
    v = compute_verdicts(decisions, inputs, correct);
    CHECK_FALSE(v.agreement);
    CHECK_FALSE(v.validity);
    CHECK(v.termination);

    decisions.erase(1);  // undecided process
    v = compute_verdicts(decisions, inputs, correct);
    CHECK_FALSE(v.termination);
    CHECK(v.agreement);

    // mixed inputs: validity holds vacuously
    v = compute_verdicts(std::map<ProcessId, int>{{0, 0}, {1, 0}, {2, 0}}, {1, 0, 1}, correct);
    CHECK(v.validity);
}

TEST_CASE("run_basic end to end") {
    const FaultModel fm{FaultShape::Square, 1.0, 1, Alignment::Any};
    const double d = fm.diameter();
    const PointSet ps = grid(12, 2.0 * d);
    const std::vector<int> ones(12, 1);
    BehaviorAssignment behavior;
    behavior.policy = Policy::Equivocate;

    // placement far away covers nothing
    const std::vector<Shape> misses{oriented_square(point2(100, 100), 1.0, 0.0)};
    const ProtocolOutcome out = run_basic(ps, fm, misses, ones, behavior);
    REQUIRE_FALSE(out.refused);
    CHECK(out.rounds_used == 3);  // M + 2
    CHECK(out.faulty.empty());
    CHECK(out.decisions.size() == 12);
    for (const auto& [id, bit] : out.decisions) CHECK(bit == 1);
    CHECK(out.verdicts.all());

    // cover one leader; the rest still agree
    std::vector<int> mixed(12, 1);
    mixed[3] = 0;
    mixed[5] = 0;
    const std::vector<Shape> hit{oriented_square(ps.points[0], 1.0, 0.0)};
    const ProtocolOutcome out2 = run_basic(ps, fm, hit, mixed, behavior);
    REQUIRE_FALSE(out2.refused);
    CHECK(out2.faulty == std::vector<ProcessId>{0});
    CHECK(out2.verdicts.agreement);
    CHECK(out2.verdicts.termination);
    CHECK(out2.rounds_used == 3);

    // spread precondition unmet: refusal, not an exception
    const ProtocolOutcome refused = run_basic(grid(11, 2.0 * d), fm, misses, std::vector<int>(11, 1),
                                              behavior);
    CHECK(refused.refused);
    CHECK(refused.decisions.empty());
}

TEST_CASE("run_generic end to end") {
    const FaultModel fm{FaultShape::Square, 1.0, 1, Alignment::Axis};
    const PointSet ps = grid(14, 1.3);  // one square and one leader per point
    const CoverSet cover = gsquare(ps, 1.0);
    REQUIRE(cover.areas.size() == 14);
    const std::vector<int> zeros(14, 0);
    BehaviorAssignment behavior;
    behavior.policy = Policy::Equivocate;

    const std::vector<Shape> misses{axis_square(point2(100, 100), 1.0)};
    const ProtocolOutcome out = run_generic(ps, fm, cover, misses, zeros, behavior);
    REQUIRE_FALSE(out.refused);
    CHECK(out.psl_t == 4);
    CHECK(out.rounds_used == 6);  // n(F) M + 2
    for (const auto& [id, bit] : out.decisions) CHECK(bit == 0);
    CHECK(out.verdicts.all());

    // faulty leader under one placement
    const std::vector<Shape> hit{axis_square(ps.points[0], 1.0)};
    std::vector<int> mixed(14, 0);
    mixed[1] = 1;
    mixed[7] = 1;
    const ProtocolOutcome out2 = run_generic(ps, fm, cover, hit, mixed, behavior);
    REQUIRE_FALSE(out2.refused);
    CHECK(out2.verdicts.agreement);
    CHECK(out2.verdicts.termination);

    // cover below (3 n(F) + 1) M: refusal
    const PointSet small = grid(12, 1.3);
    const ProtocolOutcome refused =
        run_generic(small, fm, gsquare(small, 1.0), misses, std::vector<int>(12, 0), behavior);
    CHECK(refused.refused);
}

TEST_CASE("run_basic survives every scripted adversary at minimal leader count") {
    // decoy instance: exactly 3M+1 = 4 leaders; one is covered and scripted
    const geocon::Scenario sc = geocon::verify::decoy_basic_scenario(1, 5, Policy::Scripted,
                                                                     InputPattern::Split);
    const PointSet ps = *sc.points.explicit_points;
    const FaultModel fm = sc.fault;
    const LeaderSet leaders = select_leaders_basic(ps, fm.diameter());
    REQUIRE(leaders.leaders.size() == 4);
    const ProcessId victim = leaders.leaders[0];
    const std::vector<Shape> placement{oriented_square(ps.points[victim], fm.size, 0.0)};

    std::vector<int> inputs(ps.size(), 0);
    for (int i = 0; i < ps.size(); i += 3) inputs[i] = 1;  // mixed: validity is vacuous

    // every gathering-round message assignment x three broadcast patterns
    std::vector<ScriptSlot> slots;
    for (ProcessId r : leaders.leaders)
        if (r != victim) slots.push_back(ScriptSlot{1, r, {}});
    for (ProcessId r : leaders.leaders)
        for (ProcessId q : leaders.leaders)
            if (r != victim && q != victim) slots.push_back(ScriptSlot{2, r, {q}});
    REQUIRE(slots.size() == 12);

    int runs = 0;
    for (int script = 0; script < (1 << 12); ++script) {
        for (int broadcast = 0; broadcast < 3; ++broadcast) {
            BehaviorAssignment behavior;
            behavior.policy = Policy::Scripted;
            auto& map = behavior.scripts[victim];
            for (std::size_t s = 0; s < slots.size(); ++s) map[slots[s]] = (script >> s) & 1;
            for (ProcessId r = 0; r < ps.size(); ++r) {
                if (r == victim) continue;
                const int bit = broadcast == 0 ? 0 : (broadcast == 1 ? 1 : r % 2);
                map[ScriptSlot{3, r, {}}] = bit;
            }
            PslOptions opts;
            opts.want_trace = false;
            const ProtocolOutcome out = run_basic(ps, fm, placement, inputs, behavior, opts);
            REQUIRE_FALSE(out.refused);
            ++runs;
            CHECK(out.verdicts.agreement);
            CHECK(out.verdicts.termination);
        }
    }
    CHECK(runs == 3 * (1 << 12));
}

TEST_CASE("run_basic in three dimensions") {
    const FaultModel fm{FaultShape::Cube, 1.0, 1, Alignment::Axis};
    const double spacing = 2.0 * fm.diameter();
    PointSet ps;
    for (int i = 0; i < 12; ++i)
        ps.points.push_back(point3(spacing * (i % 3), spacing * ((i / 3) % 2), spacing * (i / 6)));
    BehaviorAssignment behavior;
    behavior.policy = Policy::Random;
    behavior.seed = 3;
    const std::vector<Shape> hit{axis_cube(ps.points[2], 1.0)};
    const ProtocolOutcome out = run_basic(ps, fm, hit, std::vector<int>(12, 1), behavior);
    REQUIRE_FALSE(out.refused);
    CHECK(out.faulty == std::vector<ProcessId>{2});
    CHECK(out.verdicts.all());
    CHECK(out.rounds_used == 3);
}

TEST_CASE("run_generic in three dimensions uses the collapsed gathering") {
    const FaultModel fm{FaultShape::Cube, 1.0, 1, Alignment::Axis};  // n(F) = 8, needs 25 cubes
    PointSet ps;
    for (int i = 0; i < 26; ++i)
        ps.points.push_back(point3(1.4 * (i % 3), 1.4 * ((i / 3) % 3), 1.4 * (i / 9)));
    const CoverSet cover = gcube(ps, 1.0);
    REQUIRE(cover.areas.size() == 26);
    BehaviorAssignment behavior;
    behavior.policy = Policy::Equivocate;
    const std::vector<Shape> hit{axis_cube(ps.points[0], 1.0)};
    const ProtocolOutcome out = run_generic(ps, fm, cover, hit, std::vector<int>(26, 1), behavior);
    REQUIRE_FALSE(out.refused);
    CHECK(out.psl_t == 8);
    CHECK(out.collapsed);  // 26 participants over 9 rounds exceed the tree budget
    CHECK(out.rounds_used == 10);
    CHECK(out.verdicts.all());
}

TEST_CASE("run_basic message accounting") {
    const FaultModel fm{FaultShape::Square, 1.0, 1, Alignment::Any};
    const PointSet ps = grid(12, 2.0 * fm.diameter());
    BehaviorAssignment behavior;
    behavior.policy = Policy::Equivocate;
    const ProtocolOutcome out = run_basic(ps, fm, {oriented_square(ps.points[0], 1.0, 0.0)},
                                          std::vector<int>(12, 1), behavior);
    REQUIRE_FALSE(out.refused);
    REQUIRE(out.messages_per_round.size() == 3);
    const long x = static_cast<long>(out.leaders.leaders.size());
    CHECK(out.messages_per_round[0] <= x * x);
    CHECK(out.messages_per_round[1] <= x * x);
    CHECK(out.messages_per_round[2] <= x * 12);
    long total = 0;
    for (long m : out.messages_per_round) total += m;
    CHECK(total == out.messages_total);
}
