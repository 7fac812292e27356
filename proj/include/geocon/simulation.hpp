#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "geocon/covering.hpp"
#include "geocon/protocols.hpp"

namespace geocon {

using Json = nlohmann::ordered_json;

struct PointGenerator {
    std::uint64_t seed = 1;
    int n = 1;
    Rect region;
    double min_separation = 0.0;  // strict pairwise lower bound
};

struct PointSource {
    std::optional<PointSet> explicit_points;
    std::optional<PointGenerator> generator;
};

// Rejection sampling inside the region; deterministic under the seed.
// Throws if the region cannot host n points at the requested separation
// within the retry cap.
PointSet generate_points(const PointSource& src);

enum class PlacementKind { Random, GreedyMaxPoints, GreedyMaxLeaders, Scripted };

std::string placement_kind_name(PlacementKind k);
PlacementKind placement_kind_from_name(const std::string& name);

struct PlacementStrategy {
    PlacementKind kind = PlacementKind::Random;
    std::uint64_t seed = 0;
    std::vector<Shape> script;
};

// Emits exactly M placements of the fault template. Greedy strategies score
// candidate anchors (each target point held at each corner / boundary
// midpoint of the shape, rotations in pi/36 steps for oriented squares) by
// newly covered targets; `leader_points` supplies the targets for
// GreedyMaxLeaders.
std::vector<Shape> place_faults(const PointSet& ps, const FaultModel& fm, const PlacementStrategy& strat,
                                const std::vector<Point>* leader_points = nullptr);

enum class InputPattern { AllZero, AllOne, Random, Split, Explicit };

std::string input_pattern_name(InputPattern p);
InputPattern input_pattern_from_name(const std::string& name);

struct InputSpec {
    InputPattern pattern = InputPattern::AllOne;
    std::uint64_t seed = 0;
    std::map<ProcessId, int> explicit_bits;
};

std::vector<int> input_bits(const InputSpec& spec, int n);

enum class ProtocolKind { Basic, Generic };

struct CoverSpec {
    ShapeKind kind = ShapeKind::AxisSquare;
    double size = 1.0;
};

struct Scenario {
    PointSource points;
    FaultModel fault;
    ProtocolKind protocol = ProtocolKind::Basic;
    std::optional<CoverSpec> cover;  // required for Generic
    PlacementStrategy placement;
    Policy behavior_policy = Policy::Equivocate;
    std::uint64_t behavior_seed = 0;
    std::map<ProcessId, std::map<ScriptSlot, int>> behavior_scripts;
    InputSpec inputs;
    bool collect_trace = false;
};

struct Metrics {
    int rounds = 0;
    long messages_total = 0;
    std::vector<long> messages_per_round;
    int x = 0;  // |P_D| for the distance protocol, |A| for the cover protocol
    int f = 0;  // faulty process count
    Verdicts verdicts;
};

struct RunRecord {
    Scenario scenario;
    PointSet points;
    CoverageNumber coverage;
    std::optional<CoverSet> cover;
    std::vector<Shape> placements;
    ProtocolOutcome outcome;
    Metrics metrics;
};

// Full pipeline: points -> (cover) -> coverage diagnostic -> leaders ->
// placements -> faulty set -> protocol run -> record. An instance whose
// coverage number is provably <= 3M is refused up front (consensus is
// unsolvable there), as are unmet protocol preconditions.
RunRecord execute(const Scenario& sc);

// Per consensus round: messages <= X^2; broadcast round: <= X*N;
// total <= (t+1)*X^2 + X*N.
bool verify_message_bound(const RunRecord& rec);

Json scenario_to_json(const Scenario& sc);
Scenario scenario_from_json(const Json& j);
Json shape_to_json(const Shape& s);
Shape shape_from_json(const Json& j);
Json record_to_json(const RunRecord& rec);

std::string metrics_csv_header();
std::string metrics_csv_row(const RunRecord& rec);

// Sweep configs: {"schema":1, "scenario":{...}} runs one cell;
// {"schema":1, "sweep":{"base":{...}, "seeds":[lo,hi], "vary":{...}}}
// expands a grid. Per-cell seeds are derived from the cell seed for every
// component whose seed the base leaves unset.
std::vector<Scenario> expand_config(const Json& config);

}  // namespace geocon
