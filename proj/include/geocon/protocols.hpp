#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "geocon/consensus.hpp"
#include "geocon/covering.hpp"
#include "geocon/geometry.hpp"

namespace geocon {

enum class FaultShape { Square, Circle, Cube, Sphere };
enum class Alignment { Axis, Any };

std::string fault_shape_name(FaultShape s);
FaultShape fault_shape_from_name(const std::string& name);
std::string alignment_name(Alignment a);
Alignment alignment_from_name(const std::string& name);

// The adversary's template: M identical areas of this shape and size. The
// locations (and, for `Any` squares, orientations) are the adversary's.
struct FaultModel {
    FaultShape shape = FaultShape::Square;
    double size = 1.0;
    int count = 1;  // M
    Alignment alignment = Alignment::Any;

    double diameter() const;          // D
    ShapeKind placement_kind() const;  // concrete shape kind for placements
    int dim() const;
    void validate() const;
};

struct LeaderSet {
    enum class Origin { DistanceD, PerCoverArea };
    Origin origin = Origin::DistanceD;
    // One entry per leader slot. DistanceD: admission order, all distinct.
    // PerCoverArea: one slot per cover area (area_of[i] names the area); a
    // process covered by several areas may hold several slots.
    std::vector<ProcessId> leaders;
    std::vector<int> area_of;

    std::vector<ProcessId> participants() const;  // distinct, sorted
};

// Greedy maximal distance-D independent set: scan in ascending (x, y[, z])
// order and admit a process iff it is strictly farther than D from every
// leader admitted so far. Every process computes the same set.
LeaderSet select_leaders_basic(const PointSet& ps, double distance_d);

// One leader per cover area: the covered process with minimum y, ties by
// minimum x (then z in 3-D). Throws if the cover misses a point.
LeaderSet select_leaders_generic(const CoverSet& cs, const PointSet& ps);

struct SpreadReport {
    bool ok = false;
    int required = 0;       // 9M + 3
    int witness_size = 0;   // best pairwise->D subset found
    bool exact = false;     // witness_size is the true maximum
    std::vector<ProcessId> witness;
};

// Does a subset of >= 9M+3 processes with pairwise distance > D exist?
// Two greedy witnesses give a lower bound; N <= 20 instances are decided
// exactly by branch-and-bound. A `false` with exact=false is conservative.
SpreadReport check_basic_precondition(const PointSet& ps, const FaultModel& fm);

struct CoverReport {
    bool ok = false;
    OverlapKey key = OverlapKey::SquareAnyOverSquares;
    int n_f = 0;
    int required = 0;  // (3 n(F) + 1) M
    int actual = 0;    // |areas|
};

// |areas| >= (3 n(F) + 1) M for the fault/cover combination's overlap bound.
CoverReport check_generic_precondition(const CoverSet& cs, const FaultModel& fm);

// Maps a fault template and cover shape/size onto the overlap table; throws
// std::invalid_argument for combinations without a proven bound.
OverlapKey overlap_key_for(const FaultModel& fm, ShapeKind cover_kind, double cover_size);

// The fault count subtracted from N in the tolerance statements:
// (2 n(F) + 1) * M.
int tolerance_bound(const FaultModel& fm, OverlapKey key);

struct Verdicts {
    bool agreement = false;
    bool validity = false;
    bool termination = false;
    bool all() const { return agreement && validity && termination; }
};

// Verdicts quantify over correct processes only: termination = all decided,
// agreement = no two decided differently, validity = uniform correct input
// forces that decision (vacuously true otherwise).
Verdicts compute_verdicts(const std::map<ProcessId, int>& decisions, const std::vector<int>& inputs,
                          const std::vector<ProcessId>& correct);

struct ProtocolOutcome {
    bool refused = false;
    std::string refusal_reason;

    std::map<ProcessId, int> decisions;  // correct processes only
    Verdicts verdicts;
    int rounds_used = 0;  // consensus rounds + final broadcast
    int psl_t = 0;
    LeaderSet leaders;
    std::vector<ProcessId> faulty;
    std::vector<long> messages_per_round;
    long messages_total = 0;
    std::vector<RoundTrace> trace;
    bool trace_complete = false;
    bool collapsed = false;
};

// One behavior policy shared by every faulty process; Scripted carries
// per-sender message scripts.
struct BehaviorAssignment {
    Policy policy = Policy::Equivocate;
    std::uint64_t seed = 0;
    std::map<ProcessId, std::map<ScriptSlot, int>> scripts;

    Behavior for_sender(ProcessId id) const;
};

// Distance-based geoconsensus: leaders pairwise > D run consensus with
// t = M (no fault area covers two leaders), broadcast, and every correct
// non-leader adopts the value received identically from >= 2M+1 leaders.
// Completes in M+2 rounds. Unmet preconditions yield a refusal, not a run.
ProtocolOutcome run_basic(const PointSet& ps, const FaultModel& fm, const std::vector<Shape>& placements,
                          const std::vector<int>& inputs, const BehaviorAssignment& behavior,
                          const PslOptions& psl_opts = {});

// Cover-based geoconsensus: one leader slot per cover area, consensus with
// t = n(F)*M, adoption threshold n(F)*M + 1 identical slot values (up to
// n(F)*M slots can be faulty, and at least 2 n(F) M + 1 correct slots carry
// the common value when the cover precondition holds).
ProtocolOutcome run_generic(const PointSet& ps, const FaultModel& fm, const CoverSet& cover,
                            const std::vector<Shape>& placements, const std::vector<int>& inputs,
                            const BehaviorAssignment& behavior, const PslOptions& psl_opts = {});

}  // namespace geocon
