#include "geocon/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "geocon/rng.hpp"

namespace geocon {

std::string fault_shape_name(FaultShape s) {
    switch (s) {
        case FaultShape::Square: return "square";
        case FaultShape::Circle: return "circle";
        case FaultShape::Cube: return "cube";
        case FaultShape::Sphere: return "sphere";
    }
    throw std::logic_error("bad fault shape");
}

FaultShape fault_shape_from_name(const std::string& name) {
    if (name == "square") return FaultShape::Square;
    if (name == "circle") return FaultShape::Circle;
    if (name == "cube") return FaultShape::Cube;
    if (name == "sphere") return FaultShape::Sphere;
    throw std::invalid_argument("unknown fault shape: " + name);
}

std::string alignment_name(Alignment a) { return a == Alignment::Axis ? "axis" : "any"; }

Alignment alignment_from_name(const std::string& name) {
    if (name == "axis") return Alignment::Axis;
    if (name == "any") return Alignment::Any;
    throw std::invalid_argument("unknown alignment: " + name);
}

double FaultModel::diameter() const {
    switch (shape) {
        case FaultShape::Square: return std::sqrt(2.0) * size;
        case FaultShape::Circle: return size;
        case FaultShape::Cube: return std::sqrt(3.0) * size;
        case FaultShape::Sphere: return size;
    }
    throw std::logic_error("bad fault shape");
}

ShapeKind FaultModel::placement_kind() const {
    switch (shape) {
        case FaultShape::Square:
            return alignment == Alignment::Any ? ShapeKind::OrientedSquare : ShapeKind::AxisSquare;
        case FaultShape::Circle: return ShapeKind::Circle;
        case FaultShape::Cube: return ShapeKind::AxisCube;  // no rotated-box kind
        case FaultShape::Sphere: return ShapeKind::Sphere;
    }
    throw std::logic_error("bad fault shape");
}

int FaultModel::dim() const { return shape == FaultShape::Square || shape == FaultShape::Circle ? 2 : 3; }

void FaultModel::validate() const {
    if (count < 1) throw std::invalid_argument("fault model: M >= 1 required");
    if (!(size > 0.0)) throw std::invalid_argument("fault model: size must be > 0");
}

std::vector<ProcessId> LeaderSet::participants() const {
    std::vector<ProcessId> ids = leaders;
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

namespace {

std::vector<int> lex_order(const PointSet& ps) {
    std::vector<int> idx(ps.points.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        const Point& pa = ps.points[a];
        const Point& pb = ps.points[b];
        if (pa.x() != pb.x()) return pa.x() < pb.x();
        if (pa.y() != pb.y()) return pa.y() < pb.y();
        return pa.z() < pb.z();
    });
    return idx;
}

}  // namespace

LeaderSet select_leaders_basic(const PointSet& ps, double distance_d) {
    ps.validate();
    if (!(distance_d > 0.0)) throw std::invalid_argument("select_leaders_basic: D must be > 0");
    LeaderSet ls;
    ls.origin = LeaderSet::Origin::DistanceD;
    for (int i : lex_order(ps)) {
        bool clear = true;
        for (ProcessId l : ls.leaders)
            if (distance(ps.points[i], ps.points[l]) <= distance_d) {
                clear = false;
                break;
            }
        if (clear) ls.leaders.push_back(i);
    }
    return ls;
}

LeaderSet select_leaders_generic(const CoverSet& cs, const PointSet& ps) {
    ps.validate();
    LeaderSet ls;
    ls.origin = LeaderSet::Origin::PerCoverArea;
    std::vector<char> covered(ps.points.size(), 0);
    for (std::size_t a = 0; a < cs.areas.size(); ++a) {
        int best = -1;
        for (int i = 0; i < ps.size(); ++i) {
            if (!contains(cs.areas[a], ps.points[i])) continue;
            covered[i] = 1;
            if (best < 0) {
                best = i;
                continue;
            }
            const Point& p = ps.points[i];
            const Point& q = ps.points[best];
            if (p.y() != q.y() ? p.y() < q.y() : (p.x() != q.x() ? p.x() < q.x() : p.z() < q.z())) best = i;
        }
        if (best < 0) throw std::invalid_argument("select_leaders_generic: cover area holds no point");
        ls.leaders.push_back(best);
        ls.area_of.push_back(static_cast<int>(a));
    }
    if (std::find(covered.begin(), covered.end(), 0) != covered.end())
        throw std::invalid_argument("select_leaders_generic: cover misses a point");
    return ls;
}

namespace {

// Adjacency of the "conflict" graph: i ~ j iff distance <= D.
std::vector<std::vector<char>> conflict_graph(const PointSet& ps, double d) {
    const int n = ps.size();
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (distance(ps.points[i], ps.points[j]) <= d) adj[i][j] = adj[j][i] = 1;
    return adj;
}

// Min-degree greedy independent set; robust against decoy clusters that trap
// the lexicographic scan.
std::vector<int> min_degree_independent_set(const std::vector<std::vector<char>>& adj) {
    const int n = static_cast<int>(adj.size());
    std::vector<char> alive(n, 1);
    std::vector<int> out;
    for (;;) {
        int best = -1, best_deg = n + 1;
        for (int i = 0; i < n; ++i) {
            if (!alive[i]) continue;
            int deg = 0;
            for (int j = 0; j < n; ++j) deg += alive[j] && adj[i][j];
            if (deg < best_deg) {
                best_deg = deg;
                best = i;
            }
        }
        if (best < 0) break;
        out.push_back(best);
        alive[best] = 0;
        for (int j = 0; j < n; ++j)
            if (adj[best][j]) alive[j] = 0;
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Exact maximum independent set, branch and bound; intended for n <= 20.
void mis_search(const std::vector<std::vector<char>>& adj, std::vector<int>& alive_ids,
                std::vector<int>& current, std::vector<int>& best) {
    if (current.size() + alive_ids.size() <= best.size()) return;
    if (alive_ids.empty()) {
        best = current;
        return;
    }
    // branch on the max-degree alive vertex
    int pivot = alive_ids[0], pivot_deg = -1;
    for (int v : alive_ids) {
        int deg = 0;
        for (int u : alive_ids) deg += adj[v][u];
        if (deg > pivot_deg) {
            pivot_deg = deg;
            pivot = v;
        }
    }
    // include pivot
    std::vector<int> next;
    for (int u : alive_ids)
        if (u != pivot && !adj[pivot][u]) next.push_back(u);
    current.push_back(pivot);
    mis_search(adj, next, current, best);
    current.pop_back();
    // exclude pivot
    std::vector<int> rest;
    for (int u : alive_ids)
        if (u != pivot) rest.push_back(u);
    mis_search(adj, rest, current, best);
}

}  // namespace

SpreadReport check_basic_precondition(const PointSet& ps, const FaultModel& fm) {
    ps.validate();
    fm.validate();
    SpreadReport rep;
    rep.required = 9 * fm.count + 3;
    const double d = fm.diameter();
    const auto adj = conflict_graph(ps, d);

    std::vector<int> lex_witness = select_leaders_basic(ps, d).leaders;
    std::sort(lex_witness.begin(), lex_witness.end());
    std::vector<int> deg_witness = min_degree_independent_set(adj);
    rep.witness = deg_witness.size() >= lex_witness.size() ? deg_witness : lex_witness;

    if (static_cast<int>(rep.witness.size()) < rep.required && ps.size() <= 20) {
        std::vector<int> alive(ps.size());
        std::iota(alive.begin(), alive.end(), 0);
        std::vector<int> current, best;
        mis_search(adj, alive, current, best);
        std::sort(best.begin(), best.end());
        rep.witness = best;
        rep.exact = true;
    }
    rep.witness_size = static_cast<int>(rep.witness.size());
    rep.ok = rep.witness_size >= rep.required;
    return rep;
}

OverlapKey overlap_key_for(const FaultModel& fm, ShapeKind cover_kind, double cover_size) {
    fm.validate();
    const auto ratio_is = [&](double r) { return std::abs(fm.size - r * cover_size) <= 1e-9 * cover_size; };
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    if (cover_kind == ShapeKind::AxisSquare) {
        if (fm.shape == FaultShape::Square && ratio_is(1.0))
            return fm.alignment == Alignment::Axis ? OverlapKey::SquareAxisOverSquares
                                                   : OverlapKey::SquareAnyOverSquares;
        if ((fm.shape == FaultShape::Square || fm.shape == FaultShape::Circle) && ratio_is(inv_sqrt2))
            return OverlapKey::SmallSquareOrCircleOverSquares;
        if (fm.shape == FaultShape::Circle && ratio_is(std::sqrt(2.0)))
            return OverlapKey::BigCircleOverSquares;
    } else if (cover_kind == ShapeKind::Circle && fm.shape == FaultShape::Circle) {
        if (ratio_is(1.0)) return OverlapKey::CircleOverCircles;
        if (ratio_is(inv_sqrt2)) return OverlapKey::SmallCircleOverCircles;
        if (ratio_is(std::sqrt(2.0))) return OverlapKey::BigCircleOverCircles;
    } else if (cover_kind == ShapeKind::AxisCube && fm.shape == FaultShape::Cube && ratio_is(1.0)) {
        return fm.alignment == Alignment::Axis ? OverlapKey::CubeAxisOverCubes : OverlapKey::CubeAnyOverCubes;
    } else if (cover_kind == ShapeKind::Sphere && fm.shape == FaultShape::Sphere && ratio_is(1.0)) {
        return OverlapKey::SphereOverSpheres;
    }
    throw std::invalid_argument("no overlap bound for fault " + fault_shape_name(fm.shape) + " of size " +
                                std::to_string(fm.size) + " over " + shape_kind_name(cover_kind) +
                                " covers of size " + std::to_string(cover_size));
}

CoverReport check_generic_precondition(const CoverSet& cs, const FaultModel& fm) {
    CoverReport rep;
    rep.key = overlap_key_for(fm, cs.kind, cs.size);
    rep.n_f = overlap_bound(rep.key);
    rep.required = (3 * rep.n_f + 1) * fm.count;
    rep.actual = static_cast<int>(cs.areas.size());
    rep.ok = rep.actual >= rep.required;
    return rep;
}

int tolerance_bound(const FaultModel& fm, OverlapKey key) {
    fm.validate();
    return (2 * overlap_bound(key) + 1) * fm.count;
}

Verdicts compute_verdicts(const std::map<ProcessId, int>& decisions, const std::vector<int>& inputs,
                          const std::vector<ProcessId>& correct) {
    Verdicts v;
    v.termination = true;
    v.agreement = true;
    int first = -1;
    for (ProcessId i : correct) {
        const auto it = decisions.find(i);
        if (it == decisions.end()) {
            v.termination = false;
            continue;
        }
        if (first < 0)
            first = it->second;
        else if (it->second != first)
            v.agreement = false;
    }
    v.validity = true;
    if (!correct.empty()) {
        bool uniform = true;
        for (ProcessId i : correct) uniform = uniform && inputs[i] == inputs[correct.front()];
        if (uniform)
            for (ProcessId i : correct) {
                const auto it = decisions.find(i);
                if (it == decisions.end() || it->second != inputs[correct.front()]) v.validity = false;
            }
    }
    return v;
}

Behavior BehaviorAssignment::for_sender(ProcessId id) const {
    Behavior b;
    b.policy = policy;
    b.seed = hash_u64({seed, static_cast<std::uint64_t>(id)});
    if (policy == Policy::Scripted) {
        const auto it = scripts.find(id);
        if (it != scripts.end()) b.script = it->second;
    }
    return b;
}

namespace {

void validate_placements(const FaultModel& fm, const std::vector<Shape>& placements) {
    if (static_cast<int>(placements.size()) != fm.count)
        throw std::invalid_argument("expected exactly M fault placements");
    for (const Shape& s : placements) {
        s.validate();
        const ShapeKind want = fm.placement_kind();
        const bool kind_ok =
            s.kind == want ||
            (want == ShapeKind::OrientedSquare && s.kind == ShapeKind::AxisSquare);
        if (!kind_ok || s.size != fm.size)
            throw std::invalid_argument("fault placement does not match the fault template");
    }
}

std::vector<ProcessId> covered_union(const PointSet& ps, const std::vector<Shape>& placements) {
    std::set<ProcessId> f;
    for (const Shape& s : placements)
        for (int i : covered_indices(s, ps)) f.insert(i);
    return {f.begin(), f.end()};
}

ProtocolOutcome refusal(std::string reason) {
    ProtocolOutcome out;
    out.refused = true;
    out.refusal_reason = std::move(reason);
    return out;
}

// Shared consensus + broadcast + adoption stage. `slot_leaders` lists one
// leader id per slot (areas for the cover protocol); a leader holding
// several slots broadcasts once but its value counts once per slot.
void consensus_stage(ProtocolOutcome& out, const PointSet& ps, const std::vector<int>& inputs,
                     const BehaviorAssignment& behavior, int t, int adoption_threshold,
                     const PslOptions& psl_opts) {
    const std::vector<ProcessId> participants = out.leaders.participants();
    const std::set<ProcessId> faulty_set(out.faulty.begin(), out.faulty.end());

    ConsensusInstance inst;
    inst.participants = participants;
    inst.t = t;
    for (ProcessId id : participants) {
        inst.inputs[id] = inputs[id];
        if (faulty_set.count(id)) {
            inst.faulty.insert(id);
            inst.behaviors[id] = behavior.for_sender(id);
        }
    }
    const ConsensusResult psl = psl_run(inst, psl_opts);

    out.psl_t = t;
    out.collapsed = psl.collapsed;
    out.trace_complete = psl.trace_complete;
    out.rounds_used = psl.rounds + 1;
    for (const RoundTrace& rt : psl.trace) out.messages_per_round.push_back(rt.bundles);
    out.trace = psl.trace;

    // Final round: every leader broadcasts, every correct process decides.
    const int broadcast_round = psl.rounds + 1;
    RoundTrace brt;
    brt.round = broadcast_round;
    const int n = ps.size();
    std::vector<char> is_faulty(n, 0);
    for (ProcessId id : out.faulty) is_faulty[id] = 1;

    for (ProcessId leader : participants)
        if (!is_faulty[leader] || behavior.policy != Policy::Silent) brt.bundles += n - 1;

    for (ProcessId r = 0; r < n; ++r) {
        if (is_faulty[r]) continue;
        if (!is_faulty[r] && std::binary_search(participants.begin(), participants.end(), r)) {
            out.decisions[r] = psl.decisions.at(r);
            continue;
        }
        int votes[2] = {0, 0};
        for (std::size_t slot = 0; slot < out.leaders.leaders.size(); ++slot) {
            const ProcessId leader = out.leaders.leaders[slot];
            if (leader == r) continue;  // cannot slot-vote for itself; correct leaders decided above
            int bit;
            if (!is_faulty[leader]) {
                bit = psl.decisions.at(leader);
            } else {
                const auto sent =
                    apply_behavior(behavior.for_sender(leader), broadcast_round, leader, r, {}, 0);
                if (!sent) continue;
                bit = *sent;
            }
            ++votes[bit];
        }
        if (votes[0] >= adoption_threshold && votes[0] > votes[1])
            out.decisions[r] = 0;
        else if (votes[1] >= adoption_threshold && votes[1] > votes[0])
            out.decisions[r] = 1;
        // else: no adoptable value; the process stays undecided
    }

    if (psl_opts.want_trace && psl.trace_complete) {
        for (ProcessId leader : participants) {
            for (ProcessId r = 0; r < n; ++r) {
                if (r == leader) continue;
                int bit;
                if (!is_faulty[leader]) {
                    bit = psl.decisions.at(leader);
                } else {
                    const auto sent =
                        apply_behavior(behavior.for_sender(leader), broadcast_round, leader, r, {}, 0);
                    if (!sent) continue;
                    bit = *sent;
                }
                brt.entries.push_back(TraceEntry{leader, r, {}, bit});
            }
        }
    }
    out.messages_per_round.push_back(brt.bundles);
    out.trace.push_back(std::move(brt));
    out.messages_total = 0;
    for (long m : out.messages_per_round) out.messages_total += m;

    std::vector<ProcessId> correct;
    for (ProcessId i = 0; i < n; ++i)
        if (!is_faulty[i]) correct.push_back(i);
    out.verdicts = compute_verdicts(out.decisions, inputs, correct);
}

void validate_inputs(const PointSet& ps, const std::vector<int>& inputs) {
    if (static_cast<int>(inputs.size()) != ps.size())
        throw std::invalid_argument("inputs: one bit per process required");
    for (int b : inputs)
        if (b != 0 && b != 1) throw std::invalid_argument("inputs are binary");
}

}  // namespace

ProtocolOutcome run_basic(const PointSet& ps, const FaultModel& fm, const std::vector<Shape>& placements,
                          const std::vector<int>& inputs, const BehaviorAssignment& behavior,
                          const PslOptions& psl_opts) {
    ps.validate();
    fm.validate();
    validate_inputs(ps, inputs);
    validate_placements(fm, placements);
    if (ps.dim() != fm.dim()) throw std::invalid_argument("run_basic: fault/point dimension mismatch");

    const SpreadReport pre = check_basic_precondition(ps, fm);
    if (!pre.ok)
        return refusal("spread precondition unmet: found " + std::to_string(pre.witness_size) +
                       " pairwise-spread processes, need " + std::to_string(pre.required));

    ProtocolOutcome out;
    out.leaders = select_leaders_basic(ps, fm.diameter());
    out.faulty = covered_union(ps, placements);
    const int m = fm.count;
    if (static_cast<int>(out.leaders.leaders.size()) < 3 * m + 1)
        return refusal("leader selection produced fewer than 3M+1 leaders");
    consensus_stage(out, ps, inputs, behavior, /*t=*/m, /*adoption_threshold=*/2 * m + 1, psl_opts);
    return out;
}

ProtocolOutcome run_generic(const PointSet& ps, const FaultModel& fm, const CoverSet& cover,
                            const std::vector<Shape>& placements, const std::vector<int>& inputs,
                            const BehaviorAssignment& behavior, const PslOptions& psl_opts) {
    ps.validate();
    fm.validate();
    validate_inputs(ps, inputs);
    validate_placements(fm, placements);
    if (ps.dim() != fm.dim()) throw std::invalid_argument("run_generic: fault/point dimension mismatch");

    const CoverReport pre = check_generic_precondition(cover, fm);
    if (!pre.ok)
        return refusal("cover precondition unmet: |A| = " + std::to_string(pre.actual) + ", need " +
                       std::to_string(pre.required) + " for n(F) = " + std::to_string(pre.n_f));

    ProtocolOutcome out;
    out.leaders = select_leaders_generic(cover, ps);
    out.faulty = covered_union(ps, placements);
    const int t = pre.n_f * fm.count;
    if (static_cast<int>(out.leaders.participants().size()) < 3 * t + 1)
        return refusal("distinct leaders fall short of 3t+1 for t = n(F)*M");
    consensus_stage(out, ps, inputs, behavior, t, /*adoption_threshold=*/t + 1, psl_opts);
    return out;
}

}  // namespace geocon
