#include "geocon/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "geocon/rng.hpp"

namespace geocon {

std::string placement_kind_name(PlacementKind k) {
    switch (k) {
        case PlacementKind::Random: return "random";
        case PlacementKind::GreedyMaxPoints: return "greedy-max-points";
        case PlacementKind::GreedyMaxLeaders: return "greedy-max-leaders";
        case PlacementKind::Scripted: return "scripted";
    }
    throw std::logic_error("bad placement kind");
}

PlacementKind placement_kind_from_name(const std::string& name) {
    if (name == "random") return PlacementKind::Random;
    if (name == "greedy-max-points") return PlacementKind::GreedyMaxPoints;
    if (name == "greedy-max-leaders") return PlacementKind::GreedyMaxLeaders;
    if (name == "scripted") return PlacementKind::Scripted;
    throw std::invalid_argument("unknown placement strategy: " + name);
}

std::string input_pattern_name(InputPattern p) {
    switch (p) {
        case InputPattern::AllZero: return "all-zero";
        case InputPattern::AllOne: return "all-one";
        case InputPattern::Random: return "random";
        case InputPattern::Split: return "split";
        case InputPattern::Explicit: return "explicit";
    }
    throw std::logic_error("bad input pattern");
}

InputPattern input_pattern_from_name(const std::string& name) {
    if (name == "all-zero") return InputPattern::AllZero;
    if (name == "all-one") return InputPattern::AllOne;
    if (name == "random") return InputPattern::Random;
    if (name == "split") return InputPattern::Split;
    if (name == "explicit") return InputPattern::Explicit;
    throw std::invalid_argument("unknown input pattern: " + name);
}

PointSet generate_points(const PointSource& src) {
    if (src.explicit_points) {
        src.explicit_points->validate();
        return *src.explicit_points;
    }
    if (!src.generator) throw std::invalid_argument("point source is empty");
    const PointGenerator& g = *src.generator;
    if (g.n < 1) throw std::invalid_argument("generator: N >= 1 required");
    const int dim = g.region.lo.dim;
    Rng rng(g.seed);
    PointSet ps;
    const long cap = 2000L * g.n + 2000;
    long attempts = 0;
    while (ps.size() < g.n) {
        if (++attempts > cap) {
            std::ostringstream os;
            os << "generate_points: could not place " << g.n << " points with separation > "
               << g.min_separation << " in the given region (placed " << ps.size() << ")";
            throw std::runtime_error(os.str());
        }
        Point p;
        p.dim = dim;
        for (int a = 0; a < dim; ++a) p.c[a] = rng.uniform(g.region.lo.c[a], g.region.hi.c[a]);
        bool ok = true;
        for (const Point& q : ps.points) {
            if (p == q || distance(p, q) <= g.min_separation) {
                ok = false;
                break;
            }
        }
        if (ok) ps.points.push_back(p);
    }
    ps.validate();
    return ps;
}

std::vector<int> input_bits(const InputSpec& spec, int n) {
    std::vector<int> bits(n, 0);
    switch (spec.pattern) {
        case InputPattern::AllZero: break;
        case InputPattern::AllOne: std::fill(bits.begin(), bits.end(), 1); break;
        case InputPattern::Random:
            for (int i = 0; i < n; ++i)
                bits[i] = static_cast<int>(hash_u64({spec.seed, static_cast<std::uint64_t>(i)}) & 1u);
            break;
        case InputPattern::Split:
            for (int i = 0; i < n; ++i) bits[i] = i < n / 2 ? 0 : 1;
            break;
        case InputPattern::Explicit:
            for (int i = 0; i < n; ++i) {
                const auto it = spec.explicit_bits.find(i);
                if (it == spec.explicit_bits.end())
                    throw std::invalid_argument("explicit inputs: missing bit for process " +
                                                std::to_string(i));
                bits[i] = it->second;
            }
            break;
    }
    return bits;
}

namespace {

std::vector<Shape> placement_candidates(const FaultModel& fm, const Point& target) {
    std::vector<Shape> out;
    const double s = fm.size;
    const ShapeKind kind = fm.placement_kind();
    const auto minus = [&](const Point& p, double ox, double oy, double oz) {
        Point a = p;
        a.c[0] -= ox;
        a.c[1] -= oy;
        a.c[2] -= oz;
        return a;
    };
    if (kind == ShapeKind::Circle || kind == ShapeKind::Sphere) {
        const double r = s / 2.0;
        out.push_back(Shape{kind, s, target, 0.0});
        for (int a = 0; a < shape_dim(kind); ++a)
            for (double off : {r, -r}) {
                Point c = target;
                c.c[a] -= off;
                out.push_back(Shape{kind, s, c, 0.0});
            }
        return out;
    }
    // corner and boundary-midpoint offsets of the box held at the target
    std::vector<std::array<double, 3>> offs;
    if (shape_dim(kind) == 2) {
        offs = {{0, 0, 0}, {s, 0, 0}, {0, s, 0}, {s, s, 0},
                {s / 2, 0, 0}, {s / 2, s, 0}, {0, s / 2, 0}, {s, s / 2, 0}};
    } else {
        for (double x : {0.0, s})
            for (double y : {0.0, s})
                for (double z : {0.0, s}) offs.push_back({x, y, z});
        offs.push_back({s / 2, s / 2, 0});
        offs.push_back({s / 2, s / 2, s});
        offs.push_back({s / 2, 0, s / 2});
        offs.push_back({s / 2, s, s / 2});
        offs.push_back({0, s / 2, s / 2});
        offs.push_back({s, s / 2, s / 2});
    }
    if (kind == ShapeKind::OrientedSquare) {
        const double pi = std::acos(-1.0);
        for (int step = 0; step < 18; ++step) {
            const double th = step * pi / 36.0;
            const double cs = std::cos(th), sn = std::sin(th);
            for (const auto& o : offs) {
                // anchor such that the rotated offset lands on the target
                const Point a = minus(target, cs * o[0] - sn * o[1], sn * o[0] + cs * o[1], 0.0);
                out.push_back(Shape{kind, s, a, th});
            }
        }
    } else {
        for (const auto& o : offs) out.push_back(Shape{kind, s, minus(target, o[0], o[1], o[2]), 0.0});
    }
    return out;
}

}  // namespace

std::vector<Shape> place_faults(const PointSet& ps, const FaultModel& fm, const PlacementStrategy& strat,
                                const std::vector<Point>* leader_points) {
    fm.validate();
    if (strat.kind == PlacementKind::Scripted) {
        if (static_cast<int>(strat.script.size()) != fm.count)
            throw std::invalid_argument("scripted placement: expected M shapes");
        return strat.script;
    }
    if (strat.kind == PlacementKind::Random) {
        Rng rng(strat.seed);
        const Rect r = enclosing_rect(ps);
        const double pi = std::acos(-1.0);
        std::vector<Shape> out;
        for (int m = 0; m < fm.count; ++m) {
            Shape s;
            s.kind = fm.placement_kind();
            s.size = fm.size;
            s.anchor.dim = ps.dim();
            const double pad = fm.diameter();
            for (int a = 0; a < ps.dim(); ++a)
                s.anchor.c[a] = rng.uniform(r.lo.c[a] - pad, r.hi.c[a] + pad * 0.01);
            if (s.kind == ShapeKind::OrientedSquare) s.rotation = rng.uniform(0.0, pi / 2.0 * 0.9999);
            out.push_back(s);
        }
        return out;
    }

    // Greedy strategies.
    std::vector<Point> targets;
    if (strat.kind == PlacementKind::GreedyMaxPoints) {
        targets = ps.points;
    } else {
        if (!leader_points) throw std::invalid_argument("greedy-max-leaders needs the leader set");
        targets = *leader_points;
    }
    std::vector<char> taken(targets.size(), 0);
    std::vector<Shape> out;
    for (int m = 0; m < fm.count; ++m) {
        Shape best;
        int best_score = -1;
        for (const Point& tp : targets) {
            for (const Shape& cand : placement_candidates(fm, tp)) {
                int score = 0;
                for (std::size_t i = 0; i < targets.size(); ++i)
                    if (!taken[i] && contains(cand, targets[i])) ++score;
                if (score > best_score) {
                    best_score = score;
                    best = cand;
                }
            }
        }
        for (std::size_t i = 0; i < targets.size(); ++i)
            if (contains(best, targets[i])) taken[i] = 1;
        out.push_back(best);
    }
    return out;
}

namespace {

ShapeKind coverage_proxy_kind(const FaultModel& fm) {
    switch (fm.shape) {
        case FaultShape::Square: return ShapeKind::AxisSquare;
        case FaultShape::Circle: return ShapeKind::Circle;
        case FaultShape::Cube: return ShapeKind::AxisCube;
        case FaultShape::Sphere: return ShapeKind::Sphere;
    }
    throw std::logic_error("bad fault shape");
}

}  // namespace

RunRecord execute(const Scenario& sc) {
    RunRecord rec;
    rec.scenario = sc;
    rec.points = generate_points(sc.points);
    sc.fault.validate();
    if (rec.points.dim() != sc.fault.dim())
        throw std::invalid_argument("scenario: fault shape dimension does not match the points");

    if (sc.protocol == ProtocolKind::Generic) {
        if (!sc.cover) throw std::invalid_argument("scenario: cover spec required for the cover protocol");
        rec.cover = greedy_cover(rec.points, sc.cover->kind, sc.cover->size);
    }

    // Impossibility diagnostic: a coverage number <= 3M certifies that no
    // algorithm can solve the instance, so it is refused before running.
    rec.coverage = coverage_number(rec.points, coverage_proxy_kind(sc.fault), sc.fault.size);
    if (rec.coverage.value <= 3 * sc.fault.count) {
        rec.outcome.refused = true;
        rec.outcome.refusal_reason =
            "coverage number " + std::to_string(rec.coverage.value) + " <= 3M; instance unsolvable";
        rec.metrics.verdicts = Verdicts{};
        return rec;
    }

    LeaderSet ctx_leaders = sc.protocol == ProtocolKind::Basic
                                ? select_leaders_basic(rec.points, sc.fault.diameter())
                                : select_leaders_generic(*rec.cover, rec.points);
    std::vector<Point> leader_points;
    for (ProcessId id : ctx_leaders.participants()) leader_points.push_back(rec.points.points[id]);

    rec.placements = place_faults(rec.points, sc.fault, sc.placement, &leader_points);

    const std::vector<int> bits = input_bits(sc.inputs, rec.points.size());
    BehaviorAssignment behavior;
    behavior.policy = sc.behavior_policy;
    behavior.seed = sc.behavior_seed;
    behavior.scripts = sc.behavior_scripts;

    PslOptions opts;
    opts.want_trace = sc.collect_trace;
    rec.outcome = sc.protocol == ProtocolKind::Basic
                      ? run_basic(rec.points, sc.fault, rec.placements, bits, behavior, opts)
                      : run_generic(rec.points, sc.fault, *rec.cover, rec.placements, bits, behavior, opts);

    rec.metrics.rounds = rec.outcome.rounds_used;
    rec.metrics.messages_total = rec.outcome.messages_total;
    rec.metrics.messages_per_round = rec.outcome.messages_per_round;
    rec.metrics.f = static_cast<int>(rec.outcome.faulty.size());
    rec.metrics.x = sc.protocol == ProtocolKind::Basic
                        ? static_cast<int>(rec.outcome.leaders.leaders.size())
                        : static_cast<int>(rec.cover->areas.size());
    rec.metrics.verdicts = rec.outcome.verdicts;
    return rec;
}

bool verify_message_bound(const RunRecord& rec) {
    if (rec.outcome.refused) return true;
    const long x = rec.metrics.x;
    const long n = rec.points.size();
    const auto& per_round = rec.metrics.messages_per_round;
    if (per_round.empty()) return false;
    for (std::size_t i = 0; i + 1 < per_round.size(); ++i)
        if (per_round[i] > x * x) return false;
    if (per_round.back() > x * n) return false;
    long total = 0;
    for (long m : per_round) total += m;
    if (total != rec.metrics.messages_total) return false;
    return total <= (rec.outcome.psl_t + 1) * x * x + x * n;
}

Json shape_to_json(const Shape& s) {
    Json j;
    j["kind"] = shape_kind_name(s.kind);
    j["size"] = s.size;
    Json anchor = Json::array();
    for (int a = 0; a < s.anchor.dim; ++a) anchor.push_back(s.anchor.c[a]);
    j["anchor"] = anchor;
    if (s.kind == ShapeKind::OrientedSquare) j["rotation"] = s.rotation;
    return j;
}

Shape shape_from_json(const Json& j) {
    Shape s;
    s.kind = shape_kind_from_name(j.at("kind").get<std::string>());
    s.size = j.at("size").get<double>();
    const auto& anchor = j.at("anchor");
    s.anchor.dim = static_cast<int>(anchor.size());
    for (std::size_t a = 0; a < anchor.size(); ++a) s.anchor.c[a] = anchor[a].get<double>();
    s.rotation = j.value("rotation", 0.0);
    s.validate();
    return s;
}

namespace {

Json point_to_json(const Point& p) {
    Json a = Json::array();
    for (int i = 0; i < p.dim; ++i) a.push_back(p.c[i]);
    return a;
}

Point point_from_json(const Json& j) {
    if (j.size() != 2 && j.size() != 3) throw std::invalid_argument("point needs 2 or 3 coordinates");
    Point p;
    p.dim = static_cast<int>(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) p.c[i] = j[i].get<double>();
    return p;
}

Json scripts_to_json(const std::map<ProcessId, std::map<ScriptSlot, int>>& scripts) {
    Json arr = Json::array();
    for (const auto& [sender, slots] : scripts)
        for (const auto& [slot, bit] : slots) {
            Json e;
            e["sender"] = sender;
            e["round"] = slot.round;
            e["receiver"] = slot.receiver;
            e["path"] = slot.path;
            e["bit"] = bit;
            arr.push_back(e);
        }
    return arr;
}

std::map<ProcessId, std::map<ScriptSlot, int>> scripts_from_json(const Json& arr) {
    std::map<ProcessId, std::map<ScriptSlot, int>> out;
    for (const auto& e : arr) {
        ScriptSlot slot;
        slot.round = e.at("round").get<int>();
        slot.receiver = e.at("receiver").get<ProcessId>();
        for (const auto& id : e.at("path")) slot.path.push_back(id.get<ProcessId>());
        out[e.at("sender").get<ProcessId>()][slot] = e.at("bit").get<int>();
    }
    return out;
}

}  // namespace

Json scenario_to_json(const Scenario& sc) {
    Json j;
    if (sc.points.explicit_points) {
        Json pts = Json::array();
        for (const Point& p : sc.points.explicit_points->points) pts.push_back(point_to_json(p));
        j["points"] = Json{{"explicit", pts}};
    } else if (sc.points.generator) {
        const PointGenerator& g = *sc.points.generator;
        j["points"] = Json{{"generator",
                            Json{{"seed", g.seed},
                                 {"n", g.n},
                                 {"region", Json::array({point_to_json(g.region.lo), point_to_json(g.region.hi)})},
                                 {"min_separation", g.min_separation}}}};
    }
    j["fault"] = Json{{"shape", fault_shape_name(sc.fault.shape)},
                      {"size", sc.fault.size},
                      {"count", sc.fault.count},
                      {"alignment", alignment_name(sc.fault.alignment)}};
    j["protocol"] = sc.protocol == ProtocolKind::Basic ? "basic" : "generic";
    if (sc.cover)
        j["cover"] = Json{{"kind", shape_kind_name(sc.cover->kind)}, {"size", sc.cover->size}};
    Json placement;
    placement["kind"] = placement_kind_name(sc.placement.kind);
    placement["seed"] = sc.placement.seed;
    if (sc.placement.kind == PlacementKind::Scripted) {
        Json shapes = Json::array();
        for (const Shape& s : sc.placement.script) shapes.push_back(shape_to_json(s));
        placement["shapes"] = shapes;
    }
    j["placement"] = placement;
    Json behavior;
    behavior["policy"] = policy_name(sc.behavior_policy);
    behavior["seed"] = sc.behavior_seed;
    if (!sc.behavior_scripts.empty()) behavior["scripts"] = scripts_to_json(sc.behavior_scripts);
    j["behavior"] = behavior;
    Json inputs;
    inputs["pattern"] = input_pattern_name(sc.inputs.pattern);
    if (sc.inputs.pattern == InputPattern::Random) inputs["seed"] = sc.inputs.seed;
    if (sc.inputs.pattern == InputPattern::Explicit) {
        Json bits;
        for (const auto& [id, bit] : sc.inputs.explicit_bits) bits[std::to_string(id)] = bit;
        inputs["bits"] = bits;
    }
    j["inputs"] = inputs;
    j["trace"] = sc.collect_trace;
    return j;
}

Scenario scenario_from_json(const Json& j) {
    Scenario sc;
    const Json& pts = j.at("points");
    if (pts.contains("explicit")) {
        PointSet ps;
        for (const auto& p : pts.at("explicit")) ps.points.push_back(point_from_json(p));
        sc.points.explicit_points = ps;
    } else if (pts.contains("generator")) {
        const Json& g = pts.at("generator");
        PointGenerator gen;
        gen.seed = g.at("seed").get<std::uint64_t>();
        gen.n = g.at("n").get<int>();
        gen.region.lo = point_from_json(g.at("region").at(0));
        gen.region.hi = point_from_json(g.at("region").at(1));
        gen.min_separation = g.value("min_separation", 0.0);
        sc.points.generator = gen;
    } else {
        throw std::invalid_argument("scenario: points needs 'explicit' or 'generator'");
    }
    const Json& f = j.at("fault");
    sc.fault.shape = fault_shape_from_name(f.at("shape").get<std::string>());
    sc.fault.size = f.at("size").get<double>();
    sc.fault.count = f.at("count").get<int>();
    sc.fault.alignment = alignment_from_name(f.value("alignment", "any"));
    const std::string proto = j.at("protocol").get<std::string>();
    if (proto == "basic")
        sc.protocol = ProtocolKind::Basic;
    else if (proto == "generic")
        sc.protocol = ProtocolKind::Generic;
    else
        throw std::invalid_argument("unknown protocol: " + proto);
    if (j.contains("cover")) {
        CoverSpec cs;
        cs.kind = shape_kind_from_name(j.at("cover").at("kind").get<std::string>());
        cs.size = j.at("cover").at("size").get<double>();
        sc.cover = cs;
    }
    if (j.contains("placement")) {
        const Json& p = j.at("placement");
        sc.placement.kind = placement_kind_from_name(p.at("kind").get<std::string>());
        sc.placement.seed = p.value("seed", std::uint64_t{0});
        if (p.contains("shapes"))
            for (const auto& s : p.at("shapes")) sc.placement.script.push_back(shape_from_json(s));
    }
    if (j.contains("behavior")) {
        const Json& b = j.at("behavior");
        sc.behavior_policy = policy_from_name(b.at("policy").get<std::string>());
        sc.behavior_seed = b.value("seed", std::uint64_t{0});
        if (b.contains("scripts")) sc.behavior_scripts = scripts_from_json(b.at("scripts"));
    }
    if (j.contains("inputs")) {
        const Json& in = j.at("inputs");
        sc.inputs.pattern = input_pattern_from_name(in.value("pattern", "all-one"));
        sc.inputs.seed = in.value("seed", std::uint64_t{0});
        if (sc.inputs.pattern == InputPattern::Explicit)
            for (const auto& [key, bit] : in.at("bits").items())
                sc.inputs.explicit_bits[std::stoi(key)] = bit.get<int>();
    }
    sc.collect_trace = j.value("trace", false);
    return sc;
}

Json record_to_json(const RunRecord& rec) {
    Json j;
    j["schema"] = 1;
    j["scenario"] = scenario_to_json(rec.scenario);
    Json pts = Json::array();
    for (const Point& p : rec.points.points) pts.push_back(point_to_json(p));
    j["points"] = pts;
    j["coverage"] = Json{{"value", rec.coverage.value}, {"exact", rec.coverage.exact}};
    j["refused"] = rec.outcome.refused;
    if (rec.outcome.refused) {
        j["refusal_reason"] = rec.outcome.refusal_reason;
        return j;
    }
    if (rec.cover) {
        Json areas = Json::array();
        for (const Shape& a : rec.cover->areas) areas.push_back(shape_to_json(a));
        j["cover"] = Json{{"kind", shape_kind_name(rec.cover->kind)},
                          {"size", rec.cover->size},
                          {"area_count", rec.cover->areas.size()},
                          {"slab_count", rec.cover->slabs.size()},
                          {"areas", areas}};
    }
    Json placements = Json::array();
    for (const Shape& s : rec.placements) placements.push_back(shape_to_json(s));
    j["placements"] = placements;
    j["faulty"] = rec.outcome.faulty;
    Json slots = Json::array();
    for (std::size_t i = 0; i < rec.outcome.leaders.leaders.size(); ++i) {
        Json slot;
        slot["leader"] = rec.outcome.leaders.leaders[i];
        if (!rec.outcome.leaders.area_of.empty()) slot["area"] = rec.outcome.leaders.area_of[i];
        slots.push_back(slot);
    }
    j["leaders"] = Json{{"origin", rec.outcome.leaders.origin == LeaderSet::Origin::DistanceD
                                       ? "distance-D"
                                       : "per-cover-area"},
                        {"slots", slots}};
    Json decisions;
    for (const auto& [id, bit] : rec.outcome.decisions) decisions[std::to_string(id)] = bit;
    j["decisions"] = decisions;
    j["verdicts"] = Json{{"agreement", rec.metrics.verdicts.agreement},
                         {"validity", rec.metrics.verdicts.validity},
                         {"termination", rec.metrics.verdicts.termination}};
    j["metrics"] = Json{{"rounds", rec.metrics.rounds},
                        {"messages_total", rec.metrics.messages_total},
                        {"messages_per_round", rec.metrics.messages_per_round},
                        {"x", rec.metrics.x},
                        {"f", rec.metrics.f},
                        {"psl_t", rec.outcome.psl_t},
                        {"collapsed", rec.outcome.collapsed}};
    if (rec.scenario.collect_trace && rec.outcome.trace_complete) {
        Json trace = Json::array();
        for (const RoundTrace& rt : rec.outcome.trace)
            for (const TraceEntry& e : rt.entries)
                trace.push_back(Json{{"round", rt.round},
                                     {"sender", e.sender},
                                     {"receiver", e.receiver},
                                     {"path", e.path},
                                     {"bit", e.bit}});
        j["trace"] = trace;
    }
    return j;
}

std::string metrics_csv_header() {
    return "protocol,n,m,x,f,rounds,messages_total,agreement,validity,termination";
}

std::string metrics_csv_row(const RunRecord& rec) {
    std::ostringstream os;
    os << (rec.scenario.protocol == ProtocolKind::Basic ? "basic" : "generic") << ','
       << rec.points.size() << ',' << rec.scenario.fault.count << ',' << rec.metrics.x << ','
       << rec.metrics.f << ',' << rec.metrics.rounds << ',' << rec.metrics.messages_total << ','
       << rec.metrics.verdicts.agreement << ',' << rec.metrics.verdicts.validity << ','
       << rec.metrics.verdicts.termination;
    return os.str();
}

namespace {

void apply_cell_seed(Scenario& sc, std::uint64_t seed) {
    if (sc.points.generator) sc.points.generator->seed = hash_u64({seed, 1});
    sc.placement.seed = hash_u64({seed, 2});
    sc.behavior_seed = hash_u64({seed, 3});
    if (sc.inputs.pattern == InputPattern::Random) sc.inputs.seed = hash_u64({seed, 4});
}

}  // namespace

std::vector<Scenario> expand_config(const Json& config) {
    if (config.value("schema", 0) != 1)
        throw std::invalid_argument("config: expected \"schema\": 1");
    std::vector<Scenario> cells;
    if (config.contains("scenario")) {
        cells.push_back(scenario_from_json(config.at("scenario")));
        return cells;
    }
    if (!config.contains("sweep"))
        throw std::invalid_argument("config: needs \"scenario\" or \"sweep\"");
    const Json& sweep = config.at("sweep");
    const Json base = sweep.at("base");
    std::uint64_t seed_lo = 0, seed_hi = 0;
    if (sweep.contains("seeds")) {
        seed_lo = sweep.at("seeds").at(0).get<std::uint64_t>();
        seed_hi = sweep.at("seeds").at(1).get<std::uint64_t>();
        if (seed_hi < seed_lo) throw std::invalid_argument("sweep: seed range is reversed");
    }
    const Json vary = sweep.value("vary", Json::object());
    for (const auto& [key, values] : vary.items()) {
        (void)values;
        if (key != "m" && key != "n" && key != "fault_size" && key != "placement" && key != "behavior")
            throw std::invalid_argument("sweep: unknown vary key \"" + key + "\"");
    }
    const auto list_of = [&](const char* key) {
        std::vector<Json> vs;
        if (vary.contains(key))
            for (const auto& v : vary.at(key)) vs.push_back(v);
        else
            vs.push_back(Json());  // marker: keep base value
        return vs;
    };
    for (const Json& m : list_of("m"))
        for (const Json& n : list_of("n"))
            for (const Json& fault_size : list_of("fault_size"))
                for (const Json& placement : list_of("placement"))
                    for (const Json& behavior : list_of("behavior"))
                        for (std::uint64_t s = seed_lo; s <= seed_hi; ++s) {
                            Json cell = base;
                            if (!m.is_null()) cell["fault"]["count"] = m;
                            if (!n.is_null()) cell["points"]["generator"]["n"] = n;
                            if (!fault_size.is_null()) cell["fault"]["size"] = fault_size;
                            if (!placement.is_null()) cell["placement"]["kind"] = placement;
                            if (!behavior.is_null()) cell["behavior"]["policy"] = behavior;
                            Scenario sc = scenario_from_json(cell);
                            apply_cell_seed(sc, s);
                            cells.push_back(sc);
                        }
    return cells;
}

}  // namespace geocon
