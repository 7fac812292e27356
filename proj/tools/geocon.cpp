#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "geocon/simulation.hpp"
#include "geocon/verify.hpp"

namespace {

using geocon::Json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitRefused = 3;
constexpr int kExitViolation = 4;

geocon::PointSet load_points(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open points file: " + path);
    geocon::PointSet ps;
    std::string line;
    int dim = 0;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream is(line);
        std::vector<double> vals;
        double v;
        while (is >> v) vals.push_back(v);
        if (vals.empty()) continue;
        if (vals.size() != 2 && vals.size() != 3)
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": expected 2 or 3 coordinates");
        if (dim == 0) dim = static_cast<int>(vals.size());
        if (static_cast<int>(vals.size()) != dim)
            throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": mixed dimensions");
        geocon::Point p;
        p.dim = dim;
        for (std::size_t i = 0; i < vals.size(); ++i) p.c[i] = vals[i];
        ps.points.push_back(p);
    }
    if (ps.points.empty()) throw std::invalid_argument(path + ": no points");
    ps.validate();
    return ps;
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    return Json::parse(in);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write: " + path);
    out << content;
}

int cmd_cover(const std::string& points_path, const std::string& kind_name, double size,
              const std::string& out_path) {
    const geocon::PointSet ps = load_points(points_path);
    const geocon::ShapeKind kind = geocon::shape_kind_from_name(kind_name);
    if (geocon::shape_dim(kind) != ps.dim())
        throw std::invalid_argument("cover shape is " + std::to_string(geocon::shape_dim(kind)) +
                                    "-D but points are " + std::to_string(ps.dim()) + "-D");
    const geocon::CoverSet cs = geocon::greedy_cover(ps, kind, size);

    std::cout << "areas: " << cs.areas.size() << "\nslabs: " << cs.slabs.size() << "\n";
    Json areas = Json::array();
    for (std::size_t a = 0; a < cs.areas.size(); ++a) {
        const auto covered = geocon::covered_indices(cs.areas[a], ps);
        std::cout << "  area " << a << " @ (";
        for (int i = 0; i < cs.areas[a].anchor.dim; ++i)
            std::cout << (i ? "," : "") << cs.areas[a].anchor.c[i];
        std::cout << ") points:";
        for (int i : covered) std::cout << ' ' << i;
        std::cout << "\n";
        Json entry = geocon::shape_to_json(cs.areas[a]);
        entry["points"] = covered;
        areas.push_back(entry);
    }
    Json j;
    j["schema"] = 1;
    j["kind"] = geocon::shape_kind_name(cs.kind);
    j["size"] = cs.size;
    j["area_count"] = cs.areas.size();
    j["slab_count"] = cs.slabs.size();
    j["areas"] = areas;
    Json slabs = Json::array();
    for (const geocon::Rect& r : cs.slabs) {
        Json lo = Json::array(), hi = Json::array();
        for (int i = 0; i < r.lo.dim; ++i) {
            lo.push_back(r.lo.c[i]);
            hi.push_back(r.hi.c[i]);
        }
        slabs.push_back(Json{{"lo", lo}, {"hi", hi}});
    }
    j["slabs"] = slabs;
    if (!out_path.empty()) write_file(out_path, j.dump(2) + "\n");
    return kExitOk;
}

int cmd_leaders(const std::string& points_path, const std::string& protocol,
                const std::string& fault_shape, double fault_size, int fault_count,
                const std::string& alignment, const std::string& cover_kind, double cover_size,
                const std::string& out_path) {
    const geocon::PointSet ps = load_points(points_path);
    geocon::LeaderSet ls;
    if (protocol == "basic") {
        geocon::FaultModel fm;
        fm.shape = geocon::fault_shape_from_name(fault_shape);
        fm.size = fault_size;
        fm.count = fault_count;
        fm.alignment = geocon::alignment_from_name(alignment);
        fm.validate();
        ls = geocon::select_leaders_basic(ps, fm.diameter());
        std::cout << "D: " << fm.diameter() << "\n";
    } else if (protocol == "generic") {
        const geocon::CoverSet cs =
            geocon::greedy_cover(ps, geocon::shape_kind_from_name(cover_kind), cover_size);
        ls = geocon::select_leaders_generic(cs, ps);
    } else {
        throw std::invalid_argument("protocol must be basic or generic");
    }
    std::cout << "leaders: " << ls.leaders.size() << "\n";
    Json slots = Json::array();
    for (std::size_t i = 0; i < ls.leaders.size(); ++i) {
        std::cout << "  slot " << i << ": process " << ls.leaders[i];
        if (!ls.area_of.empty()) std::cout << " (area " << ls.area_of[i] << ")";
        std::cout << "\n";
        Json slot{{"leader", ls.leaders[i]}};
        if (!ls.area_of.empty()) slot["area"] = ls.area_of[i];
        slots.push_back(slot);
    }
    if (!out_path.empty()) {
        Json j;
        j["schema"] = 1;
        j["origin"] = ls.origin == geocon::LeaderSet::Origin::DistanceD ? "distance-D" : "per-cover-area";
        j["slots"] = slots;
        write_file(out_path, j.dump(2) + "\n");
    }
    return kExitOk;
}

int cmd_run(const std::string& config_path, std::string out_path, const std::string& csv_path,
            bool trace, bool timestamp, bool require_sweep) {
    const Json config = load_json(config_path);
    if (require_sweep && !config.contains("sweep"))
        throw std::invalid_argument("sweep: config has no \"sweep\" section");
    std::vector<geocon::Scenario> cells = geocon::expand_config(config);
    if (out_path.empty() && config.contains("out")) out_path = config.at("out").get<std::string>();

    std::ofstream csv;
    if (!csv_path.empty()) {
        const bool fresh = !std::ifstream(csv_path).good() ||
                           std::ifstream(csv_path, std::ios::ate | std::ios::binary).tellg() == 0;
        csv.open(csv_path, std::ios::app);
        if (!csv) throw std::invalid_argument("cannot write: " + csv_path);
        if (fresh) csv << geocon::metrics_csv_header() << "\n";
    }

    bool any_refused = false, any_violation = false;
    std::ostringstream lines, traces;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (trace) cells[i].collect_trace = true;
        const geocon::RunRecord rec = geocon::execute(cells[i]);
        Json j = geocon::record_to_json(rec);
        if (timestamp) j["timestamp"] = std::time(nullptr);
        lines << j.dump() << "\n";
        if (csv.is_open()) csv << geocon::metrics_csv_row(rec) << "\n";
        if (trace && rec.outcome.trace_complete) traces << geocon::trace_to_jsonl(rec.outcome.trace);
        if (rec.outcome.refused) {
            any_refused = true;
            std::cout << "cell " << i << ": refused: " << rec.outcome.refusal_reason << "\n";
            continue;
        }
        const bool bounds_ok = geocon::verify_message_bound(rec);
        if (!rec.metrics.verdicts.all() || !bounds_ok) any_violation = true;
        std::cout << "cell " << i << ": agreement=" << rec.metrics.verdicts.agreement
                  << " validity=" << rec.metrics.verdicts.validity
                  << " termination=" << rec.metrics.verdicts.termination
                  << " rounds=" << rec.metrics.rounds << " messages=" << rec.metrics.messages_total
                  << " X=" << rec.metrics.x << " f=" << rec.metrics.f << " bounds=" << bounds_ok << "\n";
    }
    if (!out_path.empty()) {
        write_file(out_path, lines.str());
        if (trace) write_file(out_path + ".trace", traces.str());
    }
    if (any_violation) return kExitViolation;
    if (any_refused) return kExitRefused;
    return kExitOk;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, long samples, const std::string& out_path) {
    const geocon::verify::SuiteReport rep = geocon::verify::run_suite(suite, seed, samples);
    for (const auto& p : rep.properties)
        std::cout << (p.pass ? "[PASS] " : "[FAIL] ") << rep.suite << "/" << p.name
                  << (p.detail.empty() ? "" : " — " + p.detail) << "\n";
    if (!out_path.empty()) write_file(out_path, rep.to_json().dump(2) + "\n");
    if (!rep.pass) {
        for (const auto& p : rep.properties)
            if (!p.pass && !p.counterexample.is_null())
                std::cerr << "counterexample " << p.name << ": " << p.counterexample.dump() << "\n";
        return kExitViolation;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"geocon: geoconsensus covers, leader selection, protocol simulation, verification"};
    app.require_subcommand(1);

    std::string points_path, kind = "square", out_path;
    double size = 1.0;
    auto* cover = app.add_subcommand("cover", "greedy cover of a points file");
    cover->add_option("points", points_path, "points file (one point per line)")->required();
    cover->add_option("--kind", kind, "square|circle|cube|sphere");
    cover->add_option("--size", size, "area size (side or diameter)")->required();
    cover->add_option("--out", out_path, "write cover JSON here");

    std::string l_points, l_protocol = "basic", l_fshape = "square", l_alignment = "any";
    std::string l_cover_kind = "square", l_out;
    double l_fsize = 1.0, l_cover_size = 1.0;
    int l_count = 1;
    auto* leaders = app.add_subcommand("leaders", "leader selection for a points file");
    leaders->add_option("points", l_points)->required();
    leaders->add_option("--protocol", l_protocol, "basic|generic");
    leaders->add_option("--fault-shape", l_fshape, "square|circle|cube|sphere");
    leaders->add_option("--fault-size", l_fsize);
    leaders->add_option("--count", l_count, "number of fault areas M");
    leaders->add_option("--alignment", l_alignment, "axis|any");
    leaders->add_option("--cover-kind", l_cover_kind);
    leaders->add_option("--cover-size", l_cover_size);
    leaders->add_option("--out", l_out);

    std::string r_config, r_out, r_csv;
    bool r_trace = false, r_timestamp = false;
    auto* run = app.add_subcommand("run", "execute the scenario(s) in a config file");
    run->add_option("config", r_config)->required();
    run->add_option("--out", r_out, "record file (JSON lines)");
    run->add_option("--csv", r_csv, "append metrics rows to this CSV file");
    run->add_flag("--trace", r_trace, "collect the full message trace");
    run->add_flag("--timestamp", r_timestamp, "stamp records with wall-clock time");

    std::string s_config, s_out, s_csv;
    bool s_timestamp = false;
    auto* sweep = app.add_subcommand("sweep", "expand and execute a sweep config");
    sweep->add_option("config", s_config)->required();
    sweep->add_option("--out", s_out, "record file (JSON lines)");
    sweep->add_option("--csv", s_csv, "append metrics rows to this CSV file");
    sweep->add_flag("--timestamp", s_timestamp, "stamp records with wall-clock time");

    std::string v_suite, v_out;
    std::uint64_t v_seed = 1;
    long v_samples = 0;
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", v_suite, "approx-square|approx-circle|approx-cube|overlap-bounds|psl-exhaustive|end-to-end")
        ->required();
    verify->add_option("--seed", v_seed);
    verify->add_option("--samples", v_samples, "0 = suite default");
    verify->add_option("--out", v_out, "write the JSON report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (cover->parsed()) return cmd_cover(points_path, kind, size, out_path);
        if (leaders->parsed())
            return cmd_leaders(l_points, l_protocol, l_fshape, l_fsize, l_count, l_alignment,
                               l_cover_kind, l_cover_size, l_out);
        if (run->parsed()) return cmd_run(r_config, r_out, r_csv, r_trace, r_timestamp, false);
        if (sweep->parsed()) return cmd_run(s_config, s_out, s_csv, false, s_timestamp, true);
        if (verify->parsed()) return cmd_verify(v_suite, v_seed, v_samples, v_out);
    } catch (const Json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
