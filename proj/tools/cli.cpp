#include "searchlight/fixtures.hpp"
#include "searchlight/ncl.hpp"
#include "searchlight/polygon.hpp"
#include "searchlight/simulate.hpp"

#include <CLI11.hpp>

#include <array>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

using namespace searchlight;

namespace {

/// Exit status contract: 0 = success / SEARCHED / true, 1 = FAILED /
/// false, 2 = bad input or usage.
constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;

const char* axis_letter(Axis a) {
    switch (a) {
        case Axis::X: return "x";
        case Axis::Y: return "y";
        default: return "z";
    }
}

OrthoPolyhedron load_polyhedron(const std::string& path) {
    return validate_polyhedron(parse_orthopoly_file(path));
}

/// Reconstructs the guard set a schedule file refers to from its guard
/// count: r placed guards, their parallel doubling (2r), or a single
/// selected guard.
std::vector<Guard> guards_for_schedule(const OrthoPolyhedron& p, const FencePlan& plan,
                                       const ScheduleFile& f, int single_guard) {
    std::vector<Guard> placed = place_guards(p, plan);
    const int r = static_cast<int>(placed.size());
    if (f.guard_count == r) return placed;
    if (f.guard_count == 2 * r) {
        std::vector<Guard> doubled = placed;
        for (const Guard& gd : placed) {
            Guard sweeper = gd;
            sweeper.initial_aim = AimDirection::leftmost();
            doubled.push_back(std::move(sweeper));
        }
        return doubled;
    }
    if (f.guard_count == 1) {
        if (single_guard < 0 || single_guard >= r)
            throw std::runtime_error("schedule uses one guard; pass --guard <id>");
        return {placed[single_guard]};
    }
    throw std::runtime_error("schedule guard count matches no known guard set");
}

std::string verdict_line(const Verdict& v) {
    if (v.outcome == Verdict::Outcome::Searched) return "SEARCHED";
    std::string s = "FAILED";
    if (!v.diagnostic.empty()) s += ": " + v.diagnostic;
    return s;
}

int cmd_validate(const std::string& path) {
    OrthoPolyhedron p = load_polyhedron(path);
    std::cout << "valid: cells=" << p.grid.interior_cell_count()
              << " notches=" << p.notches.size() << " genus=" << p.genus << "\n";
    return kOk;
}

int cmd_genus(const std::string& path) {
    std::cout << load_polyhedron(path).genus << "\n";
    return kOk;
}

int cmd_notches(const std::string& path) {
    OrthoPolyhedron p = load_polyhedron(path);
    std::cout << p.notches.size() << "\n";
    for (std::size_t i = 0; i < p.notches.size(); ++i) {
        Segment3 s = notch_segment(p.grid, p.notches[i]);
        std::cout << "notch " << i << " axis=" << axis_letter(p.notches[i].axis) << " ("
                  << format_scalar(s.a.x) << "," << format_scalar(s.a.y) << ","
                  << format_scalar(s.a.z) << ")-(" << format_scalar(s.b.x) << ","
                  << format_scalar(s.b.y) << "," << format_scalar(s.b.z) << ")\n";
    }
    return kOk;
}

int cmd_fences(const std::string& path) {
    OrthoPolyhedron p = load_polyhedron(path);
    FencePlan plan = erect_fences(p);
    int effective = 0;
    for (std::size_t i = 0; i < plan.fences.size(); ++i)
        if (plan.fences[i].merged_into < 0) ++effective;
    std::cout << "fences=" << plan.fences.size() << " effective=" << effective
              << " cuboids=" << plan.cuboids.size() << "\n";
    for (std::size_t i = 0; i < plan.cuboids.size(); ++i) {
        const Cuboid& c = plan.cuboids[i];
        std::cout << "cuboid " << i << " [" << c.box.lo[0] << "," << c.box.lo[1] << ","
                  << c.box.lo[2] << ")x[" << c.box.hi[0] << "," << c.box.hi[1] << ","
                  << c.box.hi[2] << ") fences";
        for (int fe : c.bounding_fences) std::cout << " " << fe;
        std::cout << "\n";
    }
    return kOk;
}

int cmd_plan(const std::string& path, const std::string& mode, int guard_id,
             const std::string& out_path) {
    OrthoPolyhedron p = load_polyhedron(path);
    ScheduleFile f;
    std::vector<Guard> guards;
    if (mode == "single") {
        FencePlan plan = erect_fences(p);
        std::vector<Guard> placed = place_guards(p, plan);
        if (guard_id < 0 || guard_id >= static_cast<int>(placed.size()))
            throw std::runtime_error("--guard out of range");
        guards = {placed[guard_id]};
        f.macro = plan_single_guard(p, guards[0]);
    } else if (mode == "sequential") {
        FencePlan plan = erect_fences(p);
        guards = place_guards(p, plan);
        f.macro = plan_sequential(p, plan, guards);
    } else if (mode == "parallel") {
        FencePlan plan = erect_fences(p);
        std::vector<Guard> placed = place_guards(p, plan);
        ParallelPlan par = plan_parallel(p, plan, placed);
        guards = par.guards;
        f.macro = par.schedule;
    } else {
        throw CLI::ValidationError("--mode", "unknown mode '" + mode + "'");
    }
    f.guard_count = static_cast<int>(guards.size());
    f.lowered = lower(p, guards, f.macro);
    f.has_lowered = true;
    std::cout << "guards=" << f.guard_count << " steps=" << f.macro.steps.size()
              << "\nT = " << format_decimal(f.lowered.total.seconds(), 2) << " s\n";
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        serialize_sched(f, out);
    } else {
        serialize_sched(f, std::cout);
    }
    return kOk;
}

int cmd_verify(const std::string& poly_path, const std::string& sched_path,
               int single_guard) {
    OrthoPolyhedron p = load_polyhedron(poly_path);
    ScheduleFile f = parse_sched_file(sched_path);
    FencePlan plan = erect_fences(p);
    std::vector<Guard> guards = guards_for_schedule(p, plan, f, single_guard);
    Verdict v = verify_schedule(p, guards, f.macro);
    std::cout << verdict_line(v) << "\n";
    if (f.has_lowered)
        std::cout << "T = " << format_decimal(f.lowered.total.seconds(), 2) << " s\n";
    return v.outcome == Verdict::Outcome::Searched ? kOk : kNegative;
}

int cmd_oracle_verify(const std::string& poly_path, const std::string& sched_path,
                      int refine, int single_guard) {
    OrthoPolyhedron p = load_polyhedron(poly_path);
    ScheduleFile f = parse_sched_file(sched_path);
    if (!f.has_lowered)
        throw std::runtime_error("schedule file has no lowered timeline");
    FencePlan plan = erect_fences(p);
    std::vector<Guard> guards = guards_for_schedule(p, plan, f, single_guard);
    Verdict v = brute_force_verify(p, guards, f.lowered, refine);
    std::cout << verdict_line(v) << "\n";
    if (v.outcome != Verdict::Outcome::Searched)
        std::cout << "witness cell (" << v.witness[0] << "," << v.witness[1] << ","
                  << v.witness[2] << ")\n";
    return v.outcome == Verdict::Outcome::Searched ? kOk : kNegative;
}

int cmd_polygon_guards(const std::string& path, int density) {
    PolygonInstance inst = parse_poly2_file(path);
    ConvexPartition part = bisector_partition(inst.polygon, inst.distinguished_edge);
    OpenEdgeGuardSet gs =
        select_open_edge_guards(inst.polygon, part, inst.distinguished_edge);
    CoverageReport cov = verify_coverage(inst.polygon, part, gs, density);
    std::cout << "reflex=" << inst.polygon.reflex_count()
              << " holes=" << inst.polygon.hole_count() << " pieces=" << part.pieces.size()
              << " guards=" << gs.guards.size() << "\n";
    std::cout << "guard edges:";
    for (int e : gs.guards) std::cout << " " << e;
    std::cout << "\nsamples=" << cov.samples << " uncovered=" << cov.uncovered.size()
              << "\n";
    return cov.uncovered.empty() ? kOk : kNegative;
}

int cmd_exhaustive(const std::string& path, int guard_id) {
    OrthoPolyhedron p = load_polyhedron(path);
    FencePlan plan = erect_fences(p);
    std::vector<Guard> guards = place_guards(p, plan);
    if (guard_id < 0 || guard_id >= static_cast<int>(guards.size()))
        throw std::runtime_error("--guard out of range");
    ExhaustiveReport r = is_exhaustive_guard(p, guards[guard_id]);
    if (r.exhaustive) {
        std::cout << "exhaustive directions_checked=" << r.directions_checked << "\n";
        return kOk;
    }
    std::cout << "not exhaustive: direction (" << format_scalar(r.witness_direction.x)
              << "," << format_scalar(r.witness_direction.y) << ")";
    if (r.certified)
        std::cout << " point (" << format_scalar(r.witness_point.x) << ","
                  << format_scalar(r.witness_point.y) << ","
                  << format_scalar(r.witness_point.z) << ")";
    std::cout << "\n";
    return kNegative;
}

int cmd_ncl(const std::string& action, const std::string& path) {
    NclFile f = parse_ncl_file(path);
    if (action == "check") {
        if (!f.has_config)
            throw std::runtime_error("machine file has no start configuration");
        AsyncCheck c = check_async_schedule(f.graph, f.config, f.schedule);
        if (c.legal) {
            std::cout << "legal events=" << f.schedule.events.size() << "\n";
            return kOk;
        }
        std::cout << "illegal at t=" << format_scalar(c.violation_time) << " vertex "
                  << c.violating_vertex << "\n";
        return kNegative;
    }
    if (action == "serialize") {
        if (!f.has_config)
            throw std::runtime_error("machine file has no start configuration");
        std::vector<int> moves = serialize_async(f.graph, f.config, f.schedule);
        std::cout << "moves";
        for (int e : moves) std::cout << " " << e;
        std::cout << "\n";
        return kOk;
    }
    if (action == "decide") {
        EeDecision d = ee_decide(f.graph);
        std::cout << (d.reachable ? "true" : "false");
        if (d.restriction_violated) std::cout << " (restriction violated)";
        std::cout << "\n";
        if (d.reachable) {
            std::cout << "moves";
            for (int e : d.moves) std::cout << " " << e;
            std::cout << "\n";
        }
        return d.reachable ? kOk : kNegative;
    }
    throw CLI::ValidationError("action", "unknown action '" + action + "'");
}

/// Boundary facets as quads split into triangles; fence facets get their
/// own material group for inspection.
int cmd_export(const std::string& path, const std::string& out_path) {
    OrthoPolyhedron p = load_polyhedron(path);
    const GridComplex& g = p.grid;
    std::map<FacetId, int> fence_of;
    try {
        FencePlan plan = erect_fences(p);
        for (const auto& [fid, fe] : plan.facet_fence) fence_of[fid] = fe;
    } catch (const FenceError&) {
        // convex input: no fences to draw
    }
    std::ostringstream obj;
    std::map<std::array<std::string, 3>, int> vertex_ids;
    auto vid = [&](const Point3& pt) {
        std::array<std::string, 3> key{format_decimal(pt.x, 9), format_decimal(pt.y, 9),
                                       format_decimal(pt.z, 9)};
        auto it = vertex_ids.find(key);
        if (it != vertex_ids.end()) return it->second;
        int id = static_cast<int>(vertex_ids.size()) + 1;
        vertex_ids[key] = id;
        obj << "v " << key[0] << " " << key[1] << " " << key[2] << "\n";
        return id;
    };
    std::ostringstream faces_boundary, faces_fence;
    auto emit = [&](std::ostringstream& os, const FacetId& f) {
        Point3 lo = g.facet_min(f), hi = g.facet_max(f);
        const auto oa = other_axes(f.axis);
        Point3 a = lo, b = lo, c = hi, d = lo;
        b[oa[0]] = hi[oa[0]];
        d[oa[1]] = hi[oa[1]];
        int va = vid(a), vb = vid(b), vc = vid(c), vd = vid(d);
        os << "f " << va << " " << vb << " " << vc << "\n";
        os << "f " << va << " " << vc << " " << vd << "\n";
    };
    for (Axis ax : {Axis::X, Axis::Y, Axis::Z}) {
        const auto oa = other_axes(ax);
        int nu = g.cell_count(oa[0]), nv = g.cell_count(oa[1]);
        int np = static_cast<int>(g.coords[axis_index(ax)].size());
        for (int pl = 0; pl < np; ++pl)
            for (int v = 0; v < nv; ++v)
                for (int u = 0; u < nu; ++u) {
                    FacetId f{ax, pl, u, v};
                    FacetState st = g.facet_state(f);
                    if (st == FacetState::Boundary)
                        emit(faces_boundary, f);
                    else if (st == FacetState::Internal && fence_of.count(f))
                        emit(faces_fence, f);
                }
    }
    std::ostringstream out;
    out << "# orthogonal polyhedron export\n";
    out << obj.str();
    out << "usemtl boundary\n" << faces_boundary.str();
    if (!faces_fence.str().empty()) out << "usemtl fence\n" << faces_fence.str();
    if (!out_path.empty()) {
        std::ofstream of(out_path);
        if (!of) throw std::runtime_error("cannot write " + out_path);
        of << out.str();
    } else {
        std::cout << out.str();
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"planning and verification toolkit for searchlight schedules on "
                 "orthogonal polyhedra"};
    app.require_subcommand(1);

    std::string path, sched_path, out_path, mode = "sequential", ncl_action;
    int guard_id = 0, refine = 1, density = 50;
    bool want_obj = false;

    auto* validate = app.add_subcommand("validate", "check a polyhedron file");
    validate->add_option("file", path)->required();
    auto* genus_cmd = app.add_subcommand("genus", "print the surface genus");
    genus_cmd->add_option("file", path)->required();
    auto* notches_cmd = app.add_subcommand("notches", "list reflex edges");
    notches_cmd->add_option("file", path)->required();
    auto* fences_cmd = app.add_subcommand("fences", "print the fence partition");
    fences_cmd->add_option("file", path)->required();
    auto* plan = app.add_subcommand("plan", "compute a search schedule");
    plan->add_option("file", path)->required();
    plan->add_option("--mode", mode, "sequential|parallel|single");
    plan->add_option("--guard", guard_id, "guard id for --mode single");
    plan->add_option("-o,--output", out_path, "schedule file to write");
    auto* verify = app.add_subcommand("verify", "replay a macro schedule");
    verify->add_option("file", path)->required();
    verify->add_option("schedule", sched_path)->required();
    verify->add_option("--guard", guard_id, "guard id for single-guard schedules");
    auto* oracle = app.add_subcommand("oracle-verify", "refined continuous replay");
    oracle->add_option("file", path)->required();
    oracle->add_option("schedule", sched_path)->required();
    oracle->add_option("--refine", refine, "subdivisions per cell axis")
        ->check(CLI::PositiveNumber);
    oracle->add_option("--guard", guard_id, "guard id for single-guard schedules");
    auto* pg = app.add_subcommand("polygon-guards", "2D edge-guard partition");
    pg->add_option("file", path)->required();
    pg->add_option("--density", density, "coverage sampling lattice size")
        ->check(CLI::PositiveNumber);
    auto* exh = app.add_subcommand("exhaustive", "test a guard for exhaustiveness");
    exh->add_option("file", path)->required();
    exh->add_option("--guard", guard_id, "placed guard id")->required();
    auto* ncl_cmd = app.add_subcommand("ncl", "constraint-logic machines");
    ncl_cmd->add_option("action", ncl_action, "check|serialize|decide")->required();
    ncl_cmd->add_option("file", path)->required();
    auto* exp = app.add_subcommand("export", "write inspection geometry");
    exp->add_option("file", path)->required();
    exp->add_flag("--obj", want_obj, "Wavefront OBJ output");
    exp->add_option("-o,--output", out_path, "file to write");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? kInputError : kOk;
    }

    try {
        if (validate->parsed()) return cmd_validate(path);
        if (genus_cmd->parsed()) return cmd_genus(path);
        if (notches_cmd->parsed()) return cmd_notches(path);
        if (fences_cmd->parsed()) return cmd_fences(path);
        if (plan->parsed()) return cmd_plan(path, mode, guard_id, out_path);
        if (verify->parsed()) return cmd_verify(path, sched_path, guard_id);
        if (oracle->parsed())
            return cmd_oracle_verify(path, sched_path, refine, guard_id);
        if (pg->parsed()) return cmd_polygon_guards(path, density);
        if (exh->parsed()) return cmd_exhaustive(path, guard_id);
        if (ncl_cmd->parsed()) return cmd_ncl(ncl_action, path);
        if (exp->parsed()) {
            if (!want_obj) throw std::runtime_error("export requires --obj");
            return cmd_export(path, out_path);
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
