#include "searchlight/schedule.hpp"

#include "searchlight/simulate.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace searchlight {

MacroStep MacroStep::move(int guard, const AimDirection& to) {
    MacroStep s;
    s.kind = Kind::Move;
    s.guard = guard;
    s.to = to;
    return s;
}

MacroStep MacroStep::sweep(int guard, const AimDirection& from, const AimDirection& to,
                           std::vector<CellBox> region) {
    MacroStep s;
    s.kind = Kind::Sweep;
    s.guard = guard;
    s.from = from;
    s.to = to;
    s.region = std::move(region);
    return s;
}

MacroStep MacroStep::sweep_parallel(std::vector<int> guards, const AimDirection& from,
                                    const AimDirection& to,
                                    std::vector<std::vector<CellBox>> regions) {
    MacroStep s;
    s.kind = Kind::SweepParallel;
    s.guards = std::move(guards);
    s.from = from;
    s.to = to;
    s.regions = std::move(regions);
    return s;
}

MacroStep MacroStep::hold(const Scalar& seconds) {
    MacroStep s;
    s.kind = Kind::Hold;
    s.hold_seconds = seconds;
    return s;
}

namespace {

/// Cell boxes of the cuboids bounded by any fence the guard owns.
std::vector<CellBox> guard_region(const FencePlan& plan, int guard) {
    std::vector<CellBox> out;
    for (const Cuboid& c : plan.cuboids) {
        bool owned = false;
        for (int fe : c.bounding_fences)
            if (plan.fences[fe].guard == guard) {
                owned = true;
                break;
            }
        if (owned) out.push_back(c.box);
    }
    return out;
}

}  // namespace

MacroSchedule plan_single_guard(const OrthoPolyhedron& p, const Guard& guard) {
    ViabilityReport v = check_viable(p, {guard});
    if (!v.viable) {
        std::ostringstream os;
        os << "instance is not viable with this guard:";
        for (std::size_t i = 0; i < v.uncovered.size() && i < 4; ++i)
            os << " cell(" << v.uncovered[i][0] << "," << v.uncovered[i][1] << ","
               << v.uncovered[i][2] << ")";
        throw ScheduleError(ScheduleErrorKind::NotViable, os.str());
    }
    MacroSchedule m;
    m.initial_aims = {AimDirection::leftmost()};
    m.steps.push_back(
        MacroStep::sweep(0, AimDirection::leftmost(), AimDirection::rightmost()));
    return m;
}

MacroSchedule plan_sequential(const OrthoPolyhedron& p, const FencePlan& plan,
                              const std::vector<Guard>& guards) {
    FenceLemmaReport fl = check_fence_lemma(p, plan, guards);
    if (!fl.ok)
        throw ScheduleError(ScheduleErrorKind::PrerequisiteFailed,
                            "fence illumination check failed: " +
                                fl.violations.front().reason);
    CuboidLemmaReport cl = check_cuboid_lemma(p, plan, guards);
    if (!cl.ok)
        throw ScheduleError(ScheduleErrorKind::PrerequisiteFailed,
                            "cuboid visibility check failed");

    MacroSchedule m;
    for (const Guard& gd : guards) m.initial_aims.push_back(gd.initial_aim);
    for (int gi = 0; gi < static_cast<int>(guards.size()); ++gi) {
        std::vector<CellBox> region = guard_region(plan, gi);
        if (region.empty()) continue;  // fenceless guard: holds its aim
        m.steps.push_back(MacroStep::move(gi, AimDirection::leftmost()));
        m.steps.push_back(MacroStep::sweep(gi, AimDirection::leftmost(),
                                           AimDirection::rightmost(), std::move(region)));
        m.steps.push_back(MacroStep::move(gi, guards[gi].initial_aim));
    }
    return m;
}

ParallelPlan plan_parallel(const OrthoPolyhedron& p, const FencePlan& plan,
                           const std::vector<Guard>& guards) {
    if (guards.empty())
        throw FenceError(FenceErrorKind::ConvexInput,
                         "parallel plan needs at least one notch guard");
    const int r = static_cast<int>(guards.size());
    ParallelPlan out;
    out.guards = guards;  // stationary copies at fence aims
    for (const Guard& gd : guards) {
        Guard sweeper = gd;
        sweeper.initial_aim = AimDirection::leftmost();
        out.guards.push_back(std::move(sweeper));
    }

    MacroSchedule& m = out.schedule;
    for (const Guard& gd : guards) m.initial_aims.push_back(gd.initial_aim);
    std::vector<int> sweepers;
    std::vector<std::vector<CellBox>> regions;
    for (int gi = 0; gi < r; ++gi) {
        m.initial_aims.push_back(AimDirection::leftmost());
        std::vector<CellBox> region = guard_region(plan, gi);
        if (region.empty()) continue;  // fenceless guard: sweeper copy idles
        sweepers.push_back(r + gi);
        regions.push_back(std::move(region));
        // Every notch guard turns through exactly 3/2 pi.
        BlindArc arc = blind_arc(p, guards[gi]);
        if (arc.nonblind_extent != ArcAngle::from_pi(ratio(3, 2)))
            throw std::logic_error("notch guard arc is not 3/2 pi");
    }
    m.steps.push_back(MacroStep::sweep_parallel(std::move(sweepers),
                                                AimDirection::leftmost(),
                                                AimDirection::rightmost(),
                                                std::move(regions)));
    return out;
}

namespace {

struct ArcInfo {
    BlindArc arc;
    ArcAngle left_angle;
};

}  // namespace

Schedule lower(const OrthoPolyhedron& p, const std::vector<Guard>& guards,
               const MacroSchedule& m) {
    const int n = static_cast<int>(guards.size());
    if (static_cast<int>(m.initial_aims.size()) != n)
        throw std::invalid_argument("initial aim count does not match guard count");

    std::vector<ArcInfo> arcs;
    arcs.reserve(guards.size());
    for (const Guard& gd : guards) {
        BlindArc a = blind_arc(p, gd);
        ArcAngle la = aim_angle(gd.axis, a.leftmost);
        arcs.push_back({std::move(a), std::move(la)});
    }
    auto resolve = [&](int gi, const AimDirection& aim) -> Vec2 {
        switch (aim.kind) {
            case AimDirection::Kind::Leftmost: return arcs[gi].arc.leftmost;
            case AimDirection::Kind::Rightmost: return arcs[gi].arc.rightmost;
            default: return aim.dir;
        }
    };
    auto in_arc = [&](int gi, const Vec2& d) {
        ArcAngle off = ccw_sweep(arcs[gi].left_angle, aim_angle(guards[gi].axis, d));
        return off <= arcs[gi].arc.nonblind_extent;
    };

    Schedule sched;
    sched.guards.resize(guards.size());
    std::vector<Vec2> current(guards.size());
    for (int gi = 0; gi < n; ++gi) {
        current[gi] = resolve(gi, m.initial_aims[gi]);
        sched.guards[gi].initial = current[gi];
    }

    Duration cursor{ArcAngle::from_pi(Scalar(0))};
    // Pieces store the raw-plane sense: the angle frame flips for y-axis
    // guards, raw coordinates keep the file format axis-agnostic.
    auto add_piece = [&](int gi, const Vec2& to, bool frame_ccw) -> Duration {
        bool raw_ccw = frame_ccw != (guards[gi].axis == Axis::Y);
        ArcAngle a = ArcAngle::of_direction(current[gi]);
        ArcAngle b = ArcAngle::of_direction(to);
        ArcAngle ext = raw_ccw ? ccw_sweep(a, b) : ccw_sweep(b, a);
        Duration d{ext};
        if (ext.sign() != 0)
            sched.guards[gi].pieces.push_back({cursor, d, current[gi], to, raw_ccw});
        current[gi] = to;
        return d;
    };

    for (const MacroStep& step : m.steps) {
        switch (step.kind) {
            case MacroStep::Kind::Sweep: {
                Vec2 from = resolve(step.guard, step.from);
                Vec2 to = resolve(step.guard, step.to);
                if (!in_arc(step.guard, from) || !in_arc(step.guard, to))
                    throw ScheduleError(ScheduleErrorKind::BlindEndpoint,
                                        "sweep endpoint is a blind direction");
                if (from != current[step.guard])
                    throw std::invalid_argument("sweep does not start at the current aim");
                cursor = cursor + add_piece(step.guard, to, true);
                break;
            }
            case MacroStep::Kind::Move: {
                // Retrace the arc backward to the target.
                cursor = cursor + add_piece(step.guard, resolve(step.guard, step.to), false);
                break;
            }
            case MacroStep::Kind::SweepParallel: {
                Duration longest{ArcAngle::from_pi(Scalar(0))};
                for (int gi : step.guards) {
                    Vec2 from = resolve(gi, step.from);
                    Vec2 to = resolve(gi, step.to);
                    if (!in_arc(gi, from) || !in_arc(gi, to))
                        throw ScheduleError(ScheduleErrorKind::BlindEndpoint,
                                            "sweep endpoint is a blind direction");
                    if (from != current[gi])
                        throw std::invalid_argument(
                            "sweep does not start at the current aim");
                    Duration d = add_piece(gi, to, true);
                    if (longest < d) longest = d;
                }
                cursor = cursor + longest;
                break;
            }
            case MacroStep::Kind::Hold: {
                cursor = cursor + Duration{ArcAngle::from_pi(2 * step.hold_seconds)};
                break;
            }
        }
    }
    sched.total = cursor;
    return sched;
}

// --- sched v1 ---

namespace {

[[noreturn]] void bads(int line, const std::string& msg) {
    std::ostringstream os;
    os << "parse error (line " << line << "): " << msg;
    throw std::runtime_error(os.str());
}

std::string aim_token(const AimDirection& a) {
    switch (a.kind) {
        case AimDirection::Kind::Leftmost: return "L";
        case AimDirection::Kind::Rightmost: return "R";
        default:
            return format_scalar(a.dir.x) + "/" + format_scalar(a.dir.y);
    }
}

std::optional<AimDirection> parse_aim(const std::string& tok) {
    if (tok == "L") return AimDirection::leftmost();
    if (tok == "R") return AimDirection::rightmost();
    std::size_t slash = tok.find('/');
    if (slash == std::string::npos) return std::nullopt;
    auto u = parse_scalar(tok.substr(0, slash)), v = parse_scalar(tok.substr(slash + 1));
    if (!u || !v || (sgn(*u) == 0 && sgn(*v) == 0)) return std::nullopt;
    return AimDirection::concrete({*u, *v});
}

std::string boxes_token(const std::vector<CellBox>& boxes) {
    if (boxes.empty()) return "-";
    std::string out;
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        if (i) out += ";";
        const CellBox& b = boxes[i];
        std::ostringstream os;
        os << b.lo[0] << "," << b.lo[1] << "," << b.lo[2] << "," << b.hi[0] << ","
           << b.hi[1] << "," << b.hi[2];
        out += os.str();
    }
    return out;
}

std::optional<std::vector<CellBox>> parse_boxes(const std::string& tok) {
    std::vector<CellBox> out;
    if (tok == "-") return out;
    std::istringstream ss(tok);
    std::string part;
    while (std::getline(ss, part, ';')) {
        std::istringstream ps(part);
        std::string num;
        std::vector<int> vals;
        while (std::getline(ps, num, ',')) {
            try {
                vals.push_back(std::stoi(num));
            } catch (const std::exception&) {
                return std::nullopt;
            }
        }
        if (vals.size() != 6) return std::nullopt;
        CellBox b{{vals[0], vals[1], vals[2]}, {vals[3], vals[4], vals[5]}};
        if (b.cell_total() <= 0) return std::nullopt;
        out.push_back(b);
    }
    if (out.empty()) return std::nullopt;
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::istringstream ss(s);
    std::string part;
    while (std::getline(ss, part, sep)) out.push_back(part);
    return out;
}

}  // namespace

ScheduleFile parse_sched(std::istream& in) {
    ScheduleFile f;
    std::string line;
    int line_no = 0;
    bool header = false, have_guards = false, in_lowered = false, have_total = false;
    std::vector<Vec2> current;
    std::vector<Duration> last_end;
    std::vector<char> have_start;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> t;
        std::string tok;
        while (ls >> tok) t.push_back(tok);
        if (t.empty()) continue;
        if (!header) {
            if (t.size() != 2 || t[0] != "sched" || t[1] != "v1")
                bads(line_no, "expected header 'sched v1'");
            header = true;
            continue;
        }
        auto need_guard = [&](const std::string& s) -> int {
            int g = -1;
            try {
                g = std::stoi(s);
            } catch (const std::exception&) {
                bads(line_no, "bad guard id '" + s + "'");
            }
            if (g < 0 || g >= f.guard_count) bads(line_no, "guard id out of range");
            return g;
        };
        if (t[0] == "guards") {
            if (t.size() != 2 || have_guards) bads(line_no, "expected one 'guards <n>'");
            f.guard_count = std::stoi(t[1]);
            if (f.guard_count <= 0) bads(line_no, "guard count must be positive");
            f.macro.initial_aims.assign(f.guard_count, AimDirection::leftmost());
            have_guards = true;
        } else if (!have_guards) {
            bads(line_no, "'guards' line must come first");
        } else if (t[0] == "init") {
            if (t.size() != 3) bads(line_no, "expected 'init <guard> <aim>'");
            int g = need_guard(t[1]);
            auto a = parse_aim(t[2]);
            if (!a) bads(line_no, "bad aim '" + t[2] + "'");
            f.macro.initial_aims[g] = *a;
        } else if (t[0] == "sweep") {
            if (t.size() != 4 && !(t.size() == 6 && t[4] == "region"))
                bads(line_no, "expected 'sweep <guard> <from> <to> [region <boxes>]'");
            int g = need_guard(t[1]);
            auto a = parse_aim(t[2]), b = parse_aim(t[3]);
            if (!a || !b) bads(line_no, "bad aim");
            std::vector<CellBox> region;
            if (t.size() == 6) {
                auto boxes = parse_boxes(t[5]);
                if (!boxes || boxes->empty()) bads(line_no, "bad region boxes");
                region = std::move(*boxes);
            }
            f.macro.steps.push_back(MacroStep::sweep(g, *a, *b, std::move(region)));
        } else if (t[0] == "move") {
            if (t.size() != 3) bads(line_no, "expected 'move <guard> <to>'");
            int g = need_guard(t[1]);
            auto a = parse_aim(t[2]);
            if (!a) bads(line_no, "bad aim '" + t[2] + "'");
            f.macro.steps.push_back(MacroStep::move(g, *a));
        } else if (t[0] == "psweep") {
            if (t.size() != 4 && !(t.size() == 6 && t[4] == "regions"))
                bads(line_no,
                     "expected 'psweep <g,g,...> <from> <to> [regions <boxes>|...]'");
            std::vector<int> gs;
            for (const std::string& s : split(t[1], ',')) gs.push_back(need_guard(s));
            if (gs.empty()) bads(line_no, "empty guard list");
            auto a = parse_aim(t[2]), b = parse_aim(t[3]);
            if (!a || !b) bads(line_no, "bad aim");
            std::vector<std::vector<CellBox>> regions;
            if (t.size() == 6) {
                for (const std::string& s : split(t[5], '|')) {
                    auto boxes = parse_boxes(s);
                    if (!boxes) bads(line_no, "bad region boxes");
                    regions.push_back(std::move(*boxes));
                }
                if (regions.size() != gs.size())
                    bads(line_no, "region list count does not match guard list");
            }
            f.macro.steps.push_back(
                MacroStep::sweep_parallel(std::move(gs), *a, *b, std::move(regions)));
        } else if (t[0] == "hold") {
            if (t.size() != 2) bads(line_no, "expected 'hold <seconds>'");
            auto s = parse_scalar(t[1]);
            if (!s || sgn(*s) < 0) bads(line_no, "bad hold duration");
            f.macro.steps.push_back(MacroStep::hold(*s));
        } else if (t[0] == "lowered") {
            if (t.size() != 1) bads(line_no, "'lowered' takes no arguments");
            f.has_lowered = true;
            in_lowered = true;
            f.lowered.guards.resize(f.guard_count);
            current.resize(f.guard_count);
            last_end.assign(f.guard_count, Duration{ArcAngle::from_pi(Scalar(0))});
            have_start.assign(f.guard_count, false);
        } else if (t[0] == "start") {
            if (!in_lowered || t.size() != 3) bads(line_no, "unexpected 'start'");
            int g = need_guard(t[1]);
            auto a = parse_aim(t[2]);
            if (!a || a->kind != AimDirection::Kind::Concrete)
                bads(line_no, "start aim must be concrete");
            current[g] = a->dir;
            f.lowered.guards[g].initial = a->dir;
            have_start[g] = true;
        } else if (t[0] == "total") {
            if (!in_lowered || t.size() != 2) bads(line_no, "unexpected 'total'");
            auto s = parse_scalar(t[1]);
            if (!s || sgn(*s) < 0) bads(line_no, "bad total duration");
            f.lowered.total = Duration{ArcAngle::from_pi(2 * *s)};
            have_total = true;
        } else if (t[0].rfind("@t=", 0) == 0) {
            if (!in_lowered) bads(line_no, "breakpoint before 'lowered'");
            if (t.size() != 4) bads(line_no, "expected '@t=<s> <guard> <aim> ccw|cw'");
            auto s = parse_scalar(t[0].substr(3));
            if (!s || sgn(*s) < 0) bads(line_no, "bad breakpoint time");
            int g = need_guard(t[1]);
            auto a = parse_aim(t[2]);
            if (!a || a->kind != AimDirection::Kind::Concrete)
                bads(line_no, "breakpoint aim must be concrete");
            bool ccw = t[3] == "ccw";
            if (!ccw && t[3] != "cw") bads(line_no, "rotation sense must be ccw or cw");
            // Senses are raw-plane, so the extent is recoverable without
            // knowing the guard's axis.
            Duration start{ArcAngle::from_pi(2 * *s)};
            if (!have_start[g]) bads(line_no, "breakpoint before the guard's 'start'");
            if (start < last_end[g]) bads(line_no, "overlapping pieces for one guard");
            ArcAngle ca = ArcAngle::of_direction(current[g]);
            ArcAngle cb = ArcAngle::of_direction(a->dir);
            ArcAngle ext = ccw ? ccw_sweep(ca, cb) : ccw_sweep(cb, ca);
            Duration d{ext};
            f.lowered.guards[g].pieces.push_back({start, d, current[g], a->dir, ccw});
            last_end[g] = start + d;
            current[g] = a->dir;
        } else {
            bads(line_no, "unknown directive '" + t[0] + "'");
        }
    }
    if (!header) bads(line_no, "missing header");
    if (!have_guards) bads(line_no, "missing 'guards' line");
    if (in_lowered && !have_total) bads(line_no, "lowered timeline missing 'total'");
    return f;
}

ScheduleFile parse_sched_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_sched(in);
}

void serialize_sched(const ScheduleFile& f, std::ostream& out) {
    out << "sched v1\n";
    out << "guards " << f.guard_count << "\n";
    for (int g = 0; g < f.guard_count; ++g)
        out << "init " << g << " " << aim_token(f.macro.initial_aims[g]) << "\n";
    for (const MacroStep& s : f.macro.steps) {
        switch (s.kind) {
            case MacroStep::Kind::Sweep:
                out << "sweep " << s.guard << " " << aim_token(s.from) << " "
                    << aim_token(s.to);
                if (!s.region.empty()) out << " region " << boxes_token(s.region);
                out << "\n";
                break;
            case MacroStep::Kind::Move:
                out << "move " << s.guard << " " << aim_token(s.to) << "\n";
                break;
            case MacroStep::Kind::SweepParallel: {
                out << "psweep ";
                for (std::size_t i = 0; i < s.guards.size(); ++i)
                    out << (i ? "," : "") << s.guards[i];
                out << " " << aim_token(s.from) << " " << aim_token(s.to);
                if (!s.regions.empty()) {
                    out << " regions ";
                    for (std::size_t i = 0; i < s.regions.size(); ++i)
                        out << (i ? "|" : "") << boxes_token(s.regions[i]);
                }
                out << "\n";
                break;
            }
            case MacroStep::Kind::Hold:
                out << "hold " << format_scalar(s.hold_seconds) << "\n";
                break;
        }
    }
    if (f.has_lowered) {
        out << "lowered\n";
        for (int g = 0; g < f.guard_count; ++g)
            out << "start " << g << " " << format_scalar(f.lowered.guards[g].initial.x)
                << "/" << format_scalar(f.lowered.guards[g].initial.y) << "\n";
        out << "total " << format_scalar(f.lowered.total.seconds()) << "\n";
        struct Line {
            Scalar start;
            int guard;
            const SchedulePiece* piece;
        };
        std::vector<Line> lines;
        for (int g = 0; g < f.guard_count; ++g)
            for (const SchedulePiece& pc : f.lowered.guards[g].pieces)
                lines.push_back({pc.start.seconds(), g, &pc});
        std::stable_sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
            return a.start < b.start || (a.start == b.start && a.guard < b.guard);
        });
        for (const Line& ln : lines)
            out << "@t=" << format_scalar(ln.start) << " " << ln.guard << " "
                << format_scalar(ln.piece->to.x) << "/" << format_scalar(ln.piece->to.y)
                << " " << (ln.piece->ccw ? "ccw" : "cw") << "\n";
    }
}

std::string serialize_sched(const ScheduleFile& f) {
    std::ostringstream os;
    serialize_sched(f, os);
    return os.str();
}

}  // namespace searchlight
