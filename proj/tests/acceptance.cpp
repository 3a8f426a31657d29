#include "searchlight/fixtures.hpp"
#include "searchlight/ncl.hpp"
#include "searchlight/polygon.hpp"
#include "searchlight/simulate.hpp"

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace searchlight;

// End-to-end acceptance gate. Each criterion prints one pass/fail line;
// the process exits nonzero when any requested criterion fails.

namespace {

bool searched(const Verdict& v) { return v.outcome == Verdict::Outcome::Searched; }

std::vector<OrthoPolyhedron> notch_fixtures() {
    std::vector<OrthoPolyhedron> out;
    out.push_back(fixture_l_solid());
    out.push_back(fixture_staircase(3));
    out.push_back(fixture_square_torus());
    out.push_back(fixture_offset_slabs());
    out.push_back(fixture_plus_corridors());
    out.push_back(fixture_shadow_solid());
    return out;
}

/// 50 random box-union polyhedra (2..10 boxes, 1..8 notches) shared by
/// criteria 1 and 6.
std::vector<OrthoPolyhedron> random_corpus() {
    std::mt19937 rng(20260824);
    std::vector<OrthoPolyhedron> out;
    for (int i = 0; i < 50; ++i) out.push_back(random_polyhedron(rng, 10, 1, 8));
    return out;
}

// 1: every corpus instance gets one guard per notch, a fully fenced cuboid
// partition, and a sequential plan the verifier accepts, within 60 s.
bool criterion1(std::string& detail) {
    auto t0 = std::chrono::steady_clock::now();
    int ok = 0;
    for (OrthoPolyhedron& p : random_corpus()) {
        FencePlan plan = erect_fences(p);
        std::vector<Guard> guards = place_guards(p, plan);
        if (guards.size() != p.notches.size()) {
            detail = "guard count mismatch";
            return false;
        }
        for (const Cuboid& c : plan.cuboids)
            if (c.bounding_fences.empty()) {
                detail = "cuboid without a bounding fence";
                return false;
            }
        if (!searched(verify_schedule(p, guards, plan_sequential(p, plan, guards)))) {
            detail = "sequential plan rejected";
            return false;
        }
        ++ok;
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream os;
    os << ok << "/50 instances in " << secs << " s";
    detail = os.str();
    return ok == 50 && secs < 60.0;
}

// 2: parallel plans use exactly 2r guards and finish in exactly 0.75 s on
// every fixture.
bool criterion2(std::string& detail) {
    int n = 0;
    for (OrthoPolyhedron& p : notch_fixtures()) {
        FencePlan plan = erect_fences(p);
        std::vector<Guard> guards = place_guards(p, plan);
        ParallelPlan par = plan_parallel(p, plan, guards);
        Schedule low = lower(p, par.guards, par.schedule);
        if (par.guards.size() != 2 * guards.size() ||
            low.total.seconds() != ratio(3, 4) ||
            !searched(verify_schedule(p, par.guards, par.schedule))) {
            detail = "fixture " + std::to_string(n) + " violates the timing contract";
            return false;
        }
        ++n;
    }
    detail = std::to_string(n) + " fixtures at exactly 0.75 s with 2r guards";
    return true;
}

// 3: the continuous oracle at refinements 1, 2, 4 confirms every schedule
// the conservative verifier accepts on the small fixtures.
bool criterion3(std::string& detail) {
    int agreed = 0;
    for (OrthoPolyhedron& p : notch_fixtures()) {
        if (p.grid.interior_cell_count() > 200) continue;
        FencePlan plan = erect_fences(p);
        std::vector<Guard> guards = place_guards(p, plan);

        MacroSchedule seq = plan_sequential(p, plan, guards);
        ParallelPlan par = plan_parallel(p, plan, guards);
        struct Case {
            std::vector<Guard>* g;
            MacroSchedule* m;
        };
        std::vector<Guard> pg = par.guards;
        for (Case cs : {Case{&guards, &seq}, Case{&pg, &par.schedule}}) {
            if (!searched(verify_schedule(p, *cs.g, *cs.m))) continue;
            Schedule low = lower(p, *cs.g, *cs.m);
            for (int k : {1, 2, 4}) {
                if (!searched(brute_force_verify(p, *cs.g, low, k))) {
                    detail = "oracle disagrees at refinement " + std::to_string(k);
                    return false;
                }
                ++agreed;
            }
        }
    }
    detail = std::to_string(agreed) + " oracle runs agree";
    return agreed > 0;
}

// 4: partition and guard bounds plus full coverage on 100 random polygons
// within 30 s.
bool criterion4(std::string& detail) {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937 rng(4242);
    for (int i = 0; i < 100; ++i) {
        Polygon2 poly = random_rectilinear_polygon(rng, 12, 3);
        const int r = poly.reflex_count(), h = poly.hole_count();
        ConvexPartition part = bisector_partition(poly, 0);
        OpenEdgeGuardSet gs = select_open_edge_guards(poly, part, 0);
        bool has_distinguished = false;
        for (int e : gs.guards)
            if (e == 0) has_distinguished = true;
        CoverageReport cov = verify_coverage(poly, part, gs, 50);
        if (static_cast<int>(part.pieces.size()) > r - h + 1 ||
            static_cast<int>(gs.guards.size()) > r - h + 1 || !has_distinguished ||
            !cov.uncovered.empty()) {
            detail = "polygon " + std::to_string(i) + " violates the bounds";
            return false;
        }
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream os;
    os << "100/100 polygons in " << secs << " s";
    detail = os.str();
    return secs < 30.0;
}

// 5: single-guard planning on the viable fixtures, rejection of the
// non-viable one, and open-segment endpoint semantics.
bool criterion5(std::string& detail) {
    OrthoPolyhedron ell = fixture_l_solid();
    FencePlan plan = erect_fences(ell);
    std::vector<Guard> lg = place_guards(ell, plan);
    MacroSchedule single = plan_single_guard(ell, lg[0]);
    if (!searched(verify_schedule(ell, lg, single))) {
        detail = "L-solid single-guard plan rejected";
        return false;
    }
    if (!searched(brute_force_verify(ell, lg, lower(ell, lg, single), 2))) {
        detail = "L-solid single-guard oracle disagrees";
        return false;
    }

    OrthoPolyhedron cube = fixture_unit_cube();
    Guard edge;
    edge.segment = {{Scalar(0), Scalar(0), Scalar(1)}, {Scalar(1), Scalar(0), Scalar(1)},
                    true};
    edge.axis = Axis::X;
    edge.initial_aim = AimDirection::leftmost();
    MacroSchedule cm = plan_single_guard(cube, edge);
    if (!searched(verify_schedule(cube, {edge}, cm)) ||
        !searched(brute_force_verify(cube, {edge}, lower(cube, {edge}, cm), 4))) {
        detail = "convex-box edge guard plan rejected";
        return false;
    }

    Guard shortg;
    shortg.segment = {{Scalar(2), Scalar(0), ratio(1, 4)},
                      {Scalar(2), Scalar(0), ratio(3, 4)},
                      true};
    shortg.axis = Axis::Z;
    shortg.initial_aim = AimDirection::leftmost();
    bool rejected = false;
    try {
        plan_single_guard(ell, shortg);
    } catch (const ScheduleError& e) {
        rejected = e.kind() == ScheduleErrorKind::NotViable;
    }
    if (!rejected) {
        detail = "non-viable guard not rejected";
        return false;
    }

    // open endpoints: a guard along the bottom wing's top edge whose
    // closure endpoint is exactly the reflex notch point must not see into
    // the upper wing through that point
    Guard endpoint;
    endpoint.segment = {{Scalar(1), Scalar(0), Scalar(1)},
                        {Scalar(2), Scalar(0), Scalar(1)},
                        true};
    endpoint.axis = Axis::X;
    endpoint.initial_aim = AimDirection::leftmost();
    ViabilityReport vr = check_viable(ell, {endpoint});
    bool upper_uncovered = false;
    for (const auto& c : vr.uncovered)
        if (c[2] >= 1) upper_uncovered = true;
    if (vr.viable || !upper_uncovered) {
        detail = "endpoint guard unexpectedly sees past the notch";
        return false;
    }
    bool endpoint_rejected = false;
    try {
        plan_single_guard(ell, endpoint);
    } catch (const ScheduleError& e) {
        endpoint_rejected = e.kind() == ScheduleErrorKind::NotViable;
    }
    if (!endpoint_rejected) {
        detail = "endpoint guard plan not rejected";
        return false;
    }
    detail = "single-guard plans verified; non-viable and endpoint guards rejected";
    return true;
}

// 6: exhaustiveness of every corpus notch guard, a certified witness on
// the shadow fixture, and interval stability of the event sweep.
bool criterion6(std::string& detail) {
    int guards_total = 0, non_exhaustive = 0;
    Vec2 counter_dir;
    for (OrthoPolyhedron& p : random_corpus()) {
        FencePlan plan = erect_fences(p);
        for (const Guard& gd : place_guards(p, plan)) {
            ++guards_total;
            ExhaustiveReport rep = is_exhaustive_guard(p, gd);
            if (!rep.exhaustive) {
                if (non_exhaustive == 0) counter_dir = rep.witness_direction;
                ++non_exhaustive;
            }
        }
    }
    bool clause_corpus = non_exhaustive == 0;

    OrthoPolyhedron shadow = fixture_shadow_solid();
    Guard sg;
    sg.segment = {{Scalar(2), Scalar(0), Scalar(1)}, {Scalar(2), Scalar(1), Scalar(1)},
                  true};
    sg.axis = Axis::Y;
    sg.initial_aim = AimDirection::concrete({Scalar(-1), Scalar(0)});
    ExhaustiveReport srep = is_exhaustive_guard(shadow, sg);
    bool clause_shadow = !srep.exhaustive && srep.certified;

    // interval stability: random inter-event directions match the midpoint
    std::mt19937 rng(77);
    int stable = 0, violations = 0, budget = 100;
    OrthoPolyhedron ell = fixture_l_solid();
    FencePlan lplan = erect_fences(ell);
    std::vector<Guard> lg = place_guards(ell, lplan);
    for (const auto& [poly, gd] :
         {std::pair<const OrthoPolyhedron*, const Guard*>{&shadow, &sg},
          std::pair<const OrthoPolyhedron*, const Guard*>{&ell, &lg[0]}}) {
        EventSet ev = enumerate_events(*poly, *gd);
        auto exh_at = [&](const Vec2& d) -> int {
            try {
                return compute_searchplane(*poly, *gd, d).exhaustive ? 1 : 0;
            } catch (const BlindDirectionError&) {
                return 2;
            }
        };
        for (std::size_t i = 0; i + 1 < ev.events.size() && stable + violations < budget;
             ++i) {
            const Vec2& a = ev.events[i].dir;
            const Vec2& b = ev.events[i + 1].dir;
            int want = exh_at(mediant_direction(a, b));
            for (int t = 0; t < 9 && stable + violations < budget; ++t) {
                long num = 1 + static_cast<long>(rng() % 9), den = 11;
                Vec2 d = primitive_direction(
                    {a.x * (den - num) + b.x * num, a.y * (den - num) + b.y * num});
                (exh_at(d) == want ? stable : violations)++;
            }
        }
    }
    bool clause_stability = violations == 0 && stable == budget;

    std::ostringstream os;
    os << "corpus " << (guards_total - non_exhaustive) << "/" << guards_total
       << " guards exhaustive";
    if (!clause_corpus)
        os << " (counterexample aim (" << format_scalar(counter_dir.x) << ","
           << format_scalar(counter_dir.y) << "))";
    os << "; shadow witness " << (clause_shadow ? "found" : "MISSING") << "; stability "
       << stable << "/" << budget;
    detail = os.str();
    return clause_corpus && clause_shadow && clause_stability;
}

// 7: the naive inward-sweep plan on the crossing corridors is rejected.
bool criterion7(std::string& detail) {
    OrthoPolyhedron p = fixture_plus_corridors();
    Guard ga;
    ga.segment = {{Scalar(0), Scalar(1), Scalar(1)}, {Scalar(0), Scalar(2), Scalar(1)},
                  true};
    ga.axis = Axis::Y;
    ga.initial_aim = AimDirection::leftmost();
    Guard gb;
    gb.segment = {{Scalar(1), Scalar(0), Scalar(1)}, {Scalar(2), Scalar(0), Scalar(1)},
                  true};
    gb.axis = Axis::X;
    gb.initial_aim = AimDirection::leftmost();
    std::vector<Guard> guards{ga, gb};
    MacroSchedule naive;
    naive.initial_aims = {AimDirection::leftmost(), AimDirection::leftmost()};
    naive.steps.push_back(MacroStep::sweep(0, AimDirection::leftmost(),
                                           AimDirection::rightmost(),
                                           {CellBox{{0, 1, 0}, {3, 2, 1}}}));
    naive.steps.push_back(MacroStep::sweep(1, AimDirection::leftmost(),
                                           AimDirection::rightmost(),
                                           {CellBox{{1, 0, 0}, {2, 3, 1}}}));
    Verdict v = verify_schedule(p, guards, naive);
    if (searched(v)) {
        detail = "naive plan wrongly accepted";
        return false;
    }
    detail = "rejected: " + v.diagnostic;
    return true;
}

// 8: serialization soundness on 500 random asynchronous schedules and a
// double-checked reachability decision per machine.
bool criterion8(std::string& detail) {
    std::mt19937 rng(8888);
    int done = 0;
    while (done < 500) {
        ConstraintGraph g = random_constraint_graph(rng, 2 + 2 * (done % 2));
        Configuration start;
        if (!find_legal_config(g, start)) continue;
        AsyncSchedule s = random_async_schedule(rng, g, start, 10);
        std::vector<int> moves;
        try {
            moves = serialize_async(g, start, s);
        } catch (const NclError& e) {
            detail = std::string("serialization failed: ") + e.what();
            return false;
        }
        if (moves.size() != s.events.size()) {
            detail = "move count mismatch";
            return false;
        }
        Configuration cur = start;
        for (int e : moves) {
            cur.orientation[e] = reversed(cur.orientation[e]);
            if (!is_legal_config(g, cur).legal) {
                detail = "illegal serialized prefix";
                return false;
            }
        }
        if (cur.orientation != async_final_config(start, s).orientation) {
            detail = "final configuration mismatch";
            return false;
        }
        // ee_decide internally re-runs its search with a shuffled
        // expansion order and throws on any disagreement
        try {
            (void)ee_decide(g);
        } catch (const std::logic_error& e) {
            detail = std::string("search self-check failed: ") + e.what();
            return false;
        }
        ++done;
    }
    detail = "500/500 schedules serialized; decisions double-checked";
    return true;
}

// 9: every file format round-trips bit-exactly and deterministically.
bool criterion9(std::string& detail) {
    std::mt19937 rng(909);
    for (int i = 0; i < 10; ++i) {
        OrthoPolyhedron p = random_polyhedron(rng);
        std::string s1 = serialize_orthopoly(p.input);
        std::istringstream in(s1);
        if (serialize_orthopoly(parse_orthopoly(in)) != s1 ||
            serialize_orthopoly(p.input) != s1) {
            detail = "polyhedron format round-trip failed";
            return false;
        }

        PolygonInstance pi{random_rectilinear_polygon(rng), 0};
        std::string q1 = serialize_poly2(pi);
        std::istringstream qin(q1);
        if (serialize_poly2(parse_poly2(qin)) != q1) {
            detail = "polygon format round-trip failed";
            return false;
        }

        ConstraintGraph g = random_constraint_graph(rng, 4);
        NclFile nf;
        nf.graph = g;
        if (find_legal_config(g, nf.config)) {
            nf.has_config = true;
            nf.schedule = random_async_schedule(rng, g, nf.config, 6);
        }
        std::string n1 = serialize_ncl(nf);
        std::istringstream nin(n1);
        if (serialize_ncl(parse_ncl(nin)) != n1) {
            detail = "machine format round-trip failed";
            return false;
        }
    }
    for (OrthoPolyhedron& p : notch_fixtures()) {
        FencePlan plan = erect_fences(p);
        std::vector<Guard> guards = place_guards(p, plan);
        ScheduleFile f;
        f.guard_count = static_cast<int>(guards.size());
        f.macro = plan_sequential(p, plan, guards);
        f.lowered = lower(p, guards, f.macro);
        f.has_lowered = true;
        std::string s1 = serialize_sched(f);
        std::istringstream in(s1);
        if (serialize_sched(parse_sched(in)) != s1 || serialize_sched(f) != s1) {
            detail = "schedule format round-trip failed";
            return false;
        }
    }
    detail = "all four formats round-trip bit-exactly";
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    using Criterion = std::function<bool(std::string&)>;
    const Criterion criteria[] = {criterion1, criterion2, criterion3,
                                  criterion4, criterion5, criterion6,
                                  criterion7, criterion8, criterion9};
    const char* names[] = {
        "random-corpus sequential pipeline",
        "parallel plan timing (0.75 s, 2r guards)",
        "continuous-oracle agreement (k = 1, 2, 4)",
        "polygon partition and edge-guard coverage",
        "single-guard planning and endpoint semantics",
        "guard exhaustiveness",
        "recontamination negative control",
        "asynchronous serialization and reachability",
        "format round-trips and determinism",
    };

    int only = argc > 1 ? std::atoi(argv[1]) : 0;
    int failures = 0;
    for (int i = 1; i <= 9; ++i) {
        if (only != 0 && i != only) continue;
        std::string detail;
        bool ok = false;
        try {
            ok = criteria[i - 1](detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::cout << "criterion " << i << " (" << names[i - 1] << "): "
                  << (ok ? "PASS" : "FAIL");
        if (!detail.empty()) std::cout << " - " << detail;
        std::cout << "\n";
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
