#include "searchlight/fixtures.hpp"
#include "searchlight/simulate.hpp"

#include <doctest.h>

#include <sstream>

using namespace searchlight;

namespace {
/// Lowered timelines must respect the speed cap (extent = 2*pi * time),
/// keep each guard's pieces disjoint and ordered, and stay within [0, T].
void check_timeline_invariants(const Schedule& low) {
    CHECK(low.total.radians.sign() >= 0);
    for (const GuardTimeline& tl : low.guards) {
        Duration prev_end{ArcAngle{}};
        for (const SchedulePiece& pc : tl.pieces) {
            CHECK(pc.extent.radians.sign() > 0);
            CHECK(pc.start.seconds() >= prev_end.seconds());
            prev_end = Duration{pc.start.radians + pc.extent.radians};
            CHECK(prev_end.seconds() <= low.total.seconds());
            CHECK(pc.from != pc.to);
        }
    }
}
}  // namespace

TEST_CASE("sequential plan for the L-solid takes 1.5 seconds") {
    OrthoPolyhedron p = fixture_l_solid();
    FencePlan plan = erect_fences(p);
    std::vector<Guard> guards = place_guards(p, plan);
    MacroSchedule seq = plan_sequential(p, plan, guards);
    CHECK(seq.steps.size() == 3);  // move to leftmost, sweep, move back
    Schedule low = lower(p, guards, seq);
    CHECK(low.total.seconds() == ratio(3, 2));
    check_timeline_invariants(low);
}

TEST_CASE("parallel plans always take 0.75 seconds with doubled guards") {
    for (OrthoPolyhedron p : {fixture_l_solid(), fixture_staircase(3),
                              fixture_square_torus(), fixture_offset_slabs(),
                              fixture_plus_corridors(), fixture_shadow_solid()}) {
        FencePlan plan = erect_fences(p);
        std::vector<Guard> guards = place_guards(p, plan);
        ParallelPlan par = plan_parallel(p, plan, guards);
        CHECK(par.guards.size() == 2 * guards.size());
        Schedule low = lower(p, par.guards, par.schedule);
        CHECK(low.total.seconds() == ratio(3, 4));
        check_timeline_invariants(low);
        // at most one step: everything happens in the one parallel sweep
        CHECK(par.schedule.steps.size() == 1);
    }
}

TEST_CASE("single guard plan on the L-solid") {
    OrthoPolyhedron p = fixture_l_solid();
    FencePlan plan = erect_fences(p);
    std::vector<Guard> guards = place_guards(p, plan);
    MacroSchedule single = plan_single_guard(p, guards[0]);
    Schedule low = lower(p, guards, single);
    CHECK(low.total.seconds() == ratio(3, 4));
    check_timeline_invariants(low);
}

TEST_CASE("a guard that cannot see everything is rejected") {
    OrthoPolyhedron p = fixture_l_solid();
    Guard shortg;
    shortg.segment = {{Scalar(2), Scalar(0), ratio(1, 4)},
                      {Scalar(2), Scalar(0), ratio(3, 4)},
                      true};
    shortg.axis = Axis::Z;
    shortg.initial_aim = AimDirection::leftmost();
    CHECK_FALSE(check_viable(p, {shortg}).viable);
    try {
        plan_single_guard(p, shortg);
        FAIL("expected a viability rejection");
    } catch (const ScheduleError& e) {
        CHECK(e.kind() == ScheduleErrorKind::NotViable);
    }
}

TEST_CASE("schedule files round-trip bit-exactly") {
    for (OrthoPolyhedron p :
         {fixture_l_solid(), fixture_staircase(3), fixture_plus_corridors()}) {
        FencePlan plan = erect_fences(p);
        std::vector<Guard> guards = place_guards(p, plan);

        ScheduleFile f;
        f.guard_count = static_cast<int>(guards.size());
        f.macro = plan_sequential(p, plan, guards);
        f.lowered = lower(p, guards, f.macro);
        f.has_lowered = true;
        std::string s1 = serialize_sched(f);
        std::istringstream in(s1);
        ScheduleFile f2 = parse_sched(in);
        CHECK(serialize_sched(f2) == s1);
        CHECK(serialize_sched(f) == s1);  // reruns byte-identical

        ParallelPlan par = plan_parallel(p, plan, guards);
        ScheduleFile g;
        g.guard_count = static_cast<int>(par.guards.size());
        g.macro = par.schedule;
        g.lowered = lower(p, par.guards, par.schedule);
        g.has_lowered = true;
        std::string t1 = serialize_sched(g);
        std::istringstream tin(t1);
        CHECK(serialize_sched(parse_sched(tin)) == t1);
    }
}

TEST_CASE("schedule parser rejects structural errors") {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return parse_sched(in);
    };
    CHECK_THROWS(parse("sched v2\n"));
    CHECK_THROWS(parse("sched v1\nguards 1\nsweep 1 L R\n"));  // guard out of range
    // a lowered breakpoint before the guard's start line
    CHECK_THROWS(parse("sched v1\nguards 1\ninit 0 L\nlowered\ntotal 1\n"
                       "@t=0 0 1/1 ccw\n"));
}
