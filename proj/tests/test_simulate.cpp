#include "searchlight/fixtures.hpp"
#include "searchlight/simulate.hpp"

#include <doctest.h>

using namespace searchlight;

namespace {
bool searched(const Verdict& v) { return v.outcome == Verdict::Outcome::Searched; }

void closed_loop(OrthoPolyhedron& p) {
    FencePlan plan = erect_fences(p);
    std::vector<Guard> guards = place_guards(p, plan);

    MacroSchedule seq = plan_sequential(p, plan, guards);
    CHECK(searched(verify_schedule(p, guards, seq)));
    Schedule low = lower(p, guards, seq);
    for (int k : {1, 2}) CHECK(searched(brute_force_verify(p, guards, low, k)));

    ParallelPlan par = plan_parallel(p, plan, guards);
    CHECK(searched(verify_schedule(p, par.guards, par.schedule)));
    Schedule plow = lower(p, par.guards, par.schedule);
    CHECK(plow.total.seconds() == ratio(3, 4));
    CHECK(searched(brute_force_verify(p, par.guards, plow, 1)));
}
}  // namespace

TEST_CASE("planned schedules clear every fixture") {
    for (OrthoPolyhedron p :
         {fixture_l_solid(), fixture_staircase(3), fixture_plus_corridors()}) {
        closed_loop(p);
    }
}

TEST_CASE("initial state is fully contaminated") {
    OrthoPolyhedron p = fixture_l_solid();
    FencePlan plan = erect_fences(p);
    std::vector<Guard> guards = place_guards(p, plan);
    ContaminationState st = init_state(p, guards, {guards[0].initial_aim});
    CHECK(st.contaminated_count() == 3);
    CHECK_FALSE(st.lit.empty());
    TargetRegion ball{{ratio(1, 2), ratio(1, 2), ratio(1, 2)}, ratio(1, 4)};
    CHECK_FALSE(is_region_clear(p, st, ball));
}

TEST_CASE("a schedule with no sweeps clears nothing") {
    OrthoPolyhedron p = fixture_l_solid();
    FencePlan plan = erect_fences(p);
    std::vector<Guard> guards = place_guards(p, plan);
    MacroSchedule empty;
    empty.initial_aims = {guards[0].initial_aim};
    Verdict v = verify_schedule(p, guards, empty);
    CHECK_FALSE(searched(v));
}

TEST_CASE("sweeping without a sealed boundary recontaminates") {
    // both corridor guards sweep inward over their own corridor while
    // nobody holds a barrier at the crossing, so the crossing reinfects
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
    REQUIRE_FALSE(searched(v));
    CHECK(v.diagnostic.find("not illuminated") != std::string::npos);
}

TEST_CASE("the fine-grained oracle agrees on random instances") {
    std::mt19937 rng(314);
    for (int i = 0; i < 8; ++i) {
        OrthoPolyhedron p = random_polyhedron(rng, 6, 1, 6);
        FencePlan plan = erect_fences(p);
        std::vector<Guard> guards = place_guards(p, plan);
        MacroSchedule seq = plan_sequential(p, plan, guards);
        REQUIRE(searched(verify_schedule(p, guards, seq)));
        Schedule low = lower(p, guards, seq);
        CHECK(searched(brute_force_verify(p, guards, low, 1)));

        ParallelPlan par = plan_parallel(p, plan, guards);
        REQUIRE(searched(verify_schedule(p, par.guards, par.schedule)));
        Schedule plow = lower(p, par.guards, par.schedule);
        CHECK(searched(brute_force_verify(p, par.guards, plow, 1)));
    }
}

TEST_CASE("the oracle refuses oversized refinements") {
    OrthoPolyhedron p = fixture_square_torus();  // 8 cells
    FencePlan plan = erect_fences(p);
    std::vector<Guard> guards = place_guards(p, plan);
    Schedule low = lower(p, guards, plan_sequential(p, plan, guards));
    CHECK_THROWS_AS(brute_force_verify(p, guards, low, 20), TooLarge);
}

TEST_CASE("region queries reject balls outside the solid") {
    OrthoPolyhedron p = fixture_l_solid();
    FencePlan plan = erect_fences(p);
    std::vector<Guard> guards = place_guards(p, plan);
    ContaminationState st = init_state(p, guards, {guards[0].initial_aim});
    TargetRegion outside{{Scalar(3), Scalar(3), Scalar(3)}, ratio(1, 4)};
    CHECK_THROWS_AS(is_region_clear(p, st, outside), RegionOutside);
    // ball poking through the notch corner into the exterior
    TargetRegion poking{{ratio(3, 2), ratio(1, 2), Scalar(1)}, ratio(1, 8)};
    CHECK_THROWS_AS(is_region_clear(p, st, poking), RegionOutside);
}
