#include "searchlight/fences.hpp"
#include "searchlight/fixtures.hpp"

#include <doctest.h>

using namespace searchlight;

namespace {
int effective_count(const FencePlan& plan) {
    int n = 0;
    for (const Fence& f : plan.fences)
        if (f.merged_into < 0) ++n;
    return n;
}

void check_partition_sane(const OrthoPolyhedron& p, const FencePlan& plan) {
    long cells = 0;
    for (const Cuboid& c : plan.cuboids) {
        CHECK_FALSE(c.bounding_fences.empty());
        long n = 1;
        for (int a = 0; a < 3; ++a) {
            CHECK(c.box.lo[a] < c.box.hi[a]);
            n *= c.box.hi[a] - c.box.lo[a];
        }
        cells += n;
    }
    CHECK(cells == p.grid.interior_cell_count());
}
}  // namespace

TEST_CASE("L-solid gets one fence and two cuboids") {
    OrthoPolyhedron p = fixture_l_solid();
    FencePlan plan = erect_fences(p);
    CHECK(plan.fences.size() == 1);
    CHECK(plan.cuboids.size() == 2);
    CHECK(plan.fences[0].step == 1);
    CHECK(plan.fences[0].plane_axis == Axis::X);
    CHECK(plan.fences[0].plane == 1);
    check_partition_sane(p, plan);
}

TEST_CASE("staircase fences separate the steps") {
    OrthoPolyhedron p = fixture_staircase(3);
    FencePlan plan = erect_fences(p);
    CHECK(plan.fences.size() == 2);
    CHECK(plan.cuboids.size() == 3);
    CHECK(effective_count(plan) == 2);
    CHECK(plan.fenceless_step2.empty());
    check_partition_sane(p, plan);
    // the middle cuboid is bounded by both fences
    bool found = false;
    for (const Cuboid& c : plan.cuboids)
        if (c.bounding_fences.size() == 2) found = true;
    CHECK(found);
}

TEST_CASE("vertical notches produce sideways fences") {
    OrthoPolyhedron p = fixture_offset_slabs();
    FencePlan plan = erect_fences(p);
    CHECK(plan.fences.size() == 2);
    CHECK(plan.cuboids.size() == 3);
    for (const Fence& f : plan.fences) {
        CHECK(f.step == 2);
        CHECK(f.plane_axis == Axis::Y);
    }
    check_partition_sane(p, plan);
}

TEST_CASE("crossing corridors leave two notches fenceless") {
    OrthoPolyhedron p = fixture_plus_corridors();
    FencePlan plan = erect_fences(p);
    CHECK(plan.fences.size() == 2);
    CHECK(plan.cuboids.size() == 3);
    CHECK(plan.fenceless_step2.size() == 2);
    check_partition_sane(p, plan);
}

TEST_CASE("square torus partitions into a ring of four cuboids") {
    OrthoPolyhedron p = fixture_square_torus();
    FencePlan plan = erect_fences(p);
    CHECK(plan.fences.size() == 4);
    CHECK(plan.cuboids.size() == 4);
    check_partition_sane(p, plan);
    for (const Cuboid& c : plan.cuboids) CHECK(c.bounding_fences.size() == 2);
}

TEST_CASE("convex input has no fences to erect") {
    OrthoPolyhedron p = fixture_unit_cube();
    CHECK_THROWS_AS(erect_fences(p), FenceError);
}

TEST_CASE("one guard per notch with a fence-aligned initial aim") {
    for (OrthoPolyhedron p : {fixture_l_solid(), fixture_staircase(3),
                              fixture_square_torus(), fixture_plus_corridors()}) {
        FencePlan plan = erect_fences(p);
        std::vector<Guard> guards = place_guards(p, plan);
        CHECK(guards.size() == p.notches.size());
        for (std::size_t i = 0; i < guards.size(); ++i) {
            CHECK(guards[i].notch == static_cast<int>(i));
            CHECK(guards[i].axis == p.notches[i].axis);
            CHECK(guards[i].initial_aim.kind == AimDirection::Kind::Concrete);
        }
    }
}

TEST_CASE("fences lie in their guard's initial searchplane") {
    for (OrthoPolyhedron p : {fixture_l_solid(), fixture_staircase(3),
                              fixture_offset_slabs(), fixture_square_torus(),
                              fixture_plus_corridors(), fixture_shadow_solid()}) {
        FencePlan plan = erect_fences(p);
        std::vector<Guard> guards = place_guards(p, plan);
        FenceLemmaReport fl = check_fence_lemma(p, plan, guards);
        CHECK(fl.ok);
        CuboidLemmaReport cl = check_cuboid_lemma(p, plan, guards);
        CHECK(cl.ok);
    }
}

TEST_CASE("random polyhedra partition into fenced cuboids") {
    std::mt19937 rng(31);
    for (int i = 0; i < 20; ++i) {
        OrthoPolyhedron p = random_polyhedron(rng);
        FencePlan plan = erect_fences(p);
        std::vector<Guard> guards = place_guards(p, plan);
        CHECK(guards.size() == p.notches.size());
        check_partition_sane(p, plan);
        CHECK(check_fence_lemma(p, plan, guards).ok);
        CHECK(check_cuboid_lemma(p, plan, guards).ok);
    }
}
