#include "searchlight/exhaustive.hpp"
#include "searchlight/fixtures.hpp"

#include <doctest.h>

#include <random>

using namespace searchlight;

namespace {
Guard shadow_guard() {
    Guard gd;
    gd.segment = {{Scalar(2), Scalar(0), Scalar(1)}, {Scalar(2), Scalar(1), Scalar(1)},
                  true};
    gd.axis = Axis::Y;
    gd.initial_aim = AimDirection::concrete({Scalar(-1), Scalar(0)});
    return gd;
}
}  // namespace

TEST_CASE("L-solid notch guard sweeps a three-quarter arc") {
    OrthoPolyhedron p = fixture_l_solid();
    FencePlan plan = erect_fences(p);
    std::vector<Guard> guards = place_guards(p, plan);
    REQUIRE(guards.size() == 1);
    BlindArc arc = blind_arc(p, guards[0]);
    CHECK(arc.leftmost == Vec2{Scalar(1), Scalar(0)});
    CHECK(arc.rightmost == Vec2{Scalar(0), Scalar(1)});
    CHECK(arc.nonblind_extent == ArcAngle::from_pi(ratio(3, 2)));
}

TEST_CASE("searchplanes of the L notch guard are exhaustive") {
    OrthoPolyhedron p = fixture_l_solid();
    FencePlan plan = erect_fences(p);
    std::vector<Guard> guards = place_guards(p, plan);
    SearchPlane down = compute_searchplane(p, guards[0], {Scalar(0), Scalar(-1)});
    CHECK(down.exhaustive);
    CHECK(down.certified);
    CHECK(down.component_cells == 1);
    SearchPlane diag = compute_searchplane(p, guards[0], {Scalar(-1), Scalar(-1)});
    CHECK(diag.exhaustive);
    CHECK_THROWS_AS(compute_searchplane(p, guards[0], {Scalar(1), Scalar(1)}),
                    BlindDirectionError);
    EventSet ev = enumerate_events(p, guards[0]);
    CHECK(ev.events.size() == 7);
    ExhaustiveReport rep = is_exhaustive_guard(p, guards[0]);
    CHECK(rep.exhaustive);
    CHECK(rep.certified);
    CHECK(rep.directions_checked == 13);
}

TEST_CASE("shadow fixture guard has an invisible wedge") {
    OrthoPolyhedron p = fixture_shadow_solid();
    Guard gd = shadow_guard();
    BlindArc arc = blind_arc(p, gd);
    CHECK(arc.nonblind_extent == ArcAngle::from_pi(Scalar(1)));
    SearchPlane sp = compute_searchplane(p, gd, {Scalar(-1), Scalar(0)});
    CHECK_FALSE(sp.exhaustive);
    CHECK(sp.certified);
    CHECK(sp.witness_world == Point3{Scalar(1), ratio(5, 4), Scalar(1)});
    ExhaustiveReport rep = is_exhaustive_guard(p, gd);
    CHECK_FALSE(rep.exhaustive);
    CHECK(rep.witness_direction == Vec2{Scalar(-3), Scalar(-2)});
}

TEST_CASE("convex edge guard is exhaustive over its quarter arc") {
    OrthoPolyhedron p = fixture_unit_cube();
    Guard gd;
    gd.segment = {{Scalar(0), Scalar(0), Scalar(1)}, {Scalar(1), Scalar(0), Scalar(1)},
                  true};
    gd.axis = Axis::X;
    gd.initial_aim = AimDirection::leftmost();
    BlindArc arc = blind_arc(p, gd);
    CHECK(arc.nonblind_extent == ArcAngle::from_pi(ratio(1, 2)));
    CHECK(is_exhaustive_guard(p, gd).exhaustive);
}

TEST_CASE("exhaustiveness is stable between event directions") {
    // random directions strictly inside an inter-event interval must agree
    // with the interval's midpoint direction
    OrthoPolyhedron shadow = fixture_shadow_solid();
    Guard sg = shadow_guard();
    OrthoPolyhedron ell = fixture_l_solid();
    FencePlan plan = erect_fences(ell);
    std::vector<Guard> lg = place_guards(ell, plan);
    std::mt19937 rng(77);
    int checked = 0;
    auto probe = [&](const OrthoPolyhedron& p, const Guard& gd) {
        EventSet ev = enumerate_events(p, gd);
        for (std::size_t i = 0; i + 1 < ev.events.size(); ++i) {
            const Vec2& a = ev.events[i].dir;
            const Vec2& b = ev.events[i + 1].dir;
            Vec2 mid = mediant_direction(a, b);
            auto exh_at = [&](const Vec2& d) -> int {
                try {
                    return compute_searchplane(p, gd, d).exhaustive ? 1 : 0;
                } catch (const BlindDirectionError&) {
                    return 2;
                }
            };
            int want = exh_at(mid);
            for (int t = 0; t < 4; ++t) {
                // random rational interpolation between the two events
                long num = 1 + static_cast<long>(rng() % 9), den = 11;
                Vec2 d{a.x * (den - num) + b.x * num, a.y * (den - num) + b.y * num};
                d = primitive_direction(d);
                CHECK(exh_at(d) == want);
                ++checked;
            }
        }
    };
    probe(shadow, sg);
    probe(ell, lg[0]);
    CHECK(checked >= 40);
}

TEST_CASE("restricting to the fenced cuboids keeps the initial aim exhaustive") {
    std::mt19937 rng(41);
    for (int i = 0; i < 10; ++i) {
        OrthoPolyhedron p = random_polyhedron(rng);
        FencePlan plan = erect_fences(p);
        std::vector<Guard> guards = place_guards(p, plan);
        for (std::size_t fi = 0; fi < plan.fences.size(); ++fi) {
            const Fence& fe = plan.fences[fi];
            if (fe.facets.empty() || fe.merged_into >= 0 || fe.guard < 0) continue;
            std::vector<CellBox> boxes;
            for (const Cuboid& c : plan.cuboids)
                for (int b : c.bounding_fences)
                    if (b == static_cast<int>(fi)) boxes.push_back(c.box);
            if (boxes.empty()) continue;
            GridComplex sub = restrict_to_boxes(p.grid, boxes);
            const Guard& gd = guards[fe.guard];
            SearchPlane sp = compute_searchplane(sub, gd, gd.initial_aim.dir);
            CHECK(sp.exhaustive);
        }
    }
}
