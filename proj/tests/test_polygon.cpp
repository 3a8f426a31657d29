#include "searchlight/fixtures.hpp"
#include "searchlight/polygon.hpp"

#include <doctest.h>

#include <sstream>

using namespace searchlight;

namespace {
Point2 P(long x, long y) { return {Scalar(x), Scalar(y)}; }
}  // namespace

TEST_CASE("convex polygon partitions into itself") {
    Polygon2 sq = validate_polygon({{P(0, 0), P(4, 0), P(4, 4), P(0, 4)}, {}});
    ConvexPartition part = bisector_partition(sq, 0);
    CHECK(part.pieces.size() == 1);
    CHECK(part.cut_log.empty());
    OpenEdgeGuardSet g = select_open_edge_guards(sq, part, 0);
    CHECK(g.guards == std::vector<int>{0});
    CoverageReport rep = verify_coverage(sq, part, g, 10);
    CHECK(rep.uncovered.empty());
    CHECK(rep.samples == 108);
}

TEST_CASE("L-hexagon splits at its reflex vertex") {
    Polygon2 L =
        validate_polygon({{P(0, 0), P(4, 0), P(4, 2), P(2, 2), P(2, 4), P(0, 4)}, {}});
    CHECK(L.reflex_count() == 1);
    CHECK(L.hole_count() == 0);
    CHECK(L.area() == Scalar(12));
    ConvexPartition part = bisector_partition(L, 0);
    CHECK(part.pieces.size() == 2);
    Scalar sum(0);
    for (const Polygon2& pc : part.pieces) sum += pc.area();
    CHECK(sum == L.area());
    OpenEdgeGuardSet g = select_open_edge_guards(L, part, 0);
    CHECK(g.guards == std::vector<int>{0, 3});
    CoverageReport rep = verify_coverage(L, part, g, 20);
    CHECK(rep.uncovered.empty());
}

TEST_CASE("open-edge visibility stops at reflex shadows") {
    Polygon2 L =
        validate_polygon({{P(0, 0), P(4, 0), P(4, 2), P(2, 2), P(2, 4), P(0, 4)}, {}});
    auto [ea, eb] = L.edge(1);  // right edge (4,0)-(4,2)
    CHECK(sees_open_edge(L, Point2{ratio(7, 2), ratio(3, 2)}, ea, eb));
    CHECK_FALSE(sees_open_edge(L, P(1, 3), ea, eb));  // behind the corner
}

TEST_CASE("visibility polygon from an interior point") {
    Polygon2 L =
        validate_polygon({{P(0, 0), P(4, 0), P(4, 2), P(2, 2), P(2, 4), P(0, 4)}, {}});
    Polygon2 vis = visibility_polygon(L, P(3, 1));
    CHECK(vis.outer.size() == 6);
    CHECK(point_in_polygon(vis, P(1, 3)));
    CHECK(point_in_polygon(vis, P(1, 1)));
}

TEST_CASE("square with a hole partitions through hole merges") {
    Polygon2 H = validate_polygon(
        {{P(0, 0), P(6, 0), P(6, 6), P(0, 6)}, {{P(2, 2), P(4, 2), P(4, 4), P(2, 4)}}});
    CHECK(H.reflex_count() == 4);
    CHECK(H.hole_count() == 1);
    CHECK(H.area() == Scalar(32));
    ConvexPartition part = bisector_partition(H, 0);
    CHECK(part.pieces.size() == 4);  // == r - h + 1
    int merges = 0;
    for (const CutRecord& c : part.cut_log)
        if (c.outcome == CutRecord::Outcome::HoleMerge) ++merges;
    CHECK(merges == 1);
    Scalar sum(0);
    for (const Polygon2& pc : part.pieces) sum += pc.area();
    CHECK(sum == H.area());
    OpenEdgeGuardSet g = select_open_edge_guards(H, part, 0);
    CHECK(g.guards.size() == 3);
    CoverageReport rep = verify_coverage(H, part, g, 20);
    CHECK(rep.uncovered.empty());
}

TEST_CASE("random polygons satisfy the piece and guard bounds") {
    std::mt19937 rng(11);
    for (int i = 0; i < 25; ++i) {
        Polygon2 poly = random_rectilinear_polygon(rng);
        const int r = poly.reflex_count(), h = poly.hole_count();
        ConvexPartition part = bisector_partition(poly, 0);
        CHECK(static_cast<int>(part.pieces.size()) <= r - h + 1);
        Scalar sum(0);
        for (const Polygon2& pc : part.pieces) sum += pc.area();
        CHECK(sum == poly.area());
        OpenEdgeGuardSet g = select_open_edge_guards(poly, part, 0);
        CHECK(static_cast<int>(g.guards.size()) <= r - h + 1);
        bool has_distinguished = false;
        for (int e : g.guards)
            if (e == 0) has_distinguished = true;
        CHECK(has_distinguished);
        CoverageReport rep = verify_coverage(poly, part, g, 12);
        CHECK(rep.uncovered.empty());
    }
}

TEST_CASE("polygon files round-trip bit-exactly") {
    Polygon2 H = validate_polygon(
        {{P(0, 0), P(6, 0), P(6, 6), P(0, 6)}, {{P(2, 2), P(4, 2), P(4, 4), P(2, 4)}}});
    PolygonInstance pi{H, 2};
    std::string s1 = serialize_poly2(pi);
    std::istringstream in(s1);
    PolygonInstance pi2 = parse_poly2(in);
    CHECK(serialize_poly2(pi2) == s1);
    std::mt19937 rng(12);
    for (int i = 0; i < 10; ++i) {
        PolygonInstance ri{random_rectilinear_polygon(rng), 0};
        std::string r1 = serialize_poly2(ri);
        std::istringstream rin(r1);
        CHECK(serialize_poly2(parse_poly2(rin)) == r1);
    }
}
