#include "searchlight/fixtures.hpp"
#include "searchlight/polyhedron.hpp"

#include <doctest.h>

#include <sstream>

using namespace searchlight;

namespace {
RawSolid from_text(const std::string& t) {
    std::istringstream in(t);
    return parse_orthopoly(in);
}
}  // namespace

TEST_CASE("unit cube validates with trivial topology") {
    OrthoPolyhedron p = fixture_unit_cube();
    CHECK(p.grid.interior_cell_count() == 1);
    CHECK(p.faces.size() == 6);
    CHECK(p.edges.size() == 12);
    CHECK(p.notches.empty());
    CHECK(p.genus == 0);
    CHECK(p.grid.interior_volume() == Scalar(1));
}

TEST_CASE("L-solid has one horizontal notch") {
    OrthoPolyhedron p = fixture_l_solid();
    CHECK(p.grid.interior_cell_count() == 3);
    CHECK(p.faces.size() == 8);
    CHECK(p.edges.size() == 18);
    CHECK(p.genus == 0);
    REQUIRE(p.notches.size() == 1);
    const Notch& n = p.notches[0];
    CHECK(n.axis == Axis::Y);
    Segment3 s = notch_segment(p.grid, n);
    CHECK(s.a == Point3{Scalar(1), Scalar(0), Scalar(1)});
    CHECK(s.b == Point3{Scalar(1), Scalar(1), Scalar(1)});
}

TEST_CASE("square torus has genus one and four notches") {
    OrthoPolyhedron p = fixture_square_torus();
    CHECK(p.grid.interior_cell_count() == 8);
    CHECK(p.faces.size() == 10);
    CHECK(p.notches.size() == 4);
    CHECK(p.genus == 1);
    CHECK(p.grid.interior_volume() == Scalar(8));
}

TEST_CASE("non-manifold inputs are rejected") {
    CHECK_THROWS_AS(validate_polyhedron(fixture_edge_cubes()), ValidationError);
    CHECK_THROWS_AS(validate_polyhedron(fixture_vertex_cubes()), ValidationError);
    try {
        validate_polyhedron(fixture_vertex_cubes());
    } catch (const ValidationError& e) {
        CHECK(e.kind() == ValidationErrorKind::NotManifold);
    }
}

TEST_CASE("parser rejects malformed headers") {
    CHECK_THROWS_WITH(from_text("orthopoly v2\n"),
                      "parse error (line 1): expected header 'orthopoly v1'");
    CHECK_THROWS_AS(from_text("face x 0\n"), std::runtime_error);
}

TEST_CASE("convex hull containment distinguishes wings of the L") {
    OrthoPolyhedron p = fixture_l_solid();
    Point3 apex{Scalar(1), ratio(1, 2), Scalar(1)};  // on the notch line
    CHECK(hull_in_polyhedron(p.grid, apex, {Scalar(0), Scalar(0), Scalar(1)},
                             {Scalar(1), Scalar(1), Scalar(2)}));
    CHECK(hull_in_polyhedron(p.grid, apex, {Scalar(1), Scalar(0), Scalar(0)},
                             {Scalar(2), Scalar(1), Scalar(1)}));
    Point3 above{ratio(1, 2), ratio(1, 2), Scalar(2)};
    CHECK_FALSE(hull_in_polyhedron(p.grid, above, {Scalar(1), Scalar(0), Scalar(0)},
                                   {Scalar(2), Scalar(1), Scalar(1)}));
}

TEST_CASE("segment containment honors the boundary") {
    OrthoPolyhedron p = fixture_l_solid();
    // diagonal across the reflex corner exits the solid only beyond the
    // notch point, which this segment passes through exactly
    CHECK(segment_in_polyhedron(
        p.grid, {{ratio(1, 2), ratio(1, 2), ratio(3, 2)},
                 {ratio(3, 2), ratio(1, 2), ratio(1, 2)},
                 false}));
    CHECK(segment_in_polyhedron(
        p.grid,
        {{Scalar(0), Scalar(0), Scalar(0)}, {Scalar(2), Scalar(0), Scalar(0)}, false}));
    // pushed past the notch the diagonal crosses the exterior quadrant
    CHECK_FALSE(segment_in_polyhedron(
        p.grid, {{ratio(1, 2), ratio(1, 2), Scalar(2)},
                 {Scalar(2), ratio(1, 2), ratio(1, 2)},
                 false}));
}

TEST_CASE("polyhedron files round-trip bit-exactly") {
    for (const OrthoPolyhedron& p :
         {fixture_l_solid(), fixture_square_torus(), fixture_plus_corridors()}) {
        std::string s1 = serialize_orthopoly(p.input);
        std::istringstream in(s1);
        RawSolid r = parse_orthopoly(in);
        CHECK(serialize_orthopoly(r) == s1);
        CHECK(serialize_orthopoly(p.input) == s1);  // reruns byte-identical
    }
    std::mt19937 rng(99);
    for (int i = 0; i < 10; ++i) {
        OrthoPolyhedron p = random_polyhedron(rng);
        std::string s1 = serialize_orthopoly(p.input);
        std::istringstream in(s1);
        CHECK(serialize_orthopoly(parse_orthopoly(in)) == s1);
    }
}

TEST_CASE("decimal formatting of rationals") {
    CHECK(format_decimal(ratio(-3, 4), 2) == "-0.75");
    CHECK(format_decimal(ratio(1, 3), 4) == "0.3333");
    CHECK(format_decimal(ratio(3, 2), 0) == "2");
}
