#pragma once

#include "searchlight/polygon.hpp"
#include "searchlight/polyhedron.hpp"

#include <random>
#include <utility>
#include <vector>

namespace searchlight {

/// Face list of a union of closed axis-aligned boxes (min/max corners).
/// Faces are emitted one per grid plane, with one rectangular ring per
/// boundary facet.
RawSolid boxes_to_solid(const std::vector<std::pair<Point3, Point3>>& boxes);

// --- named solids used across the test suite ---

/// [0,1]^3: convex, no notches.
OrthoPolyhedron fixture_unit_cube();
/// [0,2]x[0,1]x[0,1] with [0,1]x[0,1]x[1,2] on top: one horizontal notch.
OrthoPolyhedron fixture_l_solid();
/// `steps` stacked slabs of shrinking x-extent: `steps - 1` notches.
OrthoPolyhedron fixture_staircase(int steps);
/// [0,3]x[0,3]x[0,1] with a square hole through the middle: genus 1.
OrthoPolyhedron fixture_square_torus();
/// Two slabs sharing only part of a vertical face: two vertical notches,
/// the Step-2 fixture.
OrthoPolyhedron fixture_offset_slabs();
/// Tall version of the offset slabs: [0,1]x[0,2]x[0,2] with
/// [1,2]x[0,1]x[0,2]; a guard midway up the joint plane has a shadowed
/// wedge, the non-exhaustiveness fixture.
OrthoPolyhedron fixture_shadow_solid();
/// Two crossing corridors [0,3]x[1,2]x[0,1] and [1,2]x[0,3]x[0,1].
OrthoPolyhedron fixture_plus_corridors();
/// Invalid input: two cubes sharing only an edge (raw; validation throws).
RawSolid fixture_edge_cubes();
/// Invalid input: two cubes sharing only a vertex (raw; validation throws).
RawSolid fixture_vertex_cubes();

// --- seeded random instances ---

/// Union of 2..max_boxes integer-coordinate boxes, resampled until it
/// validates (connected manifold solid).
OrthoPolyhedron random_polyhedron(std::mt19937& rng, int max_boxes = 6,
                                  int min_notches = 1, int max_notches = 8);

/// Rectilinear polygon with holes from a union of integer rectangles,
/// resampled until it validates and meets the bounds.
Polygon2 random_rectilinear_polygon(std::mt19937& rng, int max_reflex = 12,
                                    int max_holes = 3);

}  // namespace searchlight
