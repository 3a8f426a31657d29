#pragma once

#include "searchlight/vec.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace searchlight {

/// Planar polygon with holes. After validation the outer ring is
/// counterclockwise and holes are clockwise, so the interior is always on
/// the left of a directed boundary edge.
struct Polygon2 {
    std::vector<Point2> outer;
    std::vector<std::vector<Point2>> holes;

    int reflex_count() const;
    int hole_count() const { return static_cast<int>(holes.size()); }
    Scalar area() const;

    /// Edges enumerated outer ring first, then holes in order.
    int edge_count() const;
    std::pair<Point2, Point2> edge(int index) const;
};

/// Checks ring simplicity, pairwise non-crossing, and hole containment;
/// normalizes orientations. Throws std::invalid_argument on bad input.
Polygon2 validate_polygon(Polygon2 p);

/// True iff p lies in the closed polygon (boundary counts as inside).
bool point_in_polygon(const Polygon2& p, const Point2& x);

/// True iff the whole segment lies in the closed polygon.
bool segment_in_polygon(const Polygon2& p, const Point2& a, const Point2& b);

/// True iff some point of the open edge (a,b) is visible from x within p.
bool sees_open_edge(const Polygon2& p, const Point2& x, const Point2& a, const Point2& b);

/// Exact visibility polygon of an interior (or boundary) point; holes
/// occlude. Throws std::invalid_argument when x is outside p.
Polygon2 visibility_polygon(const Polygon2& p, const Point2& x);

struct CutRecord {
    Point2 vertex;        // the reflex vertex the cut starts from
    Vec2 direction;       // the ray actually used
    bool perturbed;       // direction adjusted to clear a vertex hit
    enum class Outcome { Split, HoleMerge } outcome;
};

/// One piece of a convex partition. Rings may contain doubled (coincident)
/// edges left by hole-merging cuts.
struct ConvexPartition {
    std::vector<Polygon2> pieces;  // convex, hole-free
    std::vector<CutRecord> cut_log;
};

/// Cuts the polygon at every reflex vertex with an interior ray, merging
/// holes into the outer ring when a ray lands on one. Produces at most
/// r - h + 1 convex pieces.
ConvexPartition bisector_partition(const Polygon2& p, int distinguished_edge);

struct OpenEdgeGuardSet {
    std::vector<int> guards;        // input-polygon edge indices
    std::vector<int> piece_guard;   // piece index -> covering guard edge
};

/// Picks boundary edges covering every piece: the distinguished edge
/// first, then for each uncovered piece the lowest-index input edge that
/// overlaps the piece's boundary with positive length.
OpenEdgeGuardSet select_open_edge_guards(const Polygon2& p, const ConvexPartition& part,
                                         int distinguished_edge);

struct CoverageReport {
    long samples = 0;
    std::vector<Point2> uncovered;
};

/// Samples a density x density lattice inside p plus all piece vertices
/// and edge midpoints, and reports every sample no guard edge sees.
CoverageReport verify_coverage(const Polygon2& p, const ConvexPartition& part,
                               const OpenEdgeGuardSet& guards, int density);

// --- polygon file format ("poly2 v1") ---

struct PolygonInstance {
    Polygon2 polygon;
    int distinguished_edge = 0;
};

PolygonInstance parse_poly2(std::istream& in);
PolygonInstance parse_poly2_file(const std::string& path);
void serialize_poly2(const PolygonInstance& p, std::ostream& out);
std::string serialize_poly2(const PolygonInstance& p);

}  // namespace searchlight
