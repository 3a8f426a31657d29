#pragma once

#include "searchlight/fences.hpp"

#include <stdexcept>
#include <vector>

namespace searchlight {

/// Extremes of a guard's useful aiming arc. Directions whose half-plane
/// leaves the solid right at the guard line ("blind") form one contiguous
/// arc around the guard; the complementary non-blind arc is bounded by two
/// axis-aligned aims.
struct BlindArc {
    Vec2 leftmost;   // ccw start of the non-blind arc, (u, v) plane coords
    Vec2 rightmost;  // ccw end of the non-blind arc
    ArcAngle nonblind_extent;
};

/// Derives the non-blind arc from the cells and facets around the guard
/// line. The guard must lie on a grid line of the complex.
BlindArc blind_arc(const GridComplex& g, const Guard& guard);
inline BlindArc blind_arc(const OrthoPolyhedron& p, const Guard& guard) {
    return blind_arc(p.grid, guard);
}

/// Resolves a (possibly symbolic leftmost/rightmost) aim to a concrete
/// direction for the given guard.
Vec2 resolve_aim(const GridComplex& g, const Guard& guard, const AimDirection& aim);

class BlindDirectionError : public std::runtime_error {
public:
    explicit BlindDirectionError(const std::string& what) : std::runtime_error(what) {}
};

/// Rectilinear cell decomposition of the half-plane through a guard in a
/// fixed direction, intersected with the solid. Plane coordinates are
/// (t, s): t is the world coordinate along the guard's axis and s >= 0 the
/// radial multiple of the aim direction.
struct PlaneSection {
    Axis guard_axis = Axis::X;
    Vec2 direction;        // primitive representative
    Scalar origin_u, origin_v;  // rotation-plane coordinates of the guard line
    Scalar glo, ghi;       // guard extent along its axis (open segment)
    std::vector<Scalar> ts, ss;  // breakpoints; cells between consecutive ones
    /// Per cell, row-major over (t, s): 0 = outside the solid, 1 = in the
    /// section, 2 = in the connected component containing the guard.
    std::vector<char> cells;

    int nt() const { return static_cast<int>(ts.size()) - 1; }
    int ns() const { return static_cast<int>(ss.size()) - 1; }
    char at(int i, int j) const { return cells[static_cast<std::size_t>(j) * nt() + i]; }

    /// World point of plane coordinates (t, s).
    Point3 world(const Point2& q) const;
};

/// Visible portion analysis of one aimed half-plane.
struct SearchPlane {
    PlaneSection section;
    bool exhaustive = false;
    /// True when the verdict carries a complete proof: every component cell
    /// has a single-apex visibility certificate (positive), or the witness
    /// point below is provably invisible from the whole open guard
    /// (negative). A true verdict without certification means some cell
    /// needed more subdivision than attempted but no invisible point was
    /// found either.
    bool certified = false;
    Point2 witness;        // (t, s) of an invisible section point when not exhaustive
    Point3 witness_world;
    long component_cells = 0;
};

/// Slices the solid with the half-plane through the guard and computes
/// which part of the slice the open guard segment sees. Throws
/// BlindDirectionError when the slice does not extend beyond the guard
/// line.
SearchPlane compute_searchplane(const GridComplex& g, const Guard& guard, const Vec2& dir);
inline SearchPlane compute_searchplane(const OrthoPolyhedron& p, const Guard& guard,
                                       const Vec2& dir) {
    return compute_searchplane(p.grid, guard, dir);
}

/// Exact test that plane point q (inside the closed section) is visible
/// from some point of the open guard segment within the section.
bool weakly_visible(const PlaneSection& sec, const Point2& q);

/// Candidate rotation angles at which the combinatorial structure of the
/// section can change: directions from the guard line to every
/// face-plane/edge-line intersection and to every boundary vertex, plus
/// the compass directions and arc endpoints. Sorted counterclockwise from
/// the leftmost aim; deduplicated.
struct EventDirection {
    enum class Kind { ArcEnd, Compass, Vertex, FacePlaneEdge };
    Vec2 dir;  // primitive
    Kind kind;
};
struct EventSet {
    std::vector<EventDirection> events;
};
EventSet enumerate_events(const OrthoPolyhedron& p, const Guard& guard);

/// Midpoint direction strictly between two non-opposite directions.
Vec2 mediant_direction(const Vec2& a, const Vec2& b);

/// Decides whether every aimable half-plane of the guard is fully visible
/// to it, by checking every event direction and one midpoint per interval
/// between consecutive events.
struct ExhaustiveReport {
    bool exhaustive = false;
    bool certified = false;
    Vec2 witness_direction;  // meaningful when not exhaustive
    Point3 witness_point;
    int event_count = 0;
    int directions_checked = 0;
};
ExhaustiveReport is_exhaustive_guard(const OrthoPolyhedron& p, const Guard& guard);

/// Sub-complex with the same coordinates whose interior is restricted to
/// the cells of the given boxes.
GridComplex restrict_to_boxes(const GridComplex& g, const std::vector<CellBox>& boxes);

}  // namespace searchlight
