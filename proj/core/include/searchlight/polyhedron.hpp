#pragma once

#include "searchlight/grid.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace searchlight {

/// One axis-aligned input face: a planar polygon with holes. Ring
/// coordinates are 2D points in other_axes(axis) order; the first ring is
/// the outer ring, the rest are holes. Ring orientation is not significant
/// (membership is even-odd).
struct FaceInput {
    Axis axis;
    Scalar offset;
    std::vector<std::vector<Point2>> rings;
};

/// Interchange form of a solid: a face list, as read from an instance file.
struct RawSolid {
    std::vector<FaceInput> faces;
};

enum class ValidationErrorKind {
    EmptyInput,
    NotOrthogonal,
    DegenerateFace,
    NotManifold,
    NotConnected,
};

class ValidationError : public std::runtime_error {
public:
    ValidationError(ValidationErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ValidationErrorKind kind() const { return kind_; }

private:
    ValidationErrorKind kind_;
};

const char* to_string(ValidationErrorKind k);

/// Maximal reflex edge of the boundary, tagged horizontal or vertical.
/// The edge runs along `axis`; (plane_u, plane_v) are the coordinate plane
/// indices along other_axes(axis) and [lo, hi) the cell-index range along
/// the axis. (ext_u, ext_v) in {-1,+1} give the quadrant of the exterior
/// cell around the edge.
struct Notch {
    Axis axis;
    int plane_u, plane_v;
    int lo, hi;
    int ext_u, ext_v;
    /// Filled by the fence construction: unit direction of the Step-1 ray
    /// (horizontal notches) or Step-2 ray (vertical notches).
    Vec3 fence_direction;

    bool vertical() const { return axis == Axis::Z; }
    bool horizontal() const { return !vertical(); }
};

Segment3 notch_segment(const GridComplex& g, const Notch& n);

/// Maximal derived boundary face: a connected set of coplanar boundary
/// facets with the solid on the same side. side = +1 when the interior
/// cells lie below the plane (at index plane-1).
struct BoundaryFace {
    Axis axis;
    int plane;
    int side;
    std::vector<FacetId> facets;
};

enum class EdgeKind : std::uint8_t { Convex, Reflex };

/// Maximal derived boundary edge: shared by two non-coplanar faces.
struct BoundaryEdge {
    Axis axis;
    int plane_u, plane_v;
    int lo, hi;
    EdgeKind kind;
    int ext_u, ext_v;  // quadrant of the exterior (convex: interior) witness

    Segment3 segment(const GridComplex& g) const;
};

/// Validated orthogonal polyhedron: the face list plus everything derived
/// from it (grid complex, maximal faces/edges, notches, genus).
struct OrthoPolyhedron {
    RawSolid input;
    GridComplex grid;
    std::vector<BoundaryFace> faces;
    std::vector<BoundaryEdge> edges;
    std::vector<Notch> notches;
    int genus = 0;
    /// Set when a face ring revisits a vertex (hole boundaries touching at
    /// a point). Accepted, but surfaced to callers.
    bool has_pinch_vertices = false;
};

/// Validates a raw face list and derives the grid complex and boundary
/// structure. Throws ValidationError on rejection.
OrthoPolyhedron validate_polyhedron(const RawSolid& raw);

/// The grid complex of a validated polyhedron (already built during
/// validation).
inline const GridComplex& build_grid(const OrthoPolyhedron& p) { return p.grid; }

inline int genus(const OrthoPolyhedron& p) { return p.genus; }
inline const std::vector<Notch>& notches(const OrthoPolyhedron& p) { return p.notches; }

/// Exact solid volume via the divergence theorem over oriented boundary
/// facets. Independent of GridComplex::interior_volume's cell sum.
Scalar boundary_volume(const OrthoPolyhedron& p);

// --- instance file format ("orthopoly v1") ---

RawSolid parse_orthopoly(std::istream& in);
RawSolid parse_orthopoly_file(const std::string& path);
void serialize_orthopoly(const RawSolid& s, std::ostream& out);
std::string serialize_orthopoly(const RawSolid& s);

}  // namespace searchlight
