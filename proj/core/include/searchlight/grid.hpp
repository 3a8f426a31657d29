#pragma once

#include "searchlight/vec.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <vector>

namespace searchlight {

/// Identifies the axis-orthogonal rectangle between two grid cells (or
/// between a rim cell and the outside). `plane` indexes the coordinate
/// array of `axis`; (u,v) are cell indices along other_axes(axis). The
/// facet separates cell (plane-1) from cell (plane) along `axis`.
struct FacetId {
    Axis axis;
    int plane;
    int u;
    int v;

    auto operator<=>(const FacetId&) const = default;
};

enum class FacetState : std::uint8_t {
    Internal,  // separates two interior cells
    Boundary,  // separates an interior cell from an exterior one
    Outside,   // no interior cell on either side
};

/// Cuboid cell decomposition of the bounding box induced by the vertex
/// coordinates of a polyhedron. The union of closed interior cells equals
/// the solid as a point set. Immutable after construction.
class GridComplex {
public:
    std::array<std::vector<Scalar>, 3> coords;  // strictly increasing
    std::vector<char> interior_;                // nx*ny*nz cell labels

    int cell_count(Axis a) const {
        return static_cast<int>(coords[axis_index(a)].size()) - 1;
    }
    int nx() const { return cell_count(Axis::X); }
    int ny() const { return cell_count(Axis::Y); }
    int nz() const { return cell_count(Axis::Z); }

    std::size_t cell_index(int ix, int iy, int iz) const {
        return (static_cast<std::size_t>(iz) * ny() + iy) * nx() + ix;
    }
    bool in_range(int ix, int iy, int iz) const {
        return ix >= 0 && ix < nx() && iy >= 0 && iy < ny() && iz >= 0 && iz < nz();
    }
    /// Out-of-range cells are exterior.
    bool cell_interior(int ix, int iy, int iz) const {
        return in_range(ix, iy, iz) && interior_[cell_index(ix, iy, iz)] != 0;
    }

    int interior_cell_count() const;

    /// Cell indices adjacent to the facet: (plane-1, plane) along its axis.
    std::array<std::array<int, 3>, 2> facet_cells(const FacetId& f) const;
    FacetState facet_state(const FacetId& f) const;

    Point3 cell_min(int ix, int iy, int iz) const;
    Point3 cell_max(int ix, int iy, int iz) const;
    Point3 cell_center(int ix, int iy, int iz) const;

    /// Corner of the facet rectangle with the smaller (u,v) coordinates,
    /// and the opposite corner.
    Point3 facet_min(const FacetId& f) const;
    Point3 facet_max(const FacetId& f) const;

    /// Index of the largest coordinate <= x along axis a, or -1 / n when x
    /// falls outside the coordinate range. exact = true when x is a grid
    /// coordinate.
    struct Locate {
        int index;
        bool exact;
    };
    Locate locate(Axis a, const Scalar& x) const;

    /// Smallest positive difference between consecutive grid coordinates.
    Scalar min_coordinate_gap() const;

    /// Exact sum of interior cell volumes.
    Scalar interior_volume() const;
};

/// Combinatorial box of grid cells: index ranges [lo, hi) per axis.
struct CellBox {
    std::array<int, 3> lo;
    std::array<int, 3> hi;

    bool contains(int ix, int iy, int iz) const {
        return ix >= lo[0] && ix < hi[0] && iy >= lo[1] && iy < hi[1] &&
               iz >= lo[2] && iz < hi[2];
    }
    long cell_total() const {
        return static_cast<long>(hi[0] - lo[0]) * (hi[1] - lo[1]) * (hi[2] - lo[2]);
    }
};

/// True iff p lies in the closed solid (union of closed interior cells).
bool point_in_solid(const GridComplex& g, const Point3& p);

/// True iff every point of the segment lies in the closed solid.
/// Throws DegenerateSegment (std::invalid_argument) when a == b.
bool segment_in_polyhedron(const GridComplex& g, const Segment3& s);

/// True iff conv({apex} union box) is contained in the closed solid,
/// decided exactly: no grid cell whose open interior meets the hull may be
/// exterior. The box must be a (possibly degenerate) axis-aligned cuboid
/// given by corner points on grid planes.
bool hull_in_polyhedron(const GridComplex& g, const Point3& apex,
                        const Point3& box_min, const Point3& box_max);

/// Convenience overload for a CellBox.
bool hull_in_polyhedron(const GridComplex& g, const Point3& apex, const CellBox& box);

}  // namespace searchlight
