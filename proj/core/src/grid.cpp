#include "searchlight/grid.hpp"

#include <algorithm>
#include <stdexcept>

namespace searchlight {

int GridComplex::interior_cell_count() const {
    int n = 0;
    for (char c : interior_) n += (c != 0);
    return n;
}

std::array<std::array<int, 3>, 2> GridComplex::facet_cells(const FacetId& f) const {
    const int a = axis_index(f.axis);
    const auto oa = other_axes(f.axis);
    std::array<int, 3> lo{}, hi{};
    lo[a] = f.plane - 1;
    hi[a] = f.plane;
    lo[axis_index(oa[0])] = hi[axis_index(oa[0])] = f.u;
    lo[axis_index(oa[1])] = hi[axis_index(oa[1])] = f.v;
    return {lo, hi};
}

FacetState GridComplex::facet_state(const FacetId& f) const {
    const auto cells = facet_cells(f);
    const bool lo = cell_interior(cells[0][0], cells[0][1], cells[0][2]);
    const bool hi = cell_interior(cells[1][0], cells[1][1], cells[1][2]);
    if (lo && hi) return FacetState::Internal;
    if (lo || hi) return FacetState::Boundary;
    return FacetState::Outside;
}

Point3 GridComplex::cell_min(int ix, int iy, int iz) const {
    return {coords[0][ix], coords[1][iy], coords[2][iz]};
}

Point3 GridComplex::cell_max(int ix, int iy, int iz) const {
    return {coords[0][ix + 1], coords[1][iy + 1], coords[2][iz + 1]};
}

Point3 GridComplex::cell_center(int ix, int iy, int iz) const {
    Scalar half(1, 2);
    Point3 lo = cell_min(ix, iy, iz), hi = cell_max(ix, iy, iz);
    return {half * (lo.x + hi.x), half * (lo.y + hi.y), half * (lo.z + hi.z)};
}

Point3 GridComplex::facet_min(const FacetId& f) const {
    const auto oa = other_axes(f.axis);
    Point3 p;
    p[f.axis] = coords[axis_index(f.axis)][f.plane];
    p[oa[0]] = coords[axis_index(oa[0])][f.u];
    p[oa[1]] = coords[axis_index(oa[1])][f.v];
    return p;
}

Point3 GridComplex::facet_max(const FacetId& f) const {
    const auto oa = other_axes(f.axis);
    Point3 p;
    p[f.axis] = coords[axis_index(f.axis)][f.plane];
    p[oa[0]] = coords[axis_index(oa[0])][f.u + 1];
    p[oa[1]] = coords[axis_index(oa[1])][f.v + 1];
    return p;
}

GridComplex::Locate GridComplex::locate(Axis a, const Scalar& x) const {
    const auto& cs = coords[axis_index(a)];
    auto it = std::upper_bound(cs.begin(), cs.end(), x);
    int idx = static_cast<int>(it - cs.begin()) - 1;
    bool exact = idx >= 0 && cs[idx] == x;
    return {idx, exact};
}

Scalar GridComplex::min_coordinate_gap() const {
    Scalar best(0);
    bool first = true;
    for (const auto& cs : coords) {
        for (std::size_t i = 0; i + 1 < cs.size(); ++i) {
            Scalar d = cs[i + 1] - cs[i];
            if (first || d < best) {
                best = d;
                first = false;
            }
        }
    }
    return best;
}

Scalar GridComplex::interior_volume() const {
    Scalar total(0);
    for (int iz = 0; iz < nz(); ++iz)
        for (int iy = 0; iy < ny(); ++iy)
            for (int ix = 0; ix < nx(); ++ix)
                if (cell_interior(ix, iy, iz))
                    total += (coords[0][ix + 1] - coords[0][ix]) *
                             (coords[1][iy + 1] - coords[1][iy]) *
                             (coords[2][iz + 1] - coords[2][iz]);
    return total;
}

bool point_in_solid(const GridComplex& g, const Point3& p) {
    // Candidate cell indices per axis: the cell containing the coordinate,
    // plus the neighbor when the coordinate sits exactly on a grid plane.
    std::array<std::array<int, 2>, 3> cand;
    std::array<int, 3> counts;
    for (int a = 0; a < 3; ++a) {
        auto loc = g.locate(axis_from_index(a), p[a]);
        const int n = g.cell_count(axis_from_index(a));
        int k = 0;
        if (loc.exact) {
            if (loc.index - 1 >= 0 && loc.index - 1 < n) cand[a][k++] = loc.index - 1;
            if (loc.index >= 0 && loc.index < n) cand[a][k++] = loc.index;
        } else {
            if (loc.index >= 0 && loc.index < n) cand[a][k++] = loc.index;
        }
        if (k == 0) return false;
        counts[a] = k;
    }
    for (int i = 0; i < counts[0]; ++i)
        for (int j = 0; j < counts[1]; ++j)
            for (int k = 0; k < counts[2]; ++k)
                if (g.cell_interior(cand[0][i], cand[1][j], cand[2][k])) return true;
    return false;
}

bool segment_in_polyhedron(const GridComplex& g, const Segment3& s) {
    if (s.a == s.b) throw std::invalid_argument("DegenerateSegment: zero-extent segment");
    if (!point_in_solid(g, s.a) || !point_in_solid(g, s.b)) return false;

    // Split at every grid plane crossed; between consecutive breakpoints the
    // segment stays within one closed cell, so midpoints decide.
    std::vector<Scalar> ts;
    ts.push_back(Scalar(0));
    ts.push_back(Scalar(1));
    Vec3 d = s.b - s.a;
    for (int a = 0; a < 3; ++a) {
        if (sgn(d[a]) == 0) continue;
        const Scalar& lo = sgn(d[a]) > 0 ? s.a[a] : s.b[a];
        const Scalar& hi = sgn(d[a]) > 0 ? s.b[a] : s.a[a];
        for (const Scalar& c : g.coords[a]) {
            if (c > lo && c < hi) ts.push_back((c - s.a[a]) / d[a]);
        }
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    Scalar half(1, 2);
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        Scalar tm = half * (ts[i] + ts[i + 1]);
        if (!point_in_solid(g, s.a + tm * d)) return false;
    }
    return true;
}

namespace {

// Separating-axis test between the hull polytope (apex + box corners,
// projections precomputed) and one open grid cell.
struct HullSat {
    std::vector<Vec3> axes;
    std::vector<Scalar> proj_min, proj_max;  // hull projection per axis

    HullSat(const GridComplex& g, const Point3& apex, const Point3& bmin,
            const Point3& bmax) {
        (void)g;
        std::vector<Point3> verts;
        verts.push_back(apex);
        for (int cx = 0; cx < 2; ++cx)
            for (int cy = 0; cy < 2; ++cy)
                for (int cz = 0; cz < 2; ++cz)
                    verts.push_back({cx ? bmax.x : bmin.x, cy ? bmax.y : bmin.y,
                                     cz ? bmax.z : bmin.z});

        auto add_axis = [&](const Vec3& v) {
            if (is_zero(v)) return;
            axes.push_back(v);
        };
        add_axis({Scalar(1), Scalar(0), Scalar(0)});
        add_axis({Scalar(0), Scalar(1), Scalar(0)});
        add_axis({Scalar(0), Scalar(0), Scalar(1)});
        // Facet normals through apex and cross products of apex-corner edges
        // with the box's axis-parallel edges.
        for (std::size_t i = 1; i < verts.size(); ++i) {
            Vec3 e = verts[i] - apex;
            add_axis(cross(e, {Scalar(1), Scalar(0), Scalar(0)}));
            add_axis(cross(e, {Scalar(0), Scalar(1), Scalar(0)}));
            add_axis(cross(e, {Scalar(0), Scalar(0), Scalar(1)}));
        }
        proj_min.reserve(axes.size());
        proj_max.reserve(axes.size());
        for (const Vec3& u : axes) {
            Scalar lo = dot(u, verts[0]), hi = lo;
            for (std::size_t i = 1; i < verts.size(); ++i) {
                Scalar p = dot(u, verts[i]);
                if (p < lo) lo = p;
                if (p > hi) hi = p;
            }
            proj_min.push_back(lo);
            proj_max.push_back(hi);
        }
    }

    /// True iff the hull intersects the open cell (cmin, cmax).
    bool intersects_open_cell(const Point3& cmin, const Point3& cmax) const {
        for (std::size_t k = 0; k < axes.size(); ++k) {
            const Vec3& u = axes[k];
            Scalar lo(0), hi(0);
            for (int a = 0; a < 3; ++a) {
                int s = sgn(u[a]);
                if (s > 0) {
                    lo += u[a] * cmin[a];
                    hi += u[a] * cmax[a];
                } else if (s < 0) {
                    lo += u[a] * cmax[a];
                    hi += u[a] * cmin[a];
                }
            }
            // The open cell projects to the open interval (lo, hi):
            // touching contact is not an intersection.
            if (proj_max[k] <= lo || proj_min[k] >= hi) return false;
        }
        return true;
    }
};

}  // namespace

bool hull_in_polyhedron(const GridComplex& g, const Point3& apex,
                        const Point3& box_min, const Point3& box_max) {
    // Hull bounding box; anything outside the grid box is outside P.
    std::array<int, 3> lo{}, hi{};
    for (int a = 0; a < 3; ++a) {
        Scalar bmin = std::min(apex[a], box_min[a]);
        Scalar bmax = std::max(apex[a], box_max[a]);
        const auto& cs = g.coords[a];
        if (bmin < cs.front() || bmax > cs.back()) return false;
        // Cells whose open extent can meet [bmin, bmax].
        auto l = g.locate(axis_from_index(a), bmin);
        lo[a] = std::max(0, l.index == static_cast<int>(cs.size()) - 1 ? l.index - 1 : l.index);
        auto h = g.locate(axis_from_index(a), bmax);
        hi[a] = std::min(g.cell_count(axis_from_index(a)) - 1, h.index);
    }
    HullSat sat(g, apex, box_min, box_max);
    for (int iz = lo[2]; iz <= hi[2]; ++iz)
        for (int iy = lo[1]; iy <= hi[1]; ++iy)
            for (int ix = lo[0]; ix <= hi[0]; ++ix) {
                if (g.cell_interior(ix, iy, iz)) continue;
                if (sat.intersects_open_cell(g.cell_min(ix, iy, iz), g.cell_max(ix, iy, iz)))
                    return false;
            }
    return true;
}

bool hull_in_polyhedron(const GridComplex& g, const Point3& apex, const CellBox& box) {
    Point3 bmin{g.coords[0][box.lo[0]], g.coords[1][box.lo[1]], g.coords[2][box.lo[2]]};
    Point3 bmax{g.coords[0][box.hi[0]], g.coords[1][box.hi[1]], g.coords[2][box.hi[2]]};
    return hull_in_polyhedron(g, apex, bmin, bmax);
}

}  // namespace searchlight
