#include "searchlight/polyhedron.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <set>

namespace searchlight {

const char* to_string(ValidationErrorKind k) {
    switch (k) {
        case ValidationErrorKind::EmptyInput: return "EmptyInput";
        case ValidationErrorKind::NotOrthogonal: return "NotOrthogonal";
        case ValidationErrorKind::DegenerateFace: return "DegenerateFace";
        case ValidationErrorKind::NotManifold: return "NotManifold";
        case ValidationErrorKind::NotConnected: return "NotConnected";
    }
    return "?";
}

Segment3 notch_segment(const GridComplex& g, const Notch& n) {
    const auto oa = other_axes(n.axis);
    Point3 a, b;
    a[n.axis] = g.coords[axis_index(n.axis)][n.lo];
    b[n.axis] = g.coords[axis_index(n.axis)][n.hi];
    a[oa[0]] = b[oa[0]] = g.coords[axis_index(oa[0])][n.plane_u];
    a[oa[1]] = b[oa[1]] = g.coords[axis_index(oa[1])][n.plane_v];
    return {a, b, true};
}

Segment3 BoundaryEdge::segment(const GridComplex& g) const {
    const auto oa = other_axes(axis);
    Point3 a, b;
    a[axis] = g.coords[axis_index(axis)][lo];
    b[axis] = g.coords[axis_index(axis)][hi];
    a[oa[0]] = b[oa[0]] = g.coords[axis_index(oa[0])][plane_u];
    a[oa[1]] = b[oa[1]] = g.coords[axis_index(oa[1])][plane_v];
    return {a, b, false};
}

namespace {

[[noreturn]] void fail(ValidationErrorKind k, const std::string& msg) {
    throw ValidationError(k, std::string(to_string(k)) + ": " + msg);
}

/// Per-axis face coverage counts: cover[plane][iv * nu + iu], where (iu, iv)
/// are cell columns along other_axes(axis).
struct CoverMap {
    int planes = 0, nu = 0, nv = 0;
    std::vector<std::uint8_t> count;

    std::uint8_t& at(int p, int iu, int iv) {
        return count[(static_cast<std::size_t>(p) * nv + iv) * nu + iu];
    }
    std::uint8_t get(int p, int iu, int iv) const {
        return count[(static_cast<std::size_t>(p) * nv + iv) * nu + iu];
    }
};

bool point_in_rings(const std::vector<std::vector<Point2>>& rings, const Scalar& cu,
                    const Scalar& cv) {
    // Even-odd ray cast in +u direction. Query points are cell centers, so
    // they never lie on a ring edge (all ring coordinates are grid planes).
    bool inside = false;
    for (const auto& ring : rings) {
        const std::size_t n = ring.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Point2& p = ring[i];
            const Point2& q = ring[(i + 1) % n];
            if (p.x != q.x) continue;  // only v-direction edges cross the ray line
            const Scalar& vlo = p.y < q.y ? p.y : q.y;
            const Scalar& vhi = p.y < q.y ? q.y : p.y;
            if (vlo < cv && cv < vhi && p.x > cu) inside = !inside;
        }
    }
    return inside;
}

void check_ring(const std::vector<Point2>& ring, bool& pinch) {
    if (ring.size() < 4) fail(ValidationErrorKind::DegenerateFace, "ring with fewer than 4 vertices");
    const std::size_t n = ring.size();
    int prev_dir = -1;  // 0 = u-edge, 1 = v-edge
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& p = ring[i];
        const Point2& q = ring[(i + 1) % n];
        bool du = p.x != q.x, dv = p.y != q.y;
        if (du && dv) fail(ValidationErrorKind::NotOrthogonal, "ring edge is not axis-parallel");
        if (!du && !dv) fail(ValidationErrorKind::DegenerateFace, "zero-length ring edge");
        int dir = du ? 0 : 1;
        if (dir == prev_dir)
            fail(ValidationErrorKind::DegenerateFace, "collinear consecutive ring edges");
        prev_dir = dir;
    }
    // Closed loop: first edge must also alternate with the last.
    bool du0 = ring[0].x != ring[1].x;
    bool dun = ring[n - 1].x != ring[0].x;
    if (du0 == dun) fail(ValidationErrorKind::DegenerateFace, "collinear consecutive ring edges");
    std::set<std::pair<Scalar, Scalar>> seen;
    for (const Point2& p : ring)
        if (!seen.insert({p.x, p.y}).second) pinch = true;
}

int exact_plane(const std::vector<Scalar>& cs, const Scalar& x) {
    auto it = std::lower_bound(cs.begin(), cs.end(), x);
    return static_cast<int>(it - cs.begin());
}

}  // namespace

OrthoPolyhedron validate_polyhedron(const RawSolid& raw) {
    if (raw.faces.empty()) fail(ValidationErrorKind::EmptyInput, "no faces");

    OrthoPolyhedron out;
    out.input = raw;

    for (const FaceInput& f : raw.faces) {
        if (f.rings.empty()) fail(ValidationErrorKind::DegenerateFace, "face without rings");
        for (const auto& ring : f.rings) check_ring(ring, out.has_pinch_vertices);
    }

    // Coordinate arrays: every face offset and every ring coordinate.
    GridComplex& g = out.grid;
    {
        std::array<std::set<Scalar>, 3> cs;
        for (const FaceInput& f : raw.faces) {
            const auto oa = other_axes(f.axis);
            cs[axis_index(f.axis)].insert(f.offset);
            for (const auto& ring : f.rings)
                for (const Point2& p : ring) {
                    cs[axis_index(oa[0])].insert(p.x);
                    cs[axis_index(oa[1])].insert(p.y);
                }
        }
        for (int a = 0; a < 3; ++a) {
            if (cs[a].size() < 2)
                fail(ValidationErrorKind::DegenerateFace, "solid is flat along an axis");
            g.coords[a].assign(cs[a].begin(), cs[a].end());
        }
    }

    // Rasterize each face onto its grid plane and count coverage.
    std::array<CoverMap, 3> cover;
    for (int a = 0; a < 3; ++a) {
        const auto oa = other_axes(axis_from_index(a));
        cover[a].planes = static_cast<int>(g.coords[a].size());
        cover[a].nu = g.cell_count(oa[0]);
        cover[a].nv = g.cell_count(oa[1]);
        cover[a].count.assign(static_cast<std::size_t>(cover[a].planes) * cover[a].nu *
                                  cover[a].nv,
                              0);
    }
    Scalar half(1, 2);
    for (const FaceInput& f : raw.faces) {
        const int a = axis_index(f.axis);
        const auto oa = other_axes(f.axis);
        const auto& cu = g.coords[axis_index(oa[0])];
        const auto& cv = g.coords[axis_index(oa[1])];
        const int p = exact_plane(g.coords[a], f.offset);
        bool any = false;
        for (int iv = 0; iv < cover[a].nv; ++iv)
            for (int iu = 0; iu < cover[a].nu; ++iu) {
                Scalar mu = half * (cu[iu] + cu[iu + 1]);
                Scalar mv = half * (cv[iv] + cv[iv + 1]);
                if (!point_in_rings(f.rings, mu, mv)) continue;
                any = true;
                if (++cover[a].at(p, iu, iv) > 1)
                    fail(ValidationErrorKind::DegenerateFace, "overlapping coplanar faces");
            }
        if (!any) fail(ValidationErrorKind::DegenerateFace, "face with empty interior");
    }

    // Cell labels by parity of z-face coverage above each cell.
    const int nx = g.nx(), ny = g.ny(), nz = g.nz();
    g.interior_.assign(static_cast<std::size_t>(nx) * ny * nz, 0);
    for (int iy = 0; iy < ny; ++iy)
        for (int ix = 0; ix < nx; ++ix) {
            int parity = 0;
            for (int iz = nz - 1; iz >= 0; --iz) {
                parity ^= cover[2].get(iz + 1, ix, iy) & 1;
                g.interior_[g.cell_index(ix, iy, iz)] = static_cast<char>(parity);
            }
        }
    if (g.interior_cell_count() == 0)
        fail(ValidationErrorKind::EmptyInput, "face list bounds no volume");

    // Mutual consistency: a facet is covered by the input exactly when the
    // labeled solid has its boundary there. This closes the loop between
    // all three axes (labels came from z-faces alone).
    for (int a = 0; a < 3; ++a) {
        for (int p = 0; p < cover[a].planes; ++p)
            for (int iv = 0; iv < cover[a].nv; ++iv)
                for (int iu = 0; iu < cover[a].nu; ++iu) {
                    FacetId fid{axis_from_index(a), p, iu, iv};
                    bool covered = cover[a].get(p, iu, iv) != 0;
                    bool boundary = g.facet_state(fid) == FacetState::Boundary;
                    if (covered != boundary)
                        fail(ValidationErrorKind::NotManifold,
                             covered ? "face does not lie on the solid boundary"
                                     : "solid boundary not covered by any face");
                }
    }

    // Edge condition: no grid edge may have exactly the two diagonal cells
    // interior. Derive maximal boundary edges in the same sweep.
    for (int a = 0; a < 3; ++a) {
        const auto oa = other_axes(axis_from_index(a));
        const int nu_planes = static_cast<int>(g.coords[axis_index(oa[0])].size());
        const int nv_planes = static_cast<int>(g.coords[axis_index(oa[1])].size());
        const int nt = g.cell_count(axis_from_index(a));
        for (int pv = 0; pv < nv_planes; ++pv)
            for (int pu = 0; pu < nu_planes; ++pu) {
                // kind/quadrant code per unit edge: -1 = not an edge.
                int run_code = -1, run_start = 0;
                auto flush = [&](int t_end) {
                    if (run_code < 0) return;
                    BoundaryEdge e;
                    e.axis = axis_from_index(a);
                    e.plane_u = pu;
                    e.plane_v = pv;
                    e.lo = run_start;
                    e.hi = t_end;
                    e.kind = (run_code & 8) ? EdgeKind::Reflex : EdgeKind::Convex;
                    e.ext_u = (run_code & 1) ? 1 : -1;
                    e.ext_v = (run_code & 2) ? 1 : -1;
                    out.edges.push_back(e);
                    run_code = -1;
                };
                for (int t = 0; t < nt; ++t) {
                    std::array<int, 3> c;
                    c[a] = t;
                    bool b[2][2];
                    for (int du = 0; du < 2; ++du)
                        for (int dv = 0; dv < 2; ++dv) {
                            c[axis_index(oa[0])] = pu - 1 + du;
                            c[axis_index(oa[1])] = pv - 1 + dv;
                            b[du][dv] = g.cell_interior(c[0], c[1], c[2]);
                        }
                    int n_int = b[0][0] + b[0][1] + b[1][0] + b[1][1];
                    int code = -1;
                    if (n_int == 2 && b[0][0] == b[1][1] && b[0][1] == b[1][0])
                        fail(ValidationErrorKind::NotManifold,
                             "edge with two diagonally opposite solid cells");
                    if (n_int == 1) {
                        // Convex edge; record the interior quadrant.
                        for (int du = 0; du < 2; ++du)
                            for (int dv = 0; dv < 2; ++dv)
                                if (b[du][dv]) code = du | (dv << 1);
                    } else if (n_int == 3) {
                        // Reflex edge; record the exterior quadrant.
                        for (int du = 0; du < 2; ++du)
                            for (int dv = 0; dv < 2; ++dv)
                                if (!b[du][dv]) code = 8 | du | (dv << 1);
                    }
                    if (code != run_code) {
                        flush(t);
                        run_code = code;
                        run_start = t;
                    }
                }
                flush(nt);
            }
    }

    // Vertex condition: around every grid vertex, the solid cells must be
    // facet-connected, and so must the empty cells.
    {
        const int npx = nx + 1, npy = ny + 1, npz = nz + 1;
        for (int pz = 0; pz < npz; ++pz)
            for (int py = 0; py < npy; ++py)
                for (int px = 0; px < npx; ++px) {
                    int mask = 0;
                    for (int d = 0; d < 8; ++d) {
                        int ix = px - 1 + (d & 1), iy = py - 1 + ((d >> 1) & 1),
                            iz = pz - 1 + ((d >> 2) & 1);
                        if (g.cell_interior(ix, iy, iz)) mask |= 1 << d;
                    }
                    if (mask == 0 || mask == 255) continue;
                    auto connected = [](int m) {
                        if (m == 0) return true;
                        int seed = m & -m;
                        int reach = seed;
                        for (;;) {
                            int grow = reach;
                            for (int d = 0; d < 8; ++d) {
                                if (!(reach & (1 << d))) continue;
                                for (int bit : {1, 2, 4}) {
                                    int nb = d ^ bit;
                                    if (m & (1 << nb)) grow |= 1 << nb;
                                }
                            }
                            if (grow == reach) break;
                            reach = grow;
                        }
                        return reach == m;
                    };
                    if (!connected(mask) || !connected(~mask & 255))
                        fail(ValidationErrorKind::NotManifold,
                             "solid cells around a vertex touch only at that vertex");
                }
    }

    // Interior connectivity and absence of cavities.
    {
        std::vector<char> seen(g.interior_.size(), 0);
        auto bfs = [&](int sx, int sy, int sz, bool want_interior) {
            std::deque<std::array<int, 3>> q;
            q.push_back({sx, sy, sz});
            seen[g.cell_index(sx, sy, sz)] = 1;
            int visited = 0;
            while (!q.empty()) {
                auto [ix, iy, iz] = q.front();
                q.pop_front();
                ++visited;
                static const int d6[6][3] = {{1, 0, 0},  {-1, 0, 0}, {0, 1, 0},
                                             {0, -1, 0}, {0, 0, 1},  {0, 0, -1}};
                for (const auto& d : d6) {
                    int jx = ix + d[0], jy = iy + d[1], jz = iz + d[2];
                    if (!g.in_range(jx, jy, jz)) continue;
                    if (g.cell_interior(jx, jy, jz) != want_interior) continue;
                    std::size_t idx = g.cell_index(jx, jy, jz);
                    if (seen[idx]) continue;
                    seen[idx] = 1;
                    q.push_back({jx, jy, jz});
                }
            }
            return visited;
        };
        int first[3] = {-1, -1, -1};
        for (int iz = 0; iz < nz && first[0] < 0; ++iz)
            for (int iy = 0; iy < ny && first[0] < 0; ++iy)
                for (int ix = 0; ix < nx && first[0] < 0; ++ix)
                    if (g.cell_interior(ix, iy, iz)) {
                        first[0] = ix;
                        first[1] = iy;
                        first[2] = iz;
                    }
        if (bfs(first[0], first[1], first[2], true) != g.interior_cell_count())
            fail(ValidationErrorKind::NotConnected, "solid interior is not connected");

        // Flood the exterior from the rim; an unreached empty cell is a
        // cavity (disconnected boundary).
        std::fill(seen.begin(), seen.end(), 0);
        int ext_total = static_cast<int>(g.interior_.size()) - g.interior_cell_count();
        int ext_seen = 0;
        for (int iz = 0; iz < nz; ++iz)
            for (int iy = 0; iy < ny; ++iy)
                for (int ix = 0; ix < nx; ++ix) {
                    bool rim = ix == 0 || ix == nx - 1 || iy == 0 || iy == ny - 1 ||
                               iz == 0 || iz == nz - 1;
                    if (!rim || g.cell_interior(ix, iy, iz)) continue;
                    if (seen[g.cell_index(ix, iy, iz)]) continue;
                    ext_seen += bfs(ix, iy, iz, false);
                }
        if (ext_seen != ext_total)
            fail(ValidationErrorKind::NotConnected, "solid encloses a cavity");
    }

    // Maximal boundary faces: connected coplanar boundary facets with the
    // solid on the same side.
    {
        std::map<FacetId, int> assigned;
        std::vector<FacetId> boundary;
        for (int a = 0; a < 3; ++a)
            for (int p = 0; p < cover[a].planes; ++p)
                for (int iv = 0; iv < cover[a].nv; ++iv)
                    for (int iu = 0; iu < cover[a].nu; ++iu) {
                        FacetId fid{axis_from_index(a), p, iu, iv};
                        if (g.facet_state(fid) == FacetState::Boundary)
                            boundary.push_back(fid);
                    }
        auto facet_side = [&](const FacetId& f) {
            auto cells = g.facet_cells(f);
            return g.cell_interior(cells[0][0], cells[0][1], cells[0][2]) ? 1 : -1;
        };
        for (const FacetId& seed : boundary) {
            if (assigned.count(seed)) continue;
            BoundaryFace face;
            face.axis = seed.axis;
            face.plane = seed.plane;
            face.side = facet_side(seed);
            std::deque<FacetId> q{seed};
            assigned[seed] = static_cast<int>(out.faces.size());
            while (!q.empty()) {
                FacetId f = q.front();
                q.pop_front();
                face.facets.push_back(f);
                static const int d4[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
                for (const auto& d : d4) {
                    FacetId nb{f.axis, f.plane, f.u + d[0], f.v + d[1]};
                    const auto oa = other_axes(f.axis);
                    if (nb.u < 0 || nb.u >= g.cell_count(oa[0]) || nb.v < 0 ||
                        nb.v >= g.cell_count(oa[1]))
                        continue;
                    if (assigned.count(nb)) continue;
                    if (g.facet_state(nb) != FacetState::Boundary) continue;
                    if (facet_side(nb) != face.side) continue;
                    assigned[nb] = static_cast<int>(out.faces.size());
                    q.push_back(nb);
                }
            }
            out.faces.push_back(std::move(face));
        }
    }

    // Notches are the maximal reflex edges.
    for (const BoundaryEdge& e : out.edges) {
        if (e.kind != EdgeKind::Reflex) continue;
        Notch n;
        n.axis = e.axis;
        n.plane_u = e.plane_u;
        n.plane_v = e.plane_v;
        n.lo = e.lo;
        n.hi = e.hi;
        n.ext_u = e.ext_u;
        n.ext_v = e.ext_v;
        out.notches.push_back(n);
    }

    // Genus from the Euler characteristic of the boundary quad mesh.
    {
        long F = 0, E = 0, V = 0;
        for (int a = 0; a < 3; ++a)
            for (int p = 0; p < cover[a].planes; ++p)
                for (int iv = 0; iv < cover[a].nv; ++iv)
                    for (int iu = 0; iu < cover[a].nu; ++iu)
                        if (g.facet_state({axis_from_index(a), p, iu, iv}) ==
                            FacetState::Boundary)
                            ++F;
        for (int a = 0; a < 3; ++a) {
            const auto oa = other_axes(axis_from_index(a));
            const int nu_planes = static_cast<int>(g.coords[axis_index(oa[0])].size());
            const int nv_planes = static_cast<int>(g.coords[axis_index(oa[1])].size());
            const int nt = g.cell_count(axis_from_index(a));
            for (int pv = 0; pv < nv_planes; ++pv)
                for (int pu = 0; pu < nu_planes; ++pu)
                    for (int t = 0; t < nt; ++t) {
                        std::array<int, 3> c;
                        c[a] = t;
                        int n_int = 0;
                        for (int du = 0; du < 2; ++du)
                            for (int dv = 0; dv < 2; ++dv) {
                                c[axis_index(oa[0])] = pu - 1 + du;
                                c[axis_index(oa[1])] = pv - 1 + dv;
                                n_int += g.cell_interior(c[0], c[1], c[2]);
                            }
                        if (n_int > 0 && n_int < 4) ++E;
                    }
        }
        for (int pz = 0; pz <= nz; ++pz)
            for (int py = 0; py <= ny; ++py)
                for (int px = 0; px <= nx; ++px) {
                    int n_int = 0;
                    for (int d = 0; d < 8; ++d)
                        n_int += g.cell_interior(px - 1 + (d & 1), py - 1 + ((d >> 1) & 1),
                                                 pz - 1 + ((d >> 2) & 1));
                    if (n_int > 0 && n_int < 8) ++V;
                }
        long chi = V - E + F;
        out.genus = static_cast<int>((2 - chi) / 2);
    }

    return out;
}

Scalar boundary_volume(const OrthoPolyhedron& p) {
    // Divergence theorem with F = (x, 0, 0): only x-orthogonal facets
    // contribute offset * area * outward-normal sign.
    const GridComplex& g = p.grid;
    Scalar vol(0);
    for (const BoundaryFace& f : p.faces) {
        if (f.axis != Axis::X) continue;
        const Scalar& x = g.coords[0][f.plane];
        for (const FacetId& fid : f.facets) {
            Scalar area = (g.coords[1][fid.u + 1] - g.coords[1][fid.u]) *
                          (g.coords[2][fid.v + 1] - g.coords[2][fid.v]);
            vol += Scalar(f.side) * x * area;
        }
    }
    return vol;
}

}  // namespace searchlight
