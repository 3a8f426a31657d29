#include "searchlight/fixtures.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace searchlight {

namespace {

std::vector<Scalar> axis_coords(const std::vector<std::pair<Point3, Point3>>& boxes,
                                int a) {
    std::vector<Scalar> c;
    for (const auto& b : boxes) {
        c.push_back(b.first[a]);
        c.push_back(b.second[a]);
    }
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    return c;
}

}  // namespace

RawSolid boxes_to_solid(const std::vector<std::pair<Point3, Point3>>& boxes) {
    std::array<std::vector<Scalar>, 3> coords{
        axis_coords(boxes, 0), axis_coords(boxes, 1), axis_coords(boxes, 2)};
    auto nc = [&](int a) { return static_cast<int>(coords[a].size()) - 1; };
    auto covered = [&](int ix, int iy, int iz) {
        if (ix < 0 || iy < 0 || iz < 0 || ix >= nc(0) || iy >= nc(1) || iz >= nc(2))
            return false;
        Point3 c((coords[0][ix] + coords[0][ix + 1]) / 2,
                 (coords[1][iy] + coords[1][iy + 1]) / 2,
                 (coords[2][iz] + coords[2][iz + 1]) / 2);
        for (const auto& b : boxes) {
            bool in = true;
            for (int a = 0; a < 3; ++a)
                if (c[a] < b.first[a] || c[a] > b.second[a]) {
                    in = false;
                    break;
                }
            if (in) return true;
        }
        return false;
    };

    RawSolid out;
    for (int a = 0; a < 3; ++a) {
        const Axis ax = axis_from_index(a);
        const auto oa = other_axes(ax);
        const int ua = axis_index(oa[0]), va = axis_index(oa[1]);
        for (int p = 0; p < static_cast<int>(coords[a].size()); ++p) {
            FaceInput face{ax, coords[a][p], {}};
            for (int v = 0; v < nc(va); ++v)
                for (int u = 0; u < nc(ua); ++u) {
                    std::array<int, 3> lo{}, hi{};
                    lo[a] = p - 1;
                    hi[a] = p;
                    lo[ua] = hi[ua] = u;
                    lo[va] = hi[va] = v;
                    bool below = covered(lo[0], lo[1], lo[2]);
                    bool above = covered(hi[0], hi[1], hi[2]);
                    if (below == above) continue;
                    const Scalar &u0 = coords[ua][u], &u1 = coords[ua][u + 1];
                    const Scalar &v0 = coords[va][v], &v1 = coords[va][v + 1];
                    face.rings.push_back({{u0, v0}, {u1, v0}, {u1, v1}, {u0, v1}});
                }
            if (!face.rings.empty()) out.faces.push_back(std::move(face));
        }
    }
    return out;
}

namespace {

Point3 pt(long x, long y, long z) { return {Scalar(x), Scalar(y), Scalar(z)}; }

OrthoPolyhedron from_boxes(const std::vector<std::pair<Point3, Point3>>& boxes) {
    return validate_polyhedron(boxes_to_solid(boxes));
}

}  // namespace

OrthoPolyhedron fixture_unit_cube() { return from_boxes({{pt(0, 0, 0), pt(1, 1, 1)}}); }

OrthoPolyhedron fixture_l_solid() {
    return from_boxes({{pt(0, 0, 0), pt(2, 1, 1)}, {pt(0, 0, 1), pt(1, 1, 2)}});
}

OrthoPolyhedron fixture_staircase(int steps) {
    std::vector<std::pair<Point3, Point3>> boxes;
    for (int i = 0; i < steps; ++i)
        boxes.push_back({pt(0, 0, i), pt(steps - i, 1, i + 1)});
    return from_boxes(boxes);
}

OrthoPolyhedron fixture_square_torus() {
    return from_boxes({{pt(0, 0, 0), pt(3, 1, 1)},
                       {pt(0, 2, 0), pt(3, 3, 1)},
                       {pt(0, 1, 0), pt(1, 2, 1)},
                       {pt(2, 1, 0), pt(3, 2, 1)}});
}

OrthoPolyhedron fixture_offset_slabs() {
    return from_boxes({{pt(0, 0, 0), pt(1, 2, 1)}, {pt(1, 1, 0), pt(2, 3, 1)}});
}

OrthoPolyhedron fixture_shadow_solid() {
    return from_boxes({{pt(0, 0, 0), pt(1, 2, 2)}, {pt(1, 0, 0), pt(2, 1, 2)}});
}

OrthoPolyhedron fixture_plus_corridors() {
    return from_boxes({{pt(0, 1, 0), pt(3, 2, 1)}, {pt(1, 0, 0), pt(2, 3, 1)}});
}

RawSolid fixture_edge_cubes() {
    return boxes_to_solid({{pt(0, 0, 0), pt(1, 1, 1)}, {pt(1, 1, 0), pt(2, 2, 1)}});
}

RawSolid fixture_vertex_cubes() {
    return boxes_to_solid({{pt(0, 0, 0), pt(1, 1, 1)}, {pt(1, 1, 1), pt(2, 2, 2)}});
}

OrthoPolyhedron random_polyhedron(std::mt19937& rng, int max_boxes, int min_notches,
                                  int max_notches) {
    std::uniform_int_distribution<int> nbd(2, max_boxes);
    std::uniform_int_distribution<long> lod(0, 5), szd(1, 3);
    for (;;) {
        int nb = nbd(rng);
        std::vector<std::pair<Point3, Point3>> boxes;
        for (int i = 0; i < nb; ++i) {
            long x = lod(rng), y = lod(rng), z = lod(rng);
            boxes.push_back({pt(x, y, z), pt(x + szd(rng), y + szd(rng), z + szd(rng))});
        }
        try {
            OrthoPolyhedron p = from_boxes(boxes);
            int r = static_cast<int>(p.notches.size());
            if (r >= min_notches && r <= max_notches) return p;
        } catch (const ValidationError&) {
        }
    }
}

namespace {

/// Boundary rings of a union of covered grid cells, traced with the
/// interior on the left (outer counterclockwise, holes clockwise).
std::vector<std::vector<Point2>> trace_rings(const std::vector<Scalar>& cx,
                                             const std::vector<Scalar>& cy,
                                             const std::vector<char>& cell) {
    const int nx = static_cast<int>(cx.size()) - 1;
    const int ny = static_cast<int>(cy.size()) - 1;
    auto cov = [&](int i, int j) {
        return i >= 0 && j >= 0 && i < nx && j < ny && cell[j * nx + i] != 0;
    };
    struct DirEdge {
        int fx, fy, tx, ty;
        bool used = false;
    };
    std::vector<DirEdge> edges;
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i < nx; ++i) {
            bool above = cov(i, j), below = cov(i, j - 1);
            if (above == below) continue;
            if (above)
                edges.push_back({i, j, i + 1, j});
            else
                edges.push_back({i + 1, j, i, j});
        }
    for (int i = 0; i <= nx; ++i)
        for (int j = 0; j < ny; ++j) {
            bool left = cov(i - 1, j), right = cov(i, j);
            if (left == right) continue;
            if (left)
                edges.push_back({i, j, i, j + 1});
            else
                edges.push_back({i, j + 1, i, j});
        }
    std::map<std::pair<int, int>, std::vector<int>> out_of;
    for (std::size_t e = 0; e < edges.size(); ++e)
        out_of[{edges[e].fx, edges[e].fy}].push_back(static_cast<int>(e));

    std::vector<std::vector<Point2>> rings;
    for (std::size_t start = 0; start < edges.size(); ++start) {
        if (edges[start].used) continue;
        std::vector<std::pair<int, int>> verts;
        int cur = static_cast<int>(start);
        for (;;) {
            DirEdge& e = edges[cur];
            e.used = true;
            verts.push_back({e.fx, e.fy});
            if (e.tx == edges[start].fx && e.ty == edges[start].fy) break;
            const auto& outs = out_of[{e.tx, e.ty}];
            int next = -1, best_turn = -2;
            int dx = e.tx - e.fx, dy = e.ty - e.fy;
            for (int cand : outs) {
                if (edges[cand].used) continue;
                int cdx = edges[cand].tx - edges[cand].fx;
                int cdy = edges[cand].ty - edges[cand].fy;
                int turn = dx * cdy - dy * cdx;  // prefer the leftmost turn
                if (turn > best_turn) {
                    best_turn = turn;
                    next = cand;
                }
            }
            if (next < 0) throw std::logic_error("open boundary chain");
            cur = next;
        }
        // Merge collinear runs and convert to coordinates.
        std::vector<Point2> ring;
        const int n = static_cast<int>(verts.size());
        for (int k = 0; k < n; ++k) {
            auto [px, py] = verts[k];
            auto [ax, ay] = verts[(k + n - 1) % n];
            auto [bx, by] = verts[(k + 1) % n];
            if ((px - ax) * (by - py) == (py - ay) * (bx - px)) continue;
            ring.push_back({cx[px], cy[py]});
        }
        if (ring.size() >= 4) rings.push_back(std::move(ring));
    }
    return rings;
}

}  // namespace

Polygon2 random_rectilinear_polygon(std::mt19937& rng, int max_reflex, int max_holes) {
    std::uniform_int_distribution<int> nrd(2, 8);
    std::uniform_int_distribution<long> lod(0, 6), szd(1, 4);
    for (;;) {
        int nr = nrd(rng);
        std::vector<std::array<long, 4>> rects;
        for (int i = 0; i < nr; ++i) {
            long x = lod(rng), y = lod(rng);
            rects.push_back({x, y, x + szd(rng), y + szd(rng)});
        }
        std::vector<Scalar> cx, cy;
        for (const auto& r : rects) {
            cx.push_back(Scalar(r[0]));
            cx.push_back(Scalar(r[2]));
            cy.push_back(Scalar(r[1]));
            cy.push_back(Scalar(r[3]));
        }
        std::sort(cx.begin(), cx.end());
        cx.erase(std::unique(cx.begin(), cx.end()), cx.end());
        std::sort(cy.begin(), cy.end());
        cy.erase(std::unique(cy.begin(), cy.end()), cy.end());
        const int nx = static_cast<int>(cx.size()) - 1;
        const int ny = static_cast<int>(cy.size()) - 1;
        std::vector<char> cell(static_cast<std::size_t>(nx) * ny, 0);
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                Scalar mx = (cx[i] + cx[i + 1]) / 2, my = (cy[j] + cy[j + 1]) / 2;
                for (const auto& r : rects)
                    if (mx > r[0] && mx < r[2] && my > r[1] && my < r[3]) {
                        cell[j * nx + i] = 1;
                        break;
                    }
            }
        std::vector<std::vector<Point2>> rings;
        try {
            rings = trace_rings(cx, cy, cell);
        } catch (const std::logic_error&) {
            continue;
        }
        Polygon2 poly;
        int outers = 0;
        for (auto& r : rings) {
            Scalar area(0);
            for (std::size_t k = 0; k < r.size(); ++k)
                area += cross(r[k], r[(k + 1) % r.size()]);
            if (sgn(area) > 0) {
                ++outers;
                poly.outer = std::move(r);
            } else {
                poly.holes.push_back(std::move(r));
            }
        }
        if (outers != 1) continue;
        try {
            poly = validate_polygon(std::move(poly));
        } catch (const std::invalid_argument&) {
            continue;
        }
        if (poly.reflex_count() > max_reflex || poly.hole_count() > max_holes) continue;
        return poly;
    }
}

}  // namespace searchlight
