#include "searchlight/fences.hpp"

#include <algorithm>
#include <queue>
#include <sstream>
#include <tuple>

namespace searchlight {

namespace {

bool marked(const FencePlan& plan, const FacetId& f) {
    return plan.facet_fence.count(f) != 0;
}

/// Adds the facet to the fence unless an earlier fence already owns it.
void mark(FencePlan& plan, int fence, const FacetId& f) {
    auto [it, inserted] = plan.facet_fence.emplace(f, fence);
    if (inserted) plan.fences[fence].facets.push_back(f);
}

/// Step-1 cut: the vertical facet column under (or above) a horizontal
/// notch, walked per cell along the notch until the solid boundary.
/// Earlier fences in the same column are walked through but keep their
/// facets, so the geometric cut always reaches the boundary.
void erect_step1(const GridComplex& g, FencePlan& plan, int notch_idx, const Notch& n) {
    const auto oa = other_axes(n.axis);
    const Axis fa = oa[0];  // fence plane normal: the horizontal cross axis
    Fence fence;
    fence.step = 1;
    fence.source_notch = notch_idx;
    fence.plane_axis = fa;
    fence.plane = n.plane_u;
    fence.guard = notch_idx;
    const int fi = static_cast<int>(plan.fences.size());
    plan.fences.push_back(std::move(fence));

    const int dz = -n.ext_v;
    for (int t = n.lo; t < n.hi; ++t) {
        int z = n.ext_v > 0 ? n.plane_v - 1 : n.plane_v;
        while (z >= 0 && z < g.nz()) {
            FacetId f{fa, n.plane_u, t, z};
            if (g.facet_state(f) != FacetState::Internal) break;
            mark(plan, fi, f);
            z += dz;
        }
    }
}

/// Connected-component label per cell of the complex cut along all marked
/// facets so far; exterior cells get -1.
struct Pieces {
    std::vector<int> label;
    const GridComplex* g;

    int at(int x, int y, int z) const {
        if (!g->cell_interior(x, y, z)) return -1;
        return label[g->cell_index(x, y, z)];
    }
};

Pieces piece_labels(const GridComplex& g, const FencePlan& plan) {
    Pieces p{std::vector<int>(static_cast<std::size_t>(g.nx()) * g.ny() * g.nz(), -1),
             &g};
    int next = 0;
    for (int z = 0; z < g.nz(); ++z)
        for (int y = 0; y < g.ny(); ++y)
            for (int x = 0; x < g.nx(); ++x) {
                if (!g.cell_interior(x, y, z) || p.label[g.cell_index(x, y, z)] >= 0)
                    continue;
                int id = next++;
                std::queue<std::array<int, 3>> q;
                p.label[g.cell_index(x, y, z)] = id;
                q.push({x, y, z});
                while (!q.empty()) {
                    auto [cx, cy, cz] = q.front();
                    q.pop();
                    auto visit = [&](int mx, int my, int mz, FacetId f) {
                        if (!g.cell_interior(mx, my, mz)) return;
                        if (p.label[g.cell_index(mx, my, mz)] >= 0) return;
                        if (marked(plan, f)) return;
                        p.label[g.cell_index(mx, my, mz)] = id;
                        q.push({mx, my, mz});
                    };
                    visit(cx - 1, cy, cz, {Axis::X, cx, cy, cz});
                    visit(cx + 1, cy, cz, {Axis::X, cx + 1, cy, cz});
                    visit(cx, cy - 1, cz, {Axis::Y, cy, cx, cz});
                    visit(cx, cy + 1, cz, {Axis::Y, cy + 1, cx, cz});
                    visit(cx, cy, cz - 1, {Axis::Z, cz, cx, cy});
                    visit(cx, cy, cz + 1, {Axis::Z, cz + 1, cx, cy});
                }
            }
    return p;
}

/// True when the vertical grid line (x-plane xp, y-plane yp, z-cell t)
/// lies on the boundary of piece Q: it touches Q and is not interior to
/// it.
bool line_on_piece_boundary(const FencePlan& plan, const Pieces& pieces, int piece,
                            int xp, int yp, int t) {
    int n_q = 0, n_int = 0;
    for (int du = 0; du < 2; ++du)
        for (int dv = 0; dv < 2; ++dv) {
            int l = pieces.at(xp - 1 + du, yp - 1 + dv, t);
            if (l >= 0) ++n_int;
            if (l == piece) ++n_q;
        }
    if (n_q == 0) return false;
    if (n_int < 4) return true;
    return marked(plan, {Axis::X, xp, yp - 1, t}) || marked(plan, {Axis::X, xp, yp, t}) ||
           marked(plan, {Axis::Y, yp, xp - 1, t}) || marked(plan, {Axis::Y, yp, xp, t});
}

/// Left-right facet walk in the y-plane yp at z-cell t, starting at x-cell
/// `x0` and stepping by dx, staying inside piece Q. The walk stops when a
/// facet leaves the piece or is already cut, or when it would cross an
/// x-plane carrying a cut facet (prior fences act as walls). Returns
/// whether anything was added.
bool walk_row(const GridComplex& g, FencePlan& plan, const Pieces& pieces, int piece,
              int fence, int yp, int t, int x0, int dx) {
    bool any = false;
    for (int x = x0; x >= 0 && x < g.nx();) {
        if (pieces.at(x, yp - 1, t) != piece || pieces.at(x, yp, t) != piece) break;
        FacetId f{Axis::Y, yp, x, t};
        if (marked(plan, f)) break;
        mark(plan, fence, f);
        any = true;
        int crossing = dx > 0 ? x + 1 : x;
        if (marked(plan, {Axis::X, crossing, yp - 1, t}) ||
            marked(plan, {Axis::X, crossing, yp, t}))
            break;
        x += dx;
    }
    return any;
}

/// Step-2 cut for a vertical notch: identify the prism the ray enters,
/// extend the notch along that prism's boundary to a maximal vertical
/// segment, then cut left-right rows in the notch's y-plane.
void erect_step2(const GridComplex& g, FencePlan& plan, int notch_idx, const Notch& n) {
    const int xp = n.plane_u, yp = n.plane_v;
    const int dx = -n.ext_u;
    const int x0 = n.ext_u > 0 ? xp - 1 : xp;

    Pieces pieces = piece_labels(g, plan);
    int piece = -1;
    for (int t = n.lo; t < n.hi && piece < 0; ++t) {
        int la = pieces.at(x0, yp - 1, t), lb = pieces.at(x0, yp, t);
        if (la >= 0 && la == lb && !marked(plan, {Axis::Y, yp, x0, t})) piece = la;
    }
    if (piece < 0) {
        plan.fenceless_step2.push_back(notch_idx);
        return;
    }

    int zlo = n.lo, zhi = n.hi;
    while (zlo > 0 && line_on_piece_boundary(plan, pieces, piece, xp, yp, zlo - 1))
        --zlo;
    while (zhi < g.nz() && line_on_piece_boundary(plan, pieces, piece, xp, yp, zhi))
        ++zhi;

    Fence fence;
    fence.step = 2;
    fence.source_notch = notch_idx;
    fence.plane_axis = Axis::Y;
    fence.plane = yp;
    fence.guard = notch_idx;
    const int fi = static_cast<int>(plan.fences.size());
    plan.fences.push_back(std::move(fence));

    bool any = false;
    for (int t = zlo; t < zhi; ++t)
        any |= walk_row(g, plan, pieces, piece, fi, yp, t, x0, dx);
    if (!any) {
        plan.fences.pop_back();
        plan.fenceless_step2.push_back(notch_idx);
    }
}

struct ReflexLine {
    int xp, yp;
    int t0, t1;  // z-cell run [t0, t1)
    int du, dv;  // quadrant cell cut off by the two owned facets
};

/// Residual vertical reflex edges of the cut pieces: grid lines with four
/// interior cells where exactly one quadrant cell is walled off by an
/// x-facet and a y-facet of earlier fences.
std::vector<ReflexLine> find_reflex_lines(const GridComplex& g, const FencePlan& plan) {
    std::vector<ReflexLine> out;
    for (int yp = 1; yp < g.ny(); ++yp)
        for (int xp = 1; xp < g.nx(); ++xp) {
            int run_code = -1, run_start = 0;
            auto flush = [&](int t_end) {
                if (run_code >= 0)
                    out.push_back(
                        {xp, yp, run_start, t_end, run_code & 1, (run_code >> 1) & 1});
                run_code = -1;
            };
            for (int t = 0; t < g.nz(); ++t) {
                int code = -1;
                bool all_int = true;
                for (int du = 0; du < 2 && all_int; ++du)
                    for (int dv = 0; dv < 2; ++dv)
                        if (!g.cell_interior(xp - 1 + du, yp - 1 + dv, t)) {
                            all_int = false;
                            break;
                        }
                if (all_int) {
                    bool mx[2] = {marked(plan, {Axis::X, xp, yp - 1, t}),
                                  marked(plan, {Axis::X, xp, yp, t})};
                    bool my[2] = {marked(plan, {Axis::Y, yp, xp - 1, t}),
                                  marked(plan, {Axis::Y, yp, xp, t})};
                    if (mx[0] + mx[1] == 1 && my[0] + my[1] == 1) {
                        int du = my[1] ? 1 : 0;
                        int dv = mx[1] ? 1 : 0;
                        code = du | (dv << 1);
                    }
                }
                if (code != run_code) {
                    flush(t);
                    run_code = code;
                    run_start = t;
                }
            }
            flush(g.nz());
        }
    return out;
}

/// Guard owning a Step-3 fence: a horizontal x-axis notch whose edge lies
/// in the fence's y-plane, ends at one of the run's z-planes, and covers
/// the x-cell on the walled-off side of the reflex line.
int find_step3_guard(const OrthoPolyhedron& p, const ReflexLine& r) {
    int best = -1;
    for (std::size_t i = 0; i < p.notches.size(); ++i) {
        const Notch& n = p.notches[i];
        if (n.axis != Axis::X || n.plane_u != r.yp) continue;
        // The guard must sit at the run endpoint from which its own fence
        // hangs toward the run (aim down: top endpoint, aim up: bottom).
        if (n.plane_v != (n.ext_v > 0 ? r.t1 : r.t0)) continue;
        int cell = r.xp - 1 + r.du;
        if (cell < n.lo || cell >= n.hi) continue;
        if (best < 0 || static_cast<int>(i) < best) best = static_cast<int>(i);
    }
    return best;
}

/// Step-3 cut for one residual reflex edge: extend the walled y-facet
/// across the line, away from the cut-off quadrant, inside the piece that
/// sees the line as reflex.
bool erect_step3(const OrthoPolyhedron& p, FencePlan& plan, const Pieces& pieces,
                 const ReflexLine& r) {
    const GridComplex& g = p.grid;
    Fence fence;
    fence.step = 3;
    fence.plane_axis = Axis::Y;
    fence.plane = r.yp;
    const int fi = static_cast<int>(plan.fences.size());
    plan.fences.push_back(std::move(fence));

    const int dx = r.du == 1 ? -1 : 1;
    const int x0 = r.xp - 1 + (1 - r.du);
    bool any = false;
    for (int t = r.t0; t < r.t1; ++t) {
        int piece = pieces.at(x0, r.yp - 1, t);
        if (piece < 0 || piece != pieces.at(x0, r.yp, t)) continue;
        any |= walk_row(g, plan, pieces, piece, fi, r.yp, t, x0, dx);
    }
    if (!any) {
        plan.fences.pop_back();
        return false;
    }

    int guard = find_step3_guard(p, r);
    plan.fences[fi].guard = guard;
    plan.fences[fi].source_notch = guard;
    if (guard >= 0) {
        for (std::size_t j = 0; j < plan.fences.size(); ++j)
            if (plan.fences[j].step == 1 && plan.fences[j].source_notch == guard) {
                plan.fences[fi].merged_into = static_cast<int>(j);
                break;
            }
    }
    return true;
}

}  // namespace

FencePlan erect_fences(OrthoPolyhedron& p) {
    if (p.notches.empty())
        throw FenceError(FenceErrorKind::ConvexInput, "polyhedron has no notches");
    const GridComplex& g = p.grid;
    FencePlan plan;

    // Deterministic lexicographic order over the notches of each step.
    std::vector<int> order(p.notches.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const Notch &na = p.notches[a], &nb = p.notches[b];
        auto key = [](const Notch& n) {
            return std::make_tuple(axis_index(n.axis), n.plane_u, n.plane_v, n.lo);
        };
        return key(na) < key(nb);
    });

    for (int i : order)
        if (p.notches[i].horizontal()) {
            erect_step1(g, plan, i, p.notches[i]);
            p.notches[i].fence_direction = Vec3(0, 0, Scalar(-p.notches[i].ext_v));
        }
    for (int i : order)
        if (p.notches[i].vertical()) {
            erect_step2(g, plan, i, p.notches[i]);
            p.notches[i].fence_direction = Vec3(Scalar(-p.notches[i].ext_u), 0, 0);
        }

    // Each cut can change the piece structure and expose new residual
    // reflex edges, so process one at a time against fresh piece labels.
    const long pass_cap =
        64 + 4 * static_cast<long>(g.nx()) * g.ny() * g.nz();
    for (long pass = 0;; ++pass) {
        if (pass > pass_cap)
            throw FenceError(FenceErrorKind::NotABox,
                             "residual reflex edges do not settle");
        Pieces pieces = piece_labels(g, plan);
        auto lines = find_reflex_lines(g, plan);
        bool progressed = false;
        for (const ReflexLine& r : lines)
            if (erect_step3(p, plan, pieces, r)) {
                progressed = true;
                break;
            }
        if (!progressed) {
            if (!lines.empty())
                throw FenceError(FenceErrorKind::NotABox,
                                 "residual reflex edge admits no cut");
            break;
        }
    }

    plan.cuboids = cuboid_partition(p, plan);
    return plan;
}

std::vector<Cuboid> cuboid_partition(const OrthoPolyhedron& p, const FencePlan& plan) {
    const GridComplex& g = p.grid;
    const int nx = g.nx(), ny = g.ny(), nz = g.nz();
    std::vector<int> comp(static_cast<std::size_t>(nx) * ny * nz, -1);
    std::vector<Cuboid> out;

    auto facet_between = [&](int x, int y, int z, int d, int step) -> FacetId {
        // Facet between cell (x,y,z) and its neighbor along axis d at +step.
        int plane = step > 0 ? (d == 0 ? x + 1 : d == 1 ? y + 1 : z + 1)
                             : (d == 0 ? x : d == 1 ? y : z);
        switch (d) {
            case 0: return {Axis::X, plane, y, z};
            case 1: return {Axis::Y, plane, x, z};
            default: return {Axis::Z, plane, x, y};
        }
    };

    for (int z = 0; z < nz; ++z)
        for (int y = 0; y < ny; ++y)
            for (int x = 0; x < nx; ++x) {
                if (!g.cell_interior(x, y, z) || comp[g.cell_index(x, y, z)] >= 0)
                    continue;
                int id = static_cast<int>(out.size());
                Cuboid c;
                c.box = {{x, y, z}, {x + 1, y + 1, z + 1}};
                long count = 0;
                std::queue<std::array<int, 3>> q;
                comp[g.cell_index(x, y, z)] = id;
                q.push({x, y, z});
                while (!q.empty()) {
                    auto [cx, cy, cz] = q.front();
                    q.pop();
                    ++count;
                    for (int d = 0; d < 3; ++d)
                        c.box.lo[d] = std::min(c.box.lo[d], d == 0 ? cx : d == 1 ? cy : cz);
                    for (int d = 0; d < 3; ++d)
                        c.box.hi[d] =
                            std::max(c.box.hi[d], (d == 0 ? cx : d == 1 ? cy : cz) + 1);
                    for (int d = 0; d < 3; ++d)
                        for (int step = -1; step <= 1; step += 2) {
                            int mx = cx + (d == 0 ? step : 0);
                            int my = cy + (d == 1 ? step : 0);
                            int mz = cz + (d == 2 ? step : 0);
                            if (!g.cell_interior(mx, my, mz)) continue;
                            if (comp[g.cell_index(mx, my, mz)] >= 0) continue;
                            if (plan.facet_fence.count(facet_between(cx, cy, cz, d, step)))
                                continue;
                            comp[g.cell_index(mx, my, mz)] = id;
                            q.push({mx, my, mz});
                        }
                }
                if (count != c.box.cell_total()) {
                    std::ostringstream os;
                    os << "partition component " << id << " has " << count
                       << " cells but bounding index box holds " << c.box.cell_total();
                    throw FenceError(FenceErrorKind::NotABox, os.str());
                }
                out.push_back(std::move(c));
            }

    // A fence bounds every cuboid one of its facets touches.
    for (auto& c : out) {
        std::vector<int> fs;
        for (const auto& [facet, owner] : plan.facet_fence) {
            auto cells = p.grid.facet_cells(facet);
            for (const auto& cell : cells)
                if (c.box.contains(cell[0], cell[1], cell[2])) {
                    fs.push_back(plan.effective_fence(owner));
                    break;
                }
        }
        std::sort(fs.begin(), fs.end());
        fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
        c.bounding_fences = std::move(fs);
    }
    return out;
}

std::vector<Guard> place_guards(const OrthoPolyhedron& p, const FencePlan&) {
    std::vector<Guard> out;
    for (std::size_t i = 0; i < p.notches.size(); ++i) {
        const Notch& n = p.notches[i];
        Guard gd;
        gd.segment = notch_segment(p.grid, n);
        gd.segment.open = true;
        gd.axis = n.axis;
        gd.notch = static_cast<int>(i);
        if (n.horizontal())
            gd.initial_aim = AimDirection::concrete({Scalar(0), Scalar(-n.ext_v)});
        else
            gd.initial_aim = AimDirection::concrete({Scalar(-n.ext_u), Scalar(0)});
        out.push_back(std::move(gd));
    }
    return out;
}

namespace {

/// Candidate apex points on the open guard segment for visibility
/// witnesses: near both endpoints, the midpoint, and (when it overlaps the
/// guard) the midpoint of a target range along the guard's axis.
std::vector<Point3> guard_witness_points(const GridComplex& g, const Guard& gd,
                                         const Scalar* range_lo = nullptr,
                                         const Scalar* range_hi = nullptr) {
    const Axis ga = gd.axis;
    Scalar lo = gd.segment.a[ga], hi = gd.segment.b[ga];
    if (lo > hi) std::swap(lo, hi);
    Scalar len = hi - lo;
    Scalar eps = g.min_coordinate_gap() / 2;
    if (eps > len / 4) eps = len / 4;
    std::vector<Scalar> params{lo + eps, (lo + hi) / 2, hi - eps};
    if (range_lo && range_hi) {
        Scalar a = *range_lo > lo ? *range_lo : lo;
        Scalar b = *range_hi < hi ? *range_hi : hi;
        if (a < b) params.push_back((a + b) / 2);
    }
    std::vector<Point3> out;
    for (const Scalar& t : params) {
        Point3 x = gd.segment.a;
        x[ga] = t;
        out.push_back(x);
    }
    return out;
}

/// World-space aim vector of a concrete aim direction.
Vec3 world_aim(const Guard& gd) {
    const auto oa = other_axes(gd.axis);
    Vec3 w;
    w[oa[0]] = gd.initial_aim.dir.x;
    w[oa[1]] = gd.initial_aim.dir.y;
    return w;
}

}  // namespace

FenceLemmaReport check_fence_lemma(const OrthoPolyhedron& p, const FencePlan& plan,
                                   const std::vector<Guard>& guards) {
    const GridComplex& g = p.grid;
    FenceLemmaReport rep;
    auto violate = [&](int fence, const FacetId& f, const std::string& why) {
        rep.ok = false;
        rep.violations.push_back({fence, f, why});
    };

    for (std::size_t fi = 0; fi < plan.fences.size(); ++fi) {
        const Fence& fence = plan.fences[fi];
        if (fence.facets.empty()) continue;
        if (fence.guard < 0) {
            violate(static_cast<int>(fi), fence.facets.front(), "fence has no guard");
            continue;
        }
        const Guard& gd = guards[fence.guard];
        // The guard must lie in the fence plane.
        const Scalar& plane_c = g.coords[axis_index(fence.plane_axis)][fence.plane];
        if (gd.segment.a[fence.plane_axis] != plane_c ||
            gd.segment.b[fence.plane_axis] != plane_c) {
            violate(static_cast<int>(fi), fence.facets.front(),
                    "guard not in fence plane");
            continue;
        }
        // In-plane axis transverse to the guard, and the aimed side.
        const auto pa = other_axes(fence.plane_axis);
        const Axis wa = pa[0] == gd.axis ? pa[1] : pa[0];
        Vec3 aim = world_aim(gd);
        int side = sgn(aim[wa]);
        const Scalar& guard_w = gd.segment.a[wa];

        for (const FacetId& f : fence.facets) {
            if (f.axis != fence.plane_axis || f.plane != fence.plane) {
                violate(static_cast<int>(fi), f, "facet off the fence plane");
                continue;
            }
            Point3 fmin = g.facet_min(f), fmax = g.facet_max(f);
            bool on_side = side > 0 ? fmin[wa] >= guard_w : fmax[wa] <= guard_w;
            if (!on_side) {
                violate(static_cast<int>(fi), f, "facet behind the aimed half-plane");
                continue;
            }
            Scalar rlo = fmin[gd.axis], rhi = fmax[gd.axis];
            bool seen = false;
            for (const Point3& x : guard_witness_points(g, gd, &rlo, &rhi))
                if (hull_in_polyhedron(g, x, fmin, fmax)) {
                    seen = true;
                    break;
                }
            if (!seen) violate(static_cast<int>(fi), f, "no visibility witness on guard");
        }
    }
    return rep;
}

CuboidLemmaReport check_cuboid_lemma(const OrthoPolyhedron& p, const FencePlan& plan,
                                     const std::vector<Guard>& guards) {
    const GridComplex& g = p.grid;
    CuboidLemmaReport rep;
    for (std::size_t ci = 0; ci < plan.cuboids.size(); ++ci) {
        const Cuboid& c = plan.cuboids[ci];
        Point3 bmin = g.cell_min(c.box.lo[0], c.box.lo[1], c.box.lo[2]);
        Point3 bmax = g.cell_max(c.box.hi[0] - 1, c.box.hi[1] - 1, c.box.hi[2] - 1);
        for (int fe : c.bounding_fences) {
            CuboidLemmaReport::Entry e{static_cast<int>(ci), fe, false, {}};
            int gi = plan.fences[fe].guard;
            if (gi >= 0) {
                for (const Point3& x : guard_witness_points(g, guards[gi]))
                    if (hull_in_polyhedron(g, x, bmin, bmax)) {
                        e.found = true;
                        e.witness = x;
                        break;
                    }
            }
            if (!e.found) rep.ok = false;
            rep.entries.push_back(std::move(e));
        }
    }
    return rep;
}

}  // namespace searchlight
