#include "searchlight/exhaustive.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <queue>
#include <stdexcept>

namespace searchlight {

namespace {

/// Guard placed in its rotation frame: axis, the two plane axes, the grid
/// line it occupies, and its cell range along the axis.
struct GuardFrame {
    Axis a, A0, A1;
    Scalar pu, pv;  // rotation-plane coordinates of the guard line
    Scalar glo, ghi;
    int ipu = 0, ipv = 0;  // grid plane indices, valid when on_grid
    bool on_grid = false;
    int t0 = 0, t1 = 0;  // cell index range [t0, t1) along the axis
};

GuardFrame make_frame(const GridComplex& g, const Guard& gd) {
    GuardFrame f;
    f.a = gd.axis;
    const auto oa = other_axes(gd.axis);
    f.A0 = oa[0];
    f.A1 = oa[1];
    if (gd.segment.a[f.A0] != gd.segment.b[f.A0] ||
        gd.segment.a[f.A1] != gd.segment.b[f.A1])
        throw std::invalid_argument("guard segment not parallel to its axis");
    f.pu = gd.segment.a[f.A0];
    f.pv = gd.segment.a[f.A1];
    f.glo = gd.segment.a[f.a];
    f.ghi = gd.segment.b[f.a];
    if (f.glo > f.ghi) std::swap(f.glo, f.ghi);
    if (f.glo == f.ghi) throw std::invalid_argument("guard segment has zero length");
    auto lu = g.locate(f.A0, f.pu);
    auto lv = g.locate(f.A1, f.pv);
    f.on_grid = lu.exact && lv.exact;
    f.ipu = lu.index;
    f.ipv = lv.index;
    auto l0 = g.locate(f.a, f.glo);
    auto l1 = g.locate(f.a, f.ghi);
    f.t0 = std::max(0, l0.index);
    f.t1 = std::min(g.cell_count(f.a), l1.exact ? l1.index : l1.index + 1);
    return f;
}

}  // namespace

BlindArc blind_arc(const GridComplex& g, const Guard& gd) {
    GuardFrame f = make_frame(g, gd);
    if (f.t0 >= f.t1) throw std::invalid_argument("guard outside the complex");

    // Candidate cell indices a probe point just off the guard line in a
    // slot direction can land in, along one plane axis. On a grid plane
    // the probe stays pinned when the component is zero, giving both
    // neighbor cells (the facet between them carries the half-plane).
    auto cands = [&](Axis ax, const Scalar& w, int d, int out[2]) {
        auto loc = g.locate(ax, w);
        const int n = g.cell_count(ax);
        int k = 0;
        if (!loc.exact) {
            if (loc.index >= 0 && loc.index < n) out[k++] = loc.index;
        } else if (d > 0) {
            if (loc.index < n) out[k++] = loc.index;
        } else if (d < 0) {
            if (loc.index - 1 >= 0) out[k++] = loc.index - 1;
        } else {
            if (loc.index - 1 >= 0) out[k++] = loc.index - 1;
            if (loc.index < n) out[k++] = loc.index;
        }
        return k;
    };
    // A slot direction is useful iff the solid has material right next to
    // the guard line on that side, somewhere along the guard.
    auto slot_open = [&](int du, int dv) {
        int cu[2], cv[2];
        const int nu = cands(f.A0, f.pu, du, cu);
        const int nv = cands(f.A1, f.pv, dv, cv);
        for (int t = f.t0; t < f.t1; ++t)
            for (int x = 0; x < nu; ++x)
                for (int y = 0; y < nv; ++y) {
                    std::array<int, 3> c{};
                    c[axis_index(f.a)] = t;
                    c[axis_index(f.A0)] = cu[x];
                    c[axis_index(f.A1)] = cv[y];
                    if (g.cell_interior(c[0], c[1], c[2])) return true;
                }
        return false;
    };

    struct Slot {
        Vec2 dir;
        bool nonblind;
        ArcAngle ang;
    };
    static const int compass[8][2] = {{1, 0},  {1, 1},   {0, 1},  {-1, 1},
                                      {-1, 0}, {-1, -1}, {0, -1}, {1, -1}};
    std::vector<Slot> slots;
    for (const auto& sd : compass) {
        const int du = sd[0], dv = sd[1];
        Vec2 d{Scalar(du), Scalar(dv)};
        slots.push_back({d, slot_open(du, dv), aim_angle(gd.axis, d)});
    }
    std::sort(slots.begin(), slots.end(),
              [](const Slot& x, const Slot& y) { return x.ang < y.ang; });

    int blind = 0;
    for (const auto& s : slots) blind += !s.nonblind;
    if (blind == 0) throw std::logic_error("guard with no blind direction");
    if (blind == 8) throw std::logic_error("guard with no non-blind direction");

    int left = -1, right = -1;
    for (int k = 0; k < 8; ++k) {
        const bool prev = slots[(k + 7) % 8].nonblind;
        const bool next = slots[(k + 1) % 8].nonblind;
        if (slots[k].nonblind && !prev) {
            if (left >= 0) throw std::logic_error("non-blind directions not contiguous");
            left = k;
        }
        if (slots[k].nonblind && !next) right = k;
    }
    BlindArc out;
    out.leftmost = slots[left].dir;
    out.rightmost = slots[right].dir;
    out.nonblind_extent = ccw_sweep(slots[left].ang, slots[right].ang);
    return out;
}

Vec2 resolve_aim(const GridComplex& g, const Guard& gd, const AimDirection& aim) {
    switch (aim.kind) {
        case AimDirection::Kind::Concrete: return aim.dir;
        case AimDirection::Kind::Leftmost: return blind_arc(g, gd).leftmost;
        default: return blind_arc(g, gd).rightmost;
    }
}

Point3 PlaneSection::world(const Point2& q) const {
    const auto oa = other_axes(guard_axis);
    Point3 w;
    w[guard_axis] = q.x;
    w[oa[0]] = origin_u + q.y * direction.x;
    w[oa[1]] = origin_v + q.y * direction.y;
    return w;
}

namespace {

PlaneSection build_section(const GridComplex& g, const Guard& gd, const Vec2& dir0) {
    GuardFrame f = make_frame(g, gd);
    Vec2 dir = primitive_direction(dir0);
    if (sgn(dir.x) == 0 && sgn(dir.y) == 0)
        throw std::invalid_argument("zero aim direction");

    PlaneSection sec;
    sec.guard_axis = f.a;
    sec.direction = dir;
    sec.origin_u = f.pu;
    sec.origin_v = f.pv;
    sec.glo = f.glo;
    sec.ghi = f.ghi;
    sec.ts = g.coords[axis_index(f.a)];

    std::vector<Scalar> ss;
    ss.push_back(Scalar(0));
    auto add_crossings = [&](Axis ax, const Scalar& base, const Scalar& d) {
        if (sgn(d) == 0) return;
        for (const Scalar& c : g.coords[axis_index(ax)]) {
            Scalar s = (c - base) / d;
            if (sgn(s) > 0) ss.push_back(s);
        }
    };
    add_crossings(f.A0, f.pu, dir.x);
    add_crossings(f.A1, f.pv, dir.y);
    std::sort(ss.begin(), ss.end());
    ss.erase(std::unique(ss.begin(), ss.end()), ss.end());
    sec.ss = std::move(ss);

    const int nt = sec.nt(), ns = sec.ns();
    sec.cells.assign(static_cast<std::size_t>(std::max(nt, 0)) * std::max(ns, 0), 0);

    for (int j = 0; j < ns; ++j) {
        Scalar sm = (sec.ss[j] + sec.ss[j + 1]) / 2;
        Scalar w0 = f.pu + sm * dir.x;
        Scalar w1 = f.pv + sm * dir.y;
        // Candidate cell indices along a plane axis: one cell when the
        // midpoint falls strictly inside it, the two neighbors when the
        // coordinate stays pinned to a grid plane (axis-aligned aims).
        auto cands = [&](Axis ax, const Scalar& w, int out[2]) {
            auto loc = g.locate(ax, w);
            const int n = g.cell_count(ax);
            int k = 0;
            if (loc.exact) {
                if (loc.index - 1 >= 0) out[k++] = loc.index - 1;
                if (loc.index < n) out[k++] = loc.index;
            } else if (loc.index >= 0 && loc.index < n) {
                out[k++] = loc.index;
            }
            return k;
        };
        int cu[2], cv[2];
        const int nu = cands(f.A0, w0, cu);
        const int nv = cands(f.A1, w1, cv);
        if (nu == 0 || nv == 0) continue;
        for (int i = 0; i < nt; ++i) {
            bool in = false;
            for (int x = 0; x < nu && !in; ++x)
                for (int y = 0; y < nv && !in; ++y) {
                    std::array<int, 3> c{};
                    c[axis_index(f.a)] = i;
                    c[axis_index(f.A0)] = cu[x];
                    c[axis_index(f.A1)] = cv[y];
                    in = g.cell_interior(c[0], c[1], c[2]);
                }
            if (in) sec.cells[static_cast<std::size_t>(j) * nt + i] = 1;
        }
    }

    // Connected component of the guard, cells linked across shared edges.
    std::queue<std::pair<int, int>> q;
    auto push = [&](int i, int j) {
        if (i < 0 || j < 0 || i >= nt || j >= ns) return;
        char& c = sec.cells[static_cast<std::size_t>(j) * nt + i];
        if (c != 1) return;
        c = 2;
        q.push({i, j});
    };
    for (int i = 0; i < nt && ns > 0; ++i)
        if (sec.ts[i + 1] > f.glo && sec.ts[i] < f.ghi) push(i, 0);
    while (!q.empty()) {
        auto [i, j] = q.front();
        q.pop();
        push(i - 1, j);
        push(i + 1, j);
        push(i, j - 1);
        push(i, j + 1);
    }
    return sec;
}

/// Separating-axis test between the cone conv({apex} + rectangle) and open
/// rectangles, in the section plane.
struct Hull2 {
    std::vector<Vec2> axes;
    std::vector<Scalar> pmin, pmax;

    Hull2(const Point2& apex, const Point2& rmin, const Point2& rmax) {
        std::array<Point2, 5> v{apex, Point2{rmin.x, rmin.y}, Point2{rmax.x, rmin.y},
                                Point2{rmax.x, rmax.y}, Point2{rmin.x, rmax.y}};
        auto add = [&](const Vec2& u) {
            if (sgn(u.x) != 0 || sgn(u.y) != 0) axes.push_back(u);
        };
        add({Scalar(1), Scalar(0)});
        add({Scalar(0), Scalar(1)});
        for (int i = 1; i < 5; ++i) {
            Vec2 e = v[i] - apex;
            add({-e.y, e.x});
        }
        for (const Vec2& u : axes) {
            Scalar lo = dot(u, v[0]), hi = lo;
            for (int i = 1; i < 5; ++i) {
                Scalar p = dot(u, v[i]);
                if (p < lo) lo = p;
                if (p > hi) hi = p;
            }
            pmin.push_back(lo);
            pmax.push_back(hi);
        }
    }

    bool intersects_open_rect(const Point2& cmin, const Point2& cmax) const {
        for (std::size_t k = 0; k < axes.size(); ++k) {
            const Vec2& u = axes[k];
            Scalar lo(0), hi(0);
            if (sgn(u.x) > 0) {
                lo += u.x * cmin.x;
                hi += u.x * cmax.x;
            } else if (sgn(u.x) < 0) {
                lo += u.x * cmax.x;
                hi += u.x * cmin.x;
            }
            if (sgn(u.y) > 0) {
                lo += u.y * cmin.y;
                hi += u.y * cmax.y;
            } else if (sgn(u.y) < 0) {
                lo += u.y * cmax.y;
                hi += u.y * cmin.y;
            }
            if (pmax[k] <= lo || pmin[k] >= hi) return false;
        }
        return true;
    }
};

int lower_index(const std::vector<Scalar>& cs, const Scalar& x) {
    auto it = std::upper_bound(cs.begin(), cs.end(), x);
    return static_cast<int>(it - cs.begin()) - 1;
}

/// conv({apex} + rect) stays inside the closed section.
bool hull2_in_section(const PlaneSection& sec, const Point2& apex, const Point2& rmin,
                      const Point2& rmax) {
    Scalar bx0 = std::min(apex.x, rmin.x), bx1 = std::max(apex.x, rmax.x);
    Scalar by0 = std::min(apex.y, rmin.y), by1 = std::max(apex.y, rmax.y);
    Hull2 sat(apex, rmin, rmax);
    const int i0 = std::max(0, lower_index(sec.ts, bx0));
    const int i1 = std::min(sec.nt() - 1, lower_index(sec.ts, bx1));
    const int j0 = std::max(0, lower_index(sec.ss, by0));
    const int j1 = std::min(sec.ns() - 1, lower_index(sec.ss, by1));
    for (int j = j0; j <= j1; ++j)
        for (int i = i0; i <= i1; ++i) {
            if (sec.at(i, j) != 0) continue;
            Point2 cmin{sec.ts[i], sec.ss[j]}, cmax{sec.ts[i + 1], sec.ss[j + 1]};
            if (sat.intersects_open_rect(cmin, cmax)) return false;
        }
    return true;
}

/// The whole rectangle is visible from a single guard point, possibly
/// established per quadrant after subdividing.
bool rect_fully_visible(const PlaneSection& sec, const std::vector<Scalar>& apex_ts,
                        const Point2& rmin, const Point2& rmax, int depth) {
    auto try_apex = [&](const Scalar& t) {
        return hull2_in_section(sec, {t, Scalar(0)}, rmin, rmax);
    };
    // Midpoint of the overlap of the rectangle's t-range with the guard.
    Scalar olo = std::max(sec.glo, rmin.x), ohi = std::min(sec.ghi, rmax.x);
    if (olo < ohi && try_apex((olo + ohi) / 2)) return true;
    for (const Scalar& t : apex_ts)
        if (try_apex(t)) return true;
    if (depth == 0) return false;
    Scalar mx = (rmin.x + rmax.x) / 2, my = (rmin.y + rmax.y) / 2;
    return rect_fully_visible(sec, apex_ts, rmin, {mx, my}, depth - 1) &&
           rect_fully_visible(sec, apex_ts, {mx, rmin.y}, {rmax.x, my}, depth - 1) &&
           rect_fully_visible(sec, apex_ts, {rmin.x, my}, {mx, rmax.y}, depth - 1) &&
           rect_fully_visible(sec, apex_ts, {mx, my}, rmax, depth - 1);
}

}  // namespace

bool weakly_visible(const PlaneSection& sec, const Point2& q) {
    const Scalar &glo = sec.glo, &ghi = sec.ghi;
    const int nt = sec.nt(), ns = sec.ns();

    if (sgn(q.y) == 0) {
        // On the guard's own line: only paths along the bottom row exist.
        if (q.x > glo && q.x < ghi) return true;
        if (ns <= 0) return false;
        int il = nt, ir = -1;
        for (int i = 0; i < nt; ++i)
            if (sec.ts[i] <= q.x && q.x <= sec.ts[i + 1] && sec.at(i, 0) != 0) {
                il = std::min(il, i);
                ir = std::max(ir, i);
            }
        if (ir < 0) return false;
        while (il > 0 && sec.at(il - 1, 0) != 0) --il;
        while (ir + 1 < nt && sec.at(ir + 1, 0) != 0) ++ir;
        return sec.ts[il] < ghi && sec.ts[ir + 1] > glo;
    }

    struct Iv {
        Scalar lo, hi;
        bool lo_inf = false, hi_inf = false;
    };
    std::vector<Iv> blocked;
    for (int j = 0; j < ns; ++j) {
        if (sec.ss[j] >= q.y) break;  // this row and above cannot block
        Scalar top = std::min(sec.ss[j + 1], q.y);
        for (int i = 0; i < nt; ++i) {
            if (sec.at(i, j) != 0) continue;
            Iv iv;
            bool have = false;
            auto corner = [&](const Scalar& ct, const Scalar& cs) {
                if (cs == q.y) {
                    if (ct < q.x) iv.lo_inf = true;
                    if (ct > q.x) iv.hi_inf = true;
                    return;
                }
                Scalar t = q.x + (ct - q.x) * q.y / (q.y - cs);
                if (!have) {
                    iv.lo = t;
                    iv.hi = t;
                    have = true;
                } else {
                    if (t < iv.lo) iv.lo = t;
                    if (t > iv.hi) iv.hi = t;
                }
            };
            corner(sec.ts[i], sec.ss[j]);
            corner(sec.ts[i + 1], sec.ss[j]);
            corner(sec.ts[i], top);
            corner(sec.ts[i + 1], top);
            if (!have && !iv.lo_inf && !iv.hi_inf) continue;
            if (!have) continue;  // degenerate: all corners at q's height
            if (iv.lo_inf) iv.lo = glo - 1;
            if (iv.hi_inf) iv.hi = ghi + 1;
            if (iv.hi <= glo || iv.lo >= ghi) continue;
            blocked.push_back(std::move(iv));
        }
    }

    // Visible iff some t in the open guard interval misses every open
    // blocked interval. Candidates: interval endpoints inside the guard
    // plus midpoints between consecutive endpoint values.
    std::vector<Scalar> pts;
    pts.push_back(glo);
    pts.push_back(ghi);
    for (const Iv& iv : blocked) {
        if (iv.lo > glo && iv.lo < ghi) pts.push_back(iv.lo);
        if (iv.hi > glo && iv.hi < ghi) pts.push_back(iv.hi);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<Scalar> cands;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k)
        cands.push_back((pts[k] + pts[k + 1]) / 2);
    for (const Scalar& p : pts)
        if (p > glo && p < ghi) cands.push_back(p);
    for (const Scalar& t : cands) {
        bool hit = false;
        for (const Iv& iv : blocked)
            if (t > iv.lo && t < iv.hi) {
                hit = true;
                break;
            }
        if (!hit) return true;
    }
    return false;
}

SearchPlane compute_searchplane(const GridComplex& g, const Guard& gd, const Vec2& dir) {
    SearchPlane sp;
    sp.section = build_section(g, gd, dir);
    const PlaneSection& sec = sp.section;
    const int nt = sec.nt(), ns = sec.ns();

    long comp = 0;
    for (char c : sec.cells) comp += (c == 2);
    sp.component_cells = comp;
    if (comp == 0)
        throw BlindDirectionError("half-plane leaves the solid at the guard line");

    // Apex candidates on the open guard segment.
    std::vector<Scalar> apex_ts;
    {
        Scalar len = sec.ghi - sec.glo;
        Scalar eps = len / 4;
        for (std::size_t k = 0; k + 1 < sec.ts.size(); ++k) {
            Scalar d = sec.ts[k + 1] - sec.ts[k];
            if (sgn(d) > 0 && d / 2 < eps) eps = d / 2;
        }
        std::vector<Scalar> cuts;
        cuts.push_back(sec.glo);
        cuts.push_back(sec.ghi);
        for (const Scalar& c : sec.ts)
            if (c > sec.glo && c < sec.ghi) cuts.push_back(c);
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
            apex_ts.push_back((cuts[k] + cuts[k + 1]) / 2);
        for (std::size_t k = 1; k + 1 < cuts.size(); ++k) apex_ts.push_back(cuts[k]);
        apex_ts.push_back(sec.glo + eps);
        apex_ts.push_back(sec.ghi - eps);
    }

    bool all_certified = true;
    for (int j = 0; j < ns; ++j)
        for (int i = 0; i < nt; ++i) {
            if (sec.at(i, j) != 2) continue;
            Point2 rmin{sec.ts[i], sec.ss[j]}, rmax{sec.ts[i + 1], sec.ss[j + 1]};
            if (rect_fully_visible(sec, apex_ts, rmin, rmax, 2)) continue;
            all_certified = false;
            // Hunt for a provably invisible point on a lattice over the cell.
            const int m = 4;
            for (int y = 0; y <= m; ++y)
                for (int x = 0; x <= m; ++x) {
                    Point2 c{rmin.x + (rmax.x - rmin.x) * x / m,
                             rmin.y + (rmax.y - rmin.y) * y / m};
                    if (!weakly_visible(sec, c)) {
                        sp.exhaustive = false;
                        sp.certified = true;
                        sp.witness = c;
                        sp.witness_world = sec.world(c);
                        return sp;
                    }
                }
        }
    sp.exhaustive = true;
    sp.certified = all_certified;
    return sp;
}

Vec2 mediant_direction(const Vec2& a, const Vec2& b) {
    if (a == b) return a;
    Vec2 m = primitive_direction(a + b);
    if (sgn(m.x) == 0 && sgn(m.y) == 0)
        throw std::invalid_argument("mediant of opposite directions");
    return m;
}

EventSet enumerate_events(const OrthoPolyhedron& p, const Guard& gd) {
    const GridComplex& g = p.grid;
    GuardFrame f = make_frame(g, gd);
    BlindArc arc = blind_arc(g, gd);
    const ArcAngle left_ang = aim_angle(gd.axis, arc.leftmost);

    struct Entry {
        Vec2 dir;
        EventDirection::Kind kind;
        ArcAngle off;
    };
    std::map<std::pair<std::string, std::string>, Entry> uniq;
    auto add = [&](const Vec2& d0, EventDirection::Kind kind) {
        Vec2 d = primitive_direction(d0);
        if (sgn(d.x) == 0 && sgn(d.y) == 0) return;
        auto key = std::make_pair(d.x.get_str(), d.y.get_str());
        if (uniq.count(key)) return;
        ArcAngle off = ccw_sweep(left_ang, aim_angle(gd.axis, d));
        if (off > arc.nonblind_extent) return;
        uniq.emplace(key, Entry{d, kind, off});
    };

    add(arc.leftmost, EventDirection::Kind::ArcEnd);
    add(arc.rightmost, EventDirection::Kind::ArcEnd);
    static const int compass[8][2] = {{1, 0},  {1, 1},   {0, 1},  {-1, 1},
                                      {-1, 0}, {-1, -1}, {0, -1}, {1, -1}};
    for (const auto& cd : compass)
        add({Scalar(cd[0]), Scalar(cd[1])}, EventDirection::Kind::Compass);

    // Boundary vertices: endpoints of maximal boundary edges.
    for (const BoundaryEdge& e : p.edges) {
        Segment3 s = e.segment(g);
        add({s.a[f.A0] - f.pu, s.a[f.A1] - f.pv}, EventDirection::Kind::Vertex);
        add({s.b[f.A0] - f.pu, s.b[f.A1] - f.pv}, EventDirection::Kind::Vertex);
    }
    // Face planes crossed with the lines of perpendicular boundary edges.
    for (const BoundaryFace& face : p.faces) {
        const Scalar& cf = g.coords[axis_index(face.axis)][face.plane];
        for (const BoundaryEdge& e : p.edges) {
            if (e.axis != face.axis) continue;
            Point3 pt;
            pt[face.axis] = cf;
            const auto oa = other_axes(e.axis);
            pt[oa[0]] = g.coords[axis_index(oa[0])][e.plane_u];
            pt[oa[1]] = g.coords[axis_index(oa[1])][e.plane_v];
            add({pt[f.A0] - f.pu, pt[f.A1] - f.pv}, EventDirection::Kind::FacePlaneEdge);
        }
    }

    std::vector<Entry> entries;
    for (auto& [k, e] : uniq) entries.push_back(std::move(e));
    std::sort(entries.begin(), entries.end(), [&](const Entry& x, const Entry& y) {
        int c = x.off.compare(y.off);
        if (c != 0) return c < 0;
        return std::make_pair(x.dir.x, x.dir.y) < std::make_pair(y.dir.x, y.dir.y);
    });
    EventSet out;
    for (auto& e : entries) out.events.push_back({e.dir, e.kind});
    return out;
}

ExhaustiveReport is_exhaustive_guard(const OrthoPolyhedron& p, const Guard& gd) {
    EventSet ev = enumerate_events(p, gd);
    ExhaustiveReport rep;
    rep.event_count = static_cast<int>(ev.events.size());
    rep.certified = true;

    std::vector<Vec2> dirs;
    for (std::size_t k = 0; k < ev.events.size(); ++k) {
        dirs.push_back(ev.events[k].dir);
        if (k + 1 < ev.events.size())
            dirs.push_back(mediant_direction(ev.events[k].dir, ev.events[k + 1].dir));
    }
    for (const Vec2& d : dirs) {
        ++rep.directions_checked;
        SearchPlane sp = compute_searchplane(p.grid, gd, d);
        if (!sp.certified) rep.certified = false;
        if (!sp.exhaustive) {
            rep.exhaustive = false;
            rep.witness_direction = d;
            rep.witness_point = sp.witness_world;
            return rep;
        }
    }
    rep.exhaustive = true;
    return rep;
}

GridComplex restrict_to_boxes(const GridComplex& g, const std::vector<CellBox>& boxes) {
    GridComplex out;
    out.coords = g.coords;
    out.interior_.assign(g.interior_.size(), 0);
    for (int z = 0; z < g.nz(); ++z)
        for (int y = 0; y < g.ny(); ++y)
            for (int x = 0; x < g.nx(); ++x) {
                if (!g.cell_interior(x, y, z)) continue;
                for (const CellBox& b : boxes)
                    if (b.contains(x, y, z)) {
                        out.interior_[g.cell_index(x, y, z)] = 1;
                        break;
                    }
            }
    return out;
}

}  // namespace searchlight
