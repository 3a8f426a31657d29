#include "searchlight/polygon.hpp"
#include "searchlight/scalar.hpp"

#include <algorithm>
#include <cassert>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace searchlight {

namespace {

Scalar signed_area(const std::vector<Point2>& ring) {
    Scalar s(0);
    for (std::size_t i = 0; i < ring.size(); ++i) {
        const Point2& a = ring[i];
        const Point2& b = ring[(i + 1) % ring.size()];
        s += cross(a, b);
    }
    return s / 2;
}

bool on_closed_segment(const Point2& a, const Point2& b, const Point2& x) {
    if (sgn(cross(b - a, x - a)) != 0) return false;
    return sgn(dot(x - a, b - a)) >= 0 && sgn(dot(x - b, a - b)) >= 0;
}

/// Scales to make the largest component have absolute value 1; keeps the
/// direction rational while balancing magnitudes for positive combinations.
Vec2 unit_scale(const Vec2& v) {
    Scalar m = abs(v.x) > abs(v.y) ? abs(v.x) : abs(v.y);
    return {v.x / m, v.y / m};
}

bool point_in_ring(const std::vector<Point2>& ring, const Point2& x) {
    bool inside = false;
    for (std::size_t i = 0; i < ring.size(); ++i) {
        const Point2& a = ring[i];
        const Point2& b = ring[(i + 1) % ring.size()];
        if ((a.y > x.y) != (b.y > x.y)) {
            // x-coordinate of the edge at height x.y, compared exactly.
            Scalar t = (x.y - a.y) / (b.y - a.y);
            if (x.x < a.x + t * (b.x - a.x)) inside = !inside;
        }
    }
    return inside;
}

struct RayHit {
    Scalar t;        // parameter along the ray
    int ring, edge;  // which edge was hit
    Point2 point;
    bool at_vertex;
};

/// Nearest intersection of the ray v + t*d (t > 0) with the rings,
/// skipping the two edges incident to occurrence (skip_ring, skip_vertex).
std::optional<RayHit> shoot_ray(const std::vector<std::vector<Point2>>& rings,
                                const Point2& v, const Vec2& d, int skip_ring,
                                int skip_vertex) {
    std::optional<RayHit> best;
    for (std::size_t ri = 0; ri < rings.size(); ++ri) {
        const auto& ring = rings[ri];
        const int n = static_cast<int>(ring.size());
        for (int e = 0; e < n; ++e) {
            if (static_cast<int>(ri) == skip_ring &&
                (e == skip_vertex || (e + 1) % n == skip_vertex))
                continue;
            const Point2& a = ring[e];
            const Point2& b = ring[(e + 1) % n];
            Vec2 ab = b - a;
            Scalar denom = cross(d, ab);
            if (sgn(denom) == 0) {
                if (sgn(cross(a - v, d)) != 0) continue;  // parallel, off the line
                // Collinear edge: report endpoint hits so the caller can
                // perturb around them.
                Scalar dd = dot(d, d);
                for (const Point2* q : {&a, &b}) {
                    Scalar t = dot(*q - v, d) / dd;
                    if (sgn(t) <= 0) continue;
                    if (!best || t < best->t)
                        best = RayHit{t, static_cast<int>(ri), e, *q, true};
                }
                continue;
            }
            Scalar t = cross(a - v, ab) / denom;
            Scalar s = cross(a - v, d) / denom;
            if (sgn(t) <= 0 || sgn(s) < 0 || s > 1) continue;
            bool vertex = sgn(s) == 0 || s == 1;
            if (!best || t < best->t) {
                best = RayHit{t, static_cast<int>(ri), e, {v.x + t * d.x, v.y + t * d.y},
                              vertex};
            } else if (t == best->t && !vertex && !best->at_vertex) {
                // Coincident doubled edges: keep the one the ray exits
                // through (interior on its left).
                if (sgn(cross(ab, d)) < 0) best = RayHit{t, static_cast<int>(ri), e,
                                                         best->point, false};
            }
        }
    }
    return best;
}

std::vector<Point2> cyclic_slice(const std::vector<Point2>& ring, int from, int to) {
    // Vertices ring[from], ring[from+1], ..., ring[to] cyclically, inclusive.
    std::vector<Point2> out;
    const int n = static_cast<int>(ring.size());
    for (int i = from;; i = (i + 1) % n) {
        out.push_back(ring[i]);
        if (i == to) break;
    }
    return out;
}

}  // namespace

int Polygon2::reflex_count() const {
    int r = 0;
    auto count_ring = [&](const std::vector<Point2>& ring) {
        const int n = static_cast<int>(ring.size());
        for (int i = 0; i < n; ++i)
            if (orient(ring[(i + n - 1) % n], ring[i], ring[(i + 1) % n]) < 0) ++r;
    };
    count_ring(outer);
    for (const auto& h : holes) count_ring(h);
    return r;
}

Scalar Polygon2::area() const {
    Scalar a = signed_area(outer);
    for (const auto& h : holes) a += signed_area(h);  // holes are clockwise
    return a;
}

int Polygon2::edge_count() const {
    int n = static_cast<int>(outer.size());
    for (const auto& h : holes) n += static_cast<int>(h.size());
    return n;
}

std::pair<Point2, Point2> Polygon2::edge(int index) const {
    const std::vector<Point2>* ring = &outer;
    std::size_t hi = 0;
    while (index >= static_cast<int>(ring->size())) {
        index -= static_cast<int>(ring->size());
        if (hi >= holes.size()) throw std::out_of_range("edge index");
        ring = &holes[hi++];
    }
    return {(*ring)[index], (*ring)[(index + 1) % ring->size()]};
}

Polygon2 validate_polygon(Polygon2 p) {
    auto check_ring = [](const std::vector<Point2>& ring) {
        if (ring.size() < 3) throw std::invalid_argument("ring with fewer than 3 vertices");
        const int n = static_cast<int>(ring.size());
        for (int i = 0; i < n; ++i)
            if (ring[i] == ring[(i + 1) % n])
                throw std::invalid_argument("zero-length polygon edge");
        if (sgn(signed_area(ring)) == 0)
            throw std::invalid_argument("zero-area ring");
    };
    check_ring(p.outer);
    for (auto& h : p.holes) check_ring(h);

    if (sgn(signed_area(p.outer)) < 0) std::reverse(p.outer.begin(), p.outer.end());
    for (auto& h : p.holes)
        if (sgn(signed_area(h)) > 0) std::reverse(h.begin(), h.end());

    // Pairwise edge intersection check across all rings.
    std::vector<const std::vector<Point2>*> rings{&p.outer};
    for (const auto& h : p.holes) rings.push_back(&h);
    for (std::size_t r1 = 0; r1 < rings.size(); ++r1)
        for (std::size_t r2 = r1; r2 < rings.size(); ++r2) {
            const auto& A = *rings[r1];
            const auto& B = *rings[r2];
            const int na = static_cast<int>(A.size()), nb = static_cast<int>(B.size());
            for (int i = 0; i < na; ++i)
                for (int j = (r1 == r2 ? i + 1 : 0); j < nb; ++j) {
                    if (r1 == r2) {
                        bool adjacent = j == (i + 1) % na || i == (j + 1) % na;
                        if (adjacent) continue;
                    }
                    const Point2 &a = A[i], &b = A[(i + 1) % na];
                    const Point2 &c = B[j], &d = B[(j + 1) % nb];
                    if (on_closed_segment(a, b, c) || on_closed_segment(a, b, d) ||
                        on_closed_segment(c, d, a) || on_closed_segment(c, d, b)) {
                        throw std::invalid_argument("touching or overlapping ring edges");
                    }
                    int o1 = orient(a, b, c), o2 = orient(a, b, d);
                    int o3 = orient(c, d, a), o4 = orient(c, d, b);
                    if (o1 * o2 < 0 && o3 * o4 < 0)
                        throw std::invalid_argument("crossing ring edges");
                }
        }
    for (const auto& h : p.holes)
        if (!point_in_ring(p.outer, h.front()))
            throw std::invalid_argument("hole outside the outer ring");
    return p;
}

bool point_in_polygon(const Polygon2& p, const Point2& x) {
    auto on_ring = [&](const std::vector<Point2>& ring) {
        const int n = static_cast<int>(ring.size());
        for (int i = 0; i < n; ++i)
            if (on_closed_segment(ring[i], ring[(i + 1) % n], x)) return true;
        return false;
    };
    if (on_ring(p.outer)) return true;
    for (const auto& h : p.holes)
        if (on_ring(h)) return true;
    bool inside = point_in_ring(p.outer, x);
    for (const auto& h : p.holes)
        if (point_in_ring(h, x)) inside = !inside;
    return inside;
}

bool segment_in_polygon(const Polygon2& p, const Point2& a, const Point2& b) {
    if (a == b) return point_in_polygon(p, a);
    // Break at every boundary contact, then decide by piece midpoints.
    std::vector<Scalar> ts{Scalar(0), Scalar(1)};
    Vec2 d = b - a;
    auto add_edge = [&](const Point2& c, const Point2& e) {
        Vec2 ce = e - c;
        Scalar denom = cross(d, ce);
        if (sgn(denom) == 0) {
            if (sgn(cross(c - a, d)) != 0) return;
            Scalar dd = dot(d, d);
            for (const Point2* q : {&c, &e}) {
                Scalar t = dot(*q - a, d) / dd;
                if (sgn(t) > 0 && t < 1) ts.push_back(t);
            }
            return;
        }
        Scalar t = cross(c - a, ce) / denom;
        Scalar s = cross(c - a, d) / denom;
        if (sgn(t) > 0 && t < 1 && sgn(s) >= 0 && s <= 1) ts.push_back(t);
    };
    const int no = static_cast<int>(p.outer.size());
    for (int i = 0; i < no; ++i) add_edge(p.outer[i], p.outer[(i + 1) % no]);
    for (const auto& h : p.holes) {
        const int nh = static_cast<int>(h.size());
        for (int i = 0; i < nh; ++i) add_edge(h[i], h[(i + 1) % nh]);
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    Scalar half(1, 2);
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        Scalar tm = half * (ts[i] + ts[i + 1]);
        Point2 m{a.x + tm * d.x, a.y + tm * d.y};
        if (!point_in_polygon(p, m)) return false;
    }
    return point_in_polygon(p, a) && point_in_polygon(p, b);
}

bool sees_open_edge(const Polygon2& p, const Point2& x, const Point2& a, const Point2& b) {
    // The visible subset of the edge is a union of intervals whose
    // endpoints are projections of polygon vertices from x, so testing one
    // interior point per interval is complete.
    std::vector<Scalar> ss{Scalar(0), Scalar(1)};
    Vec2 ab = b - a;
    auto add_vertex = [&](const Point2& w) {
        Vec2 d = w - x;
        Scalar denom = cross(d, ab);
        if (sgn(denom) == 0) return;
        Scalar s = cross(x - a, d) / -denom;
        if (sgn(s) > 0 && s < 1) ss.push_back(s);
    };
    for (const Point2& w : p.outer) add_vertex(w);
    for (const auto& h : p.holes)
        for (const Point2& w : h) add_vertex(w);
    std::sort(ss.begin(), ss.end());
    ss.erase(std::unique(ss.begin(), ss.end()), ss.end());
    Scalar half(1, 2);
    for (std::size_t i = 0; i + 1 < ss.size(); ++i) {
        Scalar sm = half * (ss[i] + ss[i + 1]);
        Point2 y{a.x + sm * ab.x, a.y + sm * ab.y};
        if (segment_in_polygon(p, x, y)) return true;
    }
    return false;
}

Polygon2 visibility_polygon(const Polygon2& p, const Point2& x) {
    if (!point_in_polygon(p, x)) throw std::invalid_argument("PointOutside");

    std::vector<std::vector<Point2>> rings{p.outer};
    for (const auto& h : p.holes) rings.push_back(h);

    std::vector<Vec2> dirs;
    for (const auto& ring : rings)
        for (const Point2& w : ring) {
            Vec2 d = primitive_direction(w - x);
            if (sgn(d.x) == 0 && sgn(d.y) == 0) continue;
            dirs.push_back(d);
        }
    std::sort(dirs.begin(), dirs.end(),
              [](const Vec2& a, const Vec2& b) { return ccw_less(a, b); });
    dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());
    if (dirs.size() < 2) throw std::invalid_argument("degenerate polygon");

    auto line_hit = [&](const Vec2& d, int ring, int edge) {
        const auto& r = rings[ring];
        const Point2& a = r[edge];
        const Point2& b = r[(edge + 1) % r.size()];
        Vec2 ab = b - a;
        Scalar t = cross(a - x, ab) / cross(d, ab);
        return Point2{x.x + t * d.x, x.y + t * d.y};
    };

    std::vector<Point2> out;
    const std::size_t m = dirs.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Vec2& d1 = dirs[i];
        const Vec2& d2 = dirs[(i + 1) % m];
        Vec2 mid;
        if (sgn(cross(d1, d2)) == 0)
            mid = {-d1.y, d1.x};  // exactly opposite directions
        else
            mid = unit_scale(d1) + unit_scale(d2);
        auto hit = shoot_ray(rings, x, mid, -1, -1);
        if (!hit) continue;  // x on the boundary aiming outward
        Point2 q1 = line_hit(d1, hit->ring, hit->edge);
        Point2 q2 = line_hit(d2, hit->ring, hit->edge);
        if (out.empty() || !(out.back() == q1)) out.push_back(q1);
        if (!(out.back() == q2)) out.push_back(q2);
    }
    if (out.size() > 1 && out.front() == out.back()) out.pop_back();
    return Polygon2{out, {}};
}

namespace {

struct WorkPiece {
    std::vector<std::vector<Point2>> rings;  // [0] outer (ccw), rest holes (cw)
};

struct ReflexPos {
    int ring, vertex;
    Point2 p;
};

std::optional<ReflexPos> find_reflex(const WorkPiece& w) {
    std::optional<ReflexPos> best;
    for (std::size_t ri = 0; ri < w.rings.size(); ++ri) {
        const auto& r = w.rings[ri];
        const int n = static_cast<int>(r.size());
        for (int i = 0; i < n; ++i) {
            if (orient(r[(i + n - 1) % n], r[i], r[(i + 1) % n]) >= 0) continue;
            if (!best || r[i].x < best->p.x ||
                (r[i].x == best->p.x && r[i].y < best->p.y))
                best = ReflexPos{static_cast<int>(ri), i, r[i]};
        }
    }
    return best;
}

}  // namespace

ConvexPartition bisector_partition(const Polygon2& p, int distinguished_edge) {
    if (distinguished_edge < 0 || distinguished_edge >= p.edge_count())
        throw std::invalid_argument("distinguished edge out of range");

    ConvexPartition out;
    std::vector<WorkPiece> work;
    {
        WorkPiece w;
        w.rings.push_back(p.outer);
        for (const auto& h : p.holes) w.rings.push_back(h);
        work.push_back(std::move(w));
    }

    while (!work.empty()) {
        WorkPiece w = std::move(work.back());
        work.pop_back();
        auto rv = find_reflex(w);
        if (!rv) {
            if (w.rings.size() != 1)
                throw std::logic_error("convex piece still has a hole");
            out.pieces.push_back(Polygon2{w.rings[0], {}});
            continue;
        }

        const auto& ring = w.rings[rv->ring];
        const int n = static_cast<int>(ring.size());
        const Point2& v = ring[rv->vertex];
        Vec2 e1 = ring[(rv->vertex + n - 1) % n] - v;
        Vec2 e2 = ring[(rv->vertex + 1) % n] - v;
        Vec2 c1{-e1.x, -e1.y}, c2{-e2.x, -e2.y};
        Vec2 d = unit_scale(c1) + unit_scale(c2);

        bool perturbed = false;
        std::optional<RayHit> hit;
        for (int attempt = 0; attempt < 64; ++attempt) {
            hit = shoot_ray(w.rings, v, d, rv->ring, rv->vertex);
            if (!hit) throw std::logic_error("interior cut ray escaped the piece");
            if (!hit->at_vertex) break;
            // The ray meets a vertex: rotate between consecutive vertex
            // directions inside the cut cone so every vertex is cleared.
            perturbed = true;
            std::vector<Vec2> cone_dirs;
            for (const auto& r : w.rings)
                for (const Point2& q : r) {
                    Vec2 dq = q - v;
                    if (sgn(dq.x) == 0 && sgn(dq.y) == 0) continue;
                    if (sgn(cross(c1, dq)) > 0 && sgn(cross(dq, c2)) > 0)
                        cone_dirs.push_back(primitive_direction(dq));
                }
            std::sort(cone_dirs.begin(), cone_dirs.end(),
                      [&](const Vec2& a, const Vec2& b) { return sgn(cross(a, b)) > 0; });
            cone_dirs.erase(std::unique(cone_dirs.begin(), cone_dirs.end()),
                            cone_dirs.end());
            Vec2 dv = primitive_direction(hit->point - v);
            auto it = std::find(cone_dirs.begin(), cone_dirs.end(), dv);
            if (it == cone_dirs.end() || it == cone_dirs.begin())
                d = unit_scale(dv) + unit_scale(c1);
            else
                d = unit_scale(dv) + unit_scale(*(it - 1));
        }
        if (!hit || hit->at_vertex)
            throw std::logic_error("could not perturb cut ray past vertices");

        out.cut_log.push_back(
            {v, d, perturbed,
             hit->ring == rv->ring ? CutRecord::Outcome::Split
                                   : CutRecord::Outcome::HoleMerge});

        const Point2 x = hit->point;
        if (hit->ring == rv->ring) {
            // Split the ring into two at the chord v -> x.
            const auto& r = w.rings[rv->ring];
            const int rn = static_cast<int>(r.size());
            std::vector<Point2> A = cyclic_slice(r, rv->vertex, hit->edge);
            A.push_back(x);
            std::vector<Point2> B = cyclic_slice(r, (hit->edge + 1) % rn, rv->vertex);
            B.insert(B.begin(), x);

            std::vector<std::vector<Point2>> other_holes;
            for (std::size_t ri = 1; ri < w.rings.size(); ++ri)
                if (static_cast<int>(ri) != rv->ring)
                    other_holes.push_back(w.rings[ri]);

            if (rv->ring == 0) {
                WorkPiece wa, wb;
                wa.rings.push_back(A);
                wb.rings.push_back(B);
                for (auto& h : other_holes) {
                    if (point_in_ring(A, h.front()))
                        wa.rings.push_back(std::move(h));
                    else
                        wb.rings.push_back(std::move(h));
                }
                work.push_back(std::move(wa));
                work.push_back(std::move(wb));
            } else {
                // Chord across a hole: the counterclockwise part becomes a
                // new piece (pocket), the clockwise part stays a hole.
                std::vector<Point2>& pocket = sgn(signed_area(A)) > 0 ? A : B;
                std::vector<Point2>& rest = sgn(signed_area(A)) > 0 ? B : A;
                WorkPiece wp, wr;
                wp.rings.push_back(pocket);
                wr.rings.push_back(w.rings[0]);
                wr.rings.push_back(rest);
                for (auto& h : other_holes) {
                    if (point_in_ring(pocket, h.front()))
                        wp.rings.push_back(std::move(h));
                    else
                        wr.rings.push_back(std::move(h));
                }
                work.push_back(std::move(wp));
                work.push_back(std::move(wr));
            }
        } else {
            // Corridor v -> x joining two rings; at least one is a hole.
            const auto& r1 = w.rings[rv->ring];     // ring of v
            const auto& r2 = w.rings[hit->ring];    // ring of x
            const int n2 = static_cast<int>(r2.size());
            std::vector<Point2> merged = cyclic_slice(r1, (rv->vertex + 1) % r1.size(),
                                                      rv->vertex);
            merged.push_back(x);
            auto part2 = cyclic_slice(r2, (hit->edge + 1) % n2, hit->edge);
            merged.insert(merged.end(), part2.begin(), part2.end());
            merged.push_back(x);
            merged.push_back(v);

            WorkPiece wn;
            bool outer_involved = rv->ring == 0 || hit->ring == 0;
            if (outer_involved) wn.rings.push_back(merged);
            else wn.rings.push_back(w.rings[0]);
            for (std::size_t ri = 1; ri < w.rings.size(); ++ri)
                if (static_cast<int>(ri) != rv->ring && static_cast<int>(ri) != hit->ring)
                    wn.rings.push_back(w.rings[ri]);
            if (!outer_involved) wn.rings.push_back(merged);
            work.push_back(std::move(wn));
        }
    }
    return out;
}

namespace {

/// Positive-length overlap of piece edge [a,b] with input edge [ea,eb];
/// returns the overlap midpoint when the piece edge lies on the input edge.
std::optional<Point2> edge_overlap_mid(const Point2& a, const Point2& b,
                                       const Point2& ea, const Point2& eb) {
    Vec2 d = eb - ea;
    if (sgn(cross(d, a - ea)) != 0 || sgn(cross(d, b - ea)) != 0) return std::nullopt;
    Scalar dd = dot(d, d);
    Scalar ta = dot(a - ea, d) / dd;
    Scalar tb = dot(b - ea, d) / dd;
    Scalar lo = std::min(ta, tb), hi = std::max(ta, tb);
    lo = std::max(lo, Scalar(0));
    hi = std::min(hi, Scalar(1));
    if (!(lo < hi)) return std::nullopt;
    Scalar tm = (lo + hi) / 2;
    return Point2{ea.x + tm * d.x, ea.y + tm * d.y};
}

}  // namespace

OpenEdgeGuardSet select_open_edge_guards(const Polygon2& p, const ConvexPartition& part,
                                         int distinguished_edge) {
    const int ne = p.edge_count();
    OpenEdgeGuardSet out;
    out.piece_guard.assign(part.pieces.size(), -1);
    auto covers = [&](int piece, int edge) {
        auto [ea, eb] = p.edge(edge);
        const auto& ring = part.pieces[piece].outer;
        const int n = static_cast<int>(ring.size());
        for (int i = 0; i < n; ++i)
            if (edge_overlap_mid(ring[i], ring[(i + 1) % n], ea, eb)) return true;
        return false;
    };
    auto use_guard = [&](int edge) {
        if (std::find(out.guards.begin(), out.guards.end(), edge) == out.guards.end())
            out.guards.push_back(edge);
    };
    use_guard(distinguished_edge);
    for (std::size_t k = 0; k < part.pieces.size(); ++k)
        if (covers(static_cast<int>(k), distinguished_edge))
            out.piece_guard[k] = distinguished_edge;
    for (std::size_t k = 0; k < part.pieces.size(); ++k) {
        if (out.piece_guard[k] >= 0) continue;
        for (int e = 0; e < ne; ++e)
            if (covers(static_cast<int>(k), e)) {
                out.piece_guard[k] = e;
                use_guard(e);
                break;
            }
        if (out.piece_guard[k] < 0)
            throw std::logic_error("piece without boundary sub-segment on the input");
    }
    return out;
}

CoverageReport verify_coverage(const Polygon2& p, const ConvexPartition& part,
                               const OpenEdgeGuardSet& guards, int density) {
    CoverageReport rep;
    std::vector<Point2> samples;
    Scalar xmin = p.outer[0].x, xmax = xmin, ymin = p.outer[0].y, ymax = ymin;
    for (const Point2& w : p.outer) {
        xmin = std::min(xmin, w.x);
        xmax = std::max(xmax, w.x);
        ymin = std::min(ymin, w.y);
        ymax = std::max(ymax, w.y);
    }
    for (int i = 1; i <= density; ++i)
        for (int j = 1; j <= density; ++j) {
            Point2 s{xmin + Scalar(i) * (xmax - xmin) / (density + 1),
                     ymin + Scalar(j) * (ymax - ymin) / (density + 1)};
            if (point_in_polygon(p, s)) samples.push_back(s);
        }
    Scalar half(1, 2);
    for (const auto& piece : part.pieces) {
        const int n = static_cast<int>(piece.outer.size());
        for (int i = 0; i < n; ++i) {
            samples.push_back(piece.outer[i]);
            const Point2& a = piece.outer[i];
            const Point2& b = piece.outer[(i + 1) % n];
            samples.push_back({half * (a.x + b.x), half * (a.y + b.y)});
        }
    }
    rep.samples = static_cast<long>(samples.size());

    auto in_convex = [&](const Polygon2& piece, const Point2& s) {
        const int n = static_cast<int>(piece.outer.size());
        for (int i = 0; i < n; ++i)
            if (orient(piece.outer[i], piece.outer[(i + 1) % n], s) < 0) return false;
        return true;
    };

    for (const Point2& s : samples) {
        bool covered = false;
        // Fast path: inside a convex piece, its assigned guard's overlap
        // midpoint is visible through the piece itself.
        for (std::size_t k = 0; k < part.pieces.size() && !covered; ++k) {
            if (!in_convex(part.pieces[k], s)) continue;
            auto [ea, eb] = p.edge(guards.piece_guard[k]);
            const auto& ring = part.pieces[k].outer;
            const int n = static_cast<int>(ring.size());
            for (int i = 0; i < n && !covered; ++i)
                if (auto m = edge_overlap_mid(ring[i], ring[(i + 1) % n], ea, eb))
                    covered = true;
        }
        if (!covered)
            for (int g : guards.guards) {
                auto [ea, eb] = p.edge(g);
                if (sees_open_edge(p, s, ea, eb)) {
                    covered = true;
                    break;
                }
            }
        if (!covered) rep.uncovered.push_back(s);
    }
    return rep;
}

// --- poly2 v1 ---

namespace {

[[noreturn]] void bad2(int line, const std::string& msg) {
    std::ostringstream os;
    os << "parse error (line " << line << "): " << msg;
    throw std::runtime_error(os.str());
}

}  // namespace

PolygonInstance parse_poly2(std::istream& in) {
    PolygonInstance inst;
    std::string line;
    int line_no = 0;
    bool header = false, have_outer = false;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> t;
        std::string tok;
        while (ls >> tok) t.push_back(tok);
        if (t.empty()) continue;
        if (!header) {
            if (t.size() != 2 || t[0] != "poly2" || t[1] != "v1")
                bad2(line_no, "expected header 'poly2 v1'");
            header = true;
            continue;
        }
        if (t[0] == "outer" || t[0] == "hole") {
            if ((t.size() - 1) % 2 != 0 || t.size() < 7)
                bad2(line_no, "ring needs at least 3 coordinate pairs");
            std::vector<Point2> ring;
            for (std::size_t i = 1; i + 1 < t.size(); i += 2) {
                auto u = parse_scalar(t[i]), v = parse_scalar(t[i + 1]);
                if (!u || !v) bad2(line_no, "bad coordinate");
                ring.push_back({*u, *v});
            }
            if (t[0] == "outer") {
                if (have_outer) bad2(line_no, "duplicate outer ring");
                inst.polygon.outer = std::move(ring);
                have_outer = true;
            } else {
                inst.polygon.holes.push_back(std::move(ring));
            }
        } else if (t[0] == "distinguished") {
            if (t.size() != 2) bad2(line_no, "expected 'distinguished <edge-index>'");
            inst.distinguished_edge = std::stoi(t[1]);
        } else {
            bad2(line_no, "unknown directive '" + t[0] + "'");
        }
    }
    if (!header) bad2(line_no, "missing header");
    if (!have_outer) bad2(line_no, "missing outer ring");
    return inst;
}

PolygonInstance parse_poly2_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_poly2(in);
}

void serialize_poly2(const PolygonInstance& p, std::ostream& out) {
    out << "poly2 v1\n";
    auto put_ring = [&](const char* kind, const std::vector<Point2>& ring) {
        out << kind;
        for (const Point2& w : ring)
            out << " " << format_scalar(w.x) << " " << format_scalar(w.y);
        out << "\n";
    };
    put_ring("outer", p.polygon.outer);
    for (const auto& h : p.polygon.holes) put_ring("hole", h);
    out << "distinguished " << p.distinguished_edge << "\n";
}

std::string serialize_poly2(const PolygonInstance& p) {
    std::ostringstream os;
    serialize_poly2(p, os);
    return os.str();
}

}  // namespace searchlight
