#include "searchlight/simulate.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>

namespace searchlight {

long ContaminationState::contaminated_count() const {
    long n = 0;
    for (char c : contaminated) n += c != 0;
    return n;
}

namespace {

/// Endpoint-exclusive apex candidates on the open guard segment: points
/// near both ends, grid breakpoints along the guard, midpoints between
/// consecutive breakpoints, and the midpoint of the overlap with a target
/// range along the guard's axis.
std::vector<Point3> guard_samples(const GridComplex& g, const Guard& gd,
                                  const Scalar* range_lo = nullptr,
                                  const Scalar* range_hi = nullptr) {
    const Axis ga = gd.axis;
    Scalar lo = gd.segment.a[ga], hi = gd.segment.b[ga];
    if (lo > hi) std::swap(lo, hi);
    Scalar len = hi - lo;
    Scalar eps = g.min_coordinate_gap() / 2;
    if (eps > len / 4) eps = len / 4;

    std::vector<Scalar> bps{lo};
    for (const Scalar& c : g.coords[axis_index(ga)])
        if (c > lo && c < hi) bps.push_back(c);
    bps.push_back(hi);

    std::vector<Scalar> params{lo + eps, hi - eps};
    for (std::size_t i = 1; i + 1 < bps.size(); ++i) params.push_back(bps[i]);
    for (std::size_t i = 0; i + 1 < bps.size(); ++i)
        params.push_back((bps[i] + bps[i + 1]) / 2);
    if (range_lo && range_hi) {
        Scalar a = *range_lo > lo ? *range_lo : lo;
        Scalar b = *range_hi < hi ? *range_hi : hi;
        if (a < b) params.push_back((a + b) / 2);
    }
    std::sort(params.begin(), params.end());
    params.erase(std::unique(params.begin(), params.end()), params.end());

    std::vector<Point3> out;
    for (const Scalar& t : params) {
        Point3 x = gd.segment.a;
        x[ga] = t;
        out.push_back(x);
    }
    return out;
}

AimDirection resolve_concrete(const GridComplex& g, const Guard& gd,
                              const AimDirection& aim) {
    if (aim.kind == AimDirection::Kind::Concrete) return aim;
    return AimDirection::concrete(resolve_aim(g, gd, aim));
}

/// The axis not spanned by the guard's aimed half-plane, i.e. its normal.
Axis plane_normal_axis(Axis guard_axis, Axis aim_axis) {
    for (int i = 0; i < 3; ++i) {
        Axis a = axis_from_index(i);
        if (a != guard_axis && a != aim_axis) return a;
    }
    return Axis::X;  // unreachable
}

/// Inserts the internal facets of the guard's aimed searchplane that carry
/// a visibility witness. The aim must be axis-aligned.
void add_lit_facets(const GridComplex& g, const Guard& gd, const Vec2& dir,
                    std::set<FacetId>& lit) {
    bool du = sgn(dir.x) != 0, dv = sgn(dir.y) != 0;
    if (du == dv)
        throw UnsupportedSchedule("macro states need axis-aligned aim directions");
    const auto oa = other_axes(gd.axis);
    Axis da = du ? oa[0] : oa[1];
    int sd = du ? sgn(dir.x) : sgn(dir.y);
    Axis ta = plane_normal_axis(gd.axis, da);

    auto loc = g.locate(ta, gd.segment.a[ta]);
    if (!loc.exact) return;  // off-grid plane holds no grid facets
    const int plane = loc.index;
    const Scalar& gw = gd.segment.a[da];

    const auto fa = other_axes(ta);
    for (int u = 0; u < g.cell_count(fa[0]); ++u)
        for (int v = 0; v < g.cell_count(fa[1]); ++v) {
            FacetId f{ta, plane, u, v};
            if (g.facet_state(f) != FacetState::Internal) continue;
            Point3 fmin = g.facet_min(f), fmax = g.facet_max(f);
            bool on_side = sd > 0 ? fmin[da] >= gw : fmax[da] <= gw;
            if (!on_side) continue;
            Scalar rl = fmin[gd.axis], rh = fmax[gd.axis];
            for (const Point3& x : guard_samples(g, gd, &rl, &rh))
                if (hull_in_polyhedron(g, x, fmin, fmax)) {
                    lit.insert(f);
                    break;
                }
        }
}

std::set<FacetId> lit_union(const GridComplex& g, const std::vector<Guard>& guards,
                            const std::vector<AimDirection>& aims,
                            const std::vector<char>& skip) {
    std::set<FacetId> lit;
    for (std::size_t i = 0; i < guards.size(); ++i)
        if (!skip[i]) add_lit_facets(g, guards[i], aims[i].dir, lit);
    return lit;
}

/// Flood-fills contamination across internal facets that are not lit.
void propagate(const GridComplex& g, std::vector<char>& cont,
               const std::set<FacetId>& lit) {
    std::queue<std::array<int, 3>> q;
    for (int iz = 0; iz < g.nz(); ++iz)
        for (int iy = 0; iy < g.ny(); ++iy)
            for (int ix = 0; ix < g.nx(); ++ix)
                if (cont[g.cell_index(ix, iy, iz)]) q.push({ix, iy, iz});
    while (!q.empty()) {
        auto [ix, iy, iz] = q.front();
        q.pop();
        for (int a = 0; a < 3; ++a)
            for (int d = -1; d <= 1; d += 2) {
                int nb[3] = {ix, iy, iz};
                nb[a] += d;
                if (!g.cell_interior(nb[0], nb[1], nb[2])) continue;
                std::size_t ni = g.cell_index(nb[0], nb[1], nb[2]);
                if (cont[ni]) continue;
                int cell[3] = {ix, iy, iz};
                const auto fa = other_axes(axis_from_index(a));
                FacetId f{axis_from_index(a), d > 0 ? cell[a] + 1 : cell[a],
                          cell[axis_index(fa[0])], cell[axis_index(fa[1])]};
                if (lit.count(f)) continue;
                cont[ni] = 1;
                q.push({nb[0], nb[1], nb[2]});
            }
    }
}

/// Interior-cell mask of a sweep region (empty region = whole interior).
std::vector<char> region_mask(const GridComplex& g, const std::vector<CellBox>& region) {
    std::vector<char> mask(g.interior_.size(), 0);
    for (int iz = 0; iz < g.nz(); ++iz)
        for (int iy = 0; iy < g.ny(); ++iy)
            for (int ix = 0; ix < g.nx(); ++ix) {
                if (!g.cell_interior(ix, iy, iz)) continue;
                bool in = region.empty();
                for (const CellBox& b : region)
                    if (b.contains(ix, iy, iz)) {
                        in = true;
                        break;
                    }
                if (in) mask[g.cell_index(ix, iy, iz)] = 1;
            }
    return mask;
}

/// Every internal facet between a region cell and an interior non-region
/// cell must be lit by somebody else.
void check_region_boundary(const GridComplex& g, const std::vector<char>& mask,
                           const std::set<FacetId>& lit_others) {
    for (int iz = 0; iz < g.nz(); ++iz)
        for (int iy = 0; iy < g.ny(); ++iy)
            for (int ix = 0; ix < g.nx(); ++ix) {
                if (!mask[g.cell_index(ix, iy, iz)]) continue;
                for (int a = 0; a < 3; ++a)
                    for (int d = -1; d <= 1; d += 2) {
                        int nb[3] = {ix, iy, iz};
                        nb[a] += d;
                        if (!g.cell_interior(nb[0], nb[1], nb[2])) continue;
                        if (mask[g.cell_index(nb[0], nb[1], nb[2])]) continue;
                        int cell[3] = {ix, iy, iz};
                        const auto fa = other_axes(axis_from_index(a));
                        FacetId f{axis_from_index(a), d > 0 ? cell[a] + 1 : cell[a],
                                  cell[axis_index(fa[0])], cell[axis_index(fa[1])]};
                        if (!lit_others.count(f)) {
                            std::ostringstream os;
                            os << "region boundary facet not illuminated: axis "
                               << axis_index(f.axis) << " plane " << f.plane << " cell ("
                               << ix << "," << iy << "," << iz << ")";
                            throw LeakyBoundary(os.str());
                        }
                    }
            }
}

/// Every region box needs a witness point on the sweeping guard seeing the
/// whole box; an empty region needs one per interior cell.
void check_region_visible(const GridComplex& g, const Guard& gd,
                          const std::vector<CellBox>& region) {
    auto box_visible = [&](const Point3& bmin, const Point3& bmax) {
        Scalar rl = bmin[gd.axis], rh = bmax[gd.axis];
        for (const Point3& x : guard_samples(g, gd, &rl, &rh))
            if (hull_in_polyhedron(g, x, bmin, bmax)) return true;
        return false;
    };
    if (region.empty()) {
        for (int iz = 0; iz < g.nz(); ++iz)
            for (int iy = 0; iy < g.ny(); ++iy)
                for (int ix = 0; ix < g.nx(); ++ix) {
                    if (!g.cell_interior(ix, iy, iz)) continue;
                    if (!box_visible(g.cell_min(ix, iy, iz), g.cell_max(ix, iy, iz))) {
                        std::ostringstream os;
                        os << "no sweep witness for cell (" << ix << "," << iy << ","
                           << iz << ")";
                        throw NotVisible(os.str());
                    }
                }
        return;
    }
    for (const CellBox& b : region) {
        Point3 bmin = g.cell_min(b.lo[0], b.lo[1], b.lo[2]);
        Point3 bmax = g.cell_max(b.hi[0] - 1, b.hi[1] - 1, b.hi[2] - 1);
        if (!box_visible(bmin, bmax)) {
            std::ostringstream os;
            os << "no sweep witness for region box [" << b.lo[0] << "," << b.lo[1] << ","
               << b.lo[2] << ")x[" << b.hi[0] << "," << b.hi[1] << "," << b.hi[2] << ")";
            throw NotVisible(os.str());
        }
    }
}

void check_guard_index(const std::vector<Guard>& guards, int gi) {
    if (gi < 0 || gi >= static_cast<int>(guards.size()))
        throw std::invalid_argument("step references a nonexistent guard");
}

}  // namespace

ContaminationState init_state(const OrthoPolyhedron& p, const std::vector<Guard>& guards,
                              const std::vector<AimDirection>& aims) {
    const GridComplex& g = p.grid;
    if (aims.size() != guards.size())
        throw std::invalid_argument("aim count does not match guard count");
    ContaminationState s;
    s.contaminated.assign(g.interior_.size(), 0);
    for (std::size_t i = 0; i < g.interior_.size(); ++i)
        if (g.interior_[i]) s.contaminated[i] = 1;
    for (std::size_t i = 0; i < guards.size(); ++i)
        s.aims.push_back(resolve_concrete(g, guards[i], aims[i]));
    std::vector<char> skip(guards.size(), 0);
    s.lit = lit_union(g, guards, s.aims, skip);
    return s;
}

ContaminationState apply_move(const OrthoPolyhedron& p, const std::vector<Guard>& guards,
                              const ContaminationState& s, const MacroStep& step) {
    const GridComplex& g = p.grid;
    check_guard_index(guards, step.guard);
    ContaminationState ns = s;
    std::vector<char> skip(guards.size(), 0);
    skip[step.guard] = 1;
    std::set<FacetId> lit_wo = lit_union(g, guards, ns.aims, skip);
    propagate(g, ns.contaminated, lit_wo);
    ns.aims[step.guard] = resolve_concrete(g, guards[step.guard], step.to);
    std::fill(skip.begin(), skip.end(), 0);
    ns.lit = lit_union(g, guards, ns.aims, skip);
    return ns;
}

ContaminationState apply_sweep(const OrthoPolyhedron& p, const std::vector<Guard>& guards,
                               const ContaminationState& s, const MacroStep& step) {
    const GridComplex& g = p.grid;
    check_guard_index(guards, step.guard);
    ContaminationState ns = s;
    std::vector<char> skip(guards.size(), 0);
    skip[step.guard] = 1;
    std::set<FacetId> lit_wo = lit_union(g, guards, ns.aims, skip);
    std::vector<char> mask = region_mask(g, step.region);
    check_region_boundary(g, mask, lit_wo);
    check_region_visible(g, guards[step.guard], step.region);

    propagate(g, ns.contaminated, lit_wo);
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i]) ns.contaminated[i] = 0;
    ns.aims[step.guard] = resolve_concrete(g, guards[step.guard], step.to);
    std::fill(skip.begin(), skip.end(), 0);
    ns.lit = lit_union(g, guards, ns.aims, skip);
    return ns;
}

ContaminationState apply_sweep_parallel(const OrthoPolyhedron& p,
                                        const std::vector<Guard>& guards,
                                        const ContaminationState& s,
                                        const MacroStep& step) {
    const GridComplex& g = p.grid;
    if (step.guards.empty()) throw std::invalid_argument("parallel sweep without guards");
    std::vector<char> skip(guards.size(), 0);
    for (int gi : step.guards) {
        check_guard_index(guards, gi);
        if (skip[gi]) throw std::invalid_argument("parallel sweep repeats a guard");
        skip[gi] = 1;
    }
    if (!step.regions.empty() && step.regions.size() != step.guards.size())
        throw std::invalid_argument("per-guard region count mismatch");

    ContaminationState ns = s;
    std::set<FacetId> lit_stationary = lit_union(g, guards, ns.aims, skip);
    std::vector<char> cleared(g.interior_.size(), 0);
    for (std::size_t i = 0; i < step.guards.size(); ++i) {
        const std::vector<CellBox>& region =
            step.regions.empty() ? std::vector<CellBox>{} : step.regions[i];
        std::vector<char> mask = region_mask(g, region);
        check_region_boundary(g, mask, lit_stationary);
        check_region_visible(g, guards[step.guards[i]], region);
        for (std::size_t c = 0; c < mask.size(); ++c)
            if (mask[c]) cleared[c] = 1;
    }

    propagate(g, ns.contaminated, lit_stationary);
    for (std::size_t c = 0; c < cleared.size(); ++c)
        if (cleared[c]) ns.contaminated[c] = 0;
    for (int gi : step.guards)
        ns.aims[gi] = resolve_concrete(g, guards[gi], step.to);
    std::fill(skip.begin(), skip.end(), 0);
    ns.lit = lit_union(g, guards, ns.aims, skip);
    return ns;
}

namespace {

std::string state_digest(const ContaminationState& s) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](std::uint64_t x) {
        h ^= x;
        h *= 1099511628211ull;
    };
    for (char c : s.contaminated) mix(static_cast<std::uint64_t>(c));
    for (const FacetId& f : s.lit) {
        mix(static_cast<std::uint64_t>(axis_index(f.axis)));
        mix(static_cast<std::uint64_t>(f.plane));
        mix(static_cast<std::uint64_t>(f.u));
        mix(static_cast<std::uint64_t>(f.v));
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

const char* step_name(MacroStep::Kind k) {
    switch (k) {
        case MacroStep::Kind::Move: return "move";
        case MacroStep::Kind::Sweep: return "sweep";
        case MacroStep::Kind::SweepParallel: return "psweep";
        default: return "hold";
    }
}

}  // namespace

Verdict verify_schedule(const OrthoPolyhedron& p, const std::vector<Guard>& guards,
                        const MacroSchedule& m) {
    const GridComplex& g = p.grid;
    Verdict v;
    try {
        ContaminationState state = init_state(p, guards, m.initial_aims);
        {
            std::ostringstream os;
            os << "init contaminated=" << state.contaminated_count() << " digest="
               << state_digest(state);
            v.trace.push_back(os.str());
        }
        for (std::size_t i = 0; i < m.steps.size(); ++i) {
            const MacroStep& step = m.steps[i];
            switch (step.kind) {
                case MacroStep::Kind::Move:
                    state = apply_move(p, guards, state, step);
                    break;
                case MacroStep::Kind::Sweep:
                    state = apply_sweep(p, guards, state, step);
                    break;
                case MacroStep::Kind::SweepParallel:
                    state = apply_sweep_parallel(p, guards, state, step);
                    break;
                case MacroStep::Kind::Hold:
                    propagate(g, state.contaminated, state.lit);
                    break;
            }
            std::ostringstream os;
            os << "step " << i << " " << step_name(step.kind) << " contaminated="
               << state.contaminated_count() << " digest=" << state_digest(state);
            v.trace.push_back(os.str());
        }
        for (int iz = 0; iz < g.nz(); ++iz)
            for (int iy = 0; iy < g.ny(); ++iy)
                for (int ix = 0; ix < g.nx(); ++ix)
                    if (state.contaminated[g.cell_index(ix, iy, iz)]) {
                        v.outcome = Verdict::Outcome::Failed;
                        v.diagnostic = "contaminated cell remains at the end";
                        v.witness = {ix, iy, iz};
                        return v;
                    }
        v.outcome = Verdict::Outcome::Searched;
    } catch (const SimulationError& e) {
        v.outcome = Verdict::Outcome::Failed;
        v.diagnostic = e.what();
    }
    return v;
}

ViabilityReport check_viable(const OrthoPolyhedron& p, const std::vector<Guard>& guards) {
    const GridComplex& g = p.grid;
    ViabilityReport rep;
    rep.viable = true;
    for (int iz = 0; iz < g.nz(); ++iz)
        for (int iy = 0; iy < g.ny(); ++iy)
            for (int ix = 0; ix < g.nx(); ++ix) {
                if (!g.cell_interior(ix, iy, iz)) continue;
                Point3 bmin = g.cell_min(ix, iy, iz), bmax = g.cell_max(ix, iy, iz);
                bool seen = false;
                for (const Guard& gd : guards) {
                    Scalar rl = bmin[gd.axis], rh = bmax[gd.axis];
                    for (const Point3& x : guard_samples(g, gd, &rl, &rh))
                        if (hull_in_polyhedron(g, x, bmin, bmax)) {
                            seen = true;
                            break;
                        }
                    if (seen) break;
                }
                if (!seen) {
                    rep.viable = false;
                    rep.uncovered.push_back({ix, iy, iz});
                }
            }
    return rep;
}

bool is_region_clear(const OrthoPolyhedron& p, const ContaminationState& s,
                     const TargetRegion& region) {
    const GridComplex& g = p.grid;
    const Scalar r2 = region.radius * region.radius;

    auto box_dist2 = [&](const Point3& bmin, const Point3& bmax) {
        Scalar d2(0);
        for (int a = 0; a < 3; ++a) {
            const Scalar& c = region.center[a];
            if (c < bmin[a]) {
                Scalar d = bmin[a] - c;
                d2 += d * d;
            } else if (c > bmax[a]) {
                Scalar d = c - bmax[a];
                d2 += d * d;
            }
        }
        return d2;
    };

    // The open complement must stay farther than the radius.
    for (int a = 0; a < 3; ++a) {
        Scalar lo_margin = region.center[a] - g.coords[a].front();
        Scalar hi_margin = g.coords[a].back() - region.center[a];
        if (lo_margin < region.radius || hi_margin < region.radius)
            throw RegionOutside("ball reaches outside the solid");
    }
    for (int iz = 0; iz < g.nz(); ++iz)
        for (int iy = 0; iy < g.ny(); ++iy)
            for (int ix = 0; ix < g.nx(); ++ix) {
                if (g.cell_interior(ix, iy, iz)) continue;
                if (box_dist2(g.cell_min(ix, iy, iz), g.cell_max(ix, iy, iz)) < r2)
                    throw RegionOutside("ball reaches outside the solid");
            }

    bool any = false;
    for (int iz = 0; iz < g.nz(); ++iz)
        for (int iy = 0; iy < g.ny(); ++iy)
            for (int ix = 0; ix < g.nx(); ++ix) {
                if (!g.cell_interior(ix, iy, iz)) continue;
                if (box_dist2(g.cell_min(ix, iy, iz), g.cell_max(ix, iy, iz)) > r2)
                    continue;
                any = true;
                if (s.contaminated[g.cell_index(ix, iy, iz)]) return false;
            }
    if (!any) throw RegionOutside("ball misses the interior");
    return true;
}

// --- fine-grained oracle ---

namespace {

/// Cell complex refined k times per axis; original coordinates survive, so
/// guard lines and planes stay on the refined grid.
struct RefinedGrid {
    const GridComplex& g;
    int k;
    std::array<std::vector<Scalar>, 3> rc;
    std::vector<char> interior;

    RefinedGrid(const GridComplex& base, int k_) : g(base), k(k_) {
        for (int a = 0; a < 3; ++a) {
            const auto& cs = g.coords[a];
            rc[a].push_back(cs.front());
            for (std::size_t i = 0; i + 1 < cs.size(); ++i) {
                Scalar step = (cs[i + 1] - cs[i]) / k;
                for (int j = 1; j < k; ++j) rc[a].push_back(cs[i] + j * step);
                rc[a].push_back(cs[i + 1]);
            }
        }
        interior.assign(static_cast<std::size_t>(nx()) * ny() * nz(), 0);
        for (int iz = 0; iz < nz(); ++iz)
            for (int iy = 0; iy < ny(); ++iy)
                for (int ix = 0; ix < nx(); ++ix)
                    if (g.cell_interior(ix / k, iy / k, iz / k))
                        interior[idx(ix, iy, iz)] = 1;
    }

    int nx() const { return static_cast<int>(rc[0].size()) - 1; }
    int ny() const { return static_cast<int>(rc[1].size()) - 1; }
    int nz() const { return static_cast<int>(rc[2].size()) - 1; }
    std::size_t idx(int ix, int iy, int iz) const {
        return (static_cast<std::size_t>(iz) * ny() + iy) * nx() + ix;
    }
    bool cell_interior(int ix, int iy, int iz) const {
        return ix >= 0 && ix < nx() && iy >= 0 && iy < ny() && iz >= 0 && iz < nz() &&
               interior[idx(ix, iy, iz)] != 0;
    }
    Point3 cell_min(int ix, int iy, int iz) const {
        return {rc[0][ix], rc[1][iy], rc[2][iz]};
    }
    Point3 cell_max(int ix, int iy, int iz) const {
        return {rc[0][ix + 1], rc[1][iy + 1], rc[2][iz + 1]};
    }
};


/// Flood-fills contamination between unlit subcells.
void refined_flood(const RefinedGrid& r, std::vector<char>& cont,
                   const std::vector<char>& lit) {
    std::queue<std::array<int, 3>> q;
    for (int iz = 0; iz < r.nz(); ++iz)
        for (int iy = 0; iy < r.ny(); ++iy)
            for (int ix = 0; ix < r.nx(); ++ix)
                if (cont[r.idx(ix, iy, iz)]) q.push({ix, iy, iz});
    while (!q.empty()) {
        auto [ix, iy, iz] = q.front();
        q.pop();
        for (int a = 0; a < 3; ++a)
            for (int d = -1; d <= 1; d += 2) {
                int nb[3] = {ix, iy, iz};
                nb[a] += d;
                if (!r.cell_interior(nb[0], nb[1], nb[2])) continue;
                std::size_t ni = r.idx(nb[0], nb[1], nb[2]);
                if (cont[ni] || lit[ni]) continue;
                cont[ni] = 1;
                q.push({nb[0], nb[1], nb[2]});
            }
    }
}

struct OracleContext {
    const OrthoPolyhedron& p;
    const std::vector<Guard>& guards;
    RefinedGrid r;
    /// Per guard, per refined cell: some guard point sees the whole cell
    /// (direction-independent, so cacheable across the run).
    std::vector<std::vector<char>> vis;
    std::map<std::pair<int, std::pair<Scalar, Scalar>>, std::vector<char>> band_cache;

    OracleContext(const OrthoPolyhedron& p_, const std::vector<Guard>& guards_, int k)
        : p(p_), guards(guards_), r(p_.grid, k), vis(guards_.size()) {}

    const std::vector<char>& guard_vis(int gi) {
        std::vector<char>& v = vis[gi];
        if (!v.empty()) return v;
        v.assign(r.interior.size(), 0);
        const Guard& gd = guards[gi];
        for (int iz = 0; iz < r.nz(); ++iz)
            for (int iy = 0; iy < r.ny(); ++iy)
                for (int ix = 0; ix < r.nx(); ++ix) {
                    if (!r.cell_interior(ix, iy, iz)) continue;
                    Point3 bmin = r.cell_min(ix, iy, iz), bmax = r.cell_max(ix, iy, iz);
                    Scalar rl = bmin[gd.axis], rh = bmax[gd.axis];
                    for (const Point3& x : guard_samples(p.grid, gd, &rl, &rh))
                        if (hull_in_polyhedron(p.grid, x, bmin, bmax)) {
                            v[r.idx(ix, iy, iz)] = 1;
                            break;
                        }
                }
        return v;
    }

    /// True when the open ray from the guard line in plane direction d
    /// meets the subcell's rotation-plane rectangle.
    bool cell_sliced(const Guard& gd, int ix, int iy, int iz, const Vec2& d) const {
        const auto oa = other_axes(gd.axis);
        Point3 bmin = r.cell_min(ix, iy, iz), bmax = r.cell_max(ix, iy, iz);
        Scalar lo[2] = {bmin[oa[0]] - gd.segment.a[oa[0]],
                        bmin[oa[1]] - gd.segment.a[oa[1]]};
        Scalar hi[2] = {bmax[oa[0]] - gd.segment.a[oa[0]],
                        bmax[oa[1]] - gd.segment.a[oa[1]]};
        const Scalar* dc[2] = {&d.x, &d.y};
        // s-interval with s*d inside the rectangle
        Scalar slo(0);
        bool shi_set = false;
        Scalar shi(0);
        for (int a = 0; a < 2; ++a) {
            int s = sgn(*dc[a]);
            if (s == 0) {
                if (sgn(lo[a]) > 0 || sgn(hi[a]) < 0) return false;
                continue;
            }
            Scalar b1 = lo[a] / *dc[a], b2 = hi[a] / *dc[a];
            if (s < 0) std::swap(b1, b2);
            if (b1 > slo) slo = b1;
            if (!shi_set || b2 < shi) {
                shi = b2;
                shi_set = true;
            }
        }
        if (!shi_set) return false;  // zero direction cannot happen
        return slo <= shi && sgn(shi) > 0;
    }

    /// Subcells pierced by the guard's searchplane at this aim: sliced by
    /// the open half-plane and entirely hull-visible from the guard.
    const std::vector<char>& band(int gi, const Vec2& dir) {
        auto key = std::make_pair(gi, std::make_pair(dir.x, dir.y));
        auto it = band_cache.find(key);
        if (it != band_cache.end()) return it->second;
        std::vector<char>& out = band_cache[key];
        out.assign(r.interior.size(), 0);
        const std::vector<char>& v = guard_vis(gi);
        for (int iz = 0; iz < r.nz(); ++iz)
            for (int iy = 0; iy < r.ny(); ++iy)
                for (int ix = 0; ix < r.nx(); ++ix) {
                    std::size_t ci = r.idx(ix, iy, iz);
                    if (!r.interior[ci] || !v[ci]) continue;
                    if (cell_sliced(guards[gi], ix, iy, iz, dir)) out[ci] = 1;
                }
        return out;
    }

    /// Visible subcells the searchplane passes over while turning from d1
    /// to d2 in the given raw-plane sense. Consecutive samples never cross
    /// an axis-aligned direction, so the swept directions span a convex
    /// cone: a rectangle meets it iff a boundary ray slices it or one of
    /// its corners lies strictly inside the open cone.
    std::vector<char> wedge(int gi, const Vec2& d1, const Vec2& d2, bool ccw) {
        const Guard& gd = guards[gi];
        const Vec2& a = ccw ? d1 : d2;
        const Vec2& b = ccw ? d2 : d1;
        auto cross = [](const Vec2& p, const Vec2& q) -> Scalar {
            return p.x * q.y - p.y * q.x;
        };
        std::vector<char> out(r.interior.size(), 0);
        const std::vector<char>& v = guard_vis(gi);
        const auto oa = other_axes(gd.axis);
        for (int iz = 0; iz < r.nz(); ++iz)
            for (int iy = 0; iy < r.ny(); ++iy)
                for (int ix = 0; ix < r.nx(); ++ix) {
                    std::size_t ci = r.idx(ix, iy, iz);
                    if (!r.interior[ci] || !v[ci]) continue;
                    if (cell_sliced(gd, ix, iy, iz, d1) ||
                        cell_sliced(gd, ix, iy, iz, d2)) {
                        out[ci] = 1;
                        continue;
                    }
                    Point3 bmin = r.cell_min(ix, iy, iz), bmax = r.cell_max(ix, iy, iz);
                    Scalar us[2] = {bmin[oa[0]] - gd.segment.a[oa[0]],
                                    bmax[oa[0]] - gd.segment.a[oa[0]]};
                    Scalar vs[2] = {bmin[oa[1]] - gd.segment.a[oa[1]],
                                    bmax[oa[1]] - gd.segment.a[oa[1]]};
                    for (int cu = 0; cu < 2 && !out[ci]; ++cu)
                        for (int cv = 0; cv < 2 && !out[ci]; ++cv) {
                            Vec2 c{us[cu], vs[cv]};
                            if (sgn(cross(a, c)) > 0 && sgn(cross(c, b)) > 0)
                                out[ci] = 1;
                        }
                }
        return out;
    }
};

/// Directions a rotation passes through, in sweep order: endpoints, the
/// axis-aligned directions crossed on the way, and `extra` rational
/// in-between directions per segment.
std::vector<Vec2> sample_directions(const Vec2& from, const Vec2& to, bool ccw,
                                    int extra) {
    ArcAngle fa = ArcAngle::of_direction(from);
    ArcAngle ta = ArcAngle::of_direction(to);
    ArcAngle extent = ccw ? ccw_sweep(fa, ta) : ccw_sweep(ta, fa);
    std::vector<Vec2> stops{from};
    const Vec2 axes[4] = {{Scalar(1), Scalar(0)},
                          {Scalar(0), Scalar(1)},
                          {Scalar(-1), Scalar(0)},
                          {Scalar(0), Scalar(-1)}};
    struct Stop {
        ArcAngle off;
        Vec2 dir;
    };
    std::vector<Stop> mids;
    for (const Vec2& a : axes) {
        ArcAngle aa = ArcAngle::of_direction(a);
        ArcAngle off = ccw ? ccw_sweep(fa, aa) : ccw_sweep(aa, fa);
        if (off.sign() > 0 && off < extent) mids.push_back({off, a});
    }
    std::sort(mids.begin(), mids.end(),
              [](const Stop& a, const Stop& b) { return a.off < b.off; });
    for (const Stop& s : mids) stops.push_back(s.dir);
    if (extent.sign() > 0) stops.push_back(to);

    std::vector<Vec2> out;
    for (std::size_t i = 0; i + 1 < stops.size(); ++i) {
        const Vec2& a = stops[i];
        const Vec2& b = stops[i + 1];
        out.push_back(a);
        for (int j = 1; j <= extra; ++j) {
            // Positive combinations sweep the segment monotonically; the
            // tangent-half-angle weights keep the coordinates rational.
            Scalar u = ratio(j, extra + 1);
            Vec2 d{(1 - u * u) * a.x + 2 * u * b.x, (1 - u * u) * a.y + 2 * u * b.y};
            out.push_back(primitive_direction(d));
        }
    }
    out.push_back(stops.back());
    return out;
}

}  // namespace

Verdict brute_force_verify(const OrthoPolyhedron& p, const std::vector<Guard>& guards,
                           const Schedule& lowered, int refinement) {
    const GridComplex& g = p.grid;
    Verdict v;
    if (refinement < 1) throw std::invalid_argument("refinement must be positive");
    long budget = static_cast<long>(g.interior_cell_count()) * refinement * refinement *
                  refinement;
    if (budget > 20000)
        throw TooLarge("instance exceeds the oracle budget at this refinement");
    if (lowered.guards.size() != guards.size())
        throw std::invalid_argument("timeline count does not match guard count");

    OracleContext ctx(p, guards, refinement);
    const RefinedGrid& r = ctx.r;

    // Pieces grouped by time window; simultaneous pieces must share the
    // window exactly so that their angular samples align.
    struct Act {
        int guard;
        const SchedulePiece* pc;
    };
    struct Group {
        Duration start, end;
        std::vector<Act> acts;
    };
    std::vector<Group> groups;
    for (std::size_t gi = 0; gi < lowered.guards.size(); ++gi)
        for (const SchedulePiece& pc : lowered.guards[gi].pieces) {
            Duration end = pc.start + pc.extent;
            bool placed = false;
            for (Group& gr : groups) {
                if (gr.start == pc.start && gr.end == end) {
                    gr.acts.push_back({static_cast<int>(gi), &pc});
                    placed = true;
                    break;
                }
            }
            if (!placed) groups.push_back({pc.start, end, {{static_cast<int>(gi), &pc}}});
        }
    std::sort(groups.begin(), groups.end(),
              [](const Group& a, const Group& b) { return a.start < b.start; });
    for (std::size_t i = 0; i + 1 < groups.size(); ++i)
        if (groups[i + 1].start < groups[i].end)
            throw UnsupportedSchedule("overlapping rotations with different windows");
    for (const Group& gr : groups)
        if (gr.acts.size() > 1)
            for (const Act& a : gr.acts)
                if (sgn(a.pc->from.x) != 0 && sgn(a.pc->from.y) != 0)
                    throw UnsupportedSchedule(
                        "simultaneous rotations must start axis-aligned");

    std::vector<Vec2> current(guards.size());
    for (std::size_t gi = 0; gi < guards.size(); ++gi)
        current[gi] = lowered.guards[gi].initial;

    std::vector<char> cont = r.interior;  // everything starts contaminated

    // One step of the sweep model. The barrier is the union of current
    // searchplane bands (active guards at their end-of-step directions,
    // everyone else at their held aim); the beam additionally disinfects
    // every visible subcell it passed over since the previous sample.
    auto step = [&](const std::vector<int>& active_guards,
                    const std::vector<Vec2>& active_dirs,
                    const std::vector<std::vector<char>>& swept) {
        std::vector<char> lit(cont.size(), 0);
        std::vector<char> is_active(guards.size(), 0);
        for (std::size_t i = 0; i < active_guards.size(); ++i) {
            is_active[active_guards[i]] = 1;
            const std::vector<char>& b = ctx.band(active_guards[i], active_dirs[i]);
            for (std::size_t c = 0; c < lit.size(); ++c)
                if (b[c]) lit[c] = 1;
        }
        for (std::size_t gi = 0; gi < guards.size(); ++gi) {
            if (is_active[gi]) continue;
            const std::vector<char>& b = ctx.band(static_cast<int>(gi), current[gi]);
            for (std::size_t c = 0; c < lit.size(); ++c)
                if (b[c]) lit[c] = 1;
        }
        for (std::size_t c = 0; c < cont.size(); ++c) {
            if (lit[c]) cont[c] = 0;
            for (const auto& w : swept)
                if (w[c]) cont[c] = 0;
        }
        refined_flood(r, cont, lit);
    };

    step({}, {}, {});  // initial aims
    for (std::size_t gidx = 0; gidx < groups.size(); ++gidx) {
        const Group& gr = groups[gidx];
        std::vector<std::vector<Vec2>> dirs;
        std::vector<int> ags;
        for (const Act& a : gr.acts) {
            dirs.push_back(
                sample_directions(a.pc->from, a.pc->to, a.pc->ccw, refinement));
            ags.push_back(a.guard);
        }
        for (std::size_t i = 1; i < dirs.size(); ++i)
            if (dirs[i].size() != dirs[0].size())
                throw UnsupportedSchedule("simultaneous rotations sample differently");

        for (std::size_t m = 0; m < dirs[0].size(); ++m) {
            std::vector<Vec2> ds;
            std::vector<std::vector<char>> swept;
            for (std::size_t i = 0; i < dirs.size(); ++i) {
                ds.push_back(dirs[i][m]);
                if (m > 0)
                    swept.push_back(ctx.wedge(ags[i], dirs[i][m - 1], dirs[i][m],
                                              gr.acts[i].pc->ccw));
            }
            step(ags, ds, swept);
        }
        for (const Act& a : gr.acts) current[a.guard] = a.pc->to;

        long n = 0;
        for (char c : cont) n += c != 0;
        std::ostringstream os;
        os << "phase " << gidx << " contaminated=" << n;
        v.trace.push_back(os.str());
    }
    step({}, {}, {});  // final aims

    for (int iz = 0; iz < r.nz(); ++iz)
        for (int iy = 0; iy < r.ny(); ++iy)
            for (int ix = 0; ix < r.nx(); ++ix)
                if (cont[r.idx(ix, iy, iz)]) {
                    v.outcome = Verdict::Outcome::Failed;
                    v.diagnostic = "contaminated subcell remains at the end";
                    v.witness = {ix / refinement, iy / refinement, iz / refinement};
                    return v;
                }
    v.outcome = Verdict::Outcome::Searched;
    return v;
}

}  // namespace searchlight
