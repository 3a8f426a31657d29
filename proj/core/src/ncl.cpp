#include "searchlight/ncl.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <queue>
#include <sstream>

namespace searchlight {

namespace {

/// True when the edge is directed toward the given vertex.
bool inward(const NclEdge& e, EdgeDir d, int vertex) {
    if (d == EdgeDir::Reversing) return false;
    if (d == EdgeDir::TowardU) return e.u == vertex;
    return e.v == vertex;
}

bool vertex_legal(const ConstraintGraph& g, const Configuration& c, int w) {
    const NclVertex& vx = g.vertices[w];
    auto in = [&](int slot) {
        int e = vx.edges[slot];
        return inward(g.edges[e], c.orientation[e], w);
    };
    if (vx.kind == NclVertexKind::And) return in(0) || (in(1) && in(2));
    return in(0) || in(1) || in(2);
}

/// Fills edge endpoints from the vertex incidence lists: the vertex whose
/// line mentions an edge first becomes its u endpoint. Shared by the
/// parser and the random generator so both agree with validate_graph.
void derive_endpoints(ConstraintGraph& g) {
    for (NclEdge& e : g.edges) e.u = e.v = -1;
    for (std::size_t w = 0; w < g.vertices.size(); ++w)
        for (int e : g.vertices[w].edges) {
            if (e < 0 || e >= static_cast<int>(g.edges.size()))
                throw NclError("vertex references a nonexistent edge");
            if (g.edges[e].u < 0)
                g.edges[e].u = static_cast<int>(w);
            else if (g.edges[e].v < 0)
                g.edges[e].v = static_cast<int>(w);
            else
                throw NclError("edge incident to more than two vertex slots");
        }
}

}  // namespace

void validate_graph(const ConstraintGraph& g) {
    if (g.vertices.empty()) throw NclError("graph has no vertices");
    if (3 * g.vertices.size() != 2 * g.edges.size())
        throw NclError("graph is not 3-regular");
    std::vector<int> degree(g.edges.size(), 0);
    for (std::size_t w = 0; w < g.vertices.size(); ++w)
        for (int e : g.vertices[w].edges) {
            if (e < 0 || e >= static_cast<int>(g.edges.size()))
                throw NclError("vertex references a nonexistent edge");
            ++degree[e];
        }
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        if (degree[e] != 2) throw NclError("edge is not incident to exactly two slots");
        if (g.edges[e].u < 0 || g.edges[e].v < 0 || g.edges[e].u == g.edges[e].v)
            throw NclError("edge endpoints must be two distinct vertices");
    }
    // endpoint lists must agree with the incidences
    ConstraintGraph h = g;
    derive_endpoints(h);
    for (std::size_t e = 0; e < g.edges.size(); ++e)
        if (h.edges[e].u != g.edges[e].u || h.edges[e].v != g.edges[e].v)
            throw NclError("edge endpoints disagree with the vertex lists");
    auto check_target = [&](const EdgeTarget& t, const char* name) {
        if (t.edge < 0 || t.edge >= static_cast<int>(g.edges.size()))
            throw NclError(std::string(name) + " is not an edge of the graph");
        if (t.dir == EdgeDir::Reversing)
            throw NclError(std::string(name) + " needs a concrete target orientation");
    };
    check_target(g.ea, "ea");
    check_target(g.eb, "eb");
    if (g.ea.edge == g.eb.edge) throw NclError("ea and eb must be distinct edges");
}

LegalityReport is_legal_config(const ConstraintGraph& g, const Configuration& c) {
    if (c.orientation.size() != g.edges.size())
        throw std::invalid_argument("configuration size does not match edge count");
    for (std::size_t w = 0; w < g.vertices.size(); ++w)
        if (!vertex_legal(g, c, static_cast<int>(w)))
            return {false, static_cast<int>(w)};
    return {true, -1};
}

bool is_legal_move(const ConstraintGraph& g, const Configuration& c, int edge) {
    if (edge < 0 || edge >= static_cast<int>(g.edges.size()))
        throw std::invalid_argument("move reverses a nonexistent edge");
    Configuration nc = c;
    nc.orientation[edge] = reversed(nc.orientation[edge]);
    // only the reversed edge's endpoints can change legality
    return vertex_legal(g, nc, g.edges[edge].u) && vertex_legal(g, nc, g.edges[edge].v);
}

namespace {

void check_schedule_shape(const ConstraintGraph& g, const AsyncSchedule& s) {
    std::map<int, std::vector<std::pair<Scalar, Scalar>>> by_edge;
    for (const AsyncPhase& ph : s.events) {
        if (ph.edge < 0 || ph.edge >= static_cast<int>(g.edges.size()))
            throw MalformedSchedule("phase reverses a nonexistent edge");
        if (!(ph.start < ph.end))
            throw MalformedSchedule("phase must end strictly after it starts");
        by_edge[ph.edge].push_back({ph.start, ph.end});
    }
    for (auto& [e, phases] : by_edge) {
        std::sort(phases.begin(), phases.end());
        for (std::size_t i = 0; i + 1 < phases.size(); ++i)
            if (phases[i + 1].first < phases[i].second) {
                std::ostringstream os;
                os << "overlapping reversal phases of edge " << e;
                throw MalformedSchedule(os.str());
            }
    }
}

/// Configuration at time tau: an edge is Reversing while inside one of its
/// phases and otherwise carries its start orientation flipped once per
/// completed phase.
Configuration config_at(const Configuration& start, const AsyncSchedule& s,
                        const Scalar& tau) {
    Configuration c = start;
    for (const AsyncPhase& ph : s.events) {
        if (ph.start <= tau && tau < ph.end)
            c.orientation[ph.edge] = EdgeDir::Reversing;
    }
    for (const AsyncPhase& ph : s.events)
        if (ph.end <= tau && c.orientation[ph.edge] != EdgeDir::Reversing)
            c.orientation[ph.edge] = reversed(c.orientation[ph.edge]);
    return c;
}

}  // namespace

AsyncCheck check_async_schedule(const ConstraintGraph& g, const Configuration& start,
                                const AsyncSchedule& s) {
    validate_graph(g);
    check_schedule_shape(g, s);
    for (EdgeDir d : start.orientation)
        if (d == EdgeDir::Reversing)
            throw std::invalid_argument("start configuration must be concrete");
    AsyncCheck out;
    LegalityReport base = is_legal_config(g, start);
    if (!base.legal) {
        out.legal = false;
        out.violation_time = Scalar(0);
        out.violating_vertex = base.violating_vertex;
        return out;
    }
    std::vector<Scalar> boundaries;
    for (const AsyncPhase& ph : s.events) {
        boundaries.push_back(ph.start);
        boundaries.push_back(ph.end);
    }
    std::sort(boundaries.begin(), boundaries.end());
    boundaries.erase(std::unique(boundaries.begin(), boundaries.end()),
                     boundaries.end());
    for (const Scalar& tau : boundaries) {
        LegalityReport r = is_legal_config(g, config_at(start, s, tau));
        if (!r.legal) {
            out.legal = false;
            out.violation_time = tau;
            out.violating_vertex = r.violating_vertex;
            return out;
        }
    }
    out.legal = true;
    return out;
}

Configuration async_final_config(const Configuration& start, const AsyncSchedule& s) {
    Configuration c = start;
    for (const AsyncPhase& ph : s.events)
        c.orientation[ph.edge] = reversed(c.orientation[ph.edge]);
    return c;
}

std::vector<int> serialize_async(const ConstraintGraph& g, const Configuration& start,
                                 const AsyncSchedule& s) {
    AsyncCheck chk = check_async_schedule(g, start, s);
    if (!chk.legal) {
        std::ostringstream os;
        os << "schedule starves vertex " << chk.violating_vertex << " at t="
           << format_scalar(chk.violation_time);
        throw IllegalAsync(os.str());
    }
    std::vector<std::size_t> order(s.events.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return s.events[a].start < s.events[b].start;
    });
    std::vector<int> moves;
    Configuration cur = start;
    for (std::size_t i : order) {
        int e = s.events[i].edge;
        cur.orientation[e] = reversed(cur.orientation[e]);
        LegalityReport r = is_legal_config(g, cur);
        if (!r.legal) {
            std::ostringstream os;
            os << "serialized prefix illegal at vertex " << r.violating_vertex;
            throw IllegalAsync(os.str());
        }
        moves.push_back(e);
    }
    Configuration fin = async_final_config(start, s);
    if (cur.orientation != fin.orientation)
        throw IllegalAsync("serialized final configuration mismatch");
    return moves;
}

namespace {

/// Bitmask configuration encoding: bit e set means edge e points TowardV.
Configuration decode(const ConstraintGraph& g, std::uint32_t mask) {
    Configuration c;
    c.orientation.resize(g.edges.size());
    for (std::size_t e = 0; e < g.edges.size(); ++e)
        c.orientation[e] = (mask >> e) & 1u ? EdgeDir::TowardV : EdgeDir::TowardU;
    return c;
}

struct MaskChecker {
    const ConstraintGraph& g;
    /// Per vertex, per slot: edge index and the bit value meaning inward.
    std::vector<std::array<std::pair<int, unsigned>, 3>> slots;

    explicit MaskChecker(const ConstraintGraph& g_) : g(g_) {
        for (const NclVertex& vx : g.vertices) {
            std::array<std::pair<int, unsigned>, 3> sl;
            for (int i = 0; i < 3; ++i) {
                int e = vx.edges[i];
                int w = static_cast<int>(&vx - g.vertices.data());
                sl[i] = {e, g.edges[e].v == w ? 1u : 0u};
            }
            slots.push_back(sl);
        }
    }

    bool vertex_ok(std::uint32_t mask, int w) const {
        auto in = [&](int i) {
            auto [e, want] = slots[w][i];
            return ((mask >> e) & 1u) == want;
        };
        if (g.vertices[w].kind == NclVertexKind::And) return in(0) || (in(1) && in(2));
        return in(0) || in(1) || in(2);
    }

    bool legal(std::uint32_t mask) const {
        for (int w = 0; w < static_cast<int>(g.vertices.size()); ++w)
            if (!vertex_ok(mask, w)) return false;
        return true;
    }

    bool move_ok(std::uint32_t next, int edge) const {
        return vertex_ok(next, g.edges[edge].u) && vertex_ok(next, g.edges[edge].v);
    }
};

bool ee_reachable(const MaskChecker& mc, int ne, unsigned ea_bit, unsigned ea_want,
                  unsigned eb_bit, unsigned eb_want, const std::vector<int>& edge_order,
                  std::vector<std::uint8_t>* tag, std::uint32_t* accept) {
    const std::uint32_t count = 1u << ne;
    std::vector<std::uint8_t> local;
    std::vector<std::uint8_t>& t = tag ? *tag : local;
    t.assign(count, 0xFF);
    std::queue<std::uint32_t> q;
    // seed with every legal configuration orienting ea at its target
    for (std::uint32_t rest = 0; rest < (count >> 1); ++rest) {
        std::uint32_t low = rest & ((1u << ea_bit) - 1);
        std::uint32_t high = (rest >> ea_bit) << (ea_bit + 1);
        std::uint32_t mask = low | high | (ea_want << ea_bit);
        if (!mc.legal(mask)) continue;
        t[mask] = 0xFE;
        q.push(mask);
    }
    while (!q.empty()) {
        std::uint32_t cur = q.front();
        q.pop();
        if (((cur >> eb_bit) & 1u) == eb_want) {
            if (accept) *accept = cur;
            return true;
        }
        for (int e : edge_order) {
            std::uint32_t nxt = cur ^ (1u << e);
            if (t[nxt] != 0xFF) continue;
            if (!mc.move_ok(nxt, e)) continue;
            t[nxt] = static_cast<std::uint8_t>(e);
            q.push(nxt);
        }
    }
    return false;
}

}  // namespace

EeDecision ee_decide(const ConstraintGraph& g) {
    validate_graph(g);
    const int ne = static_cast<int>(g.edges.size());
    if (ne > 24) throw GraphTooLarge("edge count exceeds the 2^24 state budget");
    MaskChecker mc(g);
    unsigned ea_bit = static_cast<unsigned>(g.ea.edge);
    unsigned ea_want = g.ea.dir == EdgeDir::TowardV ? 1u : 0u;
    unsigned eb_bit = static_cast<unsigned>(g.eb.edge);
    unsigned eb_want = g.eb.dir == EdgeDir::TowardV ? 1u : 0u;

    EeDecision out;
    // the source model assumes no legal configuration satisfies both
    // targets at once; scan the 2^(E-2) candidates for violations
    for (std::uint32_t rest = 0; rest < (1u << (ne - 2)) && !out.restriction_violated;
         ++rest) {
        std::uint32_t mask = ea_want << ea_bit | eb_want << eb_bit;
        unsigned pos = 0;
        for (int e = 0; e < ne; ++e) {
            if (e == g.ea.edge || e == g.eb.edge) continue;
            mask |= ((rest >> pos) & 1u) << e;
            ++pos;
        }
        if (mc.legal(mask)) out.restriction_violated = true;
    }

    std::vector<int> order(ne);
    for (int e = 0; e < ne; ++e) order[e] = e;
    std::vector<std::uint8_t> tag;
    std::uint32_t accept = 0;
    out.reachable =
        ee_reachable(mc, ne, ea_bit, ea_want, eb_bit, eb_want, order, &tag, &accept);

    // second pass with a different expansion order as a self-check
    std::mt19937 rng(0x5eedu);
    std::shuffle(order.begin(), order.end(), rng);
    if (ee_reachable(mc, ne, ea_bit, ea_want, eb_bit, eb_want, order, nullptr,
                     nullptr) != out.reachable)
        throw std::logic_error("search verdict depends on expansion order");

    if (out.reachable) {
        std::uint32_t cur = accept;
        while (tag[cur] != 0xFE) {
            out.moves.push_back(tag[cur]);
            cur ^= 1u << tag[cur];
        }
        std::reverse(out.moves.begin(), out.moves.end());
        out.start = decode(g, cur);
    }
    return out;
}

ConstraintGraph fixture_three_parallel() {
    ConstraintGraph g;
    g.vertices.push_back({NclVertexKind::Or, {0, 1, 2}});
    g.vertices.push_back({NclVertexKind::Or, {0, 1, 2}});
    g.edges = {{0, 1}, {0, 1}, {0, 1}};
    g.ea = {0, EdgeDir::TowardU};
    g.eb = {2, EdgeDir::TowardV};
    return g;
}

ConstraintGraph random_constraint_graph(std::mt19937& rng, int vertex_count) {
    if (vertex_count <= 0 || vertex_count % 2 != 0)
        throw std::invalid_argument("vertex count must be even and positive");
    const int ne = 3 * vertex_count / 2;
    ConstraintGraph g;
    std::vector<int> half;
    for (int w = 0; w < vertex_count; ++w)
        for (int i = 0; i < 3; ++i) half.push_back(w);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::shuffle(half.begin(), half.end(), rng);
        bool ok = true;
        for (int e = 0; e < ne && ok; ++e)
            if (half[2 * e] == half[2 * e + 1]) ok = false;  // self-loop
        if (!ok) continue;
        g.vertices.assign(vertex_count, NclVertex{});
        g.edges.assign(ne, NclEdge{});
        std::vector<int> filled(vertex_count, 0);
        for (int e = 0; e < ne; ++e)
            for (int side = 0; side < 2; ++side) {
                int w = half[2 * e + side];
                g.vertices[w].edges[filled[w]++] = e;
            }
        for (NclVertex& vx : g.vertices)
            vx.kind = rng() % 2 ? NclVertexKind::And : NclVertexKind::Or;
        derive_endpoints(g);
        g.ea.edge = static_cast<int>(rng() % ne);
        do {
            g.eb.edge = static_cast<int>(rng() % ne);
        } while (g.eb.edge == g.ea.edge);
        g.ea.dir = rng() % 2 ? EdgeDir::TowardV : EdgeDir::TowardU;
        g.eb.dir = rng() % 2 ? EdgeDir::TowardV : EdgeDir::TowardU;
        validate_graph(g);
        return g;
    }
    throw NclError("failed to sample a loopless 3-regular pairing");
}

bool find_legal_config(const ConstraintGraph& g, Configuration& out) {
    validate_graph(g);
    const int ne = static_cast<int>(g.edges.size());
    if (ne > 24) throw GraphTooLarge("edge count exceeds the 2^24 state budget");
    MaskChecker mc(g);
    for (std::uint32_t mask = 0; mask < (1u << ne); ++mask)
        if (mc.legal(mask)) {
            out = decode(g, mask);
            return true;
        }
    return false;
}

AsyncSchedule random_async_schedule(std::mt19937& rng, const ConstraintGraph& g,
                                    const Configuration& start, int max_events) {
    if (!is_legal_config(g, start).legal)
        throw std::invalid_argument("start configuration is illegal");
    AsyncSchedule plain;
    Configuration cur = start;
    for (int m = 0; m < max_events; ++m) {
        // strongly legal reversals stay legal while the edge is mid-flip
        std::vector<int> candidates;
        for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
            Configuration mid = cur;
            mid.orientation[e] = EdgeDir::Reversing;
            if (!is_legal_config(g, mid).legal) continue;
            if (!is_legal_move(g, cur, e)) continue;
            candidates.push_back(e);
        }
        if (candidates.empty()) break;
        int e = candidates[rng() % candidates.size()];
        plain.events.push_back({e, Scalar(m), Scalar(m) + ratio(1, 2)});
        cur.orientation[e] = reversed(cur.orientation[e]);
    }
    // try to stretch phases into overlaps; keep the disjoint version when
    // the stretched one starves a vertex
    AsyncSchedule jittered = plain;
    for (AsyncPhase& ph : jittered.events)
        ph.end += ratio(static_cast<long>(rng() % 4), 4);
    try {
        if (check_async_schedule(g, start, jittered).legal) return jittered;
    } catch (const MalformedSchedule&) {
    }
    return plain;
}

// --- ncl v1 ---

namespace {

[[noreturn]] void badn(int line, const std::string& msg) {
    std::ostringstream os;
    os << "parse error (line " << line << "): " << msg;
    throw NclError(os.str());
}

std::string dir_token(EdgeDir d) { return d == EdgeDir::TowardU ? "u" : "v"; }

}  // namespace

NclFile parse_ncl(std::istream& in) {
    NclFile f;
    std::string line;
    int line_no = 0;
    bool header = false;
    struct RawVertex {
        NclVertexKind kind;
        std::array<int, 3> edges;
    };
    std::vector<RawVertex> raw;
    int max_edge = -1;
    auto edge_id = [&](const std::string& tok) {
        try {
            int e = std::stoi(tok);
            if (e < 0) badn(line_no, "edge ids must be nonnegative");
            max_edge = std::max(max_edge, e);
            return e;
        } catch (const std::invalid_argument&) {
            badn(line_no, "bad edge id '" + tok + "'");
        } catch (const std::out_of_range&) {
            badn(line_no, "bad edge id '" + tok + "'");
        }
    };
    struct RawTarget {
        int edge;
        std::string dir;
        int line;
    };
    std::vector<RawTarget> raw_targets;
    struct RawOrient {
        int edge;
        std::string dir;
        int line;
    };
    std::vector<RawOrient> raw_orients;
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
            if (t.size() != 2 || t[0] != "ncl" || t[1] != "v1")
                badn(line_no, "expected header 'ncl v1'");
            header = true;
        } else if (t[0] == "and" || t[0] == "or") {
            if (t.size() != 4) badn(line_no, "expected three edge ids");
            RawVertex v;
            v.kind = t[0] == "and" ? NclVertexKind::And : NclVertexKind::Or;
            for (int i = 0; i < 3; ++i) v.edges[i] = edge_id(t[1 + i]);
            raw.push_back(v);
        } else if (t[0] == "target") {
            if (t.size() != 3) badn(line_no, "expected 'target <edge> u|v'");
            raw_targets.push_back({edge_id(t[1]), t[2], line_no});
        } else if (t[0] == "orient") {
            if (t.size() != 3) badn(line_no, "expected 'orient <edge> u|v'");
            raw_orients.push_back({edge_id(t[1]), t[2], line_no});
        } else if (t[0] == "phase") {
            if (t.size() != 4) badn(line_no, "expected 'phase <edge> <start> <end>'");
            auto s = parse_scalar(t[2]), e = parse_scalar(t[3]);
            if (!s || !e) badn(line_no, "bad phase times");
            if (!(*s < *e)) badn(line_no, "phase must end strictly after it starts");
            f.schedule.events.push_back({edge_id(t[1]), *s, *e});
        } else {
            badn(line_no, "unknown directive '" + t[0] + "'");
        }
    }
    if (!header) badn(line_no, "missing header");
    if (raw.empty()) badn(line_no, "machine has no vertices");
    f.graph.vertices.reserve(raw.size());
    for (const RawVertex& v : raw) f.graph.vertices.push_back({v.kind, v.edges});
    f.graph.edges.assign(max_edge + 1, NclEdge{});
    try {
        derive_endpoints(f.graph);
    } catch (const NclError& e) {
        badn(line_no, e.what());
    }
    auto parse_dir = [&](const std::string& tok, int at) {
        if (tok != "u" && tok != "v") badn(at, "orientation must be 'u' or 'v'");
        return tok == "u" ? EdgeDir::TowardU : EdgeDir::TowardV;
    };
    if (raw_targets.size() != 2) badn(line_no, "expected exactly two target lines");
    f.graph.ea = {raw_targets[0].edge, parse_dir(raw_targets[0].dir, raw_targets[0].line)};
    f.graph.eb = {raw_targets[1].edge, parse_dir(raw_targets[1].dir, raw_targets[1].line)};
    try {
        validate_graph(f.graph);
    } catch (const NclError& e) {
        badn(line_no, e.what());
    }
    if (!raw_orients.empty()) {
        f.has_config = true;
        f.config.orientation.assign(f.graph.edges.size(), EdgeDir::Reversing);
        for (const RawOrient& o : raw_orients) {
            if (o.edge >= static_cast<int>(f.graph.edges.size()))
                badn(o.line, "orient references a nonexistent edge");
            f.config.orientation[o.edge] = parse_dir(o.dir, o.line);
        }
        for (std::size_t e = 0; e < f.config.orientation.size(); ++e)
            if (f.config.orientation[e] == EdgeDir::Reversing)
                badn(line_no, "start configuration does not orient every edge");
    }
    for (const AsyncPhase& ph : f.schedule.events)
        if (ph.edge >= static_cast<int>(f.graph.edges.size()))
            badn(line_no, "phase references a nonexistent edge");
    return f;
}

NclFile parse_ncl_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_ncl(in);
}

void serialize_ncl(const NclFile& f, std::ostream& out) {
    out << "ncl v1\n";
    for (const NclVertex& vx : f.graph.vertices) {
        out << (vx.kind == NclVertexKind::And ? "and" : "or");
        for (int e : vx.edges) out << " " << e;
        out << "\n";
    }
    out << "target " << f.graph.ea.edge << " "
        << dir_token(f.graph.ea.dir) << "\n";
    out << "target " << f.graph.eb.edge << " "
        << dir_token(f.graph.eb.dir) << "\n";
    if (f.has_config)
        for (std::size_t e = 0; e < f.config.orientation.size(); ++e)
            out << "orient " << e << " "
                << dir_token(f.config.orientation[e]) << "\n";
    for (const AsyncPhase& ph : f.schedule.events)
        out << "phase " << ph.edge << " " << format_scalar(ph.start) << " "
            << format_scalar(ph.end) << "\n";
}

std::string serialize_ncl(const NclFile& f) {
    std::ostringstream os;
    serialize_ncl(f, os);
    return os.str();
}

}  // namespace searchlight
