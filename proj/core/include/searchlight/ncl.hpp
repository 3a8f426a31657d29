#pragma once

#include "searchlight/scalar.hpp"

#include <array>
#include <iosfwd>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace searchlight {

/// Nondeterministic constraint logic on 3-regular multigraphs. Every edge
/// is oriented toward one of its two endpoints; AND vertices need their
/// output edge inward or both inputs inward, OR vertices need at least one
/// inward edge. Edge weights are omitted: the machines used here are the
/// unweighted special case.

enum class NclVertexKind { And, Or };

/// A vertex together with its three incident edge ids. For an AND vertex
/// edges[0] is the designated output and edges[1], edges[2] the inputs.
struct NclVertex {
    NclVertexKind kind = NclVertexKind::Or;
    std::array<int, 3> edges{-1, -1, -1};
};

/// Undirected edge between two distinct vertices. Parallel edges are
/// allowed; self-loops are not. u is the endpoint whose vertex line
/// mentions the edge first.
struct NclEdge {
    int u = -1;
    int v = -1;
};

enum class EdgeDir { TowardU, TowardV, Reversing };

inline EdgeDir reversed(EdgeDir d) {
    if (d == EdgeDir::Reversing)
        throw std::invalid_argument("cannot reverse an undefined orientation");
    return d == EdgeDir::TowardU ? EdgeDir::TowardV : EdgeDir::TowardU;
}

/// Distinguished edge with the orientation it must attain.
struct EdgeTarget {
    int edge = -1;
    EdgeDir dir = EdgeDir::TowardU;  // never Reversing
};

struct ConstraintGraph {
    std::vector<NclVertex> vertices;
    std::vector<NclEdge> edges;
    EdgeTarget ea, eb;  // ea.edge != eb.edge
};

/// Orientation of every edge. Reversing marks an edge mid-flip in an
/// asynchronous schedule: it is directed toward neither endpoint.
struct Configuration {
    std::vector<EdgeDir> orientation;
};

/// One reversal phase of an asynchronous schedule: edge starts turning at
/// `start` and settles, reversed, at `end` (end > start).
struct AsyncPhase {
    int edge = -1;
    Scalar start, end;
};

/// Finite set of reversal phases. Phases of distinct edges may overlap;
/// phases of one edge may touch but not overlap.
struct AsyncSchedule {
    std::vector<AsyncPhase> events;
};

class NclError : public std::runtime_error {
public:
    explicit NclError(const std::string& what) : std::runtime_error(what) {}
};

/// A schedule breaks the well-formedness rules (bad times, overlapping
/// phases of one edge) independent of any configuration.
class MalformedSchedule : public NclError {
public:
    using NclError::NclError;
};

/// serialize_async was handed a schedule that violates a vertex constraint
/// at some moment.
class IllegalAsync : public NclError {
public:
    using NclError::NclError;
};

/// Edge count exceeds the exhaustive decider's state-space budget.
class GraphTooLarge : public NclError {
public:
    using NclError::NclError;
};

/// Structural validation: three incident edges per vertex, two distinct
/// endpoints per edge, consistent incidences, ea != eb. Throws NclError on
/// violation.
void validate_graph(const ConstraintGraph& g);

struct LegalityReport {
    bool legal = false;
    int violating_vertex = -1;
};

/// Evaluates the AND/OR constraints. Reversing edges count as directed
/// toward neither endpoint.
LegalityReport is_legal_config(const ConstraintGraph& g, const Configuration& c);

/// True iff reversing the edge keeps the configuration legal. The edge
/// must have a concrete orientation.
bool is_legal_move(const ConstraintGraph& g, const Configuration& c, int edge);

struct AsyncCheck {
    bool legal = false;
    Scalar violation_time;      // first boundary where a constraint breaks
    int violating_vertex = -1;  // vertex starved at that boundary
};

/// Event-driven evaluation of an asynchronous schedule: between phase
/// boundaries the configuration is constant, so every vertex constraint is
/// checked exactly at each phase start and end. Throws MalformedSchedule
/// on overlapping phases of one edge or non-positive phase length.
AsyncCheck check_async_schedule(const ConstraintGraph& g, const Configuration& start,
                                const AsyncSchedule& s);

/// The configuration after every phase of the schedule has completed.
Configuration async_final_config(const Configuration& start, const AsyncSchedule& s);

/// Serializes a legal asynchronous schedule into an equivalent sequence of
/// instantaneous single-edge reversals, sorted by weakly increasing phase
/// start. Verifies that every prefix is legal and that the final
/// configuration matches the asynchronous one. Throws IllegalAsync when
/// the schedule fails check_async_schedule.
std::vector<int> serialize_async(const ConstraintGraph& g, const Configuration& start,
                                 const AsyncSchedule& s);

struct EeDecision {
    bool reachable = false;
    /// Some legal configuration with ea at its target, when one exists.
    Configuration start;
    /// Edge reversals leading from `start` to a legal configuration with
    /// eb at its target (empty when start already qualifies).
    std::vector<int> moves;
    /// Set when some legal configuration orients ea and eb at their
    /// targets simultaneously, which the source model assumes away.
    bool restriction_violated = false;
};

/// Exhaustive edge-to-edge decision: does some legal configuration with ea
/// at its target reach, through legal moves, one with eb at its target?
/// Breadth-first over all 2^|E| orientations; the search is run twice with
/// different expansion orders as a self-check. Throws GraphTooLarge beyond
/// 24 edges.
EeDecision ee_decide(const ConstraintGraph& g);

/// Smallest machine with parallel edges: two OR vertices joined by three
/// parallel edges 0, 1, 2; ea = edge 0 toward u, eb = edge 2 toward v.
ConstraintGraph fixture_three_parallel();

/// Random 3-regular multigraph via half-edge pairing (self-loops are
/// resampled away), random vertex kinds, random distinct targets.
/// vertex_count must be even and positive.
ConstraintGraph random_constraint_graph(std::mt19937& rng, int vertex_count);

/// First legal configuration in lexicographic order, if any.
bool find_legal_config(const ConstraintGraph& g, Configuration& out);

/// Random legal asynchronous schedule starting from `start`: a chain of
/// strongly legal reversals with randomly jittered, possibly overlapping
/// windows, validated with check_async_schedule before being returned.
AsyncSchedule random_async_schedule(std::mt19937& rng, const ConstraintGraph& g,
                                    const Configuration& start, int max_events);

// --- machine file format ("ncl v1") ---

/// Machine with optional start configuration and schedule, as stored on
/// disk. Vertex lines `and <out> <in1> <in2>` / `or <e> <e> <e>` define
/// the incidences, two `target <edge> u|v` lines give ea and eb, optional
/// `orient <edge> u|v` lines give the start configuration, and optional
/// `phase <edge> <start> <end>` lines give the schedule.
struct NclFile {
    ConstraintGraph graph;
    bool has_config = false;
    Configuration config;
    AsyncSchedule schedule;
};

NclFile parse_ncl(std::istream& in);
NclFile parse_ncl_file(const std::string& path);
void serialize_ncl(const NclFile& f, std::ostream& out);
std::string serialize_ncl(const NclFile& f);

}  // namespace searchlight
