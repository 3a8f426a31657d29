#pragma once

#include "searchlight/schedule.hpp"

#include <set>
#include <string>
#include <vector>

namespace searchlight {

/// Snapshot of the contamination-tracking state machine. Interior cells
/// are clear or contaminated; lit internal facets act as barriers against
/// contamination spreading.
struct ContaminationState {
    std::vector<char> contaminated;  // per interior cell, grid cell order
    std::set<FacetId> lit;           // internal facets currently illuminated
    std::vector<AimDirection> aims;  // per guard, concrete after resolution

    long contaminated_count() const;
    bool all_clear() const { return contaminated_count() == 0; }
};

struct Verdict {
    enum class Outcome { Searched, Failed };
    Outcome outcome = Outcome::Failed;
    std::string diagnostic;            // reason when Failed
    std::array<int, 3> witness{};      // a contaminated cell when Failed
    std::vector<std::string> trace;    // one digest line per applied step
};

/// Ball that must be cleared; resolved to the interior cells it touches.
struct TargetRegion {
    Point3 center;
    Scalar radius;
};

class SimulationError : public std::runtime_error {
public:
    explicit SimulationError(const std::string& what) : std::runtime_error(what) {}
};

/// A macro state uses an aim the conservative simulator cannot represent
/// (non-axis-aligned directions other than symbolic arc endpoints).
class UnsupportedSchedule : public SimulationError {
public:
    using SimulationError::SimulationError;
};

/// A facet separating a sweep region from the rest of the interior is not
/// illuminated by a stationary guard.
class LeakyBoundary : public SimulationError {
public:
    using SimulationError::SimulationError;
};

/// No visibility witness on the sweeping guard for a region box.
class NotVisible : public SimulationError {
public:
    using SimulationError::SimulationError;
};

class RegionOutside : public SimulationError {
public:
    using SimulationError::SimulationError;
};

/// All cells contaminated; lit facets computed from the initial aims.
ContaminationState init_state(const OrthoPolyhedron& p, const std::vector<Guard>& guards,
                              const std::vector<AimDirection>& aims);

/// Step transitions. Each returns the successor state or throws a
/// SimulationError naming the violated precondition.
ContaminationState apply_move(const OrthoPolyhedron& p, const std::vector<Guard>& guards,
                              const ContaminationState& s, const MacroStep& step);
ContaminationState apply_sweep(const OrthoPolyhedron& p, const std::vector<Guard>& guards,
                               const ContaminationState& s, const MacroStep& step);
ContaminationState apply_sweep_parallel(const OrthoPolyhedron& p,
                                        const std::vector<Guard>& guards,
                                        const ContaminationState& s, const MacroStep& step);

/// Folds init_state through the schedule's steps. SEARCHED iff every
/// interior cell is clear at the end; step precondition violations become
/// FAILED verdicts with the diagnostic.
Verdict verify_schedule(const OrthoPolyhedron& p, const std::vector<Guard>& guards,
                        const MacroSchedule& m);

/// True when every interior cell has a visibility witness on some guard;
/// lists the cells where the witness search failed (conservative: a listed
/// cell may still be visible from a non-sampled guard point).
struct ViabilityReport {
    bool viable = false;
    std::vector<std::array<int, 3>> uncovered;
};
ViabilityReport check_viable(const OrthoPolyhedron& p, const std::vector<Guard>& guards);

/// True iff every interior cell intersecting the closed ball is clear.
/// Throws RegionOutside when the ball is not contained in the solid.
bool is_region_clear(const OrthoPolyhedron& p, const ContaminationState& s,
                     const TargetRegion& region);

/// Fine-grained oracle: subdivides every cell k times per axis, replays
/// the lowered schedule at macro events plus k intermediate angles per
/// sweep, computing lit subcells exactly and flooding intruder
/// reachability. Throws TooLarge beyond the desk-scale budget.
class TooLarge : public SimulationError {
public:
    using SimulationError::SimulationError;
};
Verdict brute_force_verify(const OrthoPolyhedron& p, const std::vector<Guard>& guards,
                           const Schedule& lowered, int refinement);

}  // namespace searchlight
