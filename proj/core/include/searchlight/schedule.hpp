#pragma once

#include "searchlight/exhaustive.hpp"

#include <iosfwd>
#include <stdexcept>
#include <vector>

namespace searchlight {

/// One discrete step of a macro schedule. A sweep carries the region it is
/// responsible for clearing (empty region hint = the whole interior).
struct MacroStep {
    enum class Kind { Move, Sweep, SweepParallel, Hold };
    Kind kind = Kind::Hold;
    int guard = -1;            // Move / Sweep
    std::vector<int> guards;   // SweepParallel, pairwise distinct
    AimDirection from, to;
    std::vector<CellBox> region;                // Sweep
    std::vector<std::vector<CellBox>> regions;  // SweepParallel, per guard
    Scalar hold_seconds;                        // Hold

    static MacroStep move(int guard, const AimDirection& to);
    static MacroStep sweep(int guard, const AimDirection& from, const AimDirection& to,
                           std::vector<CellBox> region = {});
    static MacroStep sweep_parallel(std::vector<int> guards, const AimDirection& from,
                                    const AimDirection& to,
                                    std::vector<std::vector<CellBox>> regions = {});
    static MacroStep hold(const Scalar& seconds);
};

struct MacroSchedule {
    std::vector<AimDirection> initial_aims;  // one per guard
    std::vector<MacroStep> steps;
};

/// One constant-velocity rotation of a single guard: starting at `start`
/// seconds aimed at `from`, turning to `to` in the given sense through
/// `extent` radians at the maximum speed of 2*pi rad/s. The sense is in
/// the rotation plane's raw (u, v) coordinates, independent of the guard's
/// axis.
struct SchedulePiece {
    Duration start;
    Duration extent;
    Vec2 from, to;
    bool ccw = true;
};

struct GuardTimeline {
    Vec2 initial;
    std::vector<SchedulePiece> pieces;
};

/// Lowered continuous schedule: per-guard piecewise-linear angle functions
/// over [0, T]. Guards are stationary between their pieces.
struct Schedule {
    std::vector<GuardTimeline> guards;
    Duration total;
};

enum class ScheduleErrorKind {
    NotViable,           // single-guard planner: some cell has no visibility witness
    PrerequisiteFailed,  // sequential planner: a fence/cuboid lemma check failed
    BlindEndpoint,       // lowering: a rotation endpoint is a blind direction
};

class ScheduleError : public std::runtime_error {
public:
    ScheduleError(ScheduleErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ScheduleErrorKind kind() const { return kind_; }

private:
    ScheduleErrorKind kind_;
};

/// One sweep from leftmost to rightmost with the single guard; rejects
/// instances where some interior cell is invisible to the guard.
MacroSchedule plan_single_guard(const OrthoPolyhedron& p, const Guard& guard);

/// For each fence-owning guard in construction order: sweep leftmost to
/// rightmost clearing the cuboids its fence bounds, then move back to the
/// fence aim. All other guards hold their fence aims. Requires the fence
/// and cuboid lemma checks to pass.
MacroSchedule plan_sequential(const OrthoPolyhedron& p, const FencePlan& plan,
                              const std::vector<Guard>& guards);

/// Doubled guard set: one stationary copy per notch holding the fence aim
/// plus one sweeping copy starting at leftmost; a single parallel sweep to
/// rightmost clears everything in 0.75 seconds.
struct ParallelPlan {
    /// Guards 0..r-1 are the stationary copies (fence aims), r..2r-1 the
    /// sweepers (same segments).
    std::vector<Guard> guards;
    MacroSchedule schedule;
};
ParallelPlan plan_parallel(const OrthoPolyhedron& p, const FencePlan& plan,
                           const std::vector<Guard>& guards);

/// Lowers a macro schedule to continuous angle functions at maximum
/// angular speed. Moves rotate backward (clockwise in the guard frame)
/// along the arc, parallel sweeps overlap, holds advance time only.
Schedule lower(const OrthoPolyhedron& p, const std::vector<Guard>& guards,
               const MacroSchedule& m);

// --- schedule file format ("sched v1") ---

/// Macro schedule with optional lowered timeline, as stored on disk.
struct ScheduleFile {
    int guard_count = 0;
    MacroSchedule macro;
    bool has_lowered = false;
    Schedule lowered;
};

ScheduleFile parse_sched(std::istream& in);
ScheduleFile parse_sched_file(const std::string& path);
void serialize_sched(const ScheduleFile& f, std::ostream& out);
std::string serialize_sched(const ScheduleFile& f);

}  // namespace searchlight
