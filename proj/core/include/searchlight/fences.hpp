#pragma once

#include "searchlight/aim.hpp"
#include "searchlight/polyhedron.hpp"

#include <map>
#include <vector>

namespace searchlight {

/// Open boundary segment with a rotating half-plane searchlight. The aim
/// direction lives in the plane orthogonal to `axis`, with coordinates in
/// other_axes(axis) order.
struct Guard {
    Segment3 segment;  // open; lies over a notch
    Axis axis;
    AimDirection initial_aim;
    int notch = -1;  // index into OrthoPolyhedron::notches
};

/// A maximal set of internal facets cut by one construction step. All
/// facets lie in the single vertical plane (plane_axis, plane).
struct Fence {
    std::vector<FacetId> facets;
    int step = 0;          // construction step: 1, 2, or 3
    int source_notch = -1; // generating notch; -1 for residual reflex edges
    int merged_into = -1;  // index of the absorbing Step-1 fence, or -1
    Axis plane_axis = Axis::X;
    int plane = 0;
    int guard = -1;  // owning guard (= notch index), -1 when unresolved
};

/// Box-shaped connected component of interior cells after cutting along
/// all fence facets.
struct Cuboid {
    CellBox box;
    std::vector<int> bounding_fences;  // effective (post-merge) fence ids
};

struct FencePlan {
    std::vector<Fence> fences;
    std::vector<Cuboid> cuboids;
    /// Vertical notches whose Step-2 ray was immediately blocked; they get
    /// no fence of their own and the residual-edge step covers the area.
    std::vector<int> fenceless_step2;
    /// Owner fence of every cut facet.
    std::map<FacetId, int> facet_fence;

    /// Fence id after resolving Step-3 merges.
    int effective_fence(int f) const {
        return fences[f].merged_into >= 0 ? fences[f].merged_into : f;
    }
};

enum class FenceErrorKind {
    ConvexInput,  // no notches: nothing to build
    NotABox,      // a partition component is not box-shaped (construction bug)
};

class FenceError : public std::runtime_error {
public:
    FenceError(FenceErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    FenceErrorKind kind() const { return kind_; }

private:
    FenceErrorKind kind_;
};

/// Runs the three cutting steps: vertical fences below/above every
/// horizontal notch, left-right fences through every vertical notch
/// (extended along the piece boundary first), then left-right fences from
/// the residual vertical reflex edges of the cut pieces. Fills
/// Notch::fence_direction and finishes with the cuboid partition.
/// Throws FenceError(ConvexInput) when the polyhedron has no notches.
FencePlan erect_fences(OrthoPolyhedron& p);

/// Connected components of interior cells with fence facets acting as
/// walls. Verifies every component is a combinatorial box (throws
/// FenceError(NotABox) otherwise) and fills bounding_fences.
std::vector<Cuboid> cuboid_partition(const OrthoPolyhedron& p, const FencePlan& plan);

/// One guard per notch: horizontal guards aim vertically along their fence
/// ray, vertical guards aim left-right into the interior.
std::vector<Guard> place_guards(const OrthoPolyhedron& p, const FencePlan& plan);

/// Checks that every fence lies inside the searchplane its guard
/// illuminates at the initial aim: coplanarity, correct half-plane side,
/// and a visibility witness on the guard for every facet.
struct FenceLemmaReport {
    struct Violation {
        int fence;
        FacetId facet;
        std::string reason;
    };
    bool ok = true;
    std::vector<Violation> violations;
};
FenceLemmaReport check_fence_lemma(const OrthoPolyhedron& p, const FencePlan& plan,
                                   const std::vector<Guard>& guards);

/// Checks that every cuboid is entirely visible from each guard whose
/// fence bounds it, by exhibiting a witness point on the guard whose hull
/// with the cuboid stays inside the solid.
struct CuboidLemmaReport {
    struct Entry {
        int cuboid;
        int fence;  // effective fence id
        bool found;
        Point3 witness;  // valid when found
    };
    bool ok = true;
    std::vector<Entry> entries;
};
CuboidLemmaReport check_cuboid_lemma(const OrthoPolyhedron& p, const FencePlan& plan,
                                     const std::vector<Guard>& guards);

}  // namespace searchlight
