#pragma once

#include <optional>
#include <span>
#include <vector>

#include "recolor/coloring.hpp"
#include "recolor/tracker.hpp"
#include "recolor/types.hpp"

namespace recolor {

struct SideWeights {
    Weight a = 0;
    Weight b = 0;
};

// a_on_first[i] says whether side A of component i goes to color 0.
struct Assignment {
    std::vector<std::uint8_t> a_on_first;
    Weight weight_on_first = 0;
};

struct FptasStats {
    std::size_t max_list = 0;
};

// Trimmed-list DP. Returns an assignment with target <= x <= (1+eps)*target,
// and is guaranteed to find one whenever some assignment hits target exactly.
std::optional<Assignment> rebalance_fptas(std::span<const SideWeights> components, Weight target, Rational eps,
                                          FptasStats* stats = nullptr);

// Reachability DP over exact weights on color 0.
std::optional<Assignment> rebalance_exact(std::span<const SideWeights> components, Weight target);

// Live components in root order with their side weights, taken at call time.
struct ComponentSnapshot {
    std::vector<Vertex> roots;
    std::vector<SideWeights> sides;
};

ComponentSnapshot snapshot_components(const ComponentTracker& tracker);

// Recolors every vertex to match the assignment, charging only changed
// vertices. With allow_mirror the color-swapped assignment is used instead
// when it is cheaper and still fits. Throws CapacityViolation if the result
// does not fit. Returns the cost charged.
Weight apply_assignment(ColoringState& state, ComponentTracker& tracker, const ComponentSnapshot& snapshot,
                        const Assignment& assignment, CostLedger& ledger, bool allow_mirror = false);

}  // namespace recolor
