#pragma once

#include <string_view>

#include "recolor/types.hpp"

namespace recolor {

enum class Branch : std::uint8_t {
    None,            // endpoints already differ inside one component or in the delta graph
    Merge,           // structural merge, no recoloring
    Flip,            // lighter component flipped
    Rebalance,       // component assignment recomputed and applied
    OddCycle,        // odd cycle closed, phase restarted
    Infeasible,      // no assignment found, phase restarted
    Recompute,       // estimate threshold crossed, component recolored to its optimum
    Delegate,        // handed over to the phase-based algorithm
    Recolor,         // single vertex recolored in the delta framework
    DeltaRebalance,  // no feasible color had room, full recoloring
};

std::string_view branch_name(Branch b);

struct StepReport {
    std::int64_t t = 0;
    Vertex u = 0;
    Vertex v = 0;
    Branch branch = Branch::None;
    Weight cost = 0;
    bool mono_at_arrival = false;
    bool phase_ended = false;
    bool delegated = false;
    // Delta framework only.
    bool new_edge = true;
    bool endpoint_recolored_before = false;
    Vertex recolored = -1;
};

}  // namespace recolor
