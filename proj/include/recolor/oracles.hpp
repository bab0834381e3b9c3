#pragma once

#include <span>
#include <string>
#include <vector>

#include "recolor/coloring.hpp"
#include "recolor/instance.hpp"

namespace recolor {

struct OracleReport {
    Weight value = 0;
    std::string method;
    // Final coloring (two-color OPT, equitable upper bound) or the coloring
    // after the last request (fully dynamic brute force).
    std::vector<Color> coloring;
    // Colorings after each request, fully dynamic brute force only.
    std::vector<std::vector<Color>> path;
    // Minimum vertex cover only.
    std::vector<Vertex> cover;
};

// Minimum recoloring cost for the online two-color model: the cheapest proper
// coloring of the final graph with exactly B weight on each color. Any such
// coloring is also proper for every prefix, and the offline solution never
// needs more than one recoloring per vertex, so this is OPT. Throws
// InfeasibleInstance if the final graph is not bipartite or cannot be balanced,
// ScaleExceeded if the DP table would be too large.
OracleReport opt_2recoloring(const Instance& instance, std::span<const Request> requests);

// Exact fully dynamic OPT by shortest path over layers of colorings that hold
// exactly B on each color and split the current request. Limited to n <= 10
// and at most 30 requests, else ScaleExceeded.
OracleReport opt_fully_dynamic_bruteforce(const Instance& instance, std::span<const Request> requests);

// Exact minimum vertex cover, solved per connected component by branch and
// bound. Throws ScaleExceeded if some component needs more than `budget`.
OracleReport min_vertex_cover(int n, std::span<const Request> edges, int budget = 20);

// Completed phases of a phase-based run: OPT pays at least one per phase.
inline Weight phase_lower_bound(const CostLedger& ledger) { return ledger.phases_completed; }

// Cost of recoloring once, at time 0, to an equitable Delta-coloring of the
// final graph aligned with c0; 0 when c0 is already proper.
OracleReport delta_opt_upper(const Instance& instance, std::span<const Request> requests);

}  // namespace recolor
