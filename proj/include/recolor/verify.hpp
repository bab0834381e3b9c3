#pragma once

#include <span>
#include <string>
#include <vector>

#include "recolor/harness.hpp"

namespace recolor {

// Reference implementations that share no code with the algorithms; the
// acceptance criteria and the unit tests check against them.
namespace reference {

struct Components {
    int count = 0;
    std::vector<int> comp;
    // BFS side, 0 for the first vertex reached in each component.
    std::vector<std::uint8_t> side;
    std::vector<std::uint8_t> bipartite;  // per component
};
Components bfs_components(int n, std::span<const Request> edges);

// Minimum weighted Hamming distance from c0 over all orientation vectors of
// the final graph with exactly B on color 0; -1 if there is none.
Weight enumerate_opt2(const Instance& instance, std::span<const Request> requests);

// Follow-Greedy replay checking d_P(c) <= d_P(c_m) + (eps/4) w(P) for the
// request's component after every step before delegation.
struct DeviationAudit {
    int steps = 0;
    int violations = 0;
    bool delegated = false;
    Weight cost = 0;
};
DeviationAudit audit_follow_deviation(const Trace& trace, Rational eps);

}  // namespace reference

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
    double limit_seconds = 0;
};

struct SuiteOptions {
    // Fewer trials, for interactive use; the stated tolerances need the full run.
    bool quick = false;
    int workers = 0;  // 0: worker_count()
};

CriterionResult run_criterion(int id, const SuiteOptions& options);
std::vector<CriterionResult> run_acceptance(const SuiteOptions& options);
// Property sweeps over the core, rebalancing, oracle and determinism checks.
std::vector<CriterionResult> run_invariants(const SuiteOptions& options);
std::string format_result(const CriterionResult& r);

}  // namespace recolor
