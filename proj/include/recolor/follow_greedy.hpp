#pragma once

#include <optional>

#include "recolor/coloring.hpp"
#include "recolor/fully_dynamic.hpp"
#include "recolor/instance.hpp"
#include "recolor/step.hpp"
#include "recolor/tracker.hpp"

namespace recolor {

// Online two-color recoloring that keeps every component close to its
// cheapest orientation relative to c0. Component estimates E(P) control when
// the orientation is recomputed (threshold 1+eps/4). When capacity blocks a
// move, all further requests go to GreedyRecoloring.
class FollowGreedy {
public:
    FollowGreedy(const Instance& instance, Rational eps, bool keep_log = true);

    // Throws InfeasibleInstance if the requests stop being bipartite.
    StepReport process(Vertex u, Vertex v);

    bool delegated() const { return greedy_.has_value(); }
    // Step at which delegation fired, 0 if it never did.
    std::int64_t delegation_step() const { return delegation_step_; }

    const ColoringState& coloring() const { return greedy_ ? greedy_->coloring() : state_; }
    const CostLedger& ledger() const { return greedy_ ? greedy_->ledger() : ledger_; }
    ComponentTracker& tracker() { return greedy_ ? greedy_->tracker() : tracker_; }
    const Instance& instance() const { return instance_; }

private:
    Branch follow(Vertex u, Vertex v);
    void delegate();

    Instance instance_;
    Rational eps_;
    ColoringState state_;
    ComponentTracker tracker_;
    CostLedger ledger_;
    std::optional<GreedyRecoloring> greedy_;
    std::int64_t t_ = 0;
    std::int64_t delegation_step_ = 0;
};

}  // namespace recolor
