#pragma once

#include "recolor/coloring.hpp"
#include "recolor/instance.hpp"
#include "recolor/step.hpp"
#include "recolor/tracker.hpp"

namespace recolor {

struct GreedyOptions {
    // Reject eps < 8/n at construction.
    bool enforce_eps_floor = true;
    bool keep_log = true;
};

// Phase-based recoloring for the fully dynamic two-color model. Each color
// has capacity floor((1+eps)W); phases start from singleton components and
// end when an odd cycle closes or no component assignment fits.
class GreedyRecoloring {
public:
    GreedyRecoloring(const Instance& instance, Rational eps, GreedyOptions options = {});

    // Takes over a live coloring and its components as the first phase, then
    // rebalances unless every component is properly colored and both loads
    // are at most floor((1+eps/2)W). Throws InfeasibleInstance if no
    // assignment exists.
    static GreedyRecoloring adopt(ColoringState state, ComponentTracker tracker, CostLedger ledger,
                                  Weight phase_weight, Rational eps);

    StepReport process(Vertex u, Vertex v);

    const ColoringState& coloring() const { return state_; }
    const CostLedger& ledger() const { return ledger_; }
    ComponentTracker& tracker() { return tracker_; }
    Weight phase_weight() const { return W_; }
    Rational eps() const { return eps_; }

private:
    GreedyRecoloring(ColoringState state, ComponentTracker tracker, CostLedger ledger, Weight phase_weight,
                     Rational eps);

    void start_phase();
    // Runs the assignment DP over the current components and applies the
    // result, or keeps the coloring when it is already proper per component
    // and within floor((1+eps/2)W). Returns false if no assignment fits.
    bool rebalance();
    bool components_properly_colored();
    Branch dispatch(Vertex u, Vertex v, bool may_restart);
    Branch restart(Vertex u, Vertex v, Branch cause, bool may_restart);

    ColoringState state_;
    ComponentTracker tracker_;
    CostLedger ledger_;
    Weight W_ = 0;
    Rational eps_;
    Weight keep_limit_ = 0;
    std::int64_t t_ = 0;
};

}  // namespace recolor
