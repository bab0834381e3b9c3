#pragma once

#include <span>
#include <vector>

#include "recolor/types.hpp"

namespace recolor {

enum class Cause : std::uint8_t { Recolor, Rebalance };

struct RecolorEvent {
    std::int64_t step = 0;
    Vertex v = 0;
    Color from = 0;
    Color to = 0;
    Weight weight = 0;
    Cause cause = Cause::Recolor;
};

struct CostLedger {
    Weight total_cost = 0;
    std::int64_t recolor_events = 0;
    std::int64_t rebalance_calls = 0;
    // Vertices moved by rebalances; recolor_events - rebalance_moves are single recolors.
    std::int64_t rebalance_moves = 0;
    std::int64_t phases_started = 0;
    std::int64_t phases_completed = 0;
    std::int64_t step = 0;
    bool keep_log = true;
    std::vector<RecolorEvent> log;

    void charge(Vertex v, Color from, Color to, Weight w, Cause cause);
};

enum class RecolorMode { Checked, Unchecked };

class ColoringState {
public:
    ColoringState() = default;
    ColoringState(std::vector<Color> colors, std::vector<Weight> weights, std::vector<Weight> capacity);

    int n() const { return static_cast<int>(colors_.size()); }
    int k() const { return static_cast<int>(capacity_.size()); }
    Color color(Vertex v) const { return colors_[v]; }
    Weight weight(Vertex v) const { return weights_[v]; }
    Weight load(Color c) const { return load_[c]; }
    Weight capacity(Color c) const { return capacity_[c]; }
    Weight residual(Color c) const { return capacity_[c] - load_[c]; }
    std::span<const Color> colors() const { return colors_; }
    std::span<const Weight> weights() const { return weights_; }

    // No-op when v already has color c. Checked mode throws CapacityViolation
    // before mutating if the target color cannot take w(v).
    void recolor(Vertex v, Color c, CostLedger& ledger, RecolorMode mode = RecolorMode::Checked,
                 Cause cause = Cause::Recolor);

    // Loads recounted from scratch agree with the incremental bookkeeping.
    bool reconciles() const;
    // Throws CapacityViolation if any residual is negative.
    void check_capacity() const;

private:
    std::vector<Color> colors_;
    std::vector<Weight> weights_;
    std::vector<Weight> capacity_;
    std::vector<Weight> load_;
};

}  // namespace recolor
