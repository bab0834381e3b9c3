#pragma once

#include <span>
#include <unordered_set>
#include <vector>

#include "recolor/coloring.hpp"
#include "recolor/graph.hpp"
#include "recolor/instance.hpp"
#include "recolor/step.hpp"

namespace recolor {

// Proper coloring with num_classes classes whose sizes differ by at most one.
// Needs max degree < num_classes, else throws DegreeViolation.
std::vector<Color> equitable_coloring(const Adjacency& g, int num_classes);

// The same with r + 1 classes for a graph of max degree at most r.
inline std::vector<Color> equitable_coloring_r(const Adjacency& g, int r) { return equitable_coloring(g, r + 1); }

// Relabels classes so the result agrees with `current` on as many vertices
// as a greedy max-overlap matching finds.
std::vector<Color> align_classes(std::span<const Color> classes, std::span<const Color> current, int k);

// One pass of the randomized rebalance: vertices in ascending order pick a
// uniform color among those no already-colored neighbor holds.
std::vector<Color> sample_feasible_coloring(const Adjacency& g, int delta, Rng& rng);

enum class Policy { Deterministic, Randomized };

// Delta-recoloring with degrees at most floor((1-eps)Delta) and capacity
// floor((1+eps)n/Delta) per color.
class DeltaRecoloring {
public:
    DeltaRecoloring(const Instance& instance, Policy policy, std::uint64_t seed, bool keep_log = true);

    StepReport process(Vertex u, Vertex v);

    const ColoringState& coloring() const { return state_; }
    const CostLedger& ledger() const { return ledger_; }
    const Adjacency& graph() const { return adj_; }
    int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
    int degree_limit() const { return degree_limit_; }
    bool in_cover(Vertex v) const { return in_cover_[v] != 0; }
    int cover_size() const { return cover_size_; }
    const std::vector<Request>& gm_edges() const { return gm_edges_; }
    std::vector<Color> feasible_colors(Vertex v) const;
    // Single recolorings between consecutive rebalances, one entry per completed phase.
    const std::vector<std::int64_t>& phase_recolorings() const { return phase_recolorings_; }
    std::int64_t current_phase_recolorings() const { return current_phase_; }
    int resamples() const { return resamples_; }

private:
    int& count(Vertex v, Color c) { return neighbor_colors_[static_cast<std::size_t>(v) * delta_ + c]; }
    int count(Vertex v, Color c) const { return neighbor_colors_[static_cast<std::size_t>(v) * delta_ + c]; }
    void set_color(Vertex v, Color c, Cause cause);
    void recolor_vertex(Vertex v);
    void det_recolor(Vertex v);
    void rand_recolor(Vertex v);
    void det_rebalance();
    void rand_rebalance();
    void install(const std::vector<Color>& colors);

    Instance instance_;
    Policy policy_;
    int delta_ = 0;
    int degree_limit_ = 0;
    Rng rng_;
    ColoringState state_;
    CostLedger ledger_;
    Adjacency adj_;
    std::unordered_set<std::uint64_t> edges_;
    std::vector<int> neighbor_colors_;
    std::vector<std::uint8_t> in_cover_;
    int cover_size_ = 0;
    std::vector<Request> gm_edges_;
    std::vector<std::uint8_t> touched_;
    std::vector<std::int64_t> phase_recolorings_;
    std::int64_t current_phase_ = 0;
    int resamples_ = 0;
    std::int64_t t_ = 0;
};

}  // namespace recolor
