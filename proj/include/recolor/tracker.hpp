#pragma once

#include <span>
#include <vector>

#include "recolor/types.hpp"

namespace recolor {

// Side A holds parity 0 relative to the root, side B parity 1.
struct ComponentRecord {
    Weight weight_a = 0;
    Weight weight_b = 0;
    std::int32_t size_a = 0;
    std::int32_t size_b = 0;
    Weight estimate = 0;
    bool odd = false;

    Weight weight() const { return weight_a + weight_b; }
    std::int32_t size() const { return size_a + size_b; }
};

struct Position {
    Vertex root = 0;
    std::uint8_t parity = 0;
};

struct MergeOutcome {
    enum class Kind { SameComponentBipartite, SameComponentOdd, Merged };
    Kind kind = Kind::Merged;
    Vertex survivor = 0;
    Vertex absorbed = 0;
    // True when the absorbed side labels were kept unchanged.
    bool orientation_match = false;
};

// Orientation First puts side A on color 0.
enum class Orientation : std::uint8_t { First, Second };

struct OrientationChoice {
    Orientation orientation = Orientation::First;
    Weight distance = 0;
};

class ComponentTracker {
public:
    ComponentTracker() = default;
    explicit ComponentTracker(std::vector<Weight> weights);

    int n() const { return static_cast<int>(parent_.size()); }
    void reset();

    Position find(Vertex v);
    bool is_root(Vertex v) const { return parent_[v] == v; }
    Weight weight(Vertex v) const { return weights_[v]; }
    const ComponentRecord& record(Vertex root) const { return record_[root]; }
    void set_estimate(Vertex root, Weight e) { record_[root].estimate = e; }

    // Heavier-by-weight root survives; on a tie the root of u survives.
    MergeOutcome merge(Vertex u, Vertex v);

    std::vector<Vertex> roots() const;
    std::vector<Vertex> members(Vertex root) const;
    template <class F>
    void for_each_member(Vertex root, F&& f) const {
        for (Vertex x = head_[root]; x >= 0; x = next_[x]) f(x);
    }

private:
    std::vector<Weight> weights_;
    std::vector<Vertex> parent_;
    std::vector<std::uint8_t> parity_;
    std::vector<ComponentRecord> record_;
    std::vector<Vertex> head_;
    std::vector<Vertex> tail_;
    std::vector<Vertex> next_;
    std::vector<Vertex> scratch_;
};

// Cheaper of the two proper colorings of a bipartite component relative to c0.
// Throws OddComponent.
OrientationChoice optimal_orientation(ComponentTracker& tracker, Vertex root, std::span<const Color> c0);

// Color that side-parity p receives under an orientation.
inline Color oriented_color(Orientation o, std::uint8_t parity) {
    return static_cast<Color>((o == Orientation::First ? 0 : 1) ^ parity);
}

}  // namespace recolor
