#include "recolor/rebalance2.hpp"

#include <algorithm>

namespace recolor {

namespace {

struct Entry {
    Weight x;
    std::int32_t parent;  // index into the previous level
    std::uint8_t a_on_first;
};

Assignment backtrack(const std::vector<std::vector<Entry>>& levels, std::size_t index) {
    const std::size_t n = levels.size() - 1;
    Assignment out;
    out.a_on_first.assign(n, 0);
    out.weight_on_first = levels[n][index].x;
    for (std::size_t i = n; i >= 1; --i) {
        const Entry& e = levels[i][index];
        out.a_on_first[i - 1] = e.a_on_first;
        index = static_cast<std::size_t>(e.parent);
    }
    return out;
}

}  // namespace

std::optional<Assignment> rebalance_fptas(std::span<const SideWeights> components, Weight target, Rational eps,
                                          FptasStats* stats) {
    const std::size_t n = components.size();
    const __int128 p = eps.num;
    const __int128 q = eps.den;
    // x survives trimming only if x * (1 + eps/2n) < next kept value.
    const __int128 trim_lhs = 2 * static_cast<__int128>(n) * q + p;
    const __int128 trim_rhs = 2 * static_cast<__int128>(n) * q;
    const __int128 upper = (q + p) * target;  // compare against x * q

    std::vector<std::vector<Entry>> levels(n + 1);
    levels[0].push_back(Entry{0, -1, 0});
    std::vector<Entry> xs, ys, merged;
    for (std::size_t i = 1; i <= n; ++i) {
        const auto& prev = levels[i - 1];
        const SideWeights& comp = components[i - 1];
        xs.clear();
        ys.clear();
        for (std::size_t j = 0; j < prev.size(); ++j) {
            xs.push_back(Entry{prev[j].x + comp.a, static_cast<std::int32_t>(j), 1});
            ys.push_back(Entry{prev[j].x + comp.b, static_cast<std::int32_t>(j), 0});
        }
        merged.clear();
        std::merge(xs.begin(), xs.end(), ys.begin(), ys.end(), std::back_inserter(merged),
                   [](const Entry& l, const Entry& r) { return l.x < r.x; });

        auto& cur = levels[i];
        if (i == 1) {
            cur = merged;
        } else {
            std::vector<std::uint8_t> keep(merged.size(), 0);
            if (!merged.empty()) {
                keep.back() = 1;
                Weight kept = merged.back().x;
                for (std::size_t j = merged.size() - 1; j-- > 0;) {
                    const Weight x = merged[j].x;
                    if (static_cast<__int128>(x) * trim_lhs >= static_cast<__int128>(kept) * trim_rhs) continue;
                    keep[j] = 1;
                    kept = x;
                }
            }
            for (std::size_t j = 0; j < merged.size(); ++j)
                if (keep[j]) cur.push_back(merged[j]);
        }
        while (!cur.empty() && static_cast<__int128>(cur.back().x) * q > upper) cur.pop_back();
        if (stats) stats->max_list = std::max(stats->max_list, cur.size());
        if (cur.empty()) return std::nullopt;
    }

    const auto& last = levels[n];
    for (std::size_t j = 0; j < last.size(); ++j)
        if (last[j].x >= target) return backtrack(levels, j);
    return std::nullopt;
}

std::optional<Assignment> rebalance_exact(std::span<const SideWeights> components, Weight target) {
    if (target < 0) return std::nullopt;
    const std::size_t n = components.size();
    const auto width = static_cast<std::size_t>(target) + 1;
    // choice[i][s]: 0 unreachable, 1 side A on color 0, 2 side B on color 0
    std::vector<std::vector<std::uint8_t>> choice(n + 1, std::vector<std::uint8_t>(width, 0));
    choice[0][0] = 1;
    for (std::size_t i = 1; i <= n; ++i) {
        const SideWeights& comp = components[i - 1];
        for (std::size_t s = 0; s < width; ++s) {
            if (!choice[i - 1][s]) continue;
            if (s + comp.a < width && !choice[i][s + comp.a]) choice[i][s + comp.a] = 1;
            if (s + comp.b < width && !choice[i][s + comp.b]) choice[i][s + comp.b] = 2;
        }
    }
    if (!choice[n][width - 1]) return std::nullopt;
    Assignment out;
    out.a_on_first.assign(n, 0);
    out.weight_on_first = target;
    std::size_t s = width - 1;
    for (std::size_t i = n; i >= 1; --i) {
        const bool a_first = choice[i][s] == 1;
        out.a_on_first[i - 1] = a_first ? 1 : 0;
        s -= static_cast<std::size_t>(a_first ? components[i - 1].a : components[i - 1].b);
    }
    return out;
}

ComponentSnapshot snapshot_components(const ComponentTracker& tracker) {
    ComponentSnapshot snap;
    snap.roots = tracker.roots();
    snap.sides.reserve(snap.roots.size());
    for (Vertex r : snap.roots) {
        const ComponentRecord& rec = tracker.record(r);
        snap.sides.push_back(SideWeights{rec.weight_a, rec.weight_b});
    }
    return snap;
}

Weight apply_assignment(ColoringState& state, ComponentTracker& tracker, const ComponentSnapshot& snapshot,
                        const Assignment& assignment, CostLedger& ledger, bool allow_mirror) {
    const int n = state.n();
    std::vector<Color> target(static_cast<std::size_t>(n), -1);
    Weight direct_cost = 0;
    Weight covered = 0;
    for (std::size_t i = 0; i < snapshot.roots.size(); ++i) {
        const Vertex root = snapshot.roots[i];
        const Orientation o = assignment.a_on_first[i] ? Orientation::First : Orientation::Second;
        tracker.for_each_member(root, [&](Vertex x) {
            const Color c = oriented_color(o, tracker.find(x).parity);
            target[x] = c;
            covered += state.weight(x);
            if (c != state.color(x)) direct_cost += state.weight(x);
        });
    }

    bool mirror = false;
    if (allow_mirror) {
        Weight total = 0;
        for (Vertex v = 0; v < n; ++v) total += state.weight(v);
        const Weight x = assignment.weight_on_first;
        const bool fits = total - x <= state.capacity(0) && x <= state.capacity(1);
        mirror = covered == total && fits && total - direct_cost < direct_cost;
    }

    const Weight before = ledger.total_cost;
    for (Vertex v = 0; v < n; ++v) {
        if (target[v] < 0) continue;
        state.recolor(v, mirror ? 1 - target[v] : target[v], ledger, RecolorMode::Unchecked, Cause::Rebalance);
    }
    state.check_capacity();
    return ledger.total_cost - before;
}

}  // namespace recolor
