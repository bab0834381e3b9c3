#include "recolor/oracles.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "recolor/delta.hpp"
#include "recolor/graph.hpp"

namespace recolor {

namespace {

constexpr Weight kInf = std::numeric_limits<Weight>::max() / 4;

}  // namespace

OracleReport opt_2recoloring(const Instance& instance, std::span<const Request> requests) {
    const int n = instance.n;
    const Adjacency g = build_adjacency(n, requests);
    std::vector<int> side(n, -1);
    struct Comp {
        std::vector<Vertex> members;
        Weight on0_first = 0;  // weight on color 0 when side 0 gets color 0
        Weight cost_first = 0;
        Weight cost_second = 0;
    };
    std::vector<Comp> comps;
    std::vector<Vertex> queue;
    for (Vertex s = 0; s < n; ++s) {
        if (side[s] >= 0) continue;
        Comp comp;
        side[s] = 0;
        queue.assign(1, s);
        for (std::size_t i = 0; i < queue.size(); ++i) {
            const Vertex x = queue[i];
            comp.members.push_back(x);
            for (Vertex y : g[x]) {
                if (side[y] < 0) {
                    side[y] = 1 - side[x];
                    queue.push_back(y);
                } else if (side[y] == side[x]) {
                    throw InfeasibleInstance("final graph is not bipartite");
                }
            }
        }
        for (Vertex x : comp.members) {
            const Weight w = instance.w[x];
            if (side[x] == 0) comp.on0_first += w;
            if (instance.c0[x] != side[x]) comp.cost_first += w;
            if (instance.c0[x] != 1 - side[x]) comp.cost_second += w;
        }
        comps.push_back(std::move(comp));
    }

    const Weight B = instance.B;
    const std::size_t width = static_cast<std::size_t>(B) + 1;
    if (static_cast<double>(comps.size()) * static_cast<double>(width) > 2e8)
        throw ScaleExceeded("two-color OPT table too large");
    std::vector<Weight> dp(width, kInf), next(width);
    dp[0] = 0;
    // choice[i][s] = 1 when component i uses its first orientation
    std::vector<std::vector<std::uint8_t>> choice(comps.size(), std::vector<std::uint8_t>(width, 0));
    for (std::size_t i = 0; i < comps.size(); ++i) {
        const Comp& c = comps[i];
        std::fill(next.begin(), next.end(), kInf);
        const Weight first_on0 = c.on0_first;
        Weight second_on0 = 0;
        for (Vertex x : c.members)
            if (side[x] == 1) second_on0 += instance.w[x];
        for (std::size_t s = 0; s < width; ++s) {
            if (dp[s] >= kInf) continue;
            const std::size_t a = s + static_cast<std::size_t>(first_on0);
            if (a < width && dp[s] + c.cost_first < next[a]) {
                next[a] = dp[s] + c.cost_first;
                choice[i][a] = 1;
            }
            const std::size_t b = s + static_cast<std::size_t>(second_on0);
            if (b < width && dp[s] + c.cost_second < next[b]) {
                next[b] = dp[s] + c.cost_second;
                choice[i][b] = 0;
            }
        }
        dp.swap(next);
    }
    if (dp[width - 1] >= kInf) throw InfeasibleInstance("no proper coloring puts exactly B on each color");

    OracleReport out;
    out.method = "component-dp";
    out.value = dp[width - 1];
    out.coloring.assign(n, 0);
    std::size_t s = width - 1;
    for (std::size_t i = comps.size(); i-- > 0;) {
        const Comp& c = comps[i];
        const bool first = choice[i][s];
        Weight on0 = 0;
        for (Vertex x : c.members) {
            out.coloring[x] = first ? side[x] : 1 - side[x];
            if (out.coloring[x] == 0) on0 += instance.w[x];
        }
        s -= static_cast<std::size_t>(on0);
    }
    return out;
}

OracleReport opt_fully_dynamic_bruteforce(const Instance& instance, std::span<const Request> requests) {
    const int n = instance.n;
    if (n > 10 || requests.size() > 30) throw ScaleExceeded("brute force limited to n <= 10 and 30 requests");
    const std::uint32_t full = 1u << n;
    auto weight0 = [&](std::uint32_t mask) {
        // bit v set means color 1
        Weight w = 0;
        for (int v = 0; v < n; ++v)
            if (!(mask >> v & 1)) w += instance.w[v];
        return w;
    };
    auto distance = [&](std::uint32_t a, std::uint32_t b) {
        Weight d = 0;
        for (std::uint32_t diff = a ^ b; diff; diff &= diff - 1) d += instance.w[std::countr_zero(diff)];
        return d;
    };
    std::vector<std::uint32_t> states;
    for (std::uint32_t m = 0; m < full; ++m)
        if (weight0(m) == instance.B) states.push_back(m);
    std::uint32_t start = 0;
    for (int v = 0; v < n; ++v)
        if (instance.c0[v] == 1) start |= 1u << v;

    const std::size_t S = states.size();
    std::vector<Weight> dist(S), next(S);
    std::vector<std::vector<std::int32_t>> back(requests.size(), std::vector<std::int32_t>(S, -1));
    auto splits = [&](std::uint32_t m, const Request& r) { return ((m >> r.u) & 1) != ((m >> r.v) & 1); };
    if (requests.empty()) {
        OracleReport out;
        out.method = "state-graph";
        out.value = 0;
        out.coloring = instance.c0;
        return out;
    }
    for (std::size_t j = 0; j < S; ++j)
        dist[j] = splits(states[j], requests[0]) ? distance(start, states[j]) : kInf;
    for (std::size_t t = 1; t < requests.size(); ++t) {
        for (std::size_t j = 0; j < S; ++j) {
            next[j] = kInf;
            if (!splits(states[j], requests[t])) continue;
            for (std::size_t i = 0; i < S; ++i) {
                if (dist[i] >= kInf) continue;
                const Weight c = dist[i] + distance(states[i], states[j]);
                if (c < next[j]) {
                    next[j] = c;
                    back[t][j] = static_cast<std::int32_t>(i);
                }
            }
        }
        dist.swap(next);
    }
    std::size_t best = 0;
    for (std::size_t j = 1; j < S; ++j)
        if (dist[j] < dist[best]) best = j;
    if (dist[best] >= kInf) throw InfeasibleInstance("no balanced coloring serves the requests");

    OracleReport out;
    out.method = "state-graph";
    out.value = dist[best];
    out.path.resize(requests.size());
    std::size_t j = best;
    for (std::size_t t = requests.size(); t-- > 0;) {
        std::vector<Color> c(n);
        for (int v = 0; v < n; ++v) c[v] = static_cast<Color>(states[j] >> v & 1);
        out.path[t] = std::move(c);
        if (t > 0) j = static_cast<std::size_t>(back[t][j]);
    }
    out.coloring = out.path.back();
    return out;
}

namespace {

// Branch and bound on one connected component given as a local edge list.
class CoverSearch {
public:
    CoverSearch(int n, std::vector<std::pair<int, int>> edges, int budget)
        : n_(n), edges_(std::move(edges)), budget_(budget), adj_(n), alive_(n, 1) {
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            adj_[edges_[e].first].push_back(edges_[e].second);
            adj_[edges_[e].second].push_back(edges_[e].first);
        }
    }

    std::vector<int> solve() {
        if (matching_bound() > budget_) throw ScaleExceeded("vertex cover exceeds the search budget");
        // Upper bound from the endpoints of a maximal matching.
        std::vector<std::uint8_t> taken(n_, 0);
        for (auto [a, b] : edges_)
            if (!taken[a] && !taken[b]) taken[a] = taken[b] = 1;
        for (int v = 0; v < n_; ++v)
            if (taken[v]) best_.push_back(v);
        std::vector<int> chosen;
        search(chosen);
        if (static_cast<int>(best_.size()) > budget_) throw ScaleExceeded("vertex cover exceeds the search budget");
        return best_;
    }

private:
    int degree(int v) const {
        int d = 0;
        for (int x : adj_[v]) d += alive_[x];
        return d;
    }

    int matching_bound() const {
        std::vector<std::uint8_t> used(n_, 0);
        int m = 0;
        for (auto [a, b] : edges_)
            if (alive_[a] && alive_[b] && !used[a] && !used[b]) {
                used[a] = used[b] = 1;
                ++m;
            }
        return m;
    }

    void search(std::vector<int>& chosen) {
        const std::size_t mark = chosen.size();
        std::vector<int> removed;
        auto take = [&](int v) {
            alive_[v] = 0;
            removed.push_back(v);
            chosen.push_back(v);
        };
        // A degree-one vertex can always defer to its neighbor.
        for (bool changed = true; changed;) {
            changed = false;
            for (int v = 0; v < n_; ++v) {
                if (!alive_[v] || degree(v) != 1) continue;
                for (int x : adj_[v])
                    if (alive_[x]) {
                        take(x);
                        break;
                    }
                changed = true;
            }
        }
        int pick = -1, pick_deg = 0;
        for (int v = 0; v < n_; ++v) {
            if (!alive_[v]) continue;
            const int d = degree(v);
            if (d > pick_deg) {
                pick_deg = d;
                pick = v;
            }
        }
        if (pick < 0) {
            if (chosen.size() < best_.size()) best_ = chosen;
        } else if (chosen.size() + static_cast<std::size_t>(matching_bound()) < best_.size()) {
            alive_[pick] = 0;
            chosen.push_back(pick);
            search(chosen);
            chosen.pop_back();
            std::vector<int> nbrs;
            for (int x : adj_[pick])
                if (alive_[x]) nbrs.push_back(x);
            if (chosen.size() + nbrs.size() < best_.size()) {
                for (int x : nbrs) {
                    alive_[x] = 0;
                    chosen.push_back(x);
                }
                search(chosen);
                for (int x : nbrs) alive_[x] = 1;
                chosen.resize(chosen.size() - nbrs.size());
            }
            alive_[pick] = 1;
        }
        for (int v : removed) alive_[v] = 1;
        chosen.resize(mark);
    }

    int n_;
    std::vector<std::pair<int, int>> edges_;
    int budget_;
    std::vector<std::vector<int>> adj_;
    std::vector<std::uint8_t> alive_;
    std::vector<int> best_;
};

}  // namespace

OracleReport min_vertex_cover(int n, std::span<const Request> edges, int budget) {
    const Adjacency g = build_adjacency(n, edges);
    std::vector<int> comp(n, -1);
    std::vector<int> local(n, -1);
    OracleReport out;
    out.method = "branch-and-bound";
    std::vector<Vertex> queue;
    for (Vertex s = 0; s < n; ++s) {
        if (comp[s] >= 0 || g[s].empty()) continue;
        queue.assign(1, s);
        comp[s] = s;
        for (std::size_t i = 0; i < queue.size(); ++i)
            for (Vertex y : g[queue[i]])
                if (comp[y] < 0) {
                    comp[y] = s;
                    queue.push_back(y);
                }
        for (std::size_t i = 0; i < queue.size(); ++i) local[queue[i]] = static_cast<int>(i);
        std::vector<std::pair<int, int>> local_edges;
        for (Vertex x : queue)
            for (Vertex y : g[x])
                if (x < y) local_edges.push_back({local[x], local[y]});
        CoverSearch search(static_cast<int>(queue.size()), std::move(local_edges), budget);
        for (int v : search.solve()) out.cover.push_back(queue[v]);
    }
    std::sort(out.cover.begin(), out.cover.end());
    out.value = static_cast<Weight>(out.cover.size());
    return out;
}

OracleReport delta_opt_upper(const Instance& instance, std::span<const Request> requests) {
    const Adjacency g = build_adjacency(instance.n, requests);
    OracleReport out;
    out.method = "equitable";
    // c0 has n / Delta vertices per color, so it is equitable whenever proper.
    if (is_proper(g, instance.c0)) {
        out.coloring = instance.c0;
        return out;
    }
    const std::vector<Color> classes = equitable_coloring(g, instance.k);
    out.coloring = align_classes(classes, instance.c0, instance.k);
    for (int v = 0; v < instance.n; ++v) out.value += out.coloring[v] != instance.c0[v];
    return out;
}

}  // namespace recolor
