// Equitable coloring by incremental insertion: edges are added vertex by
// vertex and every conflict is repaired by shifting witnesses between color
// classes along accessibility paths.
#include <algorithm>

#include "recolor/delta.hpp"

namespace recolor {

namespace {

class Builder {
public:
    Builder(int n, int k) : n_(n), k_(k), adj_(n), color_(n), pos_(n), nb_(static_cast<std::size_t>(n) * k, 0),
                            movable_(static_cast<std::size_t>(k) * k, 0), members_(k) {
        for (int v = 0; v < n; ++v) {
            color_[v] = v % k;
            pos_[v] = static_cast<int>(members_[v % k].size());
            members_[v % k].push_back(v);
        }
        // Every vertex is movable everywhere while the graph is empty.
        const int s = n / k;
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b)
                if (a != b) H(a, b) = s;
    }

    void add_edge(int u, int v) {
        adj_[u].push_back(v);
        adj_[v].push_back(u);
        bump(u, color_[v]);
        bump(v, color_[u]);
    }

    // Makes u proper again after its edges were inserted.
    void repair(int u) {
        const int x = color_[u];
        if (N(u, x) == 0) return;
        int y = 0;
        while (N(u, y) != 0) ++y;
        change_color(u, x, y);
        std::vector<std::uint8_t> excluded(k_, 0);
        procedure(x, y, excluded, 0);
    }

    const std::vector<int>& colors() const { return color_; }

private:
    int& N(int v, int c) { return nb_[static_cast<std::size_t>(v) * k_ + c]; }
    int& H(int a, int b) { return movable_[static_cast<std::size_t>(a) * k_ + b]; }

    void bump(int v, int c) {
        if (N(v, c) == 0 && color_[v] != c) --H(color_[v], c);
        ++N(v, c);
    }

    void change_color(int u, int x, int y) {
        for (int w : adj_[u]) {
            const int fw = color_[w];
            if (--N(w, x) == 0 && fw != x) ++H(fw, x);
            if (N(w, y)++ == 0 && fw != y) --H(fw, y);
        }
        for (int c = 0; c < k_; ++c) {
            if (N(u, c) != 0) continue;
            if (c != x) --H(x, c);
            if (c != y) ++H(y, c);
        }
        auto& from = members_[x];
        const int last = from.back();
        from[pos_[u]] = last;
        pos_[last] = pos_[u];
        from.pop_back();
        pos_[u] = static_cast<int>(members_[y].size());
        members_[y].push_back(u);
        color_[u] = y;
    }

    // Moves one vertex along each consecutive pair of classes in path.
    void shift(const std::vector<int>& path, int avoid) {
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            const int from = path[i];
            const int to = path[i + 1];
            int pick = -1;
            for (int x : members_[from])
                if (x != avoid && N(x, to) == 0) {
                    pick = x;
                    break;
                }
            if (pick < 0) throw InvariantError("equitable coloring: no witness along accessibility path");
            change_color(pick, from, to);
        }
    }

    // Classes from which `target` is reachable over movable arcs inside the
    // allowed set; parent[c] is the next class on a path to target.
    void reach_backward(int target, const std::vector<std::uint8_t>& allowed, std::vector<int>& parent,
                        std::vector<int>& order) {
        parent.assign(k_, -2);
        order.clear();
        parent[target] = -1;
        order.push_back(target);
        for (std::size_t i = 0; i < order.size(); ++i) {
            const int pop = order[i];
            for (int c = 0; c < k_; ++c)
                if (allowed[c] && parent[c] == -2 && H(c, pop) > 0) {
                    parent[c] = pop;
                    order.push_back(c);
                }
        }
    }

    static std::vector<int> path_to_root(int from, const std::vector<int>& parent) {
        std::vector<int> path{from};
        while (parent[path.back()] >= 0) path.push_back(parent[path.back()]);
        return path;
    }

    // Class vminus is one short and vplus one over; classes marked excluded
    // are already balanced and stay untouched.
    void procedure(int vminus, int vplus, std::vector<std::uint8_t> excluded, int depth) {
        if (vminus == vplus) return;
        if (depth > 4 * k_ + 8) throw InvariantError("equitable coloring: repair did not terminate");
        std::vector<std::uint8_t> active(k_);
        for (int c = 0; c < k_; ++c) active[c] = !excluded[c];

        std::vector<int> parent, order;
        reach_backward(vminus, active, parent, order);
        std::vector<std::uint8_t> in_a(k_, 0);
        for (int c : order) in_a[c] = 1;
        if (in_a[vplus]) {
            shift(path_to_root(vplus, parent), -1);
            return;
        }

        int b = 0;
        for (int c = 0; c < k_; ++c)
            if (active[c] && !in_a[c]) ++b;

        // Case I: a vertex z of some class W moves to another accessible class
        // X with a path to vminus that avoids W, and a neighbor y outside the
        // accessible classes whose only neighbor in W is z takes its place.
        std::vector<int> scanned;
        std::vector<int> sub_parent, sub_order;
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const int w_class = *it;
            std::vector<std::uint8_t> allowed = in_a;
            allowed[w_class] = 0;
            if (w_class != vminus) reach_backward(vminus, allowed, sub_parent, sub_order);
            const std::vector<int> snapshot = members_[w_class];
            for (int z : snapshot) {
                int target = -1;
                if (w_class != vminus)
                    for (int c : sub_order)
                        if (N(z, c) == 0) {
                            target = c;
                            break;
                        }
                if (target < 0) continue;
                int solo = -1;
                for (int y : adj_[z]) {
                    const int fy = color_[y];
                    if (active[fy] && !in_a[fy] && N(y, w_class) == 1) {
                        solo = y;
                        break;
                    }
                }
                if (solo < 0) continue;
                const int x_prime = color_[solo];
                change_color(z, w_class, target);
                shift(path_to_root(target, sub_parent), -1);
                change_color(solo, x_prime, w_class);
                std::vector<std::uint8_t> next_excluded = excluded;
                for (int c = 0; c < k_; ++c)
                    if (in_a[c]) next_excluded[c] = 1;
                procedure(x_prime, vplus, next_excluded, depth + 1);
                return;
            }
            scanned.push_back(w_class);
            if (static_cast<int>(scanned.size()) == b) break;
        }

        // Case II: two independent vertices z1, z2 reachable from vplus share
        // a solo neighbor w in a scanned class W.
        std::vector<std::uint8_t> in_scanned(k_, 0);
        for (int c : scanned) in_scanned[c] = 1;

        std::vector<int> fparent(k_, -2), forder{vplus};
        fparent[vplus] = -1;
        for (std::size_t i = 0; i < forder.size(); ++i) {
            const int pop = forder[i];
            for (int c = 0; c < k_; ++c)
                if (active[c] && !in_a[c] && fparent[c] == -2 && H(pop, c) > 0) {
                    fparent[c] = pop;
                    forder.push_back(c);
                }
        }
        std::vector<std::uint8_t> in_bprime(k_, 0);
        for (int c : forder) in_bprime[c] = 1;

        std::vector<int> candidates;
        for (int c : forder)
            for (int z : members_[c]) candidates.push_back(z);
        std::vector<std::uint8_t> covered(n_, 0);
        std::vector<int> covering(n_, -1);
        for (int z : candidates) {
            if (covered[z]) continue;
            covered[z] = 1;
            for (int y : adj_[z]) covered[y] = 1;
            for (int w : adj_[z]) {
                const int fw = color_[w];
                if (!in_scanned[fw] || N(z, fw) != 1) continue;
                if (covering[w] < 0) {
                    covering[w] = z;
                    continue;
                }
                const int z1 = covering[w];
                const int w_class = fw;
                const int z_class = color_[z1];
                shift(path_to_root(w_class, parent), w);
                std::vector<int> fpath{z_class};
                while (fparent[fpath.back()] >= 0) fpath.push_back(fparent[fpath.back()]);
                std::reverse(fpath.begin(), fpath.end());
                shift(fpath, z1);
                change_color(z1, z_class, w_class);
                int w_plus = -1;
                for (int c : forder)
                    if (N(w, c) == 0) {
                        w_plus = c;
                        break;
                    }
                if (w_plus < 0)
                    for (int c = 0; c < k_; ++c)
                        if (active[c] && !in_a[c] && N(w, c) == 0) {
                            w_plus = c;
                            break;
                        }
                if (w_plus < 0) throw InvariantError("equitable coloring: no class accepts the displaced vertex");
                change_color(w, w_class, w_plus);
                std::vector<std::uint8_t> next_excluded(k_, 1);
                next_excluded[w_class] = 0;
                for (int c : forder) next_excluded[c] = 0;
                next_excluded[w_plus] = 0;
                for (int c = 0; c < k_; ++c)
                    if (excluded[c]) next_excluded[c] = 1;
                procedure(w_class, w_plus, next_excluded, depth + 1);
                return;
            }
        }
        throw InvariantError("equitable coloring: neither repair case applies");
    }

    int n_;
    int k_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> color_;
    std::vector<int> pos_;
    std::vector<int> nb_;
    std::vector<int> movable_;
    std::vector<std::vector<int>> members_;
};

}  // namespace

std::vector<Color> equitable_coloring(const Adjacency& g, int num_classes) {
    if (num_classes < 1) throw InputError("need at least one color class");
    const int n = static_cast<int>(g.size());
    if (n > 0 && max_degree(g) >= num_classes)
        throw DegreeViolation("max degree " + std::to_string(max_degree(g)) + " needs more than " +
                              std::to_string(num_classes) + " classes");
    // Pad with a clique so the class count divides the vertex count.
    const int pad = (num_classes - n % num_classes) % num_classes;
    const int total = n + pad;
    Builder builder(total, num_classes);
    std::vector<std::uint8_t> done(total, 0);
    for (int u = 0; u < total; ++u) {
        if (u < n) {
            for (Vertex v : g[u])
                if (!done[v] && v != u) builder.add_edge(u, v);
        } else {
            for (int v = n; v < u; ++v) builder.add_edge(u, v);
        }
        done[u] = 1;
        builder.repair(u);
    }
    std::vector<Color> out(builder.colors().begin(), builder.colors().begin() + n);
    if (!is_proper(g, out)) throw InvariantError("equitable coloring produced a conflict");
    std::vector<int> sizes(num_classes, 0);
    for (Color c : out) ++sizes[c];
    const auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
    if (*hi - *lo > 1) throw InvariantError("equitable coloring produced unbalanced classes");
    return out;
}

std::vector<Color> align_classes(std::span<const Color> classes, std::span<const Color> current, int k) {
    std::vector<std::int64_t> overlap(static_cast<std::size_t>(k) * k, 0);
    for (std::size_t v = 0; v < classes.size(); ++v) ++overlap[static_cast<std::size_t>(classes[v]) * k + current[v]];
    std::vector<Color> label(k, -1);
    std::vector<std::uint8_t> used(k, 0);
    for (int round = 0; round < k; ++round) {
        std::int64_t best = -1;
        int bc = -1, bl = -1;
        for (int c = 0; c < k; ++c) {
            if (label[c] >= 0) continue;
            for (int l = 0; l < k; ++l) {
                if (used[l]) continue;
                const std::int64_t o = overlap[static_cast<std::size_t>(c) * k + l];
                if (o > best) {
                    best = o;
                    bc = c;
                    bl = l;
                }
            }
        }
        label[bc] = bl;
        used[bl] = 1;
    }
    std::vector<Color> out(classes.size());
    for (std::size_t v = 0; v < classes.size(); ++v) out[v] = label[classes[v]];
    return out;
}

}  // namespace recolor
