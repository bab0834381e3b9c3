#include "recolor/adversaries.hpp"

#include <algorithm>
#include <numeric>

namespace recolor {

namespace {

std::uint64_t edge_key(Vertex u, Vertex v) {
    const auto a = static_cast<std::uint64_t>(std::min(u, v));
    const auto b = static_cast<std::uint64_t>(std::max(u, v));
    return a << 32 | b;
}

std::vector<Color> balanced_colors(int n, int k, Rng& rng) {
    std::vector<Color> c(n);
    for (int v = 0; v < n; ++v) c[v] = v % k;
    std::shuffle(c.begin(), c.end(), rng);
    return c;
}

}  // namespace

// ---- odd cycle ------------------------------------------------------------

OddCycleAdversary::OddCycleAdversary(const Instance& instance) {
    if (instance.model == Model::Delta) throw InvalidInstance("odd-cycle adversary needs two colors");
    for (Weight w : instance.w)
        if (w != 1) throw InvalidInstance("odd-cycle adversary needs unit weights");
    const int n = instance.n;
    length_ = n / 2;
    if (length_ % 2 == 0) --length_;
    if (length_ < 3) throw InvalidInstance("odd-cycle adversary needs n >= 6");

    // Initial cost of OFF_i: move the cycle to the pattern with edge i as its
    // only monochromatic edge, then fix the balance with vertices off the cycle.
    int outside_zero = 0;
    for (int v = length_; v < n; ++v) outside_zero += instance.c0[v] == 0;
    const int outside = n - length_;
    offline_.assign(length_, 0);
    for (int i = 0; i < length_; ++i) {
        Weight best = -1;
        for (Color x = 0; x < 2; ++x) {
            Weight cost = 0;
            int zeros = 0;
            for (int j = 0; j < length_; ++j) {
                const int v = (i + 1 + j) % length_;
                const Color c = static_cast<Color>(x ^ (j & 1));
                cost += c != instance.c0[v];
                zeros += c == 0;
            }
            const Weight need = instance.B - zeros;
            if (need < 0 || need > outside) continue;
            cost += need > outside_zero ? need - outside_zero : outside_zero - need;
            if (best < 0 || cost < best) best = cost;
        }
        offline_[i] = best;
    }
}

Request OddCycleAdversary::next(std::span<const Color> coloring) {
    for (int step = 0; step < length_; ++step) {
        const int i = (cursor_ + step) % length_;
        const Vertex a = i;
        const Vertex b = (i + 1) % length_;
        if (coloring[a] == coloring[b]) {
            cursor_ = (i + 1) % length_;
            ++emitted_;
            offline_[i] += 2;
            return Request{a, b};
        }
    }
    throw InvariantError("odd cycle without a monochromatic edge");
}

Weight OddCycleAdversary::best_offline_cost() const { return *std::min_element(offline_.begin(), offline_.end()); }

Weight OddCycleAdversary::family_cost() const { return std::accumulate(offline_.begin(), offline_.end(), Weight{0}); }

// ---- batches --------------------------------------------------------------

BatchAdversary::BatchAdversary(int n, bool randomized, std::uint64_t seed) : randomized_(randomized), rng_(seed) {
    if (n < 2) throw InvalidInstance("batch adversary needs n >= 2");
    n_ = 1;
    while (n_ * 2 <= n) n_ *= 2;
    while ((1 << batches_) < n_) ++batches_;
    for (Vertex v = 0; v < n_; ++v) paths_.push_back(Path{v, v, v, 1});
}

std::vector<int> BatchAdversary::path_sizes() const {
    std::vector<int> out;
    for (const Path& p : paths_) out.push_back(p.size);
    return out;
}

BatchAdversary::Path BatchAdversary::join(const Path& a, Vertex ea, const Path& b, Vertex eb) {
    const Vertex oa = ea == a.end1 ? a.end2 : a.end1;
    const Vertex ob = eb == b.end1 ? b.end2 : b.end1;
    return Path{oa, ob, std::min(a.min_id, b.min_id), a.size + b.size};
}

void BatchAdversary::begin_batch(std::span<const Color> coloring) {
    ++batch_;
    in_batch_ = true;
    cursor_ = 0;
    joined_.clear();
    pairs_.clear();
    paired_.assign(paths_.size(), 0);
    std::sort(paths_.begin(), paths_.end(), [](const Path& l, const Path& r) { return l.min_id < r.min_id; });
    if (batch_ > 1 || !randomized_) {
        if (batch_ > 1)
            for (std::size_t i = 0; i + 1 < paths_.size(); i += 2)
                pairs_.push_back({static_cast<int>(i), static_cast<int>(i + 1)});
        return;
    }
    // Randomized first batch: pair equally colored singletons once, up front.
    std::vector<int> by_color[2];
    for (std::size_t i = 0; i < paths_.size(); ++i) by_color[coloring[paths_[i].end1]].push_back(static_cast<int>(i));
    std::vector<int> left;
    for (auto& group : by_color) {
        for (std::size_t j = 0; j + 1 < group.size(); j += 2) pairs_.push_back({group[j], group[j + 1]});
        if (group.size() % 2) left.push_back(group.back());
    }
    if (left.size() == 2) pairs_.push_back({left[0], left[1]});
}

std::optional<Request> BatchAdversary::next(std::span<const Color> coloring) {
    if (finished_) return std::nullopt;
    if (!in_batch_) {
        if (paths_.size() == 1) {
            finished_ = true;
            return std::nullopt;
        }
        begin_batch(coloring);
    }
    const bool lazy = batch_ == 1 && !randomized_;
    const std::size_t total = paths_.size() / 2;
    if ((lazy && joined_.size() == total) || (!lazy && cursor_ == pairs_.size())) {
        paths_ = joined_;
        in_batch_ = false;
        if (paths_.size() == 1) finished_ = true;
        return std::nullopt;
    }

    if (lazy) {
        // Lowest unpaired singleton, matched with the lowest unpaired one of
        // the same current color if any.
        int a = 0;
        while (paired_[a]) ++a;
        int b = -1;
        for (std::size_t j = a + 1; j < paths_.size() && b < 0; ++j)
            if (!paired_[j] && coloring[paths_[j].end1] == coloring[paths_[a].end1]) b = static_cast<int>(j);
        for (std::size_t j = a + 1; j < paths_.size() && b < 0; ++j)
            if (!paired_[j]) b = static_cast<int>(j);
        paired_[a] = paired_[b] = 1;
        joined_.push_back(join(paths_[a], paths_[a].end1, paths_[b], paths_[b].end1));
        return Request{paths_[a].end1, paths_[b].end1};
    }

    const auto [ia, ib] = pairs_[cursor_++];
    const Path& a = paths_[ia];
    const Path& b = paths_[ib];
    Vertex ea = a.end1;
    Vertex eb = b.end1;
    if (randomized_) {
        ea = uniform_index(rng_, 2) ? a.end2 : a.end1;
        eb = uniform_index(rng_, 2) ? b.end2 : b.end1;
    } else {
        bool found = false;
        for (Vertex x : {a.end1, a.end2}) {
            for (Vertex y : {b.end1, b.end2})
                if (!found && coloring[x] == coloring[y]) {
                    ea = x;
                    eb = y;
                    found = true;
                }
        }
    }
    joined_.push_back(join(a, ea, b, eb));
    return Request{ea, eb};
}

// ---- delta set ------------------------------------------------------------

DeltaSetAdversary::DeltaSetAdversary(int n, int delta, Rational eps) : n_(n), delta_(delta), degree_(n, 0) {
    limit_ = static_cast<int>(floor_mul_div(delta, eps.den - eps.num, eps.den));
    if (limit_ < 1) throw InvalidInstance("degree bound below one");
    if (n < delta + 1) throw InvalidInstance("delta-set adversary needs n > delta");
    for (Vertex v = 0; v <= delta; ++v) active_.push_back(v);
    fresh_ = delta + 1;
}

Request DeltaSetAdversary::next(std::span<const Color> coloring) {
    if (exhausted_) throw Exhausted("no untouched vertices left");
    std::vector<int> first(delta_, -1);
    Request out{-1, -1};
    for (Vertex x : active_) {
        const Color c = coloring[x];
        if (first[c] >= 0 && !edges_.count(edge_key(first[c], x))) {
            out = Request{first[c], x};
            break;
        }
        if (first[c] < 0) first[c] = x;
    }
    if (out.u < 0) throw InvariantError("no equally colored pair in the active set");
    edges_.insert(edge_key(out.u, out.v));
    ++degree_[out.u];
    ++degree_[out.v];
    ++emitted_;

    bool round = false;
    for (Vertex& x : active_) {
        if (degree_[x] < limit_) continue;
        round = true;
        ++evicted_;
        if (fresh_ >= n_) {
            exhausted_ = true;
            x = -1;
        } else {
            x = fresh_++;
        }
    }
    if (round) ++rounds_;
    std::erase(active_, -1);
    return out;
}

// ---- random workloads -----------------------------------------------------

Workload random_sequence(int n, RandomModel model, Rng& rng, const RandomParams& params) {
    Workload out;
    if (model == RandomModel::BipartiteSafe) {
        if (n < 2 || n % 2) throw InvalidInstance("bipartite-safe workloads need an even n");
        Instance& inst = out.instance;
        inst.model = Model::Online2;
        inst.n = n;
        inst.k = 2;
        inst.eps = params.eps;
        inst.w.assign(n, 1);
        std::vector<std::uint8_t> hidden(n);
        if (params.max_weight <= 1) {
            inst.c0 = balanced_colors(n, 2, rng);
            std::vector<Color> h = balanced_colors(n, 2, rng);
            for (int v = 0; v < n; ++v) hidden[v] = static_cast<std::uint8_t>(h[v]);
        } else {
            inst.c0.assign(n, 0);
            for (int p = 0; p < n / 2; ++p) {
                const Weight w = 1 + static_cast<Weight>(uniform_index(rng, static_cast<std::size_t>(params.max_weight)));
                inst.w[2 * p] = inst.w[2 * p + 1] = w;
                const auto c = static_cast<Color>(uniform_index(rng, 2));
                inst.c0[2 * p] = c;
                inst.c0[2 * p + 1] = 1 - c;
                const auto h = static_cast<std::uint8_t>(uniform_index(rng, 2));
                hidden[2 * p] = h;
                hidden[2 * p + 1] = static_cast<std::uint8_t>(1 - h);
            }
        }
        inst.B = inst.total_weight() / 2;
        std::vector<Vertex> side[2];
        for (int v = 0; v < n; ++v) side[hidden[v]].push_back(v);
        const int length = params.length > 0 ? params.length : 2 * n;
        for (int t = 0; t < length; ++t) {
            const Vertex a = side[0][uniform_index(rng, side[0].size())];
            const Vertex b = side[1][uniform_index(rng, side[1].size())];
            out.requests.push_back(uniform_index(rng, 2) ? Request{a, b} : Request{b, a});
        }
        return out;
    }

    const int delta = params.delta;
    if (n % delta) throw InvalidInstance("delta-safe workloads need n divisible by delta");
    out.instance = Instance::delta(balanced_colors(n, delta, rng), delta, params.eps);
    const int limit = static_cast<int>(floor_mul_div(delta, params.eps.den - params.eps.num, params.eps.den));
    const std::int64_t length = params.length > 0 ? params.length : static_cast<std::int64_t>(n) * limit / 2;
    std::vector<int> degree(n, 0);
    std::unordered_set<std::uint64_t> seen;
    std::int64_t failures = 0;
    while (static_cast<std::int64_t>(out.requests.size()) < length && failures < 50LL * n) {
        const auto a = static_cast<Vertex>(uniform_index(rng, n));
        const auto b = static_cast<Vertex>(uniform_index(rng, n));
        if (a == b || degree[a] >= limit || degree[b] >= limit || !seen.insert(edge_key(a, b)).second) {
            ++failures;
            continue;
        }
        ++degree[a];
        ++degree[b];
        out.requests.push_back(Request{a, b});
    }
    return out;
}

Workload fully_dynamic_workload(int n, int length, Rational eps, Rng& rng) {
    Workload out;
    out.instance = Instance::unit_two_color(Model::FullyDynamic2, balanced_colors(n, 2, rng), eps);
    for (int t = 0; t < length; ++t) {
        const auto a = static_cast<Vertex>(uniform_index(rng, n));
        auto b = static_cast<Vertex>(uniform_index(rng, n - 1));
        if (b >= a) ++b;
        out.requests.push_back(Request{a, b});
    }
    return out;
}

Workload delta_skew_workload(int n, int delta, Rational eps) {
    const int limit = static_cast<int>(floor_mul_div(delta, eps.den - eps.num, eps.den));
    const int per_color = n / delta;
    if (n % delta || per_color % 2 || limit < 2)
        throw InvalidInstance("skew workload needs n/delta even and a degree bound of at least 2");
    Workload out;
    std::vector<Color> c0(n);
    for (int v = 0; v < n; ++v) c0[v] = v % delta;
    out.instance = Instance::delta(std::move(c0), delta, eps);
    const int groups = per_color / 2;
    for (int g = 0; g < groups; ++g) {
        auto target = [&](int c) { return static_cast<Vertex>(c + 2 * g * delta); };
        auto hub = [&](int c) { return static_cast<Vertex>(c + (2 * g + 1) * delta); };
        for (int c = 0; c < limit; ++c) {
            for (int d = 0; d < limit; ++d)
                if (d != c) out.requests.push_back(Request{target(c), hub(d)});
            out.requests.push_back(Request{target(c), hub(c)});
        }
    }
    return out;
}

}  // namespace recolor
