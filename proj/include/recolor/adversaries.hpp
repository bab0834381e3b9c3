#pragma once

#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

#include "recolor/graph.hpp"
#include "recolor/instance.hpp"

namespace recolor {

// Requests on an odd cycle over vertices 0..l-1, l = floor(n/2) rounded down
// to odd, always picking an edge that is monochromatic under the observed
// coloring. Alongside, it simulates l offline strategies: OFF_i keeps the
// coloring whose only monochromatic cycle edge is edge i and pays 2 for every
// request on that edge.
class OddCycleAdversary {
public:
    explicit OddCycleAdversary(const Instance& instance);

    int length() const { return length_; }
    Request next(std::span<const Color> coloring);
    std::int64_t emitted() const { return emitted_; }

    const std::vector<Weight>& offline_costs() const { return offline_; }
    Weight best_offline_cost() const;
    Weight family_cost() const;

private:
    int length_ = 0;
    int cursor_ = 0;
    std::int64_t emitted_ = 0;
    std::vector<Weight> offline_;
};

// Batches of requests that join paths pairwise: batch i joins paths of
// 2^(i-1) vertices at their ends. The deterministic variant picks equally
// colored ends; the randomized one picks ends uniformly.
class BatchAdversary {
public:
    BatchAdversary(int n, bool randomized, std::uint64_t seed);

    int size() const { return n_; }
    int batches() const { return batches_; }
    // Current batch, 1-based; 0 before the first request.
    int batch() const { return batch_; }
    bool finished() const { return finished_; }
    // Sizes of the paths being paired in the current batch.
    std::vector<int> path_sizes() const;

    // nullopt marks the end of a batch (and of the run once finished()).
    std::optional<Request> next(std::span<const Color> coloring);

private:
    struct Path {
        Vertex end1;
        Vertex end2;
        Vertex min_id;
        int size;
    };
    void begin_batch(std::span<const Color> coloring);
    static Path join(const Path& a, Vertex ea, const Path& b, Vertex eb);

    int n_ = 0;
    int batches_ = 0;
    bool randomized_ = false;
    Rng rng_;
    int batch_ = 0;
    bool in_batch_ = false;
    bool finished_ = false;
    std::vector<Path> paths_;
    std::vector<Path> joined_;
    std::vector<std::pair<int, int>> pairs_;
    std::size_t cursor_ = 0;
    std::vector<std::uint8_t> paired_;
};

// Keeps an active set S of Delta+1 vertices and requests an edge between two
// equally colored members. Members reaching degree floor((1-eps)Delta) are
// replaced by untouched vertices.
class DeltaSetAdversary {
public:
    DeltaSetAdversary(int n, int delta, Rational eps);

    bool exhausted() const { return exhausted_; }
    // Throws Exhausted once no untouched vertex is left to refill S.
    Request next(std::span<const Color> coloring);

    const std::vector<Vertex>& active() const { return active_; }
    std::int64_t emitted() const { return emitted_; }
    int eviction_rounds() const { return rounds_; }
    int evicted() const { return evicted_; }
    int degree_limit() const { return limit_; }

private:
    int n_ = 0;
    int delta_ = 0;
    int limit_ = 0;
    Vertex fresh_ = 0;
    bool exhausted_ = false;
    std::vector<Vertex> active_;
    std::vector<int> degree_;
    std::unordered_set<std::uint64_t> edges_;
    std::int64_t emitted_ = 0;
    int rounds_ = 0;
    int evicted_ = 0;
};

struct Workload {
    Instance instance;
    std::vector<Request> requests;
};

enum class RandomModel { BipartiteSafe, DeltaSafe };

struct RandomParams {
    int length = 0;  // 0 picks a default: 2n edges, or as many as the degree bound allows
    Rational eps = Rational::make(1, 2);
    int delta = 20;
    Weight max_weight = 1;
};

// BipartiteSafe: edges only across a hidden bipartition whose sides have equal
// weight, so an exactly balanced proper coloring of the final graph exists.
// Weighted instances come in equal-weight vertex pairs split across both the
// hidden sides and c0. DeltaSafe: distinct edges with every degree at most
// floor((1-eps)Delta), c0 balanced.
Workload random_sequence(int n, RandomModel model, Rng& rng, const RandomParams& params = {});

// Arbitrary random edges on unit weights with a balanced random c0.
Workload fully_dynamic_workload(int n, int length, Rational eps, Rng& rng);

// Oblivious delta workload that funnels recolorings into few colors: c0(v) =
// v mod Delta, and for each group a complete bipartite graph between D
// targets and D hubs of the first D colors (D = floor((1-eps)Delta)); every
// target gets its D-1 cross-colored hub edges and then the edge to its equally
// colored hub, with the target as first endpoint.
Workload delta_skew_workload(int n, int delta, Rational eps);

}  // namespace recolor
