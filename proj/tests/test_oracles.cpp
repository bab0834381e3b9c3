#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <bit>

#include "recolor/adversaries.hpp"
#include "recolor/fully_dynamic.hpp"
#include "recolor/graph.hpp"
#include "recolor/oracles.hpp"
#include "recolor/verify.hpp"

using namespace recolor;

namespace {

Instance alternating(int n, Model model) {
    std::vector<Color> c0(n);
    for (int v = 0; v < n; ++v) c0[v] = v % 2;
    return Instance::unit_two_color(model, c0, Rational::make(1, 2));
}

// All colorings of a tiny instance: proper on every request, exactly B on color 0.
Weight brute_opt2(const Instance& inst, const std::vector<Request>& reqs) {
    Weight best = -1;
    for (std::uint32_t mask = 0; mask < (1u << inst.n); ++mask) {
        Weight on0 = 0, cost = 0;
        for (int v = 0; v < inst.n; ++v) {
            const Color c = mask >> v & 1;
            if (c == 0) on0 += inst.w[v];
            if (c != inst.c0[v]) cost += inst.w[v];
        }
        if (on0 != inst.B) continue;
        bool proper = true;
        for (const Request& q : reqs) proper = proper && ((mask >> q.u & 1) != (mask >> q.v & 1));
        if (proper && (best < 0 || cost < best)) best = cost;
    }
    return best;
}

int brute_cover(int n, const std::vector<Request>& edges) {
    int best = n;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        bool ok = true;
        for (const Request& e : edges) ok = ok && ((mask >> e.u & 1) || (mask >> e.v & 1));
        if (ok) best = std::min(best, std::popcount(mask));
    }
    return best;
}

}  // namespace

TEST_CASE("two-color OPT examples") {
    const Instance inst = alternating(6, Model::Online2);
    SUBCASE("nothing to do") {
        const std::vector<Request> reqs = {{0, 1}, {2, 3}};
        CHECK(opt_2recoloring(inst, reqs).value == 0);
    }
    SUBCASE("one conflict costs a swap") {
        const std::vector<Request> reqs = {{0, 2}};
        const OracleReport r = opt_2recoloring(inst, reqs);
        CHECK(r.value == 2);
        CHECK(r.coloring[0] != r.coloring[2]);
        CHECK(std::count(r.coloring.begin(), r.coloring.end(), 0) == 3);
    }
    SUBCASE("odd cycle") {
        const std::vector<Request> reqs = {{0, 1}, {1, 2}, {2, 0}};
        CHECK_THROWS_AS(opt_2recoloring(inst, reqs), InfeasibleInstance);
    }
    SUBCASE("balance impossible") {
        // a star over all six vertices has sides of 1 and 5
        const std::vector<Request> reqs = {{0, 1}, {0, 3}, {0, 5}, {0, 2}, {0, 4}};
        CHECK_THROWS_AS(opt_2recoloring(inst, reqs), InfeasibleInstance);
    }
}

TEST_CASE("property: two-color OPT matches exhaustive search") {
    int checked = 0;
    for (int trial = 0; trial < 500; ++trial) {
        Rng rng(derive_seed(71, trial));
        RandomParams params;
        params.max_weight = trial % 3 ? 1 : 5;
        params.length = 1 + static_cast<int>(uniform_index(rng, 16));
        const int n = 2 * (2 + static_cast<int>(uniform_index(rng, 6)));
        Workload wl = random_sequence(n, RandomModel::BipartiteSafe, rng, params);
        // arbitrary extra requests may make it infeasible; both must agree
        if (trial % 4 == 0) {
            const auto a = static_cast<Vertex>(uniform_index(rng, n));
            const auto b = static_cast<Vertex>((a + 1 + uniform_index(rng, n - 1)) % n);
            wl.requests.push_back({a, b});
        }
        const Weight brute = brute_opt2(wl.instance, wl.requests);
        CHECK(reference::enumerate_opt2(wl.instance, wl.requests) == brute);
        if (brute < 0) {
            CHECK_THROWS_AS(opt_2recoloring(wl.instance, wl.requests), InfeasibleInstance);
            continue;
        }
        const OracleReport r = opt_2recoloring(wl.instance, wl.requests);
        CHECK(r.value == brute);
        Weight on0 = 0, cost = 0;
        for (int v = 0; v < n; ++v) {
            if (r.coloring[v] == 0) on0 += wl.instance.w[v];
            if (r.coloring[v] != wl.instance.c0[v]) cost += wl.instance.w[v];
        }
        CHECK(on0 == wl.instance.B);
        CHECK(cost == r.value);
        for (const Request& q : wl.requests) CHECK(r.coloring[q.u] != r.coloring[q.v]);
        ++checked;
    }
    CHECK(checked > 300);
}

TEST_CASE("fully dynamic brute force") {
    const Instance inst = alternating(6, Model::FullyDynamic2);
    SUBCASE("empty sequence") {
        const OracleReport r = opt_fully_dynamic_bruteforce(inst, {});
        CHECK(r.value == 0);
        CHECK(r.coloring == inst.c0);
    }
    SUBCASE("triangle needs a balancing partner") {
        const std::vector<Request> reqs = {{0, 1}, {1, 2}, {2, 0}};
        const OracleReport r = opt_fully_dynamic_bruteforce(inst, reqs);
        CHECK(r.value == 2);
        REQUIRE(r.path.size() == 3);
        for (std::size_t t = 0; t < reqs.size(); ++t) CHECK(r.path[t][reqs[t].u] != r.path[t][reqs[t].v]);
    }
    SUBCASE("limits") {
        CHECK_THROWS_AS(opt_fully_dynamic_bruteforce(alternating(12, Model::FullyDynamic2), {}), ScaleExceeded);
        const std::vector<Request> many(31, Request{0, 1});
        CHECK_THROWS_AS(opt_fully_dynamic_bruteforce(inst, many), ScaleExceeded);
    }
}

TEST_CASE("property: fully dynamic OPT is at most the cheapest fixed coloring and at least the phase count of a run") {
    for (int trial = 0; trial < 150; ++trial) {
        Rng rng(derive_seed(72, trial));
        Workload wl = fully_dynamic_workload(8, 1 + static_cast<int>(uniform_index(rng, 12)), Rational::make(1, 2), rng);
        const OracleReport r = opt_fully_dynamic_bruteforce(wl.instance, wl.requests);
        const Weight fixed = brute_opt2(wl.instance, wl.requests);
        if (fixed >= 0) CHECK(r.value <= fixed);
        Weight path_cost = 0;
        std::vector<Color> prev = wl.instance.c0;
        for (std::size_t t = 0; t < wl.requests.size(); ++t) {
            for (int v = 0; v < 8; ++v) path_cost += r.path[t][v] != prev[v];
            prev = r.path[t];
        }
        CHECK(path_cost == r.value);
        GreedyOptions options;
        options.enforce_eps_floor = false;
        GreedyRecoloring g(wl.instance, Rational::make(1, 2), options);
        for (const Request& q : wl.requests) g.process(q.u, q.v);
        CHECK(phase_lower_bound(g.ledger()) <= r.value);
    }
}

TEST_CASE("minimum vertex cover") {
    const std::vector<Request> triangle = {{0, 1}, {1, 2}, {2, 0}};
    CHECK(min_vertex_cover(3, triangle).value == 2);
    const std::vector<Request> star = {{0, 1}, {0, 2}, {0, 3}, {0, 4}};
    const OracleReport s = min_vertex_cover(5, star);
    CHECK(s.value == 1);
    CHECK(s.cover == std::vector<Vertex>{0});
    CHECK(min_vertex_cover(4, {}).value == 0);
    std::vector<Request> long_path;
    for (Vertex v = 0; v + 1 < 50; ++v) long_path.push_back({v, v + 1});
    CHECK_THROWS_AS(min_vertex_cover(50, long_path), ScaleExceeded);
    CHECK(min_vertex_cover(50, long_path, 30).value == 25);
}

TEST_CASE("property: vertex cover matches exhaustive search") {
    for (int trial = 0; trial < 300; ++trial) {
        Rng rng(derive_seed(73, trial));
        const int n = 2 + static_cast<int>(uniform_index(rng, 15));
        const int m = static_cast<int>(uniform_index(rng, 3 * n));
        std::vector<Request> edges;
        for (int e = 0; e < m; ++e) {
            const auto a = static_cast<Vertex>(uniform_index(rng, n));
            const auto b = static_cast<Vertex>(uniform_index(rng, n));
            if (a != b) edges.push_back({a, b});
        }
        const OracleReport r = min_vertex_cover(n, edges);
        CHECK(r.value == brute_cover(n, edges));
        std::vector<std::uint8_t> in(n, 0);
        for (Vertex v : r.cover) in[v] = 1;
        for (const Request& e : edges) CHECK((in[e.u] || in[e.v]));
    }
}

TEST_CASE("phase lower bound") {
    CostLedger ledger;
    CHECK(phase_lower_bound(ledger) == 0);
    ledger.phases_completed = 7;
    CHECK(phase_lower_bound(ledger) == 7);
}

TEST_CASE("one-shot equitable upper bound") {
    std::vector<Color> c0(12);
    for (int v = 0; v < 12; ++v) c0[v] = v % 4;
    const Instance inst = Instance::delta(c0, 4, Rational::make(1, 2));
    SUBCASE("proper start") {
        const std::vector<Request> reqs = {{0, 1}, {2, 3}, {4, 9}};
        const OracleReport r = delta_opt_upper(inst, reqs);
        CHECK(r.value == 0);
        CHECK(r.coloring == c0);
    }
    SUBCASE("random delta-safe graphs") {
        for (int trial = 0; trial < 100; ++trial) {
            Rng rng(derive_seed(74, trial));
            RandomParams params;
            params.delta = 3 + trial % 6;
            const int n = params.delta * 10;
            Workload wl = random_sequence(n, RandomModel::DeltaSafe, rng, params);
            const OracleReport r = delta_opt_upper(wl.instance, wl.requests);
            const Adjacency g = build_adjacency(n, wl.requests);
            CHECK(is_proper(g, r.coloring));
            CHECK(r.value <= n);
            Weight hamming = 0;
            for (int v = 0; v < n; ++v) hamming += r.coloring[v] != wl.instance.c0[v];
            CHECK(hamming == r.value);
            for (Weight load : color_loads(r.coloring, wl.instance.w, params.delta)) CHECK(load == 10);
        }
    }
}
