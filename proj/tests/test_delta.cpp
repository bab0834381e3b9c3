#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>

#include "recolor/adversaries.hpp"
#include "recolor/delta.hpp"

using namespace recolor;

namespace {

Instance cyclic(int n, int delta, Rational eps) {
    std::vector<Color> c0(n);
    for (int v = 0; v < n; ++v) c0[v] = v % delta;
    return Instance::delta(c0, delta, eps);
}

std::vector<int> class_sizes(const std::vector<Color>& c, int k) {
    std::vector<int> s(k, 0);
    for (Color x : c) ++s[x];
    return s;
}

bool equitable(const std::vector<Color>& c, int k) {
    const auto s = class_sizes(c, k);
    const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
    return *hi - *lo <= 1;
}

}  // namespace

TEST_CASE("deterministic choice takes the feasible color with the most room") {
    DeltaRecoloring d(cyclic(8, 4, Rational::make(1, 2)), Policy::Deterministic, 0);
    CHECK(d.degree_limit() == 2);
    StepReport r = d.process(0, 4);
    CHECK(r.branch == Branch::Recolor);
    CHECK(r.recolored == 0);
    CHECK(d.coloring().color(0) == 1);  // colors 1..3 tie, lowest wins
    CHECK(d.in_cover(0));
    CHECK(d.in_cover(4));
    r = d.process(1, 5);
    CHECK(r.recolored == 1);
    CHECK(d.coloring().color(1) == 0);  // color 0 has two free slots
    CHECK(d.ledger().total_cost == 2);
}

TEST_CASE("covered endpoint is recolored; ties go to the lower id") {
    DeltaRecoloring d(cyclic(8, 4, Rational::make(1, 2)), Policy::Deterministic, 0);
    d.process(0, 4);  // 0 -> color 1, cover {0, 4}
    StepReport r = d.process(0, 1);
    CHECK(r.mono_at_arrival);
    CHECK(r.recolored == 0);
    CHECK_FALSE(d.in_cover(1));

    DeltaRecoloring e(cyclic(8, 4, Rational::make(1, 2)), Policy::Deterministic, 0);
    e.process(0, 4);
    e.process(1, 5);  // 1 -> color 0, same as 4
    r = e.process(4, 1);
    CHECK(r.mono_at_arrival);
    CHECK(r.recolored == 1);
}

TEST_CASE("no feasible color with room forces a rebalance") {
    DeltaRecoloring d(cyclic(8, 4, Rational::make(1, 4)), Policy::Deterministic, 0);
    CHECK(d.degree_limit() == 3);
    const StepReport r = d.process(0, 4);
    CHECK(r.branch == Branch::DeltaRebalance);
    CHECK(r.phase_ended);
    CHECK(d.coloring().color(0) != d.coloring().color(4));
    for (Color c = 0; c < 4; ++c) CHECK(d.coloring().load(c) <= 2);
    CHECK(d.ledger().rebalance_calls == 1);
    CHECK(d.phase_recolorings() == std::vector<std::int64_t>{0});
}

TEST_CASE("repeated and over-degree requests") {
    DeltaRecoloring d(cyclic(8, 4, Rational::make(1, 2)), Policy::Deterministic, 0);
    d.process(0, 1);
    CHECK_FALSE(d.process(1, 0).new_edge);
    d.process(0, 2);
    CHECK_THROWS_AS(d.process(0, 3), DegreeViolation);
    CHECK(d.degree(0) == 2);
    CHECK_THROWS_AS(d.process(5, 5), InputError);
}

TEST_CASE("feasible colors are exactly those no neighbor holds") {
    Rng rng(derive_seed(51, 0));
    RandomParams params;
    params.delta = 8;
    Workload wl = random_sequence(64, RandomModel::DeltaSafe, rng, params);
    DeltaRecoloring d(wl.instance, Policy::Deterministic, 0);
    for (const Request& q : wl.requests) d.process(q.u, q.v);
    for (Vertex v = 0; v < 64; ++v) {
        std::vector<Color> expected;
        for (Color c = 0; c < 8; ++c) {
            bool held = false;
            for (Vertex x : d.graph()[v]) held = held || d.coloring().color(x) == c;
            if (!held) expected.push_back(c);
        }
        CHECK(d.feasible_colors(v) == expected);
    }
}

TEST_CASE("randomized choice is uniform over feasible colors") {
    // c0 = v mod 8 on 16 vertices; (0, 8) leaves colors 1..7 feasible with room
    std::vector<int> hits(8, 0);
    for (std::uint64_t seed = 0; seed < 7000; ++seed) {
        DeltaRecoloring d(cyclic(16, 8, Rational::make(1, 2)), Policy::Randomized, seed);
        const StepReport r = d.process(0, 8);
        REQUIRE(r.branch == Branch::Recolor);
        ++hits[d.coloring().color(0)];
    }
    CHECK(hits[0] == 0);
    double chi2 = 0;
    for (Color c = 1; c < 8; ++c) {
        const double diff = hits[c] - 1000.0;
        chi2 += diff * diff / 1000.0;
    }
    // 6 degrees of freedom, 0.001 tail
    CHECK(chi2 < 22.46);
}

TEST_CASE("randomized runs are reproducible per seed") {
    Rng rng(derive_seed(52, 0));
    RandomParams params;
    params.delta = 6;
    Workload wl = random_sequence(60, RandomModel::DeltaSafe, rng, params);
    auto run = [&](std::uint64_t seed) {
        DeltaRecoloring d(wl.instance, Policy::Randomized, seed);
        for (const Request& q : wl.requests) d.process(q.u, q.v);
        return std::vector<Color>(d.coloring().colors().begin(), d.coloring().colors().end());
    };
    CHECK(run(9) == run(9));
}

TEST_CASE("property: cover rule, properness and capacity") {
    for (int trial = 0; trial < 160; ++trial) {
        Rng rng(derive_seed(53, trial));
        RandomParams params;
        params.delta = 4 + static_cast<int>(uniform_index(rng, 8));
        params.eps = trial % 2 ? Rational::make(1, 2) : Rational::make(1, 4);
        const int n = params.delta * (4 + static_cast<int>(uniform_index(rng, 8)));
        Workload wl = random_sequence(n, RandomModel::DeltaSafe, rng, params);
        const Policy policy = trial % 3 ? Policy::Deterministic : Policy::Randomized;
        DeltaRecoloring d(wl.instance, policy, derive_seed(54, trial));
        const Weight cap = augmented(wl.instance.B, params.eps);
        std::vector<std::uint8_t> cover(n, 0);
        std::vector<int> deg(n, 0);
        for (const Request& q : wl.requests) {
            const bool before_u = cover[q.u], before_v = cover[q.v];
            const StepReport r = d.process(q.u, q.v);
            if (!r.new_edge) continue;
            ++deg[q.u];
            ++deg[q.v];
            if (wl.instance.c0[q.u] == wl.instance.c0[q.v] && !before_u && !before_v) cover[q.u] = cover[q.v] = 1;
            if (r.mono_at_arrival) {
                Vertex expected;
                if (!before_u && !before_v) {
                    cover[q.u] = cover[q.v] = 1;
                    expected = q.u;
                } else if (before_u != before_v) {
                    expected = before_u ? q.u : q.v;
                } else if (deg[q.u] != deg[q.v]) {
                    expected = deg[q.u] > deg[q.v] ? q.u : q.v;
                } else {
                    expected = std::min(q.u, q.v);
                }
                CHECK(r.recolored == expected);
                CHECK(d.in_cover(r.recolored));
            } else {
                CHECK(r.cost == 0);
            }
            for (Vertex v : {q.u, q.v}) CHECK(d.in_cover(v) == static_cast<bool>(cover[v]));
            CHECK(d.coloring().color(q.u) != d.coloring().color(q.v));
            for (Color c = 0; c < params.delta; ++c) CHECK(d.coloring().load(c) <= cap);
        }
        int cover_size = 0;
        for (auto x : cover) cover_size += x;
        CHECK(d.cover_size() == cover_size);
        for (const RecolorEvent& e : d.ledger().log)
            if (e.cause == Cause::Recolor) CHECK(d.in_cover(e.v));
        CHECK(is_proper(d.graph(), d.coloring().colors()));
        CHECK(d.coloring().reconciles());
    }
}

TEST_CASE("equitable coloring examples") {
    const std::vector<Request> triangle = {{0, 1}, {1, 2}, {2, 0}};
    const auto t = equitable_coloring(build_adjacency(3, triangle), 3);
    CHECK(class_sizes(t, 3) == std::vector<int>{1, 1, 1});
    CHECK(is_proper(build_adjacency(3, triangle), t));

    const auto single = equitable_coloring_r(build_adjacency(5, {}), 0);
    CHECK(single == std::vector<Color>(5, 0));

    const std::vector<Request> path = {{0, 1}, {1, 2}, {2, 3}};
    const auto p = equitable_coloring(build_adjacency(4, path), 3);
    auto sizes = class_sizes(p, 3);
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<int>{1, 1, 2});
    CHECK(is_proper(build_adjacency(4, path), p));

    CHECK_THROWS_AS(equitable_coloring(build_adjacency(3, triangle), 2), DegreeViolation);
}

TEST_CASE("property: equitable coloring on random graphs below the degree bound") {
    for (int trial = 0; trial < 400; ++trial) {
        Rng rng(derive_seed(55, trial));
        const int n = 1 + static_cast<int>(uniform_index(rng, 80));
        const int r = static_cast<int>(uniform_index(rng, 7));
        std::vector<int> deg(n, 0);
        std::vector<Request> edges;
        for (int attempt = 0; attempt < 4 * n; ++attempt) {
            const auto a = static_cast<Vertex>(uniform_index(rng, n));
            const auto b = static_cast<Vertex>(uniform_index(rng, n));
            if (a == b || deg[a] >= r || deg[b] >= r) continue;
            if (std::find(edges.begin(), edges.end(), Request{a, b}) != edges.end() ||
                std::find(edges.begin(), edges.end(), Request{b, a}) != edges.end())
                continue;
            edges.push_back({a, b});
            ++deg[a];
            ++deg[b];
        }
        const Adjacency g = build_adjacency(n, edges);
        const auto c = equitable_coloring_r(g, r);
        CHECK(static_cast<int>(c.size()) == n);
        CHECK(is_proper(g, c));
        CHECK(equitable(c, r + 1));
    }
}

TEST_CASE("class alignment only relabels") {
    Rng rng(derive_seed(56, 0));
    for (int trial = 0; trial < 100; ++trial) {
        const int k = 2 + static_cast<int>(uniform_index(rng, 6));
        const int n = k * 5;
        std::vector<Color> classes(n), current(n);
        for (int v = 0; v < n; ++v) {
            classes[v] = static_cast<Color>(uniform_index(rng, k));
            current[v] = static_cast<Color>(uniform_index(rng, k));
        }
        const auto aligned = align_classes(classes, current, k);
        std::map<Color, Color> relabel;
        for (int v = 0; v < n; ++v) {
            const auto [it, fresh] = relabel.emplace(classes[v], aligned[v]);
            CHECK(it->second == aligned[v]);
        }
        std::vector<std::uint8_t> used(k, 0);
        for (auto [from, to] : relabel) {
            CHECK_FALSE(used[to]);
            used[to] = 1;
        }
        CHECK(align_classes(current, current, k) == current);
    }
}

TEST_CASE("sampled colorings are proper") {
    Rng rng(derive_seed(57, 0));
    RandomParams params;
    params.delta = 10;
    Workload wl = random_sequence(100, RandomModel::DeltaSafe, rng, params);
    const Adjacency g = build_adjacency(100, wl.requests);
    for (int i = 0; i < 50; ++i) CHECK(is_proper(g, sample_feasible_coloring(g, 10, rng)));
}
