#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "recolor/adversaries.hpp"
#include "recolor/delta.hpp"
#include "recolor/harness.hpp"
#include "recolor/verify.hpp"

using namespace recolor;

namespace {

Instance alternating(int n, Model model = Model::FullyDynamic2) {
    std::vector<Color> c0(n);
    for (int v = 0; v < n; ++v) c0[v] = v % 2;
    return Instance::unit_two_color(model, c0, Rational::make(1, 2));
}

// Cheapest balanced coloring whose only monochromatic cycle edge is edge i.
Weight brute_offline_start(const Instance& inst, int length, int i) {
    Weight best = -1;
    for (std::uint32_t mask = 0; mask < (1u << inst.n); ++mask) {
        int zeros = 0;
        Weight cost = 0;
        for (int v = 0; v < inst.n; ++v) {
            const Color c = mask >> v & 1;
            zeros += c == 0;
            cost += c != inst.c0[v];
        }
        if (zeros != inst.B) continue;
        bool ok = true;
        for (int e = 0; e < length && ok; ++e) {
            const bool mono = (mask >> e & 1) == (mask >> ((e + 1) % length) & 1);
            ok = mono == (e == i);
        }
        if (ok && (best < 0 || cost < best)) best = cost;
    }
    return best;
}

}  // namespace

TEST_CASE("odd cycle length") {
    CHECK(OddCycleAdversary(alternating(16)).length() == 7);
    CHECK(OddCycleAdversary(alternating(20)).length() == 9);
    CHECK(OddCycleAdversary(alternating(12)).length() == 5);
    CHECK(OddCycleAdversary(alternating(6)).length() == 3);
    CHECK_THROWS_AS(OddCycleAdversary(alternating(4)), InvalidInstance);
}

TEST_CASE("offline strategies start at their cheapest balanced coloring") {
    for (int n : {6, 8, 10, 12}) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            Rng rng(derive_seed(61, seed));
            std::vector<Color> c0(n);
            for (int v = 0; v < n; ++v) c0[v] = v % 2;
            std::shuffle(c0.begin(), c0.end(), rng);
            const Instance inst = Instance::unit_two_color(Model::FullyDynamic2, c0, Rational::make(1, 2));
            OddCycleAdversary adv(inst);
            for (int i = 0; i < adv.length(); ++i)
                CHECK(adv.offline_costs()[i] == brute_offline_start(inst, adv.length(), i));
        }
    }
}

TEST_CASE("odd cycle requests are monochromatic and charge one offline strategy") {
    AdversaryParams params;
    params.n = 32;
    const AdversaryRun run = run_adversary(AdversaryVariant::OddCycle, AlgorithmId::Greedy2, params);
    CHECK(run.cycle_length == 15);
    CHECK(run.all_mono);
    CHECK(run.trace.requests.size() == 225u);
    CHECK(run.output.result.cost >= 225);
    OddCycleAdversary fresh(run.trace.instance);
    Weight start = fresh.family_cost();
    CHECK(run.offline_family == start + 2 * 225);
    CHECK(run.offline_best * run.cycle_length <= run.offline_family);
    for (const Request& q : run.trace.requests) {
        CHECK(q.u < 15);
        CHECK(q.v == (q.u + 1) % 15);
    }
}

TEST_CASE("deterministic batches on eight vertices") {
    BatchAdversary adv(8, false, 0);
    CHECK(adv.batches() == 3);
    const std::vector<Color> coloring = {0, 1, 0, 1, 0, 1, 0, 1};
    std::vector<Request> first;
    while (auto q = adv.next(coloring)) first.push_back(*q);
    CHECK(first == std::vector<Request>{{0, 2}, {1, 3}, {4, 6}, {5, 7}});
    CHECK(adv.batch() == 1);
    std::optional<Request> q = adv.next(coloring);
    CHECK(adv.path_sizes() == std::vector<int>{2, 2, 2, 2});
    // paths {0,2},{1,3} pair up, then {4,6},{5,7}
    std::vector<Request> second;
    for (; q; q = adv.next(coloring)) second.push_back(*q);
    REQUIRE(second.size() == 2u);
    CHECK(second[0].u % 2 == 0);
    CHECK(second[0].v % 2 == 1);
    CHECK(second[0].u < 4);
    CHECK(second[1].u >= 4);
    q = adv.next(coloring);
    CHECK(adv.path_sizes() == std::vector<int>{4, 4});
    CHECK(q.has_value());
    CHECK_FALSE(adv.next(coloring));
    CHECK(adv.finished());
    CHECK_FALSE(adv.next(coloring));
}

TEST_CASE("batch size rounds down to a power of two") {
    CHECK(BatchAdversary(12, false, 0).size() == 8);
    CHECK(BatchAdversary(64, true, 0).size() == 64);
    CHECK(BatchAdversary(65, false, 0).batches() == 6);
}

TEST_CASE("batch runs build one path with n - 1 requests") {
    for (AdversaryVariant v : {AdversaryVariant::Batch, AdversaryVariant::BatchRand}) {
        AdversaryParams params;
        params.n = 64;
        const AdversaryRun run = run_adversary(v, AlgorithmId::Follow, params);
        CHECK(run.batches == 6);
        CHECK(run.trace.requests.size() == 63u);
        const auto comps = reference::bfs_components(64, run.trace.requests);
        CHECK(comps.count == 1);
    }
}

TEST_CASE("randomized ends are monochromatic half the time on properly colored paths") {
    int mono = 0, total = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        AdversaryParams params;
        params.n = 64;
        params.seed = seed;
        const AdversaryRun run = run_adversary(AdversaryVariant::BatchRand, AlgorithmId::Follow, params);
        for (std::size_t t = 32; t < run.output.reports.size(); ++t) {
            mono += run.output.reports[t].mono_at_arrival;
            ++total;
        }
    }
    CHECK(total == 200 * 31);
    const double frac = static_cast<double>(mono) / total;
    CHECK(frac > 0.47);
    CHECK(frac < 0.53);
}

TEST_CASE("delta set adversary") {
    const int n = 200, delta = 8;
    const Rational eps = Rational::make(1, 2);
    std::vector<Color> c0(n);
    for (int v = 0; v < n; ++v) c0[v] = v % delta;
    DeltaRecoloring alg(Instance::delta(c0, delta, eps), Policy::Deterministic, 0);
    DeltaSetAdversary adv(n, delta, eps);
    CHECK(adv.degree_limit() == 4);
    CHECK(adv.active().size() == 9u);
    std::set<std::pair<Vertex, Vertex>> seen;
    while (!adv.exhausted()) {
        const Request q = adv.next(alg.coloring().colors());
        CHECK(alg.coloring().color(q.u) == alg.coloring().color(q.v));
        CHECK(seen.insert({std::min(q.u, q.v), std::max(q.u, q.v)}).second);
        alg.process(q.u, q.v);
    }
    CHECK_THROWS_AS(adv.next(alg.coloring().colors()), Exhausted);
    CHECK(adv.eviction_rounds() > 0);
    CHECK(2 * adv.emitted() >= static_cast<std::int64_t>(adv.evicted()) * adv.degree_limit());
    CHECK(alg.ledger().total_cost >= adv.emitted());
}

TEST_CASE("bipartite-safe workloads admit an exactly balanced proper coloring") {
    for (int trial = 0; trial < 200; ++trial) {
        Rng rng(derive_seed(62, trial));
        RandomParams params;
        params.max_weight = trial % 2 ? 1 : 6;
        params.length = 20;
        const Workload wl = random_sequence(14, RandomModel::BipartiteSafe, rng, params);
        CHECK_NOTHROW(wl.instance.validate());
        const auto comps = reference::bfs_components(14, wl.requests);
        for (int c = 0; c < comps.count; ++c) CHECK(comps.bipartite[c]);
        CHECK(reference::enumerate_opt2(wl.instance, wl.requests) >= 0);
    }
}

TEST_CASE("delta-safe workloads respect the degree bound") {
    for (int trial = 0; trial < 50; ++trial) {
        Rng rng(derive_seed(63, trial));
        RandomParams params;
        params.delta = 4 + trial % 10;
        params.eps = trial % 2 ? Rational::make(1, 2) : Rational::make(1, 3);
        const int n = params.delta * 12;
        const Workload wl = random_sequence(n, RandomModel::DeltaSafe, rng, params);
        CHECK_NOTHROW(wl.instance.validate());
        const int limit = static_cast<int>(floor_mul_div(params.delta, params.eps.den - params.eps.num, params.eps.den));
        const Adjacency g = build_adjacency(n, wl.requests);
        CHECK(max_degree(g) <= limit);
        std::size_t edges = 0;
        for (const auto& nb : g) edges += nb.size();
        CHECK(edges == 2 * wl.requests.size());
    }
}

TEST_CASE("skew workload respects the degree bound") {
    const Workload wl = delta_skew_workload(400, 20, Rational::make(1, 2));
    CHECK_NOTHROW(wl.instance.validate());
    CHECK(max_degree(build_adjacency(400, wl.requests)) <= 10);
    CHECK(wl.requests.size() == 10u * 10u * 10u);
}

TEST_CASE("generators are deterministic per seed") {
    auto make = [](std::uint64_t seed) {
        Rng rng(seed);
        return random_sequence(40, RandomModel::BipartiteSafe, rng);
    };
    const Workload a = make(7), b = make(7), c = make(8);
    CHECK(a.requests == b.requests);
    CHECK(a.instance.c0 == b.instance.c0);
    CHECK_FALSE(a.requests == c.requests);
    Rng r1(3), r2(3);
    CHECK(fully_dynamic_workload(30, 50, Rational::make(1, 2), r1).requests ==
          fully_dynamic_workload(30, 50, Rational::make(1, 2), r2).requests);
}
