#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "recolor/adversaries.hpp"
#include "recolor/fully_dynamic.hpp"

using namespace recolor;

namespace {

Instance alternating(int n, Rational eps) {
    std::vector<Color> c0(n);
    for (int v = 0; v < n; ++v) c0[v] = v % 2;
    return Instance::unit_two_color(Model::FullyDynamic2, c0, eps);
}

}  // namespace

TEST_CASE("closing a triangle ends the phase") {
    GreedyRecoloring g(alternating(16, Rational::make(1, 2)), Rational::make(1, 2));
    CHECK(g.process(1, 2).branch == Branch::Merge);
    CHECK(g.process(2, 3).branch == Branch::Merge);
    const StepReport r = g.process(3, 1);
    CHECK(r.branch == Branch::OddCycle);
    CHECK(r.mono_at_arrival);
    CHECK(r.phase_ended);
    CHECK(r.cost == 1);
    CHECK(g.ledger().phases_completed == 1);
    CHECK(g.coloring().color(3) != g.coloring().color(1));
}

TEST_CASE("monochromatic request across components flips the lighter one") {
    GreedyRecoloring g(alternating(32, Rational::make(1, 2)), Rational::make(1, 2));
    for (auto [u, v] : std::vector<std::pair<int, int>>{{0, 1}, {2, 3}, {4, 5}, {5, 6}}) CHECK(g.process(u, v).cost == 0);
    const StepReport r = g.process(4, 2);
    CHECK(r.branch == Branch::Flip);
    CHECK(r.cost == 2);
    CHECK_FALSE(r.phase_ended);
    CHECK(g.coloring().color(2) == 1);
    CHECK(g.coloring().color(3) == 0);
}

TEST_CASE("repeat request inside a component is free") {
    GreedyRecoloring g(alternating(16, Rational::make(1, 2)), Rational::make(1, 2));
    g.process(0, 1);
    const StepReport r = g.process(1, 0);
    CHECK(r.branch == Branch::None);
    CHECK(r.cost == 0);
}

TEST_CASE("eps floor") {
    CHECK_THROWS_AS(GreedyRecoloring(alternating(8, Rational::make(1, 2)), Rational::make(1, 2)), InvalidInstance);
    CHECK_NOTHROW(GreedyRecoloring(alternating(16, Rational::make(1, 2)), Rational::make(1, 2)));
    GreedyOptions relaxed;
    relaxed.enforce_eps_floor = false;
    CHECK_NOTHROW(GreedyRecoloring(alternating(8, Rational::make(1, 2)), Rational::make(1, 2), relaxed));
}

TEST_CASE("balanced start costs nothing and invalid requests are rejected") {
    GreedyRecoloring g(alternating(20, Rational::make(1, 2)), Rational::make(1, 2));
    CHECK(g.ledger().total_cost == 0);
    CHECK(g.ledger().phases_started == 1);
    CHECK_THROWS_AS(g.process(3, 3), InputError);
    CHECK_THROWS_AS(g.process(0, 20), InputError);
}

TEST_CASE("property: every step leaves a proper request edge within capacity") {
    const Rational eps_values[] = {Rational::make(1, 2), Rational::make(1, 4), Rational::make(1, 8)};
    for (int trial = 0; trial < 240; ++trial) {
        Rng rng(derive_seed(31, trial));
        const Rational eps = eps_values[trial % 3];
        const int n = 2 * (32 + static_cast<int>(uniform_index(rng, 40)));
        Workload wl = fully_dynamic_workload(n, 4 * n, eps, rng);
        GreedyRecoloring g(wl.instance, eps);
        const Weight cap = augmented(wl.instance.B, eps);
        Weight summed = 0;
        std::int64_t phases = 0;
        for (const Request& q : wl.requests) {
            const StepReport r = g.process(q.u, q.v);
            summed += r.cost;
            phases += r.phase_ended;
            CHECK(g.coloring().color(q.u) != g.coloring().color(q.v));
            CHECK(g.coloring().load(0) <= cap);
            CHECK(g.coloring().load(1) <= cap);
            if (r.phase_ended) CHECK((r.branch == Branch::OddCycle || r.branch == Branch::Infeasible));
            if (!r.mono_at_arrival && r.branch != Branch::Merge) CHECK(r.cost == 0);
        }
        CHECK(summed == g.ledger().total_cost);
        CHECK(phases == g.ledger().phases_completed);
        CHECK(g.coloring().reconciles());
    }
}

TEST_CASE("weighted instances respect the augmented capacity") {
    for (int trial = 0; trial < 60; ++trial) {
        Rng rng(derive_seed(32, trial));
        RandomParams params;
        params.max_weight = 5;
        params.length = 300;
        const int n = 64;
        Workload wl = random_sequence(n, RandomModel::BipartiteSafe, rng, params);
        GreedyRecoloring g(wl.instance, params.eps);
        const Weight cap = augmented(wl.instance.B, params.eps);
        for (const Request& q : wl.requests) {
            g.process(q.u, q.v);
            CHECK(g.coloring().load(0) <= cap);
            CHECK(g.coloring().load(1) <= cap);
        }
        CHECK(g.ledger().phases_completed == 0);
    }
}
