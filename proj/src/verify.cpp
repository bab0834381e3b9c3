#include "recolor/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <unordered_set>

#include "recolor/delta.hpp"
#include "recolor/follow_greedy.hpp"
#include "recolor/fully_dynamic.hpp"
#include "recolor/oracles.hpp"
#include "recolor/rebalance2.hpp"
#include "recolor/tracker.hpp"

namespace recolor {

// ---- reference checks -----------------------------------------------------

namespace reference {

Components bfs_components(int n, std::span<const Request> edges) {
    std::vector<std::vector<Vertex>> adj(n);
    for (const Request& e : edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    Components out;
    out.comp.assign(n, -1);
    out.side.assign(n, 0);
    std::vector<Vertex> queue;
    for (Vertex s = 0; s < n; ++s) {
        if (out.comp[s] >= 0) continue;
        const int c = out.count++;
        out.bipartite.push_back(1);
        out.comp[s] = c;
        queue.assign(1, s);
        for (std::size_t i = 0; i < queue.size(); ++i) {
            const Vertex x = queue[i];
            for (Vertex y : adj[x]) {
                if (out.comp[y] < 0) {
                    out.comp[y] = c;
                    out.side[y] = out.side[x] ^ 1;
                    queue.push_back(y);
                } else if (out.side[y] == out.side[x]) {
                    out.bipartite[c] = 0;
                }
            }
        }
    }
    return out;
}

Weight enumerate_opt2(const Instance& instance, std::span<const Request> requests) {
    const Components comps = bfs_components(instance.n, requests);
    for (auto b : comps.bipartite)
        if (!b) return -1;
    const int m = comps.count;
    Weight best = -1;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        Weight on0 = 0, cost = 0;
        for (Vertex v = 0; v < instance.n; ++v) {
            const Color c = static_cast<Color>(comps.side[v] ^ (mask >> comps.comp[v] & 1));
            if (c == 0) on0 += instance.w[v];
            if (c != instance.c0[v]) cost += instance.w[v];
        }
        if (on0 == instance.B && (best < 0 || cost < best)) best = cost;
    }
    return best;
}

DeviationAudit audit_follow_deviation(const Trace& trace, Rational eps) {
    const Instance& inst = trace.instance;
    FollowGreedy follow(inst, eps, false);
    std::vector<std::vector<Vertex>> adj(inst.n);
    std::vector<int> side(inst.n, -1);
    std::vector<Vertex> queue;
    DeviationAudit out;
    for (const Request& r : trace.requests) {
        follow.process(r.u, r.v);
        adj[r.u].push_back(r.v);
        adj[r.v].push_back(r.u);
        if (follow.delegated()) {
            out.delegated = true;
            continue;
        }
        const auto colors = follow.coloring().colors();
        Weight d = 0, d_first = 0, d_second = 0, wp = 0;
        queue.assign(1, r.u);
        side[r.u] = 0;
        for (std::size_t i = 0; i < queue.size(); ++i) {
            const Vertex x = queue[i];
            for (Vertex y : adj[x])
                if (side[y] < 0) {
                    side[y] = side[x] ^ 1;
                    queue.push_back(y);
                }
        }
        for (Vertex x : queue) {
            const Weight w = inst.w[x];
            wp += w;
            if (colors[x] != inst.c0[x]) d += w;
            if (side[x] != inst.c0[x]) d_first += w;
            if ((side[x] ^ 1) != inst.c0[x]) d_second += w;
            side[x] = -1;
        }
        const __int128 q4 = 4 * static_cast<__int128>(eps.den);
        if (q4 * d > q4 * std::min(d_first, d_second) + static_cast<__int128>(eps.num) * wp) ++out.violations;
        ++out.steps;
    }
    out.cost = follow.ledger().total_cost;
    return out;
}

}  // namespace reference

// ---- criteria -------------------------------------------------------------

namespace {

using Clock = std::chrono::steady_clock;

// Constants pinned from the first calibration run. The criteria allow the
// measured constant to exceed these by at most 10%. The deterministic Delta
// runs calibrated at zero rebalances, so any rebalance there is a regression.
constexpr double kGreedyKappa = 0.111265;
constexpr double kFollowKappa = 2.34375;
constexpr double kDeltaRebalanceKappa = 0.0;

double log2n(int n) { return std::log2(static_cast<double>(n)); }

std::uint64_t seed_for(std::uint64_t criterion, std::uint64_t trial) { return derive_seed(criterion, trial); }

Weight uniform_weight(Rng& rng, Weight lo, Weight hi) {
    return lo + static_cast<Weight>(uniform_index(rng, static_cast<std::size_t>(hi - lo + 1)));
}

Request random_edge(Rng& rng, int n) {
    const auto a = static_cast<Vertex>(uniform_index(rng, n));
    auto b = static_cast<Vertex>(uniform_index(rng, n - 1));
    if (b >= a) ++b;
    return Request{a, b};
}

bool kappa_ok(double measured, double pinned) { return measured <= 1.1 * pinned; }

std::string kappa_text(const char* name, double measured, double pinned) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s measured %.6f pinned %.6f", name, measured, pinned);
    return buf;
}

// 1. FPTAS against the exact DP.
bool fptas_soundness(const SuiteOptions& o, std::ostream& detail) {
    const int sets = o.quick ? 100 : 500;
    int cases = 0, exact_feasible = 0, missed = 0, out_of_range = 0, bad_assignment = 0;
    std::size_t max_list = 0;
    Rng rng(seed_for(1, 0));
    for (Rational eps : {Rational::make(1, 10), Rational::make(3, 10), Rational::make(1, 2)}) {
        for (int s = 0; s < sets; ++s) {
            const int m = 1 + static_cast<int>(uniform_index(rng, 20));
            std::vector<SideWeights> comps(m);
            Weight total = 0, picked = 0;
            for (auto& c : comps) {
                c.a = uniform_weight(rng, 1, 100);
                c.b = uniform_weight(rng, 0, 100);
                total += c.a + c.b;
                picked += uniform_index(rng, 2) ? c.a : c.b;
            }
            const Weight target = s % 2 == 0 ? picked : uniform_weight(rng, 0, total);
            const auto exact = rebalance_exact(comps, target);
            FptasStats stats;
            const auto approx = rebalance_fptas(comps, target, eps, &stats);
            max_list = std::max(max_list, stats.max_list);
            ++cases;
            if (exact) ++exact_feasible;
            if (exact && !approx) ++missed;
            if (!approx) continue;
            const Weight x = approx->weight_on_first;
            if (x < target ||
                static_cast<__int128>(x) * eps.den > static_cast<__int128>(eps.den + eps.num) * target)
                ++out_of_range;
            Weight sum = 0;
            if (static_cast<int>(approx->a_on_first.size()) != m) {
                ++bad_assignment;
                continue;
            }
            for (int i = 0; i < m; ++i) sum += approx->a_on_first[i] ? comps[i].a : comps[i].b;
            if (sum != x) ++bad_assignment;
        }
    }
    detail << cases << " sets, " << exact_feasible << " exactly feasible, missed " << missed << ", out of range "
           << out_of_range << ", bad assignments " << bad_assignment << ", max list " << max_list;
    return missed == 0 && out_of_range == 0 && bad_assignment == 0;
}

// 2. Tracker parity against BFS; ledgers against the replayer; loads against recounts.
bool core_correctness(const SuiteOptions& o, std::ostream& detail) {
    const int sequences = o.quick ? 200 : 1000;
    int tracker_mismatch = 0, replay_mismatch = 0, load_mismatch = 0, errors = 0;
    std::int64_t steps = 0;
    std::string first_error;
    for (int s = 0; s < sequences; ++s) {
        Rng rng(seed_for(2, s));
        int n = 2 * (1 + static_cast<int>(uniform_index(rng, 64)));
        const int m = static_cast<int>(uniform_index(rng, 2 * n + 1));
        const Rational eps = Rational::make(1, 2);
        Trace trace;
        AlgorithmId id;
        switch (s % 3) {
            case 0:
                trace = fully_dynamic_workload(n, m, eps, rng);
                id = AlgorithmId::Greedy2;
                break;
            case 1:
                trace = random_sequence(n, RandomModel::BipartiteSafe, rng, {std::max(m, 1), eps, 20, s % 2 ? 5 : 1});
                id = AlgorithmId::Follow;
                break;
            default: {
                const int delta = s % 2 ? 4 : 8;
                n = delta * std::max(1, n / delta);
                trace = random_sequence(n, RandomModel::DeltaSafe, rng, {0, eps, delta});
                id = s % 4 == 2 ? AlgorithmId::DeltaDet : AlgorithmId::DeltaRand;
                break;
            }
        }
        const Instance& inst = trace.instance;

        ComponentTracker tracker(inst.w);
        for (const Request& r : trace.requests) tracker.merge(r.u, r.v);
        const auto ref = reference::bfs_components(inst.n, trace.requests);
        std::vector<int> root_of(ref.count, -1), comp_of(inst.n, -1), offset(ref.count, -1);
        std::vector<Weight> comp_weight(ref.count, 0);
        bool ok = true;
        for (Vertex v = 0; v < inst.n; ++v) {
            const Position p = tracker.find(v);
            const int c = ref.comp[v];
            comp_weight[c] += inst.w[v];
            if (root_of[c] < 0) root_of[c] = p.root;
            if (comp_of[p.root] < 0) comp_of[p.root] = c;
            ok = ok && root_of[c] == p.root && comp_of[p.root] == c;
            if (ref.bipartite[c]) {
                const int off = p.parity ^ ref.side[v];
                if (offset[c] < 0) offset[c] = off;
                ok = ok && offset[c] == off;
            }
        }
        for (int c = 0; c < ref.count; ++c) {
            const ComponentRecord& rec = tracker.record(root_of[c]);
            ok = ok && rec.odd == !ref.bipartite[c] && rec.weight() == comp_weight[c];
        }
        if (!ok) ++tracker_mismatch;

        try {
            auto alg = make_algorithm(id, inst, eps, seed_for(2, 100000 + s), {true, false});
            Weight reported = 0;
            for (const Request& r : trace.requests) {
                reported += alg->process(r.u, r.v).cost;
                ++steps;
                const ColoringState& st = alg->coloring();
                const auto recount = color_loads(st.colors(), st.weights(), st.k());
                bool loads_ok = st.reconciles();
                for (Color c = 0; c < st.k(); ++c)
                    loads_ok = loads_ok && recount[c] == st.load(c) && st.residual(c) == st.capacity(c) - recount[c] &&
                               st.residual(c) >= 0;
                if (!loads_ok) {
                    ++load_mismatch;
                    break;
                }
            }
            const Replay replay = replay_events(inst, alg->ledger().log);
            const auto final_colors = alg->coloring().colors();
            if (replay.total != alg->ledger().total_cost || reported != replay.total ||
                !std::equal(replay.colors.begin(), replay.colors.end(), final_colors.begin(), final_colors.end()))
                ++replay_mismatch;
        } catch (const std::exception& e) {
            if (first_error.empty()) first_error = e.what();
            ++errors;
        }
    }
    detail << sequences << " sequences, " << steps << " steps; tracker mismatches " << tracker_mismatch
           << ", replay mismatches " << replay_mismatch << ", load mismatches " << load_mismatch << ", errors " << errors;
    if (!first_error.empty()) detail << " (" << first_error << ")";
    return tracker_mismatch == 0 && replay_mismatch == 0 && load_mismatch == 0 && errors == 0;
}

// 3. Odd-cycle adversary against Greedy-Recoloring.
bool fully_dynamic_separation(const SuiteOptions&, std::ostream& detail) {
    bool ok = true;
    double first_ratio = 0, last_ratio = 0, previous = 0;
    for (int n : {32, 64, 128}) {
        AdversaryParams p;
        p.n = n;
        p.seed = static_cast<std::uint64_t>(n);
        p.run.oracles = false;
        const AdversaryRun run = run_adversary(AdversaryVariant::OddCycle, AlgorithmId::Greedy2, p);
        const Weight l = run.cycle_length;
        const auto sigma = static_cast<Weight>(run.trace.requests.size());
        const Weight cost = run.output.ledger.total_cost;
        const Weight best = run.offline_best;
        const double ratio = static_cast<double>(cost) / static_cast<double>(std::max<Weight>(best, 1));
        const bool here = run.all_mono && sigma == l * l && cost >= sigma && best * l <= l * l + 2 * sigma &&
                          run.offline_family <= l * l + 2 * sigma && 4 * cost >= l * best && ratio > previous;
        ok = ok && here;
        if (n == 32) first_ratio = ratio;
        last_ratio = ratio;
        previous = ratio;
        char buf[160];
        std::snprintf(buf, sizeof buf, "n=%d l=%lld cost=%lld best_off=%lld ratio=%.2f%s; ", n,
                      static_cast<long long>(l), static_cast<long long>(cost), static_cast<long long>(best), ratio,
                      run.all_mono ? "" : " (non-mono request)");
        detail << buf;
    }
    // Linear growth: quadrupling n at least doubles the ratio.
    const bool linear = last_ratio >= 2 * first_ratio;
    detail << "ratio(128)/ratio(32)=" << last_ratio / first_ratio;
    return ok && linear;
}

// 4. Greedy-Recoloring cost per phase against n log n.
bool greedy_upper_bound(const SuiteOptions& o, std::ostream& detail) {
    const int seeds = o.quick ? 2 : 5;
    double kappa = 0;
    int runs = 0;
    auto account = [&](const CostLedger& ledger, int n) {
        const double per_phase = static_cast<double>(ledger.total_cost) /
                                 static_cast<double>(std::max<std::int64_t>(ledger.phases_completed, 1));
        kappa = std::max(kappa, per_phase / (n * log2n(n)));
        ++runs;
    };
    RunOptions ro;
    ro.oracles = false;
    for (int n : {64, 128, 256}) {
        for (int s = 0; s < seeds; ++s) {
            Rng rng(seed_for(4, static_cast<std::uint64_t>(n * 100 + s)));
            const Trace trace = fully_dynamic_workload(n, 8 * n, Rational::make(1, 2), rng);
            account(run_trace(AlgorithmId::Greedy2, trace, Rational::make(1, 2), 0, ro).ledger, n);
        }
        AdversaryParams p;
        p.n = n;
        p.run = ro;
        account(run_adversary(AdversaryVariant::OddCycle, AlgorithmId::Greedy2, p).output.ledger, n);
    }
    detail << runs << " runs, " << kappa_text("kappa", kappa, kGreedyKappa);
    return kappa_ok(kappa, kGreedyKappa);
}

// 5. Follow-Greedy against the exact two-color OPT.
bool follow_competitiveness(const SuiteOptions& o, std::ostream& detail) {
    const int seeds = o.quick ? 2 : 5;
    double kappa = 0;
    int runs = 0, delegating = 0, delegation_violations = 0, steps = 0, violations = 0;
    RunOptions ro;
    ro.oracles = false;
    for (Rational eps : {Rational::make(1, 2), Rational::make(1, 10)}) {
        for (int n : {16, 32, 64}) {
            std::vector<Trace> traces;
            AdversaryParams p;
            p.n = n;
            p.eps = eps;
            p.run = ro;
            traces.push_back(run_adversary(AdversaryVariant::Batch, AlgorithmId::Follow, p).trace);
            for (int s = 1; s <= seeds; ++s) {
                p.seed = static_cast<std::uint64_t>(s);
                traces.push_back(run_adversary(AdversaryVariant::BatchRand, AlgorithmId::Follow, p).trace);
            }
            for (int s = 0; s < seeds; ++s)
                for (Weight wmax : {Weight{1}, Weight{8}}) {
                    Rng rng(seed_for(5, static_cast<std::uint64_t>(n * 1000 + s * 10 + wmax)));
                    traces.push_back(random_sequence(n, RandomModel::BipartiteSafe, rng, {0, eps, 20, wmax}));
                }
            for (const Trace& t : traces) {
                const Weight opt = opt_2recoloring(t.instance, t.requests).value;
                const auto audit = reference::audit_follow_deviation(t, eps);
                kappa = std::max(kappa, competitive_ratio(audit.cost, opt) / log2n(n));
                steps += audit.steps;
                violations += audit.violations;
                if (audit.delegated) {
                    ++delegating;
                    const Weight W = t.instance.total_weight();
                    if (2 * static_cast<__int128>(eps.den) * opt < static_cast<__int128>(eps.num) * W)
                        ++delegation_violations;
                }
                ++runs;
            }
        }
    }
    detail << runs << " runs, " << kappa_text("kappa'", kappa, kFollowKappa) << ", deviation violations "
           << violations << "/" << steps << " steps, delegating runs " << delegating << " (OPT < eps/2 W in "
           << delegation_violations << ")";
    return kappa_ok(kappa, kFollowKappa) && violations == 0 && delegation_violations == 0;
}

// 6. Oracles against exhaustive enumeration and the phase lower bound.
bool oracle_cross_validation(const SuiteOptions& o, std::ostream& detail) {
    const int instances = o.quick ? 500 : 3000;
    int feasible = 0, mismatches = 0, bad_certificates = 0;
    for (int s = 0; s < instances; ++s) {
        Rng rng(seed_for(6, s));
        const int n = 2 * (1 + static_cast<int>(uniform_index(rng, 4)));
        Instance inst;
        inst.model = Model::Online2;
        inst.n = n;
        inst.w.assign(n, 1);
        if (s % 2)
            for (auto& x : inst.w) x = uniform_weight(rng, 1, 4);
        if (inst.total_weight() % 2) ++inst.w[0];
        inst.B = inst.total_weight() / 2;
        inst.c0.resize(n);
        for (auto& c : inst.c0) c = static_cast<Color>(uniform_index(rng, 2));
        try {
            inst.validate();
        } catch (const InvalidInstance&) {
            continue;
        }
        std::vector<std::uint8_t> hidden(n);
        for (auto& h : hidden) h = static_cast<std::uint8_t>(uniform_index(rng, 2));
        hidden[0] = 0;
        hidden[1] = 1;
        const int m = static_cast<int>(uniform_index(rng, 21));
        std::vector<Request> reqs;
        while (static_cast<int>(reqs.size()) < m) {
            const Request r = random_edge(rng, n);
            if (s % 3 != 0 && hidden[r.u] == hidden[r.v]) continue;
            reqs.push_back(r);
        }
        const Weight exhaustive = reference::enumerate_opt2(inst, reqs);
        Weight dp = -1;
        OracleReport rep;
        try {
            rep = opt_2recoloring(inst, reqs);
            dp = rep.value;
        } catch (const InfeasibleInstance&) {
        }
        if (dp != exhaustive) ++mismatches;
        if (dp < 0) continue;
        ++feasible;
        Weight on0 = 0, cost = 0;
        bool proper = true;
        for (const Request& r : reqs) proper = proper && rep.coloring[r.u] != rep.coloring[r.v];
        for (Vertex v = 0; v < n; ++v) {
            if (rep.coloring[v] == 0) on0 += inst.w[v];
            if (rep.coloring[v] != inst.c0[v]) cost += inst.w[v];
        }
        if (!proper || on0 != inst.B || cost != dp) ++bad_certificates;
    }

    const int tiny = o.quick ? 300 : 1500;
    int lb_violations = 0, bad_paths = 0;
    for (int s = 0; s < tiny; ++s) {
        Rng rng(seed_for(6, 1000000 + s));
        const int n = 4 + 2 * static_cast<int>(uniform_index(rng, 3));
        std::vector<Color> c0(n);
        for (int v = 0; v < n; ++v) c0[v] = v % 2;
        std::shuffle(c0.begin(), c0.end(), rng);
        const Instance inst = Instance::unit_two_color(Model::FullyDynamic2, c0, Rational::make(1, 2));
        const int m = 1 + static_cast<int>(uniform_index(rng, 20));
        std::vector<Request> reqs;
        for (int t = 0; t < m; ++t) reqs.push_back(random_edge(rng, n));
        GreedyRecoloring greedy(inst, inst.eps, GreedyOptions{false, false});
        for (const Request& r : reqs) greedy.process(r.u, r.v);
        const OracleReport brute = opt_fully_dynamic_bruteforce(inst, reqs);
        if (phase_lower_bound(greedy.ledger()) > brute.value) ++lb_violations;
        Weight cost = 0;
        std::vector<Color> prev = inst.c0;
        bool ok = brute.path.size() == reqs.size();
        for (std::size_t t = 0; ok && t < reqs.size(); ++t) {
            const auto& c = brute.path[t];
            int zeros = 0;
            for (Vertex v = 0; v < n; ++v) {
                zeros += c[v] == 0;
                cost += c[v] != prev[v];
            }
            ok = zeros == inst.B && c[reqs[t].u] != c[reqs[t].v];
            prev = c;
        }
        if (!ok || cost != brute.value) ++bad_paths;
    }
    detail << instances << " two-color instances (" << feasible << " feasible): mismatches " << mismatches
           << ", bad certificates " << bad_certificates << "; " << tiny << " fully dynamic instances: phase LB above OPT "
           << lb_violations << ", bad paths " << bad_paths;
    return mismatches == 0 && bad_certificates == 0 && lb_violations == 0 && bad_paths == 0;
}

// 7. The maintained cover of G_M against the exact minimum.
bool vertex_cover_ratio(const SuiteOptions& o, std::ostream& detail) {
    const int wanted = o.quick ? 50 : 200;
    int accepted = 0, attempts = 0, too_large = 0, not_cover = 0, bad_minimum = 0;
    int worst_c = 0, worst_opt = 1;
    while (accepted < wanted && attempts < 50 * wanted) {
        Rng rng(seed_for(7, attempts++));
        const int delta = 4 + static_cast<int>(uniform_index(rng, 7));
        const int n = delta * (4 + static_cast<int>(uniform_index(rng, 12)));
        const Rational eps = Rational::make(1, 2);
        const int limit = static_cast<int>(floor_mul_div(delta, eps.den - eps.num, eps.den));
        const int length = 1 + static_cast<int>(uniform_index(rng, static_cast<std::size_t>(n * limit / 2)));
        const Trace trace = random_sequence(n, RandomModel::DeltaSafe, rng, {length, eps, delta});
        DeltaRecoloring alg(trace.instance, Policy::Deterministic, 0, false);
        for (const Request& r : trace.requests) alg.process(r.u, r.v);
        const auto& gm = alg.gm_edges();
        if (gm.empty()) continue;
        OracleReport opt;
        try {
            opt = min_vertex_cover(n, gm, 12);
        } catch (const ScaleExceeded&) {
            ++too_large;
            continue;
        }
        ++accepted;
        std::vector<std::uint8_t> in_opt(n, 0);
        for (Vertex v : opt.cover) in_opt[v] = 1;
        for (const Request& e : gm) {
            if (!alg.in_cover(e.u) && !alg.in_cover(e.v)) ++not_cover;
            if (!in_opt[e.u] && !in_opt[e.v]) ++bad_minimum;
        }
        if (static_cast<Weight>(opt.cover.size()) != opt.value) ++bad_minimum;
        if (alg.cover_size() * worst_opt > worst_c * opt.value) {
            worst_c = alg.cover_size();
            worst_opt = static_cast<int>(opt.value);
        }
    }
    const bool ratio_ok = worst_c <= 2 * worst_opt;
    detail << accepted << " instances (" << too_large << " over budget skipped), worst |C|/|C*| = " << worst_c << "/"
           << worst_opt << ", uncovered G_M edges " << not_cover << ", bad minimum certificates " << bad_minimum;
    return accepted == wanted && ratio_ok && not_cover == 0 && bad_minimum == 0;
}

// 8. Deterministic Delta-recoloring capacity and rebalance count; equitable coloring.
bool deterministic_delta(const SuiteOptions& o, std::ostream& detail) {
    const int n = 2000, delta = 20;
    const Rational eps = Rational::make(1, 2);
    const Weight cap = augmented(n / delta, eps);
    Weight max_load = 0;
    std::int64_t max_rebalances = 0, requests = 0;
    int capacity_violations = 0;
    auto watch = [&](DeltaRecoloring& alg) {
        const auto loads = color_loads(alg.coloring().colors(), alg.coloring().weights(), delta);
        const Weight top = *std::max_element(loads.begin(), loads.end());
        max_load = std::max(max_load, top);
        if (top > cap) ++capacity_violations;
        ++requests;
    };
    std::vector<Color> c0(n);
    for (int v = 0; v < n; ++v) c0[v] = v % delta;
    {
        DeltaRecoloring alg(Instance::delta(c0, delta, eps), Policy::Deterministic, 0, false);
        DeltaSetAdversary adv(n, delta, eps);
        while (!adv.exhausted()) {
            const Request r = adv.next(alg.coloring().colors());
            alg.process(r.u, r.v);
            watch(alg);
        }
        max_rebalances = std::max(max_rebalances, alg.ledger().rebalance_calls);
        detail << "delta-set: " << adv.emitted() << " requests, cost " << alg.ledger().total_cost << ", "
               << alg.ledger().rebalance_calls << " rebalances; ";
    }
    const int seeds = o.quick ? 1 : 3;
    for (int s = 0; s < seeds; ++s) {
        Rng rng(seed_for(8, s));
        const Trace trace = random_sequence(n, RandomModel::DeltaSafe, rng, {0, eps, delta});
        DeltaRecoloring alg(trace.instance, Policy::Deterministic, 0, false);
        for (const Request& r : trace.requests) {
            alg.process(r.u, r.v);
            watch(alg);
        }
        max_rebalances = std::max(max_rebalances, alg.ledger().rebalance_calls);
    }
    const double kappa = static_cast<double>(max_rebalances) / delta;

    const int graphs = o.quick ? 50 : 200;
    int equitable_failures = 0;
    for (int s = 0; s < graphs; ++s) {
        Rng rng(seed_for(8, 1000 + s));
        const int gn = 10 + static_cast<int>(uniform_index(rng, 291));
        const int r = 1 + static_cast<int>(uniform_index(rng, 12));
        std::vector<int> degree(gn, 0);
        std::unordered_set<std::uint64_t> seen;
        std::vector<Request> edges;
        for (int t = 0; t < gn * r; ++t) {
            const Request e = random_edge(rng, gn);
            const auto key = static_cast<std::uint64_t>(std::min(e.u, e.v)) << 32 | std::max(e.u, e.v);
            if (degree[e.u] >= r || degree[e.v] >= r || !seen.insert(key).second) continue;
            ++degree[e.u];
            ++degree[e.v];
            edges.push_back(e);
        }
        const auto colors = equitable_coloring(build_adjacency(gn, edges), r + 1);
        bool ok = static_cast<int>(colors.size()) == gn;
        std::vector<int> sizes(r + 1, 0);
        for (Color c : colors) {
            ok = ok && c >= 0 && c <= r;
            if (ok) ++sizes[c];
        }
        for (const Request& e : edges) ok = ok && colors[e.u] != colors[e.v];
        ok = ok && *std::max_element(sizes.begin(), sizes.end()) - *std::min_element(sizes.begin(), sizes.end()) <= 1;
        if (!ok) ++equitable_failures;
    }
    detail << requests << " audited steps, max load " << max_load << " (cap " << cap << "), "
           << kappa_text("rebalances/Delta", kappa, kDeltaRebalanceKappa) << ", equitable failures "
           << equitable_failures << "/" << graphs;
    return capacity_violations == 0 && kappa_ok(kappa, kDeltaRebalanceKappa) && equitable_failures == 0;
}

// 9. Randomized Delta-recoloring statistics.
bool randomized_delta(const SuiteOptions& o, std::ostream& detail) {
    const int n = 10000, delta = 20;
    const Rational eps = Rational::make(1, 2);
    const int trials = o.quick ? 10 : 100;
    const Weight sample_cap = augmented(n / delta, eps.halved());
    const std::int64_t phase_floor =
        static_cast<std::int64_t>(std::ceil(eps.value() * eps.value() * n / 4.0 - 1e-9));

    struct Trial {
        bool sample_ok = false;
        std::int64_t watched = 0, mono = 0;
        std::int64_t first_phase = 0;
        double bound = 0;
        std::vector<std::int64_t> phases;
    };
    std::vector<Trial> results(trials);
    const Trace skew = delta_skew_workload(n, delta, eps);
    parallel_for(trials, o.workers > 0 ? o.workers : worker_count(), [&](std::size_t t) {
        Trial& out = results[t];
        Rng rng(seed_for(9, t));
        const Trace trace = random_sequence(n, RandomModel::DeltaSafe, rng, {0, eps, delta});

        // (a) one raw sampling pass over the full graph
        Rng sample_rng(seed_for(90, t));
        const auto sample = sample_feasible_coloring(build_adjacency(n, trace.requests), delta, sample_rng);
        const auto loads = color_loads(sample, std::vector<Weight>(n, 1), delta);
        out.sample_ok = *std::max_element(loads.begin(), loads.end()) <= sample_cap;

        auto watch = [&](const StepReport& r) {
            if (r.new_edge && r.endpoint_recolored_before) {
                ++out.watched;
                out.mono += r.mono_at_arrival;
            }
        };
        // (b), (d) on the oblivious random sequence
        DeltaRecoloring alg(trace.instance, Policy::Randomized, seed_for(91, t), false);
        bool first_phase = true;
        for (const Request& r : trace.requests) {
            const StepReport rep = alg.process(r.u, r.v);
            watch(rep);
            if (rep.branch == Branch::DeltaRebalance) first_phase = false;
            if (first_phase && rep.branch == Branch::Recolor) ++out.first_phase;
        }
        std::vector<std::uint8_t> matched(n, 0);
        std::int64_t matching = 0;
        for (const Request& r : trace.requests)
            if (trace.instance.c0[r.u] == trace.instance.c0[r.v] && !matched[r.u] && !matched[r.v]) {
                matched[r.u] = matched[r.v] = 1;
                ++matching;
            }
        out.bound = 2.0 * static_cast<double>(matching) * (1 - eps.value()) / eps.value();

        // (b), (c) on the skewed sequence
        DeltaRecoloring skewed(skew.instance, Policy::Randomized, seed_for(92, t), false);
        for (const Request& r : skew.requests) watch(skewed.process(r.u, r.v));
        out.phases = skewed.phase_recolorings();
        for (std::int64_t x : alg.phase_recolorings()) out.phases.push_back(x);
    });

    int samples_ok = 0;
    std::int64_t watched = 0, mono = 0, phases = 0, heavy_phases = 0;
    double mean_r = 0, mean_bound = 0;
    for (const Trial& t : results) {
        samples_ok += t.sample_ok;
        watched += t.watched;
        mono += t.mono;
        mean_r += static_cast<double>(t.first_phase);
        mean_bound += t.bound;
        for (std::int64_t x : t.phases) {
            ++phases;
            heavy_phases += x >= phase_floor;
        }
    }
    mean_r /= trials;
    mean_bound /= trials;
    double var = 0;
    for (const Trial& t : results) var += std::pow(static_cast<double>(t.first_phase) - mean_r, 2);
    const double se_r = trials > 1 ? std::sqrt(var / (trials - 1) / trials) : 0;
    const double p = watched ? static_cast<double>(mono) / static_cast<double>(watched) : 0;
    const double se_p = watched ? std::sqrt(p * (1 - p) / static_cast<double>(watched)) : 0;
    const double p_limit = 1.0 / (eps.value() * delta);

    const bool a = samples_ok * 100 >= 99 * trials;
    const bool b = watched > 0 && p <= p_limit + 3 * se_p;
    const bool c = phases > 0 && heavy_phases * 100 >= 99 * phases;
    const bool d = mean_r <= mean_bound + 3 * se_r;
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "(a) %d/%d samples within %lld; (b) mono %.4f over %lld watched (limit %.3f + 3se %.4f); "
                  "(c) %lld/%lld phases with >= %lld recolorings; (d) mean first-phase recolorings %.1f vs bound "
                  "%.1f (se %.2f)",
                  samples_ok, trials, static_cast<long long>(sample_cap), p, static_cast<long long>(watched), p_limit,
                  3 * se_p, static_cast<long long>(heavy_phases), static_cast<long long>(phases),
                  static_cast<long long>(phase_floor), mean_r, mean_bound, se_r);
    detail << buf;
    return a && b && c && d;
}

// 10. Repeated runs give identical CSV rows.
bool determinism(const SuiteOptions&, std::ostream& detail) {
    const Rational eps = Rational::make(1, 2);
    struct Case {
        AlgorithmId id;
        Trace trace;
        std::uint64_t seed;
    };
    std::vector<Case> cases;
    {
        Rng rng(seed_for(10, 0));
        cases.push_back({AlgorithmId::Greedy2, fully_dynamic_workload(64, 512, eps, rng), 1});
        cases.push_back({AlgorithmId::Follow, random_sequence(64, RandomModel::BipartiteSafe, rng, {0, eps, 20, 8}), 1});
        const Trace d = random_sequence(400, RandomModel::DeltaSafe, rng, {0, eps, 20});
        cases.push_back({AlgorithmId::DeltaDet, d, 1});
        cases.push_back({AlgorithmId::DeltaRand, d, 7});
        cases.push_back({AlgorithmId::DeltaRand, delta_skew_workload(400, 20, eps), 11});
        AdversaryParams p;
        p.n = 32;
        cases.push_back({AlgorithmId::Greedy2, run_adversary(AdversaryVariant::OddCycle, AlgorithmId::Greedy2, p).trace, 3});
    }
    int differing = 0, round_trip = 0;
    for (const Case& c : cases) {
        const std::string text = format_trace(c.trace);
        if (format_trace(parse_trace(text)) != text) ++round_trip;
        const Trace replayed = parse_trace(text);
        const std::string a = csv_row(run_trace(c.id, c.trace, eps, c.seed).result, false);
        const std::string b = csv_row(run_trace(c.id, replayed, eps, c.seed).result, false);
        if (a != b) ++differing;
    }
    detail << cases.size() << " (trace, alg, seed) cases: differing rows " << differing << ", trace round-trip failures "
           << round_trip;
    return differing == 0 && round_trip == 0;
}

struct Criterion {
    int id;
    const char* name;
    double limit;
    bool (*run)(const SuiteOptions&, std::ostream&);
};

const Criterion kCriteria[] = {
    {1, "fptas soundness and completeness", 5, fptas_soundness},
    {2, "core correctness", 10, core_correctness},
    {3, "fully dynamic separation", 30, fully_dynamic_separation},
    {4, "greedy-recoloring upper bound", 60, greedy_upper_bound},
    {5, "follow-greedy competitiveness", 60, follow_competitiveness},
    {6, "oracle cross-validation", 30, oracle_cross_validation},
    {7, "vertex cover ratio", 20, vertex_cover_ratio},
    {8, "deterministic delta", 60, deterministic_delta},
    {9, "randomized delta statistics", 300, randomized_delta},
    {10, "determinism", 60, determinism},
};

}  // namespace

CriterionResult run_criterion(int id, const SuiteOptions& options) {
    for (const Criterion& c : kCriteria) {
        if (c.id != id) continue;
        CriterionResult r;
        r.id = c.id;
        r.name = c.name;
        r.limit_seconds = c.limit;
        std::ostringstream detail;
        const auto start = Clock::now();
        try {
            r.pass = c.run(options, detail);
        } catch (const std::exception& e) {
            detail << " error: " << e.what();
            r.pass = false;
        }
        r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
        if (r.seconds > r.limit_seconds) {
            detail << " (over time limit)";
            r.pass = false;
        }
        r.detail = detail.str();
        return r;
    }
    throw InputError("no acceptance criterion " + std::to_string(id));
}

std::vector<CriterionResult> run_acceptance(const SuiteOptions& options) {
    std::vector<CriterionResult> out;
    for (const Criterion& c : kCriteria) out.push_back(run_criterion(c.id, options));
    return out;
}

std::vector<CriterionResult> run_invariants(const SuiteOptions& options) {
    SuiteOptions quick = options;
    quick.quick = true;
    std::vector<CriterionResult> out;
    for (int id : {1, 2, 6, 7, 10}) out.push_back(run_criterion(id, quick));
    return out;
}

std::string format_result(const CriterionResult& r) {
    char head[160];
    std::snprintf(head, sizeof head, "%s criterion %d: %s (%.2f s of %.0f s)", r.pass ? "PASS" : "FAIL", r.id,
                  r.name.c_str(), r.seconds, r.limit_seconds);
    return std::string(head) + " :: " + r.detail;
}

}  // namespace recolor
