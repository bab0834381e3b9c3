#include "recolor/harness.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_set>

#include <json.hpp>

#include "recolor/delta.hpp"
#include "recolor/follow_greedy.hpp"
#include "recolor/fully_dynamic.hpp"
#include "recolor/oracles.hpp"

namespace recolor {

// ---- traces ---------------------------------------------------------------

namespace {

template <typename T>
bool parse_int(std::string_view s, T& out) {
    if (s.empty()) return false;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

template <typename T>
std::vector<T> parse_list(std::string_view s, std::size_t line, std::string_view key) {
    std::vector<T> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = s.find(',', start);
        const std::string_view item = s.substr(start, comma == std::string_view::npos ? s.npos : comma - start);
        T x{};
        if (!parse_int(item, x)) throw ParseError(line, "bad entry '" + std::string(item) + "' in " + std::string(key));
        out.push_back(x);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

template <typename T>
void join_list(std::ostream& out, const std::vector<T>& xs) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out << ',';
        out << xs[i];
    }
}

Instance parse_header(const std::string& text) {
    static const char* const keys[] = {"model", "n", "k", "B", "eps", "w", "c0"};
    std::string values[7];
    bool seen[7] = {};
    std::istringstream tokens(text);
    std::string token;
    while (tokens >> token) {
        const std::size_t eq = token.find('=');
        if (eq == std::string::npos) throw ParseError(1, "expected key=value, got '" + token + "'");
        const std::string key = token.substr(0, eq);
        int idx = -1;
        for (int i = 0; i < 7; ++i)
            if (key == keys[i]) idx = i;
        if (idx < 0) throw ParseError(1, "unknown header key '" + key + "'");
        if (seen[idx]) throw ParseError(1, "duplicate header key '" + key + "'");
        seen[idx] = true;
        values[idx] = token.substr(eq + 1);
    }
    for (int i = 0; i < 7; ++i)
        if (!seen[i]) throw ParseError(1, std::string("missing header key '") + keys[i] + "'");

    Instance inst;
    try {
        inst.model = parse_model(values[0]);
        inst.eps = Rational::parse(values[4]);
    } catch (const InputError& e) {
        throw ParseError(1, e.what());
    }
    if (!parse_int(values[1], inst.n) || !parse_int(values[2], inst.k) || !parse_int(values[3], inst.B))
        throw ParseError(1, "n, k and B must be integers");
    if (inst.n < 1) throw ParseError(1, "n must be positive");
    if (values[5] == "unit")
        inst.w.assign(inst.n, 1);
    else
        inst.w = parse_list<Weight>(values[5], 1, "w");
    inst.c0 = parse_list<Color>(values[6], 1, "c0");
    try {
        inst.validate();
    } catch (const InvalidInstance& e) {
        throw ParseError(1, e.what());
    }
    return inst;
}

}  // namespace

void write_trace(std::ostream& out, const Trace& trace) {
    const Instance& inst = trace.instance;
    out << "model=" << model_tag(inst.model) << " n=" << inst.n << " k=" << inst.k << " B=" << inst.B
        << " eps=" << inst.eps.str() << " w=";
    bool unit = true;
    for (Weight x : inst.w) unit = unit && x == 1;
    if (unit)
        out << "unit";
    else
        join_list(out, inst.w);
    out << " c0=";
    join_list(out, inst.c0);
    out << '\n';
    for (const Request& r : trace.requests) out << r.u << ' ' << r.v << '\n';
}

std::string format_trace(const Trace& trace) {
    std::ostringstream out;
    write_trace(out, trace);
    return out.str();
}

Trace read_trace(std::istream& in) {
    Trace trace;
    std::string line;
    if (!std::getline(in, line)) throw ParseError(1, "missing header");
    trace.instance = parse_header(line);
    const int n = trace.instance.n;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream fields(line);
        std::string a, b, extra;
        if (!(fields >> a >> b) || (fields >> extra)) throw ParseError(lineno, "expected two vertex ids");
        Request r;
        if (!parse_int(a, r.u) || !parse_int(b, r.v)) throw ParseError(lineno, "vertex ids must be integers");
        if (r.u < 0 || r.v < 0 || r.u >= n || r.v >= n) throw ParseError(lineno, "vertex id out of range");
        if (r.u == r.v) throw ParseError(lineno, "self-loop request");
        trace.requests.push_back(r);
    }
    return trace;
}

Trace parse_trace(std::string_view text) {
    std::istringstream in{std::string(text)};
    return read_trace(in);
}

Trace load_trace(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open trace '" + path + "'");
    return read_trace(in);
}

void save_trace(const std::string& path, const Trace& trace) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    write_trace(out, trace);
}

// ---- algorithms -----------------------------------------------------------

std::string_view algorithm_name(AlgorithmId id) {
    switch (id) {
        case AlgorithmId::Greedy2: return "greedy2";
        case AlgorithmId::Follow: return "follow";
        case AlgorithmId::DeltaDet: return "delta-det";
        case AlgorithmId::DeltaRand: return "delta-rand";
    }
    return "?";
}

AlgorithmId parse_algorithm(std::string_view name) {
    for (AlgorithmId id : {AlgorithmId::Greedy2, AlgorithmId::Follow, AlgorithmId::DeltaDet, AlgorithmId::DeltaRand})
        if (algorithm_name(id) == name) return id;
    throw InputError("unknown algorithm '" + std::string(name) + "'");
}

namespace {

class GreedyAlgorithm final : public Algorithm {
public:
    GreedyAlgorithm(const Instance& inst, Rational eps, const AlgorithmOptions& o)
        : impl_(inst, eps, GreedyOptions{o.enforce_eps_floor, o.keep_log}) {}
    StepReport process(Vertex u, Vertex v) override { return impl_.process(u, v); }
    const ColoringState& coloring() const override { return impl_.coloring(); }
    const CostLedger& ledger() const override { return impl_.ledger(); }

private:
    GreedyRecoloring impl_;
};

class FollowAlgorithm final : public Algorithm {
public:
    FollowAlgorithm(const Instance& inst, Rational eps, const AlgorithmOptions& o) : impl_(inst, eps, o.keep_log) {}
    StepReport process(Vertex u, Vertex v) override { return impl_.process(u, v); }
    const ColoringState& coloring() const override { return impl_.coloring(); }
    const CostLedger& ledger() const override { return impl_.ledger(); }

private:
    FollowGreedy impl_;
};

class DeltaAlgorithm final : public Algorithm {
public:
    DeltaAlgorithm(const Instance& inst, Policy policy, std::uint64_t seed, const AlgorithmOptions& o)
        : impl_(inst, policy, seed, o.keep_log) {}
    StepReport process(Vertex u, Vertex v) override { return impl_.process(u, v); }
    const ColoringState& coloring() const override { return impl_.coloring(); }
    const CostLedger& ledger() const override { return impl_.ledger(); }

private:
    DeltaRecoloring impl_;
};

}  // namespace

std::unique_ptr<Algorithm> make_algorithm(AlgorithmId id, const Instance& instance, Rational eps, std::uint64_t seed,
                                          const AlgorithmOptions& options) {
    const bool delta = id == AlgorithmId::DeltaDet || id == AlgorithmId::DeltaRand;
    if (delta != (instance.model == Model::Delta))
        throw InvalidInstance(std::string(algorithm_name(id)) + " cannot run a " +
                              std::string(model_tag(instance.model)) + " instance");
    switch (id) {
        case AlgorithmId::Greedy2: return std::make_unique<GreedyAlgorithm>(instance, eps, options);
        case AlgorithmId::Follow: return std::make_unique<FollowAlgorithm>(instance, eps, options);
        default: break;
    }
    Instance copy = instance;
    copy.eps = eps;
    const Policy policy = id == AlgorithmId::DeltaDet ? Policy::Deterministic : Policy::Randomized;
    return std::make_unique<DeltaAlgorithm>(copy, policy, seed, options);
}

// ---- results --------------------------------------------------------------

double competitive_ratio(Weight cost, Weight lb) {
    if (cost == 0 && lb <= 0) return 1.0;
    return static_cast<double>(cost) / static_cast<double>(std::max<Weight>(lb, 1));
}

std::string csv_header() { return "alg,n,eps,seed,cost,lb,ub,ratio,phases,rebalances,ms"; }

std::string csv_row(const RunResult& r, bool with_time) {
    std::ostringstream out;
    char buf[64];
    out << r.alg << ',' << r.n << ',' << r.eps.str() << ',' << r.seed << ',' << r.cost << ',';
    if (r.lb) out << *r.lb;
    out << ',';
    if (r.ub) out << *r.ub;
    std::snprintf(buf, sizeof buf, "%.6f", r.ratio);
    out << ',' << buf << ',' << r.phases << ',' << r.rebalances << ',';
    if (with_time) {
        std::snprintf(buf, sizeof buf, "%.3f", r.ms);
        out << buf;
    }
    return out.str();
}

// ---- runs -----------------------------------------------------------------

namespace {

std::uint64_t edge_key(Vertex u, Vertex v) {
    return static_cast<std::uint64_t>(std::min(u, v)) << 32 | static_cast<std::uint32_t>(std::max(u, v));
}

Weight maximal_matching_size(int n, std::span<const Request> edges) {
    std::vector<std::uint8_t> used(n, 0);
    Weight m = 0;
    for (const Request& e : edges)
        if (!used[e.u] && !used[e.v]) {
            used[e.u] = used[e.v] = 1;
            ++m;
        }
    return m;
}

}  // namespace

Bounds oracle_bounds(const Trace& trace, const CostLedger& ledger) {
    const Instance& inst = trace.instance;
    Bounds b;
    switch (inst.model) {
        case Model::Online2:
            try {
                b.lb = b.ub = opt_2recoloring(inst, trace.requests).value;
            } catch (const ScaleExceeded&) {
            }
            break;
        case Model::FullyDynamic2: {
            b.lb = phase_lower_bound(ledger);
            bool unit = true;
            for (Weight x : inst.w) unit = unit && x == 1;
            if (unit && inst.n <= 10 && trace.requests.size() <= 30)
                b.ub = opt_fully_dynamic_bruteforce(inst, trace.requests).value;
            break;
        }
        case Model::Delta: {
            std::vector<Request> gm;
            std::unordered_set<std::uint64_t> seen;
            for (const Request& r : trace.requests)
                if (inst.c0[r.u] == inst.c0[r.v] && seen.insert(edge_key(r.u, r.v)).second) gm.push_back(r);
            try {
                b.lb = min_vertex_cover(inst.n, gm).value;
            } catch (const ScaleExceeded&) {
                b.lb = maximal_matching_size(inst.n, gm);
            }
            b.ub = delta_opt_upper(inst, trace.requests).value;
            break;
        }
    }
    return b;
}

Replay replay_events(const Instance& instance, std::span<const RecolorEvent> log) {
    Replay out;
    out.colors = instance.c0;
    for (const RecolorEvent& e : log) {
        if (e.v < 0 || e.v >= instance.n) throw InvariantError("replay: vertex out of range");
        if (out.colors[e.v] != e.from) throw InvariantError("replay: event starts from a stale color");
        if (e.to < 0 || e.to >= instance.k || e.to == e.from) throw InvariantError("replay: bad target color");
        if (e.weight != instance.w[e.v]) throw InvariantError("replay: charged weight differs from w(v)");
        out.colors[e.v] = e.to;
        out.total += e.weight;
    }
    return out;
}

namespace {

void audit(const Instance& inst, const RunOutput& out) {
    Weight reported = 0;
    for (const StepReport& r : out.reports) reported += r.cost;
    if (reported != out.ledger.total_cost) throw InvariantError("step costs do not add up to the ledger total");
    if (!out.ledger.keep_log) return;
    const Replay replay = replay_events(inst, out.ledger.log);
    if (replay.total != out.ledger.total_cost) throw InvariantError("replayed cost differs from the ledger");
    if (replay.colors != out.final_coloring) throw InvariantError("replayed coloring differs from the final coloring");
}

RunResult summarize(AlgorithmId id, const Trace& trace, Rational eps, std::uint64_t seed, const CostLedger& ledger,
                    double ms, bool oracles) {
    RunResult r;
    r.alg = std::string(algorithm_name(id));
    r.n = trace.instance.n;
    r.eps = eps;
    r.seed = seed;
    r.cost = ledger.total_cost;
    r.phases = ledger.phases_completed;
    r.rebalances = ledger.rebalance_calls;
    r.ms = ms;
    if (oracles) {
        const Bounds b = oracle_bounds(trace, ledger);
        r.lb = b.lb;
        r.ub = b.ub;
    }
    r.ratio = competitive_ratio(r.cost, r.lb.value_or(0));
    return r;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

RunOutput run_trace(AlgorithmId id, const Trace& trace, Rational eps, std::uint64_t seed, const RunOptions& options) {
    auto alg = make_algorithm(id, trace.instance, eps, seed, options.algorithm);
    RunOutput out;
    out.reports.reserve(trace.requests.size());
    const auto start = std::chrono::steady_clock::now();
    for (const Request& r : trace.requests) out.reports.push_back(alg->process(r.u, r.v));
    const double ms = elapsed_ms(start);
    out.ledger = alg->ledger();
    const auto colors = alg->coloring().colors();
    out.final_coloring.assign(colors.begin(), colors.end());
    if (options.audit) audit(trace.instance, out);
    out.result = summarize(id, trace, eps, seed, out.ledger, ms, options.oracles);
    return out;
}

// ---- live adversaries -----------------------------------------------------

std::string_view adversary_name(AdversaryVariant v) {
    switch (v) {
        case AdversaryVariant::OddCycle: return "odd-cycle";
        case AdversaryVariant::Batch: return "batch";
        case AdversaryVariant::BatchRand: return "batch-rand";
        case AdversaryVariant::DeltaSet: return "delta-set";
    }
    return "?";
}

AdversaryVariant parse_adversary(std::string_view name) {
    for (AdversaryVariant v :
         {AdversaryVariant::OddCycle, AdversaryVariant::Batch, AdversaryVariant::BatchRand, AdversaryVariant::DeltaSet})
        if (adversary_name(v) == name) return v;
    throw InputError("unknown adversary '" + std::string(name) + "'");
}

AdversaryRun run_adversary(AdversaryVariant variant, AlgorithmId id, const AdversaryParams& params) {
    AdversaryRun run;
    Trace& trace = run.trace;
    const int n = params.n;
    std::vector<Color> c0;

    std::optional<OddCycleAdversary> odd;
    std::optional<BatchAdversary> batch;
    std::optional<DeltaSetAdversary> dset;
    switch (variant) {
        case AdversaryVariant::OddCycle:
        case AdversaryVariant::Batch:
        case AdversaryVariant::BatchRand: {
            if (variant != AdversaryVariant::OddCycle)
                batch.emplace(n, variant == AdversaryVariant::BatchRand, params.seed);
            const int size = batch ? batch->size() : n;
            for (int v = 0; v < size; ++v) c0.push_back(v % 2);
            const Model model = batch ? Model::Online2 : Model::FullyDynamic2;
            trace.instance = Instance::unit_two_color(model, std::move(c0), params.eps);
            trace.instance.validate();
            if (!batch) {
                odd.emplace(trace.instance);
                run.cycle_length = odd->length();
            }
            break;
        }
        case AdversaryVariant::DeltaSet:
            if (n % params.delta) throw InvalidInstance("delta-set adversary needs n divisible by delta");
            for (int v = 0; v < n; ++v) c0.push_back(v % params.delta);
            trace.instance = Instance::delta(std::move(c0), params.delta, params.eps);
            trace.instance.validate();
            dset.emplace(n, params.delta, params.eps);
            break;
    }

    auto alg = make_algorithm(id, trace.instance, params.eps, params.seed, params.run.algorithm);
    RunOutput& out = run.output;
    std::int64_t limit = params.max_requests;
    if (odd && limit == 0) limit = static_cast<std::int64_t>(odd->length()) * odd->length();
    auto feed = [&](Request r) {
        trace.requests.push_back(r);
        out.reports.push_back(alg->process(r.u, r.v));
        run.all_mono = run.all_mono && out.reports.back().mono_at_arrival;
    };
    auto below_limit = [&] { return limit == 0 || static_cast<std::int64_t>(trace.requests.size()) < limit; };

    const auto start = std::chrono::steady_clock::now();
    if (odd) {
        while (below_limit()) feed(odd->next(alg->coloring().colors()));
    } else if (batch) {
        while (!batch->finished() && below_limit())
            if (auto r = batch->next(alg->coloring().colors())) feed(*r);
        run.batches = batch->batch();
    } else {
        while (!dset->exhausted() && below_limit()) feed(dset->next(alg->coloring().colors()));
        run.eviction_rounds = dset->eviction_rounds();
    }
    const double ms = elapsed_ms(start);

    out.ledger = alg->ledger();
    const auto colors = alg->coloring().colors();
    out.final_coloring.assign(colors.begin(), colors.end());
    if (params.run.audit) audit(trace.instance, out);
    out.result = summarize(id, trace, params.eps, params.seed, out.ledger, ms, params.run.oracles);
    if (odd) {
        run.offline_best = odd->best_offline_cost();
        run.offline_family = odd->family_cost();
        out.result.ub = run.offline_best;
    }
    return run;
}

// ---- bench ----------------------------------------------------------------

std::vector<BenchCell> parse_matrix(std::string_view json_text) {
    using nlohmann::json;
    json m;
    try {
        m = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("matrix: ") + e.what());
    }
    if (!m.is_object()) throw InputError("matrix: expected a JSON object");
    static const std::unordered_set<std::string> known = {"algs", "n", "eps", "seed", "trials", "workload", "length",
                                                           "delta"};
    for (const auto& [key, value] : m.items())
        if (!known.count(key)) throw InputError("matrix: unknown key '" + key + "'");
    try {
        std::vector<AlgorithmId> algs;
        for (const auto& a : m.at("algs")) algs.push_back(parse_algorithm(a.get<std::string>()));
        std::vector<int> sizes = m.at("n").get<std::vector<int>>();
        std::vector<Rational> epsilons;
        if (m.contains("eps"))
            for (const auto& e : m["eps"]) epsilons.push_back(Rational::parse(e.is_string() ? e.get<std::string>() : e.dump()));
        else
            epsilons.push_back(Rational::make(1, 2));
        const auto master = m.value("seed", std::uint64_t{1});
        const int trials = m.value("trials", 1);
        const std::string workload = m.value("workload", std::string("random"));
        if (workload != "random" && workload != "adversary")
            throw InputError("matrix: workload must be 'random' or 'adversary'");
        std::vector<BenchCell> cells;
        for (AlgorithmId a : algs)
            for (int n : sizes)
                for (Rational eps : epsilons)
                    for (int t = 0; t < trials; ++t) {
                        BenchCell c;
                        c.alg = a;
                        c.n = n;
                        c.eps = eps;
                        c.seed = derive_seed(master, static_cast<std::uint64_t>(t));
                        c.adversarial = workload == "adversary";
                        c.length = m.value("length", 0);
                        c.delta = m.value("delta", 20);
                        cells.push_back(c);
                    }
        return cells;
    } catch (const json::exception& e) {
        throw InputError(std::string("matrix: ") + e.what());
    }
}

RunResult run_cell(const BenchCell& cell) {
    if (cell.adversarial) {
        AdversaryVariant v = AdversaryVariant::DeltaSet;
        if (cell.alg == AlgorithmId::Greedy2) v = AdversaryVariant::OddCycle;
        if (cell.alg == AlgorithmId::Follow) v = AdversaryVariant::Batch;
        AdversaryParams p;
        p.n = cell.n;
        p.eps = cell.eps;
        p.seed = cell.seed;
        p.delta = cell.delta;
        p.max_requests = cell.length;
        return run_adversary(v, cell.alg, p).output.result;
    }
    Rng rng(cell.seed);
    Trace trace;
    switch (cell.alg) {
        case AlgorithmId::Greedy2:
            trace = fully_dynamic_workload(cell.n, cell.length > 0 ? cell.length : 4 * cell.n, cell.eps, rng);
            break;
        case AlgorithmId::Follow:
            trace = random_sequence(cell.n, RandomModel::BipartiteSafe, rng, {cell.length, cell.eps});
            break;
        default:
            trace = random_sequence(cell.n, RandomModel::DeltaSafe, rng, {cell.length, cell.eps, cell.delta});
            break;
    }
    return run_trace(cell.alg, trace, cell.eps, cell.seed).result;
}

std::vector<RunResult> run_bench(const std::vector<BenchCell>& cells, int workers) {
    std::vector<RunResult> out(cells.size());
    parallel_for(cells.size(), workers, [&](std::size_t i) { out[i] = run_cell(cells[i]); });
    return out;
}

int worker_count() {
    if (const char* env = std::getenv("RECOLOR_WORKERS")) {
        int w = 0;
        if (parse_int(std::string_view(env), w) && w >= 1) return w;
        throw InputError("RECOLOR_WORKERS must be a positive integer");
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& f) {
    const std::size_t threads = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(workers, 1)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex mutex;
    auto work = [&] {
        for (std::size_t i; !failed && (i = next++) < count;) {
            try {
                f(i);
            } catch (...) {
                std::lock_guard lock(mutex);
                if (!error) error = std::current_exception();
                failed = true;
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace recolor
