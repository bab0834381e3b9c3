#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "recolor/adversaries.hpp"
#include "recolor/coloring.hpp"
#include "recolor/instance.hpp"
#include "recolor/step.hpp"

namespace recolor {

// ---- traces ---------------------------------------------------------------
//
// Line 1: model=<tag> n=<int> k=<int> B=<int> eps=<p/q> w=<unit|w0,w1,...> c0=<c0,c1,...>
// Every further line: "<u> <v>", one request.

using Trace = Workload;

void write_trace(std::ostream& out, const Trace& trace);
std::string format_trace(const Trace& trace);
// Throws ParseError with the offending line number.
Trace read_trace(std::istream& in);
Trace parse_trace(std::string_view text);
Trace load_trace(const std::string& path);
void save_trace(const std::string& path, const Trace& trace);

// ---- algorithms -----------------------------------------------------------

enum class AlgorithmId { Greedy2, Follow, DeltaDet, DeltaRand };

std::string_view algorithm_name(AlgorithmId id);
AlgorithmId parse_algorithm(std::string_view name);

class Algorithm {
public:
    virtual ~Algorithm() = default;
    virtual StepReport process(Vertex u, Vertex v) = 0;
    virtual const ColoringState& coloring() const = 0;
    virtual const CostLedger& ledger() const = 0;
};

struct AlgorithmOptions {
    bool keep_log = true;
    // Off only for tiny oracle instances with eps * n < 8.
    bool enforce_eps_floor = true;
};

// Two-color algorithms use `eps`; the delta algorithms take eps from the
// instance. `seed` only matters for delta-rand.
std::unique_ptr<Algorithm> make_algorithm(AlgorithmId id, const Instance& instance, Rational eps, std::uint64_t seed,
                                          const AlgorithmOptions& options = {});

// ---- results --------------------------------------------------------------

struct RunResult {
    std::string alg;
    int n = 0;
    Rational eps;
    std::uint64_t seed = 0;
    Weight cost = 0;
    std::optional<Weight> lb;
    std::optional<Weight> ub;
    double ratio = 0;
    std::int64_t phases = 0;
    std::int64_t rebalances = 0;
    double ms = 0;
};

// cost / max(lb, 1); a run with cost 0 and lb 0 has ratio 1.
double competitive_ratio(Weight cost, Weight lb);

std::string csv_header();
// Without `with_time` the ms column is left empty, which makes rows from
// repeated runs comparable.
std::string csv_row(const RunResult& r, bool with_time = true);

// ---- runs -----------------------------------------------------------------

struct RunOptions {
    AlgorithmOptions algorithm;
    // Replays the event log and checks it against the ledger.
    bool audit = true;
    bool oracles = true;
};

struct RunOutput {
    RunResult result;
    std::vector<StepReport> reports;
    CostLedger ledger;
    std::vector<Color> final_coloring;
};

struct Bounds {
    std::optional<Weight> lb;
    std::optional<Weight> ub;
};

// Oracle bounds for a finished run, chosen by the trace's model: online2 uses
// the exact two-color OPT for both; fully_dynamic2 the completed phases, plus
// the brute-force OPT as upper bound on tiny traces; delta the minimum vertex
// cover of G_M (a maximal matching of G_M past the search budget) and the
// one-shot equitable cost.
Bounds oracle_bounds(const Trace& trace, const CostLedger& ledger);

RunOutput run_trace(AlgorithmId id, const Trace& trace, Rational eps, std::uint64_t seed,
                    const RunOptions& options = {});

// Re-derives cost and final coloring from an event log, starting at c0.
// Throws InvariantError if an event does not match the replayed state.
struct Replay {
    Weight total = 0;
    std::vector<Color> colors;
};
Replay replay_events(const Instance& instance, std::span<const RecolorEvent> log);

// ---- live adversaries -----------------------------------------------------

enum class AdversaryVariant { OddCycle, Batch, BatchRand, DeltaSet };

std::string_view adversary_name(AdversaryVariant v);
AdversaryVariant parse_adversary(std::string_view name);

struct AdversaryParams {
    int n = 64;
    Rational eps = Rational::make(1, 2);
    std::uint64_t seed = 1;
    int delta = 20;
    // 0 picks the default: l^2 for odd-cycle, until done for the others.
    std::int64_t max_requests = 0;
    RunOptions run;
};

struct AdversaryRun {
    RunOutput output;
    Trace trace;
    int cycle_length = 0;
    Weight offline_best = -1;
    Weight offline_family = -1;
    int batches = 0;
    int eviction_rounds = 0;
    bool all_mono = true;
};

AdversaryRun run_adversary(AdversaryVariant variant, AlgorithmId id, const AdversaryParams& params);

// ---- bench ----------------------------------------------------------------

struct BenchCell {
    AlgorithmId alg = AlgorithmId::Greedy2;
    int n = 0;
    Rational eps;
    std::uint64_t seed = 0;
    bool adversarial = false;
    int length = 0;
    int delta = 20;
};

// Matrix keys: algs, n, eps (lists), seed (master), trials, workload
// ("random" or "adversary"), length, delta.
std::vector<BenchCell> parse_matrix(std::string_view json_text);
RunResult run_cell(const BenchCell& cell);
std::vector<RunResult> run_bench(const std::vector<BenchCell>& cells, int workers);

// RECOLOR_WORKERS, else the hardware concurrency.
int worker_count();
// Runs f(i) for i in [0, count) on `workers` threads; rethrows the first error.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& f);

}  // namespace recolor
