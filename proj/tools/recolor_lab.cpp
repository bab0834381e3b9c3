// recolor_lab: run algorithms on traces, drive live adversaries, query the
// offline oracles, run the verification suites and benchmark grids.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "recolor/harness.hpp"
#include "recolor/oracles.hpp"
#include "recolor/verify.hpp"

using namespace recolor;

namespace {

void emit_results(const std::vector<RunResult>& rows, const std::string& path) {
    std::ofstream file;
    if (!path.empty()) {
        file.open(path);
        if (!file) throw InputError("cannot write '" + path + "'");
    }
    std::ostream& out = path.empty() ? std::cout : file;
    out << csv_header() << '\n';
    for (const RunResult& r : rows) out << csv_row(r) << '\n';
}

void emit_steps(const std::vector<StepReport>& reports, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << "t,u,v,branch,cost,mono,phase_ended,delegated\n";
    for (const StepReport& r : reports)
        out << r.t << ',' << r.u << ',' << r.v << ',' << branch_name(r.branch) << ',' << r.cost << ','
            << r.mono_at_arrival << ',' << r.phase_ended << ',' << r.delegated << '\n';
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

template <typename T>
void print_list(const std::vector<T>& xs) {
    for (std::size_t i = 0; i < xs.size(); ++i) std::cout << (i ? " " : "") << xs[i];
    std::cout << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Recoloring experiments: algorithms, adversaries, oracles and checks"};
    app.require_subcommand(1);

    std::string alg, trace_path, out_path, steps_path, eps_text, variant, which, suite, matrix_path, trace_out;
    std::uint64_t seed = 1;
    int n = 64, delta = 20, workers = 0, criterion = 0;
    std::int64_t max_requests = 0;
    bool quick = false, certificate = false, gm_only = false;

    auto* run = app.add_subcommand("run", "Run one algorithm over a trace and print a results row");
    run->add_option("--alg", alg, "greedy2 | follow | delta-det | delta-rand")->required();
    run->add_option("--trace", trace_path, "Trace file")->required();
    run->add_option("--eps", eps_text, "Override the trace's epsilon (p/q or decimal)");
    run->add_option("--seed", seed, "Seed for delta-rand");
    run->add_option("--out", out_path, "Write the CSV here instead of stdout");
    run->add_option("--steps", steps_path, "Write per-request step reports as CSV");

    auto* adv = app.add_subcommand("adversary", "Play a live adversary against an algorithm");
    adv->add_option("--variant", variant, "odd-cycle | batch | batch-rand | delta-set")->required();
    adv->add_option("--alg", alg, "Algorithm under test")->required();
    adv->add_option("--n", n, "Number of vertices")->required();
    adv->add_option("--eps", eps_text, "Epsilon (default 1/2)");
    adv->add_option("--seed", seed, "Seed for the randomized variants and delta-rand");
    adv->add_option("--delta", delta, "Number of colors for delta-set");
    adv->add_option("--requests", max_requests, "Stop after this many requests");
    adv->add_option("--trace-out", trace_out, "Dump the emitted sequence as a trace");
    adv->add_option("--out", out_path, "Write the CSV here instead of stdout");
    adv->add_option("--steps", steps_path, "Write per-request step reports as CSV");

    auto* oracle = app.add_subcommand("oracle", "Evaluate an offline oracle on a trace");
    oracle->add_option("--trace", trace_path, "Trace file")->required();
    oracle->add_option("--which", which, "opt2 | fd-brute | minvc | equitable")->required();
    oracle->add_flag("--certificate", certificate, "Also print the certificate");
    oracle->add_flag("--gm", gm_only, "minvc: only edges whose endpoints share their initial color");

    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("--suite", suite, "invariants | acceptance")->required();
    verify->add_flag("--quick", quick, "Fewer trials");
    verify->add_option("--criterion", criterion, "Run only this acceptance criterion");
    verify->add_option("--workers", workers, "Worker threads (default RECOLOR_WORKERS or all cores)");

    auto* bench = app.add_subcommand("bench", "Run an (alg, n, eps, seed) grid from a JSON matrix");
    bench->add_option("--matrix", matrix_path, "Matrix file")->required();
    bench->add_option("--out", out_path, "Write the CSV here instead of stdout");
    bench->add_option("--workers", workers, "Worker threads (default RECOLOR_WORKERS or all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*run) {
            const Trace trace = load_trace(trace_path);
            const Rational eps = eps_text.empty() ? trace.instance.eps : Rational::parse(eps_text);
            const RunOutput output = run_trace(parse_algorithm(alg), trace, eps, seed);
            if (!steps_path.empty()) emit_steps(output.reports, steps_path);
            emit_results({output.result}, out_path);
        } else if (*adv) {
            AdversaryParams p;
            p.n = n;
            p.eps = eps_text.empty() ? Rational::make(1, 2) : Rational::parse(eps_text);
            p.seed = seed;
            p.delta = delta;
            p.max_requests = max_requests;
            const AdversaryRun result = run_adversary(parse_adversary(variant), parse_algorithm(alg), p);
            if (!trace_out.empty()) save_trace(trace_out, result.trace);
            if (!steps_path.empty()) emit_steps(result.output.reports, steps_path);
            std::int64_t mono = 0;
            for (const StepReport& r : result.output.reports) mono += r.mono_at_arrival;
            std::cerr << "requests=" << result.trace.requests.size() << " mono_at_arrival=" << mono;
            if (result.cycle_length) std::cerr << " cycle=" << result.cycle_length << " offline_best=" << result.offline_best;
            if (result.batches) std::cerr << " batches=" << result.batches;
            if (result.eviction_rounds) std::cerr << " eviction_rounds=" << result.eviction_rounds;
            std::cerr << '\n';
            emit_results({result.output.result}, out_path);
        } else if (*oracle) {
            const Trace trace = load_trace(trace_path);
            OracleReport rep;
            if (which == "opt2") {
                rep = opt_2recoloring(trace.instance, trace.requests);
            } else if (which == "fd-brute") {
                rep = opt_fully_dynamic_bruteforce(trace.instance, trace.requests);
            } else if (which == "minvc") {
                std::vector<Request> edges;
                for (const Request& r : trace.requests)
                    if (!gm_only || trace.instance.c0[r.u] == trace.instance.c0[r.v]) edges.push_back(r);
                rep = min_vertex_cover(trace.instance.n, edges);
            } else if (which == "equitable") {
                rep = delta_opt_upper(trace.instance, trace.requests);
            } else {
                throw InputError("unknown oracle '" + which + "'");
            }
            std::cout << rep.value << '\n';
            if (certificate) {
                if (which == "minvc")
                    print_list(rep.cover);
                else
                    print_list(rep.coloring);
            }
        } else if (*verify) {
            SuiteOptions options;
            options.quick = quick;
            options.workers = workers;
            std::vector<CriterionResult> results;
            if (suite == "acceptance")
                results = criterion ? std::vector<CriterionResult>{run_criterion(criterion, options)}
                                    : run_acceptance(options);
            else if (suite == "invariants")
                results = run_invariants(options);
            else
                throw InputError("unknown suite '" + suite + "'");
            bool all = true;
            for (const CriterionResult& r : results) {
                std::cout << format_result(r) << '\n';
                all = all && r.pass;
            }
            return all ? 0 : 2;
        } else if (*bench) {
            const auto cells = parse_matrix(read_file(matrix_path));
            emit_results(run_bench(cells, workers > 0 ? workers : worker_count()), out_path);
        }
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 1;
    } catch (const Exhausted& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "invariant failure: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
