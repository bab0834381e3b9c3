#include "recolor/fully_dynamic.hpp"

#include "recolor/rebalance2.hpp"

namespace recolor {

GreedyRecoloring::GreedyRecoloring(const Instance& instance, Rational eps, GreedyOptions options) {
    instance.validate();
    if (instance.model == Model::Delta) throw InvalidInstance("phase-based recoloring needs a two-color instance");
    if (eps.num <= 0 || eps.num >= eps.den) throw InvalidInstance("eps must lie in (0,1)");
    if (options.enforce_eps_floor && eps.num * instance.n < 8 * eps.den)
        throw InvalidInstance("eps must be at least 8/n");
    const Weight cap = augmented(instance.B, eps);
    state_ = ColoringState(instance.c0, instance.w, {cap, cap});
    tracker_ = ComponentTracker(instance.w);
    ledger_.keep_log = options.keep_log;
    W_ = instance.B;
    eps_ = eps;
    keep_limit_ = augmented(W_, eps.halved());
    start_phase();
}

GreedyRecoloring::GreedyRecoloring(ColoringState state, ComponentTracker tracker, CostLedger ledger,
                                   Weight phase_weight, Rational eps)
    : state_(std::move(state)),
      tracker_(std::move(tracker)),
      ledger_(std::move(ledger)),
      W_(phase_weight),
      eps_(eps),
      keep_limit_(augmented(phase_weight, eps.halved())),
      t_(ledger_.step) {}

GreedyRecoloring GreedyRecoloring::adopt(ColoringState state, ComponentTracker tracker, CostLedger ledger,
                                         Weight phase_weight, Rational eps) {
    GreedyRecoloring g(std::move(state), std::move(tracker), std::move(ledger), phase_weight, eps);
    ++g.ledger_.phases_started;
    if (!g.rebalance()) throw InfeasibleInstance("no component assignment fits after delegation");
    return g;
}

void GreedyRecoloring::start_phase() {
    tracker_.reset();
    ++ledger_.phases_started;
    if (!rebalance()) throw InvalidInstance("singletons admit no assignment near W; weights are too lumpy");
}

bool GreedyRecoloring::components_properly_colored() {
    for (Vertex v = 0; v < state_.n(); ++v) {
        const Position p = tracker_.find(v);
        if (state_.color(v) != (state_.color(p.root) ^ p.parity)) return false;
    }
    return true;
}

bool GreedyRecoloring::rebalance() {
    ++ledger_.rebalance_calls;
    if (state_.load(0) <= keep_limit_ && state_.load(1) <= keep_limit_ && components_properly_colored())
        return true;
    const ComponentSnapshot snap = snapshot_components(tracker_);
    const auto assignment = rebalance_fptas(snap.sides, W_, eps_.halved());
    if (!assignment) return false;
    apply_assignment(state_, tracker_, snap, *assignment, ledger_, true);
    return true;
}

Branch GreedyRecoloring::restart(Vertex u, Vertex v, Branch cause, bool may_restart) {
    if (!may_restart) throw InfeasibleInstance("request cannot be served even from a fresh phase");
    const Color other = 1 - state_.color(u);
    if (state_.residual(other) >= state_.weight(u)) state_.recolor(u, other, ledger_);
    ++ledger_.phases_completed;
    start_phase();
    dispatch(u, v, false);
    return cause;
}

Branch GreedyRecoloring::dispatch(Vertex u, Vertex v, bool may_restart) {
    const Position pu = tracker_.find(u);
    const Position pv = tracker_.find(v);
    if (pu.root == pv.root) {
        if (pu.parity != pv.parity) return Branch::None;
        tracker_.merge(u, v);
        return restart(u, v, Branch::OddCycle, may_restart);
    }
    if (state_.color(u) != state_.color(v)) {
        tracker_.merge(u, v);
        return Branch::Merge;
    }

    const bool u_heavier = tracker_.record(pu.root).weight() >= tracker_.record(pv.root).weight();
    const Vertex light = u_heavier ? pv.root : pu.root;
    const ComponentRecord& rec = tracker_.record(light);
    const Color ca = state_.color(light);
    const Color cb = 1 - ca;
    const bool fits = state_.load(ca) - rec.weight_a + rec.weight_b <= state_.capacity(ca) &&
                      state_.load(cb) - rec.weight_b + rec.weight_a <= state_.capacity(cb);
    const bool small = static_cast<__int128>(4) * eps_.den * rec.weight() <= static_cast<__int128>(eps_.num) * W_;
    if (fits && small) {
        for (Vertex x : tracker_.members(light))
            state_.recolor(x, 1 - state_.color(x), ledger_, RecolorMode::Unchecked);
        state_.check_capacity();
        tracker_.merge(u, v);
        return Branch::Flip;
    }
    tracker_.merge(u, v);
    if (rebalance()) return Branch::Rebalance;
    return restart(u, v, Branch::Infeasible, may_restart);
}

StepReport GreedyRecoloring::process(Vertex u, Vertex v) {
    if (u == v || u < 0 || v < 0 || u >= state_.n() || v >= state_.n()) throw InputError("invalid request");
    ledger_.step = ++t_;
    StepReport r;
    r.t = t_;
    r.u = u;
    r.v = v;
    r.mono_at_arrival = state_.color(u) == state_.color(v);
    const Weight cost_before = ledger_.total_cost;
    const auto phases_before = ledger_.phases_completed;
    r.branch = dispatch(u, v, true);
    r.cost = ledger_.total_cost - cost_before;
    r.phase_ended = ledger_.phases_completed > phases_before;
    if (state_.color(u) == state_.color(v)) throw InvariantError("request endpoints share a color after processing");
    return r;
}

}  // namespace recolor
