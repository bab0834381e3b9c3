#include "recolor/follow_greedy.hpp"

namespace recolor {

FollowGreedy::FollowGreedy(const Instance& instance, Rational eps, bool keep_log) : instance_(instance), eps_(eps) {
    instance_.validate();
    if (instance_.model == Model::Delta) throw InvalidInstance("follow-greedy needs a two-color instance");
    if (eps.num <= 0 || eps.num >= eps.den) throw InvalidInstance("eps must lie in (0,1)");
    const Weight cap = augmented(instance_.B, eps);
    state_ = ColoringState(instance_.c0, instance_.w, {cap, cap});
    if (state_.load(0) > cap || state_.load(1) > cap)
        throw InfeasibleInstance("initial coloring exceeds the augmented capacity");
    tracker_ = ComponentTracker(instance_.w);
    ledger_.keep_log = keep_log;
}

void FollowGreedy::delegate() {
    delegation_step_ = t_;
    greedy_.emplace(GreedyRecoloring::adopt(std::move(state_), std::move(tracker_), std::move(ledger_),
                                            instance_.B, eps_));
}

Branch FollowGreedy::follow(Vertex u, Vertex v) {
    const Position pu = tracker_.find(u);
    const Position pv = tracker_.find(v);
    if (pu.root == pv.root) {
        if (pu.parity != pv.parity) return Branch::None;
        throw InfeasibleInstance("request closes an odd cycle");
    }
    const bool conflict = state_.color(u) == state_.color(v);
    const bool u_heavier = tracker_.record(pu.root).weight() >= tracker_.record(pv.root).weight();
    const Vertex light = u_heavier ? pv.root : pu.root;
    const ComponentRecord light_rec = tracker_.record(light);
    const Color light_a = state_.color(light);
    std::vector<Vertex> light_members;
    if (conflict) light_members = tracker_.members(light);

    const MergeOutcome m = tracker_.merge(u, v);
    const Vertex heavy = m.survivor;
    const ComponentRecord& rec = tracker_.record(heavy);
    const __int128 q4 = static_cast<__int128>(4) * eps_.den;
    const bool exceeded = q4 * rec.weight() > (q4 + eps_.num) * rec.estimate;

    if (!exceeded) {
        if (!conflict) return Branch::Merge;
        const Color lb = 1 - light_a;
        const bool fits = state_.load(light_a) - light_rec.weight_a + light_rec.weight_b <= state_.capacity(light_a) &&
                          state_.load(lb) - light_rec.weight_b + light_rec.weight_a <= state_.capacity(lb);
        if (!fits) {
            delegate();
            return Branch::Delegate;
        }
        for (Vertex x : light_members) state_.recolor(x, 1 - state_.color(x), ledger_, RecolorMode::Unchecked);
        state_.check_capacity();
        return Branch::Flip;
    }

    tracker_.set_estimate(heavy, rec.weight());
    const OrientationChoice best = optimal_orientation(tracker_, heavy, instance_.c0);
    const std::vector<Vertex> members = tracker_.members(heavy);
    std::vector<Color> target(members.size());
    Weight now_on_0 = 0;
    Weight then_on_0 = 0;
    for (std::size_t i = 0; i < members.size(); ++i) {
        const Vertex x = members[i];
        target[i] = oriented_color(best.orientation, tracker_.find(x).parity);
        if (state_.color(x) == 0) now_on_0 += state_.weight(x);
        if (target[i] == 0) then_on_0 += state_.weight(x);
    }
    const Weight load0 = state_.load(0) - now_on_0 + then_on_0;
    const Weight load1 = state_.load(1) + now_on_0 - then_on_0;
    if (load0 > state_.capacity(0) || load1 > state_.capacity(1)) {
        delegate();
        return Branch::Delegate;
    }
    for (std::size_t i = 0; i < members.size(); ++i)
        state_.recolor(members[i], target[i], ledger_, RecolorMode::Unchecked);
    state_.check_capacity();
    return Branch::Recompute;
}

StepReport FollowGreedy::process(Vertex u, Vertex v) {
    if (u == v || u < 0 || v < 0 || u >= instance_.n || v >= instance_.n) throw InputError("invalid request");
    ++t_;
    if (greedy_) {
        StepReport r = greedy_->process(u, v);
        r.delegated = true;
        if (r.phase_ended) throw InfeasibleInstance("delegated phase ended; requests are not an online instance");
        return r;
    }
    ledger_.step = t_;
    StepReport r;
    r.t = t_;
    r.u = u;
    r.v = v;
    r.mono_at_arrival = state_.color(u) == state_.color(v);
    const Weight before = ledger_.total_cost;
    r.branch = follow(u, v);
    r.cost = ledger().total_cost - before;
    r.delegated = greedy_.has_value();
    if (coloring().color(u) == coloring().color(v))
        throw InvariantError("request endpoints share a color after processing");
    return r;
}

}  // namespace recolor
