#include "recolor/delta.hpp"

#include <algorithm>

namespace recolor {

namespace {

std::uint64_t edge_key(Vertex u, Vertex v) {
    const auto a = static_cast<std::uint64_t>(std::min(u, v));
    const auto b = static_cast<std::uint64_t>(std::max(u, v));
    return a << 32 | b;
}

}  // namespace

std::vector<Color> sample_feasible_coloring(const Adjacency& g, int delta, Rng& rng) {
    const std::size_t n = g.size();
    std::vector<int> taken(n * static_cast<std::size_t>(delta), 0);
    std::vector<Color> out(n, -1);
    std::vector<Color> list;
    list.reserve(delta);
    for (std::size_t v = 0; v < n; ++v) {
        list.clear();
        for (Color c = 0; c < delta; ++c)
            if (taken[v * delta + c] == 0) list.push_back(c);
        if (list.empty()) throw DegreeViolation("vertex has no feasible color");
        const Color c = list[uniform_index(rng, list.size())];
        out[v] = c;
        for (Vertex x : g[v]) ++taken[static_cast<std::size_t>(x) * delta + c];
    }
    return out;
}

DeltaRecoloring::DeltaRecoloring(const Instance& instance, Policy policy, std::uint64_t seed, bool keep_log)
    : instance_(instance), policy_(policy), rng_(seed) {
    instance_.validate();
    if (instance_.model != Model::Delta) throw InvalidInstance("delta recoloring needs a delta instance");
    delta_ = instance_.k;
    const Rational eps = instance_.eps;
    degree_limit_ = static_cast<int>(floor_mul_div(delta_, eps.den - eps.num, eps.den));
    const Weight cap = augmented(instance_.B, eps);
    state_ = ColoringState(instance_.c0, instance_.w, std::vector<Weight>(delta_, cap));
    ledger_.keep_log = keep_log;
    ledger_.phases_started = 1;
    const auto n = static_cast<std::size_t>(instance_.n);
    adj_.assign(n, {});
    neighbor_colors_.assign(n * delta_, 0);
    in_cover_.assign(n, 0);
    touched_.assign(n, 0);
}

std::vector<Color> DeltaRecoloring::feasible_colors(Vertex v) const {
    std::vector<Color> out;
    for (Color c = 0; c < delta_; ++c)
        if (count(v, c) == 0) out.push_back(c);
    return out;
}

void DeltaRecoloring::set_color(Vertex v, Color c, Cause cause) {
    const Color old = state_.color(v);
    touched_[v] = 1;
    if (old == c) return;
    for (Vertex x : adj_[v]) {
        --count(x, old);
        ++count(x, c);
    }
    state_.recolor(v, c, ledger_, cause == Cause::Recolor ? RecolorMode::Checked : RecolorMode::Unchecked, cause);
}

void DeltaRecoloring::install(const std::vector<Color>& colors) {
    ++ledger_.rebalance_calls;
    for (Vertex v = 0; v < instance_.n; ++v) {
        touched_[v] = 1;
        state_.recolor(v, colors[v], ledger_, RecolorMode::Unchecked, Cause::Rebalance);
    }
    state_.check_capacity();
    std::fill(neighbor_colors_.begin(), neighbor_colors_.end(), 0);
    for (Vertex v = 0; v < instance_.n; ++v)
        for (Vertex x : adj_[v]) ++count(v, state_.color(x));
    phase_recolorings_.push_back(current_phase_);
    current_phase_ = 0;
    ++ledger_.phases_completed;
    ++ledger_.phases_started;
}

void DeltaRecoloring::det_rebalance() {
    const std::vector<Color> classes = equitable_coloring(adj_, delta_);
    install(align_classes(classes, state_.colors(), delta_));
}

void DeltaRecoloring::rand_rebalance() {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<Color> colors = sample_feasible_coloring(adj_, delta_, rng_);
        const std::vector<Weight> load = color_loads(colors, state_.weights(), delta_);
        bool fits = true;
        for (Color c = 0; c < delta_; ++c) fits = fits && load[c] <= state_.capacity(c);
        if (fits) {
            install(colors);
            return;
        }
        ++resamples_;
    }
    throw InvariantError("randomized rebalance kept exceeding capacity");
}

void DeltaRecoloring::det_recolor(Vertex v) {
    Color best = -1;
    for (Color c = 0; c < delta_; ++c) {
        if (count(v, c) != 0 || state_.residual(c) <= 0) continue;
        if (best < 0 || state_.residual(c) > state_.residual(best)) best = c;
    }
    if (best < 0) {
        det_rebalance();
        return;
    }
    set_color(v, best, Cause::Recolor);
    ++current_phase_;
}

void DeltaRecoloring::rand_recolor(Vertex v) {
    const std::vector<Color> list = feasible_colors(v);
    const Color c = list[uniform_index(rng_, list.size())];
    if (state_.residual(c) < state_.weight(v)) {
        rand_rebalance();
        return;
    }
    set_color(v, c, Cause::Recolor);
    ++current_phase_;
}

void DeltaRecoloring::recolor_vertex(Vertex v) {
    if (policy_ == Policy::Deterministic)
        det_recolor(v);
    else
        rand_recolor(v);
}

StepReport DeltaRecoloring::process(Vertex u, Vertex v) {
    if (u == v || u < 0 || v < 0 || u >= instance_.n || v >= instance_.n) throw InputError("invalid request");
    ledger_.step = ++t_;
    StepReport r;
    r.t = t_;
    r.u = u;
    r.v = v;
    r.mono_at_arrival = state_.color(u) == state_.color(v);
    r.endpoint_recolored_before = touched_[u] || touched_[v];
    if (!edges_.insert(edge_key(u, v)).second) {
        r.new_edge = false;
        return r;
    }
    if (degree(u) + 1 > degree_limit_ || degree(v) + 1 > degree_limit_) {
        edges_.erase(edge_key(u, v));
        throw DegreeViolation("request (" + std::to_string(u) + "," + std::to_string(v) + ") exceeds degree " +
                              std::to_string(degree_limit_));
    }
    adj_[u].push_back(v);
    adj_[v].push_back(u);
    ++count(u, state_.color(v));
    ++count(v, state_.color(u));

    const bool u_cov = in_cover_[u];
    const bool v_cov = in_cover_[v];
    auto cover_both = [&] {
        for (Vertex x : {u, v})
            if (!in_cover_[x]) {
                in_cover_[x] = 1;
                ++cover_size_;
            }
    };
    if (instance_.c0[u] == instance_.c0[v]) {
        gm_edges_.push_back(Request{u, v});
        if (!u_cov && !v_cov) cover_both();
    }
    if (!r.mono_at_arrival) return r;

    Vertex x;
    if (!u_cov && !v_cov) {
        cover_both();
        x = u;
    } else if (u_cov != v_cov) {
        x = u_cov ? u : v;
    } else if (degree(u) != degree(v)) {
        x = degree(u) > degree(v) ? u : v;
    } else {
        x = std::min(u, v);
    }
    const Weight before = ledger_.total_cost;
    const auto rebalances = ledger_.rebalance_calls;
    recolor_vertex(x);
    r.recolored = x;
    r.cost = ledger_.total_cost - before;
    r.branch = ledger_.rebalance_calls > rebalances ? Branch::DeltaRebalance : Branch::Recolor;
    r.phase_ended = r.branch == Branch::DeltaRebalance;
    if (state_.color(u) == state_.color(v)) throw InvariantError("request endpoints share a color after processing");
    return r;
}

}  // namespace recolor
