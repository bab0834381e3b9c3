#include <algorithm>
#include <charconv>
#include <numeric>
#include <unordered_set>

#include "recolor/coloring.hpp"
#include "recolor/graph.hpp"
#include "recolor/instance.hpp"
#include "recolor/step.hpp"
#include "recolor/tracker.hpp"

namespace recolor {

// ---- rational -------------------------------------------------------------

Rational Rational::make(std::int64_t num, std::int64_t den) {
    if (den == 0) throw InputError("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Rational{num, den};
}

namespace {

std::int64_t parse_int(std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw InputError("not an integer: '" + std::string(s) + "'");
    return v;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
    if (auto slash = text.find('/'); slash != std::string_view::npos)
        return make(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view whole = text.substr(0, dot);
        std::string_view frac = text.substr(dot + 1);
        if (frac.size() > 12 || frac.empty()) throw InputError("bad decimal: '" + std::string(text) + "'");
        std::int64_t den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        const std::int64_t w = whole.empty() ? 0 : parse_int(whole);
        return make(w * den + parse_int(frac), den);
    }
    return make(parse_int(text), 1);
}

std::string Rational::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

Weight floor_mul_div(Weight x, std::int64_t a, std::int64_t b) {
    const __int128 p = static_cast<__int128>(x) * a;
    __int128 q = p / b;
    if ((p % b != 0) && ((p < 0) != (b < 0))) --q;
    return static_cast<Weight>(q);
}

// ---- instance -------------------------------------------------------------

std::string_view model_tag(Model m) {
    switch (m) {
        case Model::Online2: return "online2";
        case Model::FullyDynamic2: return "fully_dynamic2";
        case Model::Delta: return "delta";
    }
    return "?";
}

Model parse_model(std::string_view tag) {
    if (tag == "online2") return Model::Online2;
    if (tag == "fully_dynamic2") return Model::FullyDynamic2;
    if (tag == "delta") return Model::Delta;
    throw InputError("unknown model tag '" + std::string(tag) + "'");
}

Weight Instance::total_weight() const { return std::accumulate(w.begin(), w.end(), Weight{0}); }

void Instance::validate() const {
    auto fail = [](const std::string& m) { throw InvalidInstance(m); };
    if (n < 1) fail("n must be positive");
    if (static_cast<int>(w.size()) != n || static_cast<int>(c0.size()) != n) fail("weight/color vectors must have n entries");
    if (eps.num <= 0 || eps.num >= eps.den) fail("eps must lie in (0,1)");
    for (Weight x : w)
        if (x <= 0) fail("weights must be positive");
    for (Color c : c0)
        if (c < 0 || c >= k) fail("initial color out of range");
    if (model == Model::Delta) {
        if (k < 2) fail("delta must be at least 2");
        for (Weight x : w)
            if (x != 1) fail("delta instances are unweighted");
        if (n % k != 0) fail("n must be divisible by delta");
        if (B != n / k) fail("B must equal n / delta");
        for (Weight load : color_loads(c0, w, k))
            if (load != B) fail("initial coloring must put n / delta vertices on every color");
    } else {
        if (k != 2) fail("two-color models need k = 2");
        const Weight total = total_weight();
        if (total % 2 != 0) fail("total weight must be even");
        if (B != total / 2) fail("B must be half the total weight");
        for (Weight x : w)
            if (x > B) fail("a vertex heavier than half the total weight");
    }
}

Instance Instance::unit_two_color(Model model, std::vector<Color> c0, Rational eps) {
    Instance inst;
    inst.model = model;
    inst.n = static_cast<int>(c0.size());
    inst.k = 2;
    inst.w.assign(c0.size(), 1);
    inst.c0 = std::move(c0);
    inst.B = inst.n / 2;
    inst.eps = eps;
    return inst;
}

Instance Instance::delta(std::vector<Color> c0, int delta, Rational eps) {
    Instance inst;
    inst.model = Model::Delta;
    inst.n = static_cast<int>(c0.size());
    inst.k = delta;
    inst.w.assign(c0.size(), 1);
    inst.c0 = std::move(c0);
    inst.B = inst.n / delta;
    inst.eps = eps;
    return inst;
}

std::vector<Weight> color_loads(std::span<const Color> colors, std::span<const Weight> w, int k) {
    std::vector<Weight> load(k, 0);
    for (std::size_t v = 0; v < colors.size(); ++v) load[colors[v]] += w[v];
    return load;
}

// ---- coloring state and ledger --------------------------------------------

void CostLedger::charge(Vertex v, Color from, Color to, Weight w, Cause cause) {
    total_cost += w;
    ++recolor_events;
    if (cause == Cause::Rebalance) ++rebalance_moves;
    if (keep_log) log.push_back(RecolorEvent{step, v, from, to, w, cause});
}

ColoringState::ColoringState(std::vector<Color> colors, std::vector<Weight> weights, std::vector<Weight> capacity)
    : colors_(std::move(colors)), weights_(std::move(weights)), capacity_(std::move(capacity)) {
    load_ = color_loads(colors_, weights_, k());
}

void ColoringState::recolor(Vertex v, Color c, CostLedger& ledger, RecolorMode mode, Cause cause) {
    const Color from = colors_[v];
    if (from == c) return;
    const Weight w = weights_[v];
    if (mode == RecolorMode::Checked && load_[c] + w > capacity_[c])
        throw CapacityViolation("recolor of vertex " + std::to_string(v) + " overflows color " + std::to_string(c));
    colors_[v] = c;
    load_[from] -= w;
    load_[c] += w;
    ledger.charge(v, from, c, w, cause);
}

bool ColoringState::reconciles() const { return color_loads(colors_, weights_, k()) == load_; }

void ColoringState::check_capacity() const {
    for (int c = 0; c < k(); ++c)
        if (load_[c] > capacity_[c])
            throw CapacityViolation("color " + std::to_string(c) + " holds " + std::to_string(load_[c]) +
                                    " over capacity " + std::to_string(capacity_[c]));
}

// ---- component tracker ----------------------------------------------------

ComponentTracker::ComponentTracker(std::vector<Weight> weights) : weights_(std::move(weights)) { reset(); }

void ComponentTracker::reset() {
    const auto n = weights_.size();
    parent_.resize(n);
    std::iota(parent_.begin(), parent_.end(), Vertex{0});
    parity_.assign(n, 0);
    record_.assign(n, ComponentRecord{});
    head_.resize(n);
    tail_.resize(n);
    next_.assign(n, -1);
    for (std::size_t v = 0; v < n; ++v) {
        record_[v].weight_a = weights_[v];
        record_[v].size_a = 1;
        record_[v].estimate = weights_[v];
        head_[v] = tail_[v] = static_cast<Vertex>(v);
    }
}

Position ComponentTracker::find(Vertex v) {
    scratch_.clear();
    Vertex x = v;
    while (parent_[x] != x) {
        scratch_.push_back(x);
        x = parent_[x];
    }
    const Vertex root = x;
    for (auto it = scratch_.rbegin(); it != scratch_.rend(); ++it) {
        const Vertex y = *it;
        if (parent_[y] != root) {
            parity_[y] ^= parity_[parent_[y]];
            parent_[y] = root;
        }
    }
    return Position{root, v == root ? std::uint8_t{0} : parity_[v]};
}

MergeOutcome ComponentTracker::merge(Vertex u, Vertex v) {
    const Position pu = find(u);
    const Position pv = find(v);
    MergeOutcome out;
    if (pu.root == pv.root) {
        out.survivor = out.absorbed = pu.root;
        if (pu.parity != pv.parity) {
            out.kind = MergeOutcome::Kind::SameComponentBipartite;
        } else {
            out.kind = MergeOutcome::Kind::SameComponentOdd;
            record_[pu.root].odd = true;
        }
        return out;
    }
    const bool u_survives = record_[pu.root].weight() >= record_[pv.root].weight();
    const Position s = u_survives ? pu : pv;
    const Position a = u_survives ? pv : pu;
    const std::uint8_t shift = static_cast<std::uint8_t>(s.parity ^ a.parity ^ 1);
    parent_[a.root] = s.root;
    parity_[a.root] = shift;

    ComponentRecord& rs = record_[s.root];
    const ComponentRecord& ra = record_[a.root];
    if (shift == 0) {
        rs.weight_a += ra.weight_a;
        rs.weight_b += ra.weight_b;
        rs.size_a += ra.size_a;
        rs.size_b += ra.size_b;
    } else {
        rs.weight_a += ra.weight_b;
        rs.weight_b += ra.weight_a;
        rs.size_a += ra.size_b;
        rs.size_b += ra.size_a;
    }
    rs.odd = rs.odd || ra.odd;

    next_[tail_[s.root]] = head_[a.root];
    tail_[s.root] = tail_[a.root];
    head_[a.root] = tail_[a.root] = -1;

    out.kind = MergeOutcome::Kind::Merged;
    out.survivor = s.root;
    out.absorbed = a.root;
    out.orientation_match = shift == 0;
    return out;
}

std::vector<Vertex> ComponentTracker::roots() const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < n(); ++v)
        if (parent_[v] == v) out.push_back(v);
    return out;
}

std::vector<Vertex> ComponentTracker::members(Vertex root) const {
    std::vector<Vertex> out;
    out.reserve(record_[root].size());
    for_each_member(root, [&](Vertex x) { out.push_back(x); });
    return out;
}

OrientationChoice optimal_orientation(ComponentTracker& tracker, Vertex root, std::span<const Color> c0) {
    const ComponentRecord& rec = tracker.record(root);
    if (rec.odd) throw OddComponent("component rooted at " + std::to_string(root) + " is not bipartite");
    Weight first = 0;
    for (Vertex x : tracker.members(root))
        if (oriented_color(Orientation::First, tracker.find(x).parity) != c0[x]) first += tracker.weight(x);
    // Every member mismatches c0 under exactly one of the two orientations.
    const Weight second = rec.weight() - first;
    if (first <= second) return {Orientation::First, first};
    return {Orientation::Second, second};
}

// ---- step -----------------------------------------------------------------

std::string_view branch_name(Branch b) {
    switch (b) {
        case Branch::None: return "none";
        case Branch::Merge: return "merge";
        case Branch::Flip: return "flip";
        case Branch::Rebalance: return "rebalance";
        case Branch::OddCycle: return "odd_cycle";
        case Branch::Infeasible: return "infeasible";
        case Branch::Recompute: return "recompute";
        case Branch::Delegate: return "delegate";
        case Branch::Recolor: return "recolor";
        case Branch::DeltaRebalance: return "delta_rebalance";
    }
    return "?";
}

// ---- graph helpers --------------------------------------------------------

Adjacency build_adjacency(int n, std::span<const Request> edges) {
    Adjacency g(n);
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(edges.size() * 2);
    for (const Request& e : edges) {
        const auto a = static_cast<std::uint64_t>(std::min(e.u, e.v));
        const auto b = static_cast<std::uint64_t>(std::max(e.u, e.v));
        if (!seen.insert(a << 32 | b).second) continue;
        g[e.u].push_back(e.v);
        g[e.v].push_back(e.u);
    }
    return g;
}

int max_degree(const Adjacency& g) {
    std::size_t d = 0;
    for (const auto& nb : g) d = std::max(d, nb.size());
    return static_cast<int>(d);
}

bool is_proper(const Adjacency& g, std::span<const Color> colors) {
    for (std::size_t v = 0; v < g.size(); ++v)
        for (Vertex x : g[v])
            if (colors[v] == colors[x]) return false;
    return true;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t trial) {
    return splitmix64(splitmix64(master) ^ (trial * 0xd1b54a32d192ed03ULL));
}

}  // namespace recolor
