#include "secgame/mixrounding.hpp"

#include <algorithm>
#include <cmath>

#include "secgame/errors.hpp"
#include "secgame/fractional.hpp"

namespace secgame {

namespace {

void require_isolated(const Instance& inst, const char* op) {
    if (!inst.isolated())
        throw ContractError(std::string(op) + " requires an instance without resource sharing");
}

std::vector<int> active_nodes(const SliceVector& t) {
    std::vector<int> nodes;
    for (int u = 0; u < static_cast<int>(t.t.size()); ++u)
        if (t.t[u] > 0.0) nodes.push_back(u);
    return nodes;
}

double theta_total(const Instance& inst, const std::vector<int>& nodes) {
    double s = 0.0;
    for (int u : nodes) s += inst.theta()[u];
    return s;
}

}  // namespace

std::vector<int> max_top(const Instance& inst, const ResidualVector& f) {
    require_isolated(inst, "max_top");
    const int n = inst.node_count();
    if (static_cast<int>(f.f.size()) != n)
        throw ContractError("max_top: residual has wrong dimension");

    std::vector<int> order;
    for (int u = 0; u < n; ++u)
        if (f.f[u] > 0.0) order.push_back(u);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return f.f[a] > f.f[b]; });

    std::vector<int> m;
    double used = 0.0;
    for (int u : order) {
        if (used + inst.theta()[u] > inst.resource()) break;
        used += inst.theta()[u];
        m.push_back(u);
    }
    return m;
}

std::pair<std::vector<int>, int> cycle_max_top(const Instance& inst, const SliceVector& t,
                                               int start) {
    require_isolated(inst, "cycle_max_top");
    if (static_cast<int>(t.t.size()) != inst.node_count())
        throw ContractError("cycle_max_top: slice has wrong dimension");
    const std::vector<int> ring = active_nodes(t);
    const int k = static_cast<int>(ring.size());
    if (start < 0 || start >= k) throw ContractError("cycle_max_top: start out of range");
    if (theta_total(inst, ring) <= inst.resource())
        throw ContractError("cycle_max_top: active demand must exceed the resource");

    // Adding while the budget margin holds keeps the total within R (every
    // threshold is at most theta_max) and the precondition guarantees the
    // walk stops before wrapping onto a node twice.
    const double margin = inst.resource() - inst.theta_max();
    std::vector<int> m;
    double used = 0.0;
    int i = start;
    while (used <= margin) {
        m.push_back(ring[i]);
        used += inst.theta()[ring[i]];
        i = (i + 1) % k;
    }
    return {std::move(m), i};
}

std::pair<std::vector<PureStrategy>, int> find_t(const Instance& inst, const SliceVector& t) {
    require_isolated(inst, "find_t");
    const std::vector<int> ring = active_nodes(t);
    const int k = static_cast<int>(ring.size());
    if (k == 0) throw ContractError("find_t: slice has no active nodes");
    if (theta_total(inst, ring) <= inst.resource())
        throw ContractError("find_t: active demand must exceed the resource");

    // Walk chunks until a start position repeats; the segment between the two
    // occurrences is a closed tour of the ring and covers every node the same
    // number of times.  Detection is by start index, which determines the
    // chunk completely, so no float comparison of strategies is needed.
    std::vector<int> first_seen(k, -1);
    std::vector<std::vector<int>> chunks;
    int start = 0;
    int cycle_begin = -1;
    for (int step = 0; step <= k; ++step) {
        if (first_seen[start] >= 0) {
            cycle_begin = first_seen[start];
            break;
        }
        first_seen[start] = static_cast<int>(chunks.size());
        auto [m, next] = cycle_max_top(inst, t, start);
        chunks.push_back(std::move(m));
        start = next;
    }
    if (cycle_begin < 0) throw InternalError("find_t: no start position repeated within k+1 walks");
    chunks.erase(chunks.begin(), chunks.begin() + cycle_begin);

    std::vector<int> cover(inst.node_count(), 0);
    for (const auto& m : chunks)
        for (int u : m) ++cover[u];
    const int c = cover[ring.front()];
    for (int u : ring)
        if (cover[u] != c) throw InternalError("find_t: cycle does not cover nodes uniformly");
    if (c <= 0) throw InternalError("find_t: empty cover count");

    std::vector<PureStrategy> strategies;
    strategies.reserve(chunks.size());
    for (const auto& m : chunks) strategies.push_back(theta_on(inst, m));
    return {std::move(strategies), c};
}

MixedStrategy round_to_mixed(const Instance& inst, const ResidualVector& f0,
                             const RoundObserver& observer) {
    require_isolated(inst, "round_to_mixed");
    const int n = inst.node_count();
    if (static_cast<int>(f0.f.size()) != n)
        throw ContractError("round_to_mixed: residual has wrong dimension");

    std::vector<double> f = f0.f;
    for (double& v : f) {
        if (!std::isfinite(v) || v < -kRoundTol || v > 1.0 + kRoundTol)
            throw ContractError("round_to_mixed: residual entries must lie in [0,1]");
        v = std::clamp(v, 0.0, 1.0);
    }
    double demand = 0.0;
    for (int u = 0; u < n; ++u) demand += f[u] * inst.theta()[u];
    const double margin = inst.resource() - inst.theta_max();
    if (demand > margin + kRoundTol * (1.0 + inst.resource()))
        throw ContractError("round_to_mixed: weighted demand exceeds R - theta_max");

    MixedStrategy out;
    for (int iter = 1;; ++iter) {
        if (iter > n + 5)
            throw InternalError("round_to_mixed: residual failed to empty within n iterations");

        for (double& v : f)
            if (v <= kRoundTol) v = 0.0;
        const double fmax = *std::max_element(f.begin(), f.end());
        if (fmax <= 0.0) break;

        // Everything within the relative window counts as the maximum class
        // and is set to exactly fmax, so later comparisons see one value.
        std::vector<int> v_max;
        for (int u = 0; u < n; ++u) {
            if (f[u] >= fmax * (1.0 - kGroupTol)) {
                f[u] = fmax;
                v_max.push_back(u);
            }
        }

        const std::vector<int> m = max_top(inst, ResidualVector{f});
        std::vector<std::uint8_t> in_m(n, 0);
        for (int u : m) in_m[u] = 1;
        bool contained = true;
        for (int u : v_max)
            if (!in_m[u]) contained = false;

        bool phase_b = false;
        if (contained) {
            // One strategy covering the greedy prefix; peel as much as the
            // prefix's smallest residual and the gap to the outside allow.
            if (m.empty()) throw InternalError("round_to_mixed: empty prefix with residual left");
            double max_out = 0.0;
            for (int u = 0; u < n; ++u)
                if (!in_m[u]) max_out = std::max(max_out, f[u]);
            double min_in = kLpInf;
            double max_in = 0.0;
            for (int u : m) {
                min_in = std::min(min_in, f[u]);
                max_in = std::max(max_in, f[u]);
            }
            const double p = std::min(max_in - max_out, min_in);
            if (p <= 0.0) throw InternalError("round_to_mixed: no progress in prefix step");
            out.support.push_back(theta_on(inst, m));
            out.probs.push_back(p);
            for (int u : m) f[u] -= p;
        } else {
            // The class does not fit one prefix, so its demand exceeds R and
            // a uniform cycle cover can slice it down to the next level.
            phase_b = true;
            double next_level = 0.0;
            for (int u = 0; u < n; ++u)
                if (f[u] != fmax) next_level = std::max(next_level, f[u]);
            const double eps = fmax - next_level;
            if (eps <= 0.0) throw InternalError("round_to_mixed: degenerate slice height");
            SliceVector t{std::vector<double>(n, 0.0), eps};
            for (int u : v_max) t.t[u] = eps;
            auto [slices, c] = find_t(inst, t);
            for (auto& r : slices) {
                out.support.push_back(std::move(r));
                out.probs.push_back(eps / c);
            }
            for (int u : v_max) f[u] -= eps;
        }

        for (double& v : f) v = std::clamp(v, 0.0, 1.0);
        if (observer) observer(RoundState{iter, phase_b, f, v_max, out});
    }

    double mass = 0.0;
    for (double p : out.probs) mass += p;
    if (mass > 1.0 + kFeasTol)
        throw InternalError("round_to_mixed: probability mass exceeded one");
    const std::vector<double> status = mixed_status(inst, out);
    for (int u = 0; u < n; ++u) {
        if (std::abs(status[u] - std::clamp(f0.f[u], 0.0, 1.0)) > 2.0 * kRoundTol)
            throw InternalError("round_to_mixed: constructed status drifted from target");
    }
    return out;
}

UpperBoundResult upper_bound_mixed(const Instance& inst) {
    require_isolated(inst, "upper_bound_mixed");
    if (inst.resource() < inst.theta_max() - kStatusTol)
        throw ContractError("upper_bound_mixed: resource below the largest threshold");

    const double reduced = std::max(inst.resource() - inst.theta_max(), 0.0);
    const FractionalResult frac = optimal_fractional(inst, reduced);

    ResidualVector f0;
    f0.f.resize(inst.node_count());
    for (int u = 0; u < inst.node_count(); ++u)
        f0.f[u] = std::min(frac.strategy.r[u] / inst.theta()[u], 1.0);

    UpperBoundResult res;
    res.strategy = round_to_mixed(inst, f0);
    res.loss = mixed_loss(inst, res.strategy).result;
    return res;
}

}  // namespace secgame
