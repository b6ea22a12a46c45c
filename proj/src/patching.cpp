#include "secgame/patching.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "secgame/format.hpp"
#include "secgame/pure.hpp"

namespace secgame {

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

LossVector per_node_losses(const Instance& inst, const MixedStrategy& mixed) {
    const std::vector<double> status = mixed_status(inst, mixed);
    LossVector losses(inst.node_count());
    for (int u = 0; u < inst.node_count(); ++u)
        losses[u] = (1.0 - std::min(status[u], 1.0)) * inst.alpha()[u];
    return losses;
}

bool covers(const Instance& inst, const PureStrategy& r, const std::vector<int>& nodes) {
    const std::vector<int> status = defending_status(inst, r);
    for (int u : nodes)
        if (!status[u]) return false;
    return true;
}

}  // namespace

std::vector<int> shared_max_top(const Instance& inst, const LossVector& scores) {
    const int n = inst.node_count();
    if (static_cast<int>(scores.size()) != n)
        throw ContractError("shared_max_top: scores have wrong dimension");

    std::vector<int> order(n);
    for (int u = 0; u < n; ++u) order[u] = u;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return scores[a] > scores[b]; });

    // Longest defendable prefix; feasibility can only improve as the prefix
    // shrinks, so binary search over the length is valid.
    int lo = 0, hi = n;
    while (lo < hi) {
        const int mid = lo + (hi - lo + 1) / 2;
        std::vector<int> prefix(order.begin(), order.begin() + mid);
        if (can_defend(inst, prefix, inst.resource()))
            lo = mid;
        else
            hi = mid - 1;
    }
    return {order.begin(), order.begin() + lo};
}

FindROutcome find_r_outcome(const Instance& inst, const std::vector<PureStrategy>& D,
                            const LossVector& losses, SplitMix64& rng) {
    FindROutcome out;
    std::vector<int> m = shared_max_top(inst, losses);

    double max_in = 0.0, max_out = 0.0;
    std::vector<std::uint8_t> in_m(inst.node_count(), 0);
    for (int u : m) in_m[u] = 1;
    for (int u = 0; u < inst.node_count(); ++u) {
        if (in_m[u])
            max_in = std::max(max_in, losses[u]);
        else
            max_out = std::max(max_out, losses[u]);
    }
    out.delta_l = std::max(0.0, max_in - max_out);

    auto covered = [&](const std::vector<int>& nodes) {
        for (const PureStrategy& r : D)
            if (covers(inst, r, nodes)) return true;
        return false;
    };

    if (covered(m)) {
        // Nothing new to gain from the loss ranking; retry once with random
        // scores (always n draws, keeping the stream position predictable).
        out.fallback = true;
        LossVector random_scores(inst.node_count());
        for (double& s : random_scores) s = rng.next_unit();
        m = shared_max_top(inst, random_scores);
        if (covered(m)) return out;
    }

    auto witness = can_defend(inst, m, inst.resource());
    if (!witness)
        throw InternalError("find_r: defendable prefix lost feasibility on recheck");
    out.strategy = std::move(*witness);
    out.target = std::move(m);
    return out;
}

std::pair<std::vector<double>, double> prob_lp(const Instance& inst,
                                               const std::vector<PureStrategy>& D) {
    if (D.empty()) throw ContractError("prob_lp: support must be non-empty");
    std::vector<std::vector<int>> statuses;
    statuses.reserve(D.size());
    for (const PureStrategy& r : D) statuses.push_back(defending_status(inst, r));

    LpSolution sol = solve(build_prob_lp(inst, statuses));
    if (sol.status != LpStatus::Optimal)
        throw SolverError("probability program must be solvable, got infeasible/unbounded");

    std::vector<double> probs(sol.x.begin(), sol.x.begin() + D.size());
    for (double& p : probs) p = std::max(p, 0.0);
    return {std::move(probs), std::max(sol.objective, 0.0)};
}

PatchResult patch(const Instance& inst, const PatchConfig& cfg) {
    if (cfg.iterations < 1) throw ContractError("patch: iteration count must be >= 1");

    PatchResult res;
    try {
        std::vector<PureStrategy> D{optimal_pure(inst).strategy};
        std::vector<std::vector<int>> member_statuses{defending_status(inst, D.front())};
        SplitMix64 rng(cfg.rng_seed);

        for (int i = 2; i <= cfg.iterations; ++i) {
            const auto t0 = std::chrono::steady_clock::now();
            auto [probs, loss] = prob_lp(inst, D);
            const MixedStrategy current{D, probs};
            const LossVector losses = per_node_losses(inst, current);

            FindROutcome found = find_r_outcome(inst, D, losses, rng);
            const int measured_support = static_cast<int>(D.size());
            if (found.strategy) {
                // A status identical to an existing member would only add a
                // duplicate column to the probability program.
                std::vector<int> status = defending_status(inst, *found.strategy);
                if (std::find(member_statuses.begin(), member_statuses.end(), status) ==
                    member_statuses.end()) {
                    D.push_back(std::move(*found.strategy));
                    member_statuses.push_back(std::move(status));
                }
            }
            res.trace.steps.push_back(PatchStep{i - 1, measured_support, loss, found.delta_l,
                                                found.fallback, ms_since(t0)});
        }

        const auto t0 = std::chrono::steady_clock::now();
        auto [probs, loss] = prob_lp(inst, D);
        res.trace.steps.push_back(PatchStep{cfg.iterations, static_cast<int>(D.size()), loss,
                                            0.0, false, ms_since(t0)});
        res.strategy = MixedStrategy{std::move(D), std::move(probs)};
        res.result = loss;
    } catch (const SolverError& e) {
        throw PatchAborted(e.what(), res.trace);
    }
    return res;
}

bool progress_bound_check(const Instance& inst, const MixedStrategy& mixed,
                          const std::vector<int>& M, double new_result, double tol) {
    const LossVector losses = per_node_losses(inst, mixed);
    const double old_result = losses.empty() ? 0.0 : *std::max_element(losses.begin(), losses.end());

    std::vector<std::uint8_t> in_m(inst.node_count(), 0);
    for (int u : M) {
        if (u < 0 || u >= inst.node_count())
            throw ContractError("progress_bound_check: node index out of range");
        in_m[u] = 1;
    }
    double max_in = 0.0, max_out = 0.0;
    for (int u = 0; u < inst.node_count(); ++u) {
        if (in_m[u])
            max_in = std::max(max_in, losses[u]);
        else
            max_out = std::max(max_out, losses[u]);
    }

    const double delta = std::max(0.0, max_in - max_out);
    double bound = old_result;
    if (delta > 0.0) bound = (1.0 - delta / (delta + inst.alpha_max())) * old_result;
    return new_result <= bound + tol;
}

std::string trace_to_csv(const PatchTrace& trace) {
    std::ostringstream out;
    out << "iter,support,result,delta_l,fallback,ms\n";
    for (const PatchStep& s : trace.steps) {
        out << s.iteration << ',' << s.support << ',' << fmt9(s.result) << ','
            << fmt9(s.delta_l) << ',' << (s.fallback ? 1 : 0) << ',' << fmt9(s.millis) << '\n';
    }
    return out.str();
}

}  // namespace secgame
