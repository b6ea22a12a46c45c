#include "secgame/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "secgame/lp.hpp"

namespace secgame {

namespace {

std::vector<int> mask_to_nodes(std::uint32_t mask, int n) {
    std::vector<int> nodes;
    for (int u = 0; u < n; ++u)
        if (mask & (1u << u)) nodes.push_back(u);
    return nodes;
}

}  // namespace

std::vector<std::vector<int>> enumerate_feasible_statuses(const Instance& inst, int limit_n) {
    const int n = inst.node_count();
    if (n > limit_n)
        throw ContractError("status enumeration limited to " + std::to_string(limit_n) +
                            " nodes, got " + std::to_string(n));

    const std::uint32_t total = 1u << n;
    std::vector<std::uint8_t> feasible(total, 0);

    if (inst.isolated()) {
        const double cap = inst.resource() + kLpTol * (1.0 + inst.resource());
        for (std::uint32_t mask = 0; mask < total; ++mask) {
            double need = 0.0;
            for (int u = 0; u < n; ++u)
                if (mask & (1u << u)) need += inst.theta()[u];
            feasible[mask] = need <= cap;
        }
    } else {
        // Feasibility is downward closed (the same allocation defends any
        // subset), so a set is only worth an LP if every one-node-removed
        // subset already passed.  Ascending masks visit subsets first.
        for (std::uint32_t mask = 0; mask < total; ++mask) {
            bool candidate = true;
            for (int u = 0; u < n && candidate; ++u)
                if ((mask & (1u << u)) && !feasible[mask & ~(1u << u)]) candidate = false;
            if (!candidate) continue;
            feasible[mask] =
                can_defend(inst, mask_to_nodes(mask, n), inst.resource()).has_value();
        }
    }

    std::vector<std::vector<int>> statuses;
    for (std::uint32_t mask = 0; mask < total; ++mask) {
        if (!feasible[mask]) continue;
        bool maximal = true;
        for (int u = 0; u < n && maximal; ++u)
            if (!(mask & (1u << u)) && feasible[mask | (1u << u)]) maximal = false;
        if (!maximal) continue;
        std::vector<int> status(n, 0);
        for (int u = 0; u < n; ++u)
            if (mask & (1u << u)) status[u] = 1;
        statuses.push_back(std::move(status));
    }
    std::sort(statuses.begin(), statuses.end());
    return statuses;
}

// Why maximal statuses suffice for the exact mixed optimum: any mixed
// strategy is a distribution over pure strategies, and each pure strategy's
// status vector is some feasible 0/1 vector, i.e. componentwise at most one
// of the maximal ones.  Swapping each pure strategy for one realizing a
// maximal superset of its status only raises every node's defense
// probability, which never increases any node's expected loss.  Hence some
// optimal mixed strategy uses maximal statuses only, and the probability
// program restricted to them attains the true optimum.
OracleResult exact_opt_mixed(const Instance& inst, int limit_n) {
    const std::vector<std::vector<int>> statuses = enumerate_feasible_statuses(inst, limit_n);
    LpSolution sol = solve(build_prob_lp(inst, statuses));
    if (sol.status != LpStatus::Optimal)
        throw SolverError("oracle probability program must be solvable");

    OracleResult res;
    res.opt_m = std::max(sol.objective, 0.0);
    for (std::size_t j = 0; j < statuses.size(); ++j) {
        const double p = sol.x[j];
        if (p <= 1e-12) continue;
        std::vector<int> nodes;
        for (int u = 0; u < inst.node_count(); ++u)
            if (statuses[j][u]) nodes.push_back(u);
        auto witness = can_defend(inst, nodes, inst.resource());
        if (!witness)
            throw InternalError("oracle: enumerated status lost feasibility on recheck");
        res.strategy.support.push_back(std::move(*witness));
        res.strategy.probs.push_back(p);
    }
    return res;
}

Instance gen_even_partition_instance(const std::vector<double>& numbers) {
    if (numbers.empty()) throw ContractError("even-partition family needs at least one number");
    double sum = 0.0;
    for (double a : numbers) {
        if (!std::isfinite(a) || a <= 0.0)
            throw ContractError("even-partition numbers must be positive");
        sum += a;
    }
    return Instance(numbers, std::vector<double>(numbers.size(), 1.0), {}, sum / 2.0);
}

BipartiteGapInstance gen_bipartite_gap_instance(double beta, double resource) {
    if (!(beta > 1.0) || !std::isfinite(beta))
        throw ContractError("bipartite gap family needs beta > 1");
    if (!(resource > 0.0) || !std::isfinite(resource))
        throw ContractError("bipartite gap family needs a positive resource");

    const int u_count =
        static_cast<int>(std::max<long long>(1, std::llround(2.0 * beta * resource)));
    const int v_count =
        static_cast<int>(std::max<long long>(1, std::llround(4.0 * beta * beta * resource)));
    const double weight = 1.0 / u_count;

    const int n = u_count + v_count;
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(u_count) * v_count);
    for (int u = 0; u < u_count; ++u)
        for (int v = 0; v < v_count; ++v)
            edges.push_back(Edge{u, u_count + v, weight});

    return BipartiteGapInstance{Instance(std::vector<double>(n, 1.0), std::vector<double>(n, 1.0),
                                         std::move(edges), resource),
                                u_count, v_count, weight};
}

}  // namespace secgame
