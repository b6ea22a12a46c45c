#pragma once

#include <utility>
#include <vector>

#include "secgame/errors.hpp"

namespace secgame {

// Absolute slack when testing "defending power reaches the threshold", so that
// allocations produced by the LP solver count as defending the nodes they were
// solved to defend.
inline constexpr double kStatusTol = 1e-9;

// Slack on resource budgets and probability mass.
inline constexpr double kFeasTol = 1e-7;

struct Edge {
    int u = 0;
    int v = 0;
    double w = 0.0;
};

// A security game instance: an undirected graph whose nodes carry a defending
// threshold theta > 0 and a loss value alpha >= 0, edge weights w in [0, 1]
// describing how much allocated resource a neighbour shares, and a total
// resource budget.  Connectivity is not required; instances are immutable
// once constructed, so all operations on them are safe to run concurrently.
class Instance {
public:
    Instance(std::vector<double> theta, std::vector<double> alpha,
             std::vector<Edge> edges, double resource);

    int node_count() const { return static_cast<int>(theta_.size()); }
    const std::vector<double>& theta() const { return theta_; }
    const std::vector<double>& alpha() const { return alpha_; }
    const std::vector<Edge>& edges() const { return edges_; }
    double resource() const { return resource_; }

    // Neighbours of u with the shared fraction w_uv.
    const std::vector<std::pair<int, double>>& neighbors(int u) const { return adjacency_[u]; }

    // True when the sharing terms vanish: no edges, or every weight is zero.
    bool isolated() const { return isolated_; }

    double theta_max() const { return theta_max_; }
    double alpha_max() const { return alpha_max_; }
    double theta_sum() const { return theta_sum_; }

    // Same game with a different budget; used for budget sweeps.
    Instance with_resource(double resource) const;

private:
    std::vector<double> theta_;
    std::vector<double> alpha_;
    std::vector<Edge> edges_;
    double resource_;
    std::vector<std::vector<std::pair<int, double>>> adjacency_;
    bool isolated_ = true;
    double theta_max_ = 0.0;
    double alpha_max_ = 0.0;
    double theta_sum_ = 0.0;
};

// Allocation of resource to nodes, r_u >= 0, sum <= resource (+ slack).
struct PureStrategy {
    std::vector<double> r;
};

// Distribution over pure strategies.  Probabilities may sum to less than one;
// the missing mass stands for a dummy strategy that defends nothing.
struct MixedStrategy {
    std::vector<PureStrategy> support;
    std::vector<double> probs;
};

using LossVector = std::vector<double>;

struct LossReport {
    LossVector per_node;  // one entry per node, in [0, alpha_u]
    double result = 0.0;  // max over nodes: the attacker plays a best response
};

// pi_u = r_u + sum over neighbours v of w_uv * r_v.
std::vector<double> defending_power(const Instance& inst, const PureStrategy& s);

// x_u = 1 iff pi_u >= theta_u - kStatusTol.
std::vector<int> defending_status(const Instance& inst, const PureStrategy& s);

// Loss alpha_u on undefended nodes, worst case over the attacked node.
LossReport pure_loss(const Instance& inst, const PureStrategy& s);

// Probability that node u is defended: sum_i p_i * x_u(r_i).
std::vector<double> mixed_status(const Instance& inst, const MixedStrategy& m);

// Expected loss (1 - x_u) * alpha_u per node, worst case over nodes.
LossReport mixed_loss(const Instance& inst, const MixedStrategy& m);

// Relaxed loss (1 - min(pi_u / theta_u, 1)) * alpha_u, worst case over nodes.
LossReport fractional_loss(const Instance& inst, const PureStrategy& s);

// Throw ContractError unless the strategy has the right dimension, is
// non-negative and respects the budget (validation helpers; the evaluation
// functions above only check dimensions).
void check_pure_feasible(const Instance& inst, const PureStrategy& s);
void check_mixed_feasible(const Instance& inst, const MixedStrategy& m);

// The allocation that puts exactly theta_u on each listed node.
PureStrategy theta_on(const Instance& inst, const std::vector<int>& nodes);

}  // namespace secgame
