#include "secgame/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace secgame {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw ContractError(msg);
}

}  // namespace

Instance::Instance(std::vector<double> theta, std::vector<double> alpha,
                   std::vector<Edge> edges, double resource)
    : theta_(std::move(theta)), alpha_(std::move(alpha)), edges_(std::move(edges)),
      resource_(resource) {
    const int n = static_cast<int>(theta_.size());
    require(n >= 1, "instance needs at least one node");
    require(alpha_.size() == theta_.size(), "theta and alpha must have the same length");
    require(std::isfinite(resource_) && resource_ >= 0.0, "resource must be finite and >= 0");

    for (int u = 0; u < n; ++u) {
        require(std::isfinite(theta_[u]) && theta_[u] > 0.0,
                "theta must be positive (node " + std::to_string(u) + ")");
        require(std::isfinite(alpha_[u]) && alpha_[u] >= 0.0,
                "alpha must be >= 0 (node " + std::to_string(u) + ")");
    }

    adjacency_.assign(n, {});
    std::set<std::pair<int, int>> seen;
    for (const Edge& e : edges_) {
        require(e.u >= 0 && e.u < n && e.v >= 0 && e.v < n,
                "edge endpoint out of range");
        require(e.u != e.v, "self-loops are not allowed");
        require(std::isfinite(e.w) && e.w >= 0.0 && e.w <= 1.0,
                "edge weight must lie in [0, 1]");
        auto key = std::minmax(e.u, e.v);
        require(seen.insert(key).second, "duplicate edge {" + std::to_string(key.first) +
                                             "," + std::to_string(key.second) + "}");
        adjacency_[e.u].emplace_back(e.v, e.w);
        adjacency_[e.v].emplace_back(e.u, e.w);
        if (e.w != 0.0) isolated_ = false;
    }

    theta_max_ = *std::max_element(theta_.begin(), theta_.end());
    alpha_max_ = *std::max_element(alpha_.begin(), alpha_.end());
    for (double t : theta_) theta_sum_ += t;
}

Instance Instance::with_resource(double resource) const {
    return Instance(theta_, alpha_, edges_, resource);
}

namespace {

void check_dimension(const Instance& inst, const PureStrategy& s) {
    if (static_cast<int>(s.r.size()) != inst.node_count())
        throw ContractError("strategy has wrong dimension");
}

}  // namespace

std::vector<double> defending_power(const Instance& inst, const PureStrategy& s) {
    check_dimension(inst, s);
    const int n = inst.node_count();
    std::vector<double> pi(s.r);
    for (int u = 0; u < n; ++u)
        for (const auto& [v, w] : inst.neighbors(u)) pi[u] += w * s.r[v];
    return pi;
}

std::vector<int> defending_status(const Instance& inst, const PureStrategy& s) {
    std::vector<double> pi = defending_power(inst, s);
    const int n = inst.node_count();
    std::vector<int> x(n);
    for (int u = 0; u < n; ++u) x[u] = pi[u] >= inst.theta()[u] - kStatusTol ? 1 : 0;
    return x;
}

LossReport pure_loss(const Instance& inst, const PureStrategy& s) {
    std::vector<int> x = defending_status(inst, s);
    const int n = inst.node_count();
    LossReport rep;
    rep.per_node.resize(n);
    for (int u = 0; u < n; ++u) {
        rep.per_node[u] = x[u] ? 0.0 : inst.alpha()[u];
        rep.result = std::max(rep.result, rep.per_node[u]);
    }
    return rep;
}

std::vector<double> mixed_status(const Instance& inst, const MixedStrategy& m) {
    if (m.support.size() != m.probs.size())
        throw ContractError("mixed strategy support and probs differ in length");
    const int n = inst.node_count();
    std::vector<double> acc(n, 0.0);
    for (std::size_t i = 0; i < m.support.size(); ++i) {
        std::vector<int> x = defending_status(inst, m.support[i]);
        for (int u = 0; u < n; ++u) acc[u] += m.probs[i] * x[u];
    }
    return acc;
}

LossReport mixed_loss(const Instance& inst, const MixedStrategy& m) {
    std::vector<double> x = mixed_status(inst, m);
    const int n = inst.node_count();
    LossReport rep;
    rep.per_node.resize(n);
    for (int u = 0; u < n; ++u) {
        rep.per_node[u] = (1.0 - std::min(x[u], 1.0)) * inst.alpha()[u];
        rep.result = std::max(rep.result, rep.per_node[u]);
    }
    return rep;
}

LossReport fractional_loss(const Instance& inst, const PureStrategy& s) {
    std::vector<double> pi = defending_power(inst, s);
    const int n = inst.node_count();
    LossReport rep;
    rep.per_node.resize(n);
    for (int u = 0; u < n; ++u) {
        double frac = std::min(pi[u] / inst.theta()[u], 1.0);
        rep.per_node[u] = (1.0 - frac) * inst.alpha()[u];
        rep.result = std::max(rep.result, rep.per_node[u]);
    }
    return rep;
}

void check_pure_feasible(const Instance& inst, const PureStrategy& s) {
    check_dimension(inst, s);
    double sum = 0.0;
    for (double v : s.r) {
        if (!std::isfinite(v) || v < 0.0) throw ContractError("allocation must be >= 0");
        sum += v;
    }
    if (sum > inst.resource() + kFeasTol)
        throw ContractError("allocation exceeds the resource budget");
}

void check_mixed_feasible(const Instance& inst, const MixedStrategy& m) {
    if (m.support.size() != m.probs.size())
        throw ContractError("mixed strategy support and probs differ in length");
    double mass = 0.0;
    for (double p : m.probs) {
        if (!std::isfinite(p) || p < 0.0) throw ContractError("probabilities must be >= 0");
        mass += p;
    }
    if (mass > 1.0 + kFeasTol) throw ContractError("probabilities sum to more than one");
    for (const PureStrategy& s : m.support) check_pure_feasible(inst, s);
}

PureStrategy theta_on(const Instance& inst, const std::vector<int>& nodes) {
    PureStrategy s;
    s.r.assign(inst.node_count(), 0.0);
    for (int u : nodes) {
        if (u < 0 || u >= inst.node_count()) throw ContractError("node index out of range");
        s.r[u] = inst.theta()[u];
    }
    return s;
}

}  // namespace secgame
