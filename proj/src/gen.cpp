#include "secgame/gen.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "secgame/rng.hpp"

namespace secgame {

EdgeList parse_edge_list(std::istream& in, bool undirected_dedup) {
    EdgeList out;
    std::unordered_map<long long, int> ids;
    std::set<std::pair<int, int>> seen;

    auto intern = [&](long long raw) {
        auto [it, inserted] = ids.emplace(raw, out.node_count);
        if (inserted) ++out.node_count;
        return it->second;
    };

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;

        std::istringstream fields(line);
        long long a = 0, b = 0;
        std::string extra;
        if (!(fields >> a >> b) || (fields >> extra))
            throw ParseError("edge list line " + std::to_string(line_no) +
                             ": expected two integers");

        const int u = intern(a);
        const int v = intern(b);
        if (u == v) {
            ++out.self_loops_dropped;
            continue;
        }
        const std::pair<int, int> key =
            undirected_dedup ? std::make_pair(std::min(u, v), std::max(u, v))
                             : std::make_pair(u, v);
        if (!seen.insert(key).second) {
            ++out.duplicates_dropped;
            continue;
        }
        out.edges.emplace_back(u, v);
    }
    return out;
}

EdgeList load_edge_list(const std::string& path, bool undirected_dedup) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open edge list: " + path);
    return parse_edge_list(in, undirected_dedup);
}

EdgeList random_edge_list(int nodes, int edges, std::uint64_t seed) {
    if (nodes < 1) throw ContractError("random_edge_list: need at least one node");
    const long long max_edges = static_cast<long long>(nodes) * (nodes - 1) / 2;
    if (edges < 0 || edges > max_edges)
        throw ContractError("random_edge_list: edge count out of range");

    EdgeList out;
    out.node_count = nodes;
    SplitMix64 rng(seed);
    std::set<std::pair<int, int>> seen;
    while (static_cast<int>(out.edges.size()) < edges) {
        const int u = static_cast<int>(rng.next_int(0, nodes - 1));
        const int v = static_cast<int>(rng.next_int(0, nodes - 1));
        if (u == v) continue;
        if (!seen.insert(std::minmax(u, v)).second) continue;
        out.edges.emplace_back(u, v);
    }
    return out;
}

Instance generate_instance(const EdgeList& edges, const GenConfig& cfg) {
    if (edges.node_count < 1) throw ContractError("generate_instance: need at least one node");
    if (cfg.alpha_min > cfg.alpha_max || cfg.theta_min > cfg.theta_max ||
        cfg.weight_min > cfg.weight_max)
        throw ContractError("generate_instance: empty parameter range");
    if (cfg.theta_min <= 0.0 && !cfg.uniform_theta)
        throw ContractError("generate_instance: thresholds must stay positive");
    if (cfg.uniform_theta && *cfg.uniform_theta <= 0.0)
        throw ContractError("generate_instance: uniform threshold must be positive");
    if (cfg.weight_min < 0.0 || cfg.weight_max > 1.0)
        throw ContractError("generate_instance: weights must lie in [0,1]");
    if (!(cfg.resource_fraction > 0.0))
        throw ContractError("generate_instance: resource fraction must be positive");

    const int n = edges.node_count;
    SplitMix64 rng(cfg.seed);

    std::vector<double> alpha(n);
    for (int u = 0; u < n; ++u)
        alpha[u] = static_cast<double>(rng.next_int(cfg.alpha_min, cfg.alpha_max));

    std::vector<double> theta(n);
    if (cfg.uniform_theta) {
        std::fill(theta.begin(), theta.end(), *cfg.uniform_theta);
    } else {
        for (int u = 0; u < n; ++u) theta[u] = rng.next_real(cfg.theta_min, cfg.theta_max);
    }

    std::vector<Edge> inst_edges;
    inst_edges.reserve(edges.edges.size());
    for (const auto& [u, v] : edges.edges) {
        const double w = cfg.isolated ? 0.0 : rng.next_real(cfg.weight_min, cfg.weight_max);
        inst_edges.push_back(Edge{u, v, w});
    }

    double theta_sum = 0.0;
    for (double t : theta) theta_sum += t;
    return Instance(std::move(theta), std::move(alpha), std::move(inst_edges),
                    cfg.resource_fraction * theta_sum);
}

}  // namespace secgame
