#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "secgame/model.hpp"

namespace secgame {

struct EdgeList {
    int node_count = 0;
    std::vector<std::pair<int, int>> edges;  // compacted ids, 0..node_count-1
    int self_loops_dropped = 0;
    int duplicates_dropped = 0;
};

// Parses `u v` integer pairs, one per line; `#` starts a comment line and
// blank lines are skipped.  Ids are compacted to 0..n-1 in first-appearance
// order.  Self-loops are dropped (their endpoint still counts as a node).
// With undirected_dedup, a repeated pair in either orientation collapses onto
// the first occurrence; without it only exact repeats collapse and a pair
// listed in both orientations survives as two entries (which Instance
// construction later rejects).
EdgeList parse_edge_list(std::istream& in, bool undirected_dedup = true);
EdgeList load_edge_list(const std::string& path, bool undirected_dedup = true);

// m distinct undirected edges over n nodes, drawn uniformly with rejection.
EdgeList random_edge_list(int nodes, int edges, std::uint64_t seed);

struct GenConfig {
    std::uint64_t seed = 0;
    int alpha_min = 1;
    int alpha_max = 9;
    double theta_min = 1.0;
    double theta_max = 10.0;
    double weight_min = 0.0;
    double weight_max = 1.0;
    double resource_fraction = 0.2;
    bool isolated = false;
    std::optional<double> uniform_theta;  // overrides theta_min/theta_max
};

// Deterministic instance from a graph and a seed.  Draw order: one integer
// value per node ascending, then one threshold per node ascending (skipped
// entirely under uniform_theta), then one weight per edge in list order
// (skipped when isolated; edges are kept with weight 0).  The resource is
// resource_fraction times the threshold sum.
Instance generate_instance(const EdgeList& edges, const GenConfig& cfg);

}  // namespace secgame
