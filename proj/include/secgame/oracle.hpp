#pragma once

#include "secgame/model.hpp"

namespace secgame {

inline constexpr int kOracleLimitN = 14;

// All maximal defendable node sets, as 0/1 status vectors sorted
// lexicographically.  Exhaustive over 2^n subsets, so instances larger than
// limit_n are rejected.
std::vector<std::vector<int>> enumerate_feasible_statuses(const Instance& inst,
                                                          int limit_n = kOracleLimitN);

struct OracleResult {
    MixedStrategy strategy;
    double opt_m = 0.0;
};

// Exact optimal mixed defending result, via the probability program over all
// maximal feasible statuses.  Small instances only (see limit_n).
OracleResult exact_opt_mixed(const Instance& inst, int limit_n = kOracleLimitN);

// Isolated instance encoding a number-partition question: thresholds are the
// given numbers, every value is 1, and the resource is half their sum.  The
// optimal mixed result is exactly 0.5 iff the numbers split into two halves
// of equal sum.
Instance gen_even_partition_instance(const std::vector<double>& numbers);

struct BipartiteGapInstance {
    Instance instance;
    int u_count = 0;
    int v_count = 0;
    double weight = 0.0;
};

// Resource-sharing family with a persistent gap between the fractional and
// mixed optima: a complete bipartite graph with |U| = round(2*beta*R) and
// |V| = round(4*beta^2*R) nodes, edge weight 1/|U|, unit thresholds and
// values.  Requires beta > 1 and R > 0.
BipartiteGapInstance gen_bipartite_gap_instance(double beta, double resource);

}  // namespace secgame
