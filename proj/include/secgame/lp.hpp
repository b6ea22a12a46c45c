#pragma once

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "secgame/model.hpp"

namespace secgame {

// Feasibility slack the solver guarantees on returned solutions: every
// constraint holds within kLpTol * (1 + |rhs|).
inline constexpr double kLpTol = 1e-8;

inline constexpr double kLpInf = std::numeric_limits<double>::infinity();

enum class Relation { LessEq, GreaterEq, Equal };

// Sparse minimisation problem.  Variables default to [0, +inf) bounds.
// This is the single seam to the solver: everything downstream builds one of
// these and calls solve(), so swapping in an external solver means swapping
// one function.
struct LpProblem {
    struct Row {
        std::vector<std::pair<int, double>> coeffs;  // (variable, coefficient)
        Relation rel = Relation::LessEq;
        double rhs = 0.0;
    };

    int num_vars = 0;
    std::vector<std::pair<int, double>> objective;  // sparse, minimised
    std::vector<Row> rows;
    std::vector<double> lower;  // per-variable bounds
    std::vector<double> upper;

    int add_variable(double lb = 0.0, double ub = kLpInf);
    void add_row(std::vector<std::pair<int, double>> coeffs, Relation rel, double rhs);
    void set_objective(int var, double coeff);
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    std::vector<double> x;  // populated when Optimal
    double objective = 0.0;
};

// Two-phase revised simplex (dense basis inverse, Bland's rule engaged on
// degenerate stalls).  Throws SolverError on numerical failure; it never
// returns a wrong status silently, since optimal solutions are re-verified
// against the original constraints before being returned.
LpSolution solve(const LpProblem& p);

// Human-readable CPLEX-LP text rendering for debugging.
std::string to_lp_format(const LpProblem& p);

// Feasibility program for defending every node of S within the budget:
// sum_u r_u <= budget, pi_u(r) >= theta_u for u in S, r >= 0.
LpProblem build_defend_set_lp(const Instance& inst, const std::vector<int>& S, double budget);

// A strategy defending all of S under the budget, or nullopt if none exists.
// Isolated instances short-circuit to the exact subset-sum test
// sum_{u in S} theta_u <= budget with witness theta_on(S).
std::optional<PureStrategy> can_defend(const Instance& inst, const std::vector<int>& S,
                                       double budget);

// Relaxed-loss program: minimise L subject to sum_u r_u <= budget and
// (1 - pi_u(r) / theta_u) * alpha_u <= L for every node, r >= 0, L >= 0.
// Variables are r_0..r_{n-1} followed by L.
LpProblem build_fractional_lp(const Instance& inst, double budget);

// Best mixing weights over fixed defending statuses: minimise L subject to
// sum_j p_j = 1 and (1 - sum_j p_j x_u(j)) * alpha_u <= L for every node,
// p >= 0.  Variables are p_0..p_{k-1} followed by L.
LpProblem build_prob_lp(const Instance& inst, const std::vector<std::vector<int>>& statuses);

}  // namespace secgame
