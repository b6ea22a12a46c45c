#include "secgame/fractional.hpp"

#include <algorithm>

namespace secgame {

FractionalResult optimal_fractional(const Instance& inst, double budget) {
    LpSolution sol = solve(build_fractional_lp(inst, budget));
    if (sol.status != LpStatus::Optimal)
        throw SolverError("fractional program must be solvable, got infeasible/unbounded");

    FractionalResult res;
    res.strategy.r.assign(sol.x.begin(), sol.x.begin() + inst.node_count());
    for (double& v : res.strategy.r) v = std::max(v, 0.0);
    res.loss = std::max(sol.objective, 0.0);
    return res;
}

std::vector<double> opt_f_curve(const Instance& inst, const std::vector<double>& budgets) {
    std::vector<double> out;
    out.reserve(budgets.size());
    for (double b : budgets) out.push_back(optimal_fractional(inst, b).loss);
    return out;
}

}  // namespace secgame
