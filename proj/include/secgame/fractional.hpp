#pragma once

#include "secgame/lp.hpp"
#include "secgame/model.hpp"

namespace secgame {

struct FractionalResult {
    PureStrategy strategy;
    double loss = 0.0;
};

// Minimizes the fractional loss max_u (1 - min{pi_u/theta_u, 1}) * alpha_u
// over allocations with |r|_1 <= budget.  Always solvable: r = 0 is feasible
// and the loss variable is bounded below by zero.
FractionalResult optimal_fractional(const Instance& inst, double budget);

inline FractionalResult optimal_fractional(const Instance& inst) {
    return optimal_fractional(inst, inst.resource());
}

// Optimal fractional loss at each budget, one independent solve per entry.
std::vector<double> opt_f_curve(const Instance& inst, const std::vector<double>& budgets);

}  // namespace secgame
