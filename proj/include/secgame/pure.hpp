#pragma once

#include "secgame/lp.hpp"
#include "secgame/model.hpp"

namespace secgame {

struct PureResult {
    PureStrategy strategy;
    double loss = 0.0;
};

// Best deterministic allocation.  The attainable losses form the finite set
// {alpha_u} | {0}; for a candidate loss a, the nodes A(a) = {u : alpha_u > a}
// must all be defended at once.  Feasibility of A(a) is monotone in a, so a
// binary search over the sorted distinct candidates finds the optimum with
// O(log n) feasibility checks.
PureResult optimal_pure(const Instance& inst);

}  // namespace secgame
