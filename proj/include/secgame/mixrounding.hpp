#pragma once

#include <functional>
#include <utility>

#include "secgame/model.hpp"

namespace secgame {

// Residual entries at or below this magnitude are snapped to zero, and the
// constructed mixed strategy matches its target status vector to within it.
inline constexpr double kRoundTol = 1e-6;

// Relative tolerance for grouping residual entries into the current maximum
// class.  Entries within this factor of the maximum are treated as equal (and
// collapsed onto it) so that accumulated float error cannot split a class.
inline constexpr double kGroupTol = 1e-9;

// Target defense probabilities per node, all in [0,1].  Meaningful inputs
// satisfy sum_u f_u * theta_u <= R - theta_max; the rounding operations check
// this where they rely on it.
struct ResidualVector {
    std::vector<double> f;
};

// A two-valued vector: epsilon on its active nodes, zero elsewhere.  Used for
// peeling one probability slice off the residual's maximum class.
struct SliceVector {
    std::vector<double> t;
    double epsilon = 0.0;
};

// Greedy defendable prefix: repeatedly take the remaining node with the
// largest positive f (ties by ascending index) while total demand stays
// within R; stops at the first node that does not fit.  Isolated model only.
std::vector<int> max_top(const Instance& inst, const ResidualVector& f);

// One defendable chunk of the active nodes of t, taken cyclically.  The
// active nodes, sorted by index, form a ring u_0..u_{k-1}; starting at
// `start`, nodes are added while the accumulated demand is <= R - theta_max.
// Returns the chunk and the ring position after the last node added, with
// R - theta_max < theta(chunk) <= R guaranteed.  Requires theta over the
// active nodes to exceed R, otherwise the walk would never terminate.
std::pair<std::vector<int>, int> cycle_max_top(const Instance& inst, const SliceVector& t,
                                               int start);

// Decomposes the slice into pure strategies: repeated cycle_max_top calls
// until a start position recurs; chunks generated before the cycle began are
// discarded.  Every active node of t is defended by exactly c of the returned
// strategies, so assigning each probability epsilon/c realizes t exactly.
// Each strategy allocates theta on its chunk, hence uses more than
// R - theta_max resource.  At most k strategies are returned.
std::pair<std::vector<PureStrategy>, int> find_t(const Instance& inst, const SliceVector& t);

// Observer invoked after each outer rounding iteration; used by tests to
// check the loop invariants without widening the return type.
struct RoundState {
    int iteration = 0;               // 1-based outer iteration just finished
    bool phase_b = false;            // true when an epsilon slice was peeled
    const std::vector<double>& f;    // residual after the subtraction
    const std::vector<int>& v_max;   // maximum class processed this iteration
    const MixedStrategy& partial;    // strategies accumulated so far
};
using RoundObserver = std::function<void(const RoundState&)>;

// Turns a residual vector into a mixed strategy whose per-node defense
// probabilities equal f0 within kRoundTol.  Each iteration processes the
// maximum class V_max of the residual: if one greedy prefix holds all of
// V_max, a single strategy is added (phase A); otherwise an epsilon slice is
// peeled through find_t (phase B).  Support size is at most n^2 and total
// probability mass at most 1.  Preconditions: isolated model and
// sum f0_u * theta_u <= R - theta_max.  Fails with InternalError if the
// residual does not empty within n iterations, which the class-merging
// argument rules out.
MixedStrategy round_to_mixed(const Instance& inst, const ResidualVector& f0,
                             const RoundObserver& observer = nullptr);

struct UpperBoundResult {
    MixedStrategy strategy;
    double loss = 0.0;
};

// Mixed strategy whose defending result equals the optimal fractional loss at
// the reduced budget R - theta_max: solves that program, converts the
// allocation to target probabilities f_u = min{r_u/theta_u, 1}, and rounds.
// Isolated model with R >= theta_max required.
UpperBoundResult upper_bound_mixed(const Instance& inst);

}  // namespace secgame
