#pragma once

#include <optional>
#include <string>
#include <utility>

#include "secgame/lp.hpp"
#include "secgame/model.hpp"
#include "secgame/rng.hpp"

namespace secgame {

struct PatchConfig {
    int iterations = 1;         // support budget d, >= 1
    std::uint64_t rng_seed = 0; // drives the redraw fallback only
};

// One measured round: `result` is the optimal mixed loss over the support of
// size `support`; `delta_l` and `fallback` describe the strategy search run
// right after that measurement (zero / false on the final record, which has
// no search after it).
struct PatchStep {
    int iteration = 0;
    int support = 0;
    double result = 0.0;
    double delta_l = 0.0;
    bool fallback = false;
    double millis = 0.0;
};

struct PatchTrace {
    std::vector<PatchStep> steps;
};

struct PatchResult {
    MixedStrategy strategy;
    double result = 0.0;
    PatchTrace trace;
};

// Solver failure mid-run; carries the rounds completed before the failure.
class PatchAborted : public SolverError {
public:
    PatchAborted(const std::string& what, PatchTrace partial)
        : SolverError(what), partial_(std::move(partial)) {}
    const PatchTrace& partial_trace() const { return partial_; }

private:
    PatchTrace partial_;
};

// Longest prefix of nodes, ranked by (score desc, index asc), that one pure
// strategy can defend within R.  Prefix feasibility is monotone in the prefix
// length (dropping a node only relaxes the program), so binary search applies.
std::vector<int> shared_max_top(const Instance& inst, const LossVector& scores);

struct FindROutcome {
    std::optional<PureStrategy> strategy;
    std::vector<int> target;     // node set the returned strategy defends
    double delta_l = 0.0;        // loss gap of the first (non-random) target
    bool fallback = false;       // true when the random redraw was taken
};

// Searches for a strategy covering the current worst-loss prefix.  If some
// support member already defends that whole prefix, the scores are redrawn
// once as n uniforms from rng and the search repeats; a second cover means no
// progress is available and no strategy is returned.
FindROutcome find_r_outcome(const Instance& inst, const std::vector<PureStrategy>& D,
                            const LossVector& losses, SplitMix64& rng);

inline std::optional<PureStrategy> find_r(const Instance& inst,
                                          const std::vector<PureStrategy>& D,
                                          const LossVector& losses, SplitMix64& rng) {
    return find_r_outcome(inst, D, losses, rng).strategy;
}

// Optimal probabilities over a fixed support: statuses per member, then the
// probability program.  Returns (probabilities, loss).
std::pair<std::vector<double>, double> prob_lp(const Instance& inst,
                                               const std::vector<PureStrategy>& D);

// Iterative support construction: start from the optimal pure strategy, then
// per round re-optimize probabilities, locate the worst-loss defendable
// prefix, and insert a strategy covering it (skipped when its defending
// status duplicates an existing member's).  Deterministic for fixed
// (instance, cfg).
PatchResult patch(const Instance& inst, const PatchConfig& cfg);

// Checks the per-round improvement guarantee: with M holding every maximum-
// loss node and loss gap dl = max_{u in M} - max_{u not in M} > 0, the next
// result is at most (1 - dl/(dl + alpha_max)) times the current one.  `mixed`
// is the strategy before the round; returns whether the bound held.
bool progress_bound_check(const Instance& inst, const MixedStrategy& mixed,
                          const std::vector<int>& M, double new_result, double tol = 1e-6);

// CSV with header iter,support,result,delta_l,fallback,ms.
std::string trace_to_csv(const PatchTrace& trace);

}  // namespace secgame
