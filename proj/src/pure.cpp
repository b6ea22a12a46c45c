#include "secgame/pure.hpp"

#include <algorithm>

namespace secgame {

namespace {

std::vector<int> nodes_above(const Instance& inst, double level) {
    std::vector<int> s;
    for (int u = 0; u < inst.node_count(); ++u)
        if (inst.alpha()[u] > level) s.push_back(u);
    return s;
}

}  // namespace

PureResult optimal_pure(const Instance& inst) {
    std::vector<double> levels = inst.alpha();
    levels.push_back(0.0);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    // The largest level always works: nothing has a larger value, so the set
    // to defend is empty.  Search for the smallest workable level; `witness`
    // always belongs to levels[hi].
    int lo = 0;
    int hi = static_cast<int>(levels.size()) - 1;
    std::optional<PureStrategy> witness;
    while (lo < hi) {
        const int mid = lo + (hi - lo) / 2;
        auto r = can_defend(inst, nodes_above(inst, levels[mid]), inst.resource());
        if (r) {
            witness = std::move(r);
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    if (!witness) {
        auto r = can_defend(inst, nodes_above(inst, levels[hi]), inst.resource());
        if (!r) throw SolverError("optimal_pure: top candidate level unexpectedly infeasible");
        witness = std::move(r);
    }

    PureResult res;
    res.loss = levels[hi];
    res.strategy = std::move(*witness);
    return res;
}

}  // namespace secgame
