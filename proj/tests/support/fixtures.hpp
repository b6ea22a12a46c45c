#pragma once

// Shared test helpers: the two hand-checked instances most tests revolve
// around, a vertex-enumeration oracle for small boxed linear programs, a
// subset-enumeration oracle for the best deterministic allocation, and an
// exhaustive even-partition check.

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "secgame/gen.hpp"
#include "secgame/lp.hpp"
#include "secgame/model.hpp"
#include "secgame/rng.hpp"

namespace secgame::testing {

// Four unit-threshold nodes, values (3,3,3,1), resource 2.  Any single
// allocation leaves one of the three heavy nodes exposed; mixing over the
// 2-subsets of the heavy nodes defends each with probability 2/3.
inline Instance make_example1() {
    return Instance({1.0, 1.0, 1.0, 1.0}, {3.0, 3.0, 3.0, 1.0}, {}, 2.0);
}

// Thresholds (3,3,1), values (2,2,1), resource 4.  The two heavy nodes
// together need 6 > 4, so no deterministic allocation defends both.
inline Instance make_example2() {
    return Instance({3.0, 3.0, 1.0}, {2.0, 2.0, 1.0}, {}, 4.0);
}

// Seeded instance over a fresh random graph (isolated when m == 0 or the
// flag says so), thresholds in [1,2] so budgets stay comparable across sizes.
inline Instance random_instance(int n, int m, std::uint64_t seed, double resource_fraction,
                                bool isolated) {
    EdgeList el;
    if (m > 0) {
        el = random_edge_list(n, m, seed * 2654435761u + 1);
    } else {
        el.node_count = n;
    }
    GenConfig cfg;
    cfg.seed = seed;
    cfg.theta_min = 1.0;
    cfg.theta_max = 2.0;
    cfg.resource_fraction = resource_fraction;
    cfg.isolated = isolated;
    return generate_instance(el, cfg);
}

struct BruteLpResult {
    bool feasible = false;
    double objective = 0.0;
    std::vector<double> x;
};

// Exact reference for small problems whose variables all have finite bounds:
// the feasible set is a polytope, so if it is non-empty the optimum sits at a
// vertex, and every vertex solves some d linearly independent active
// constraints drawn from {rows, lower bounds, upper bounds}.  Enumerate all
// d-subsets, solve each square system, filter by feasibility, keep the best.
inline BruteLpResult brute_force_lp(const LpProblem& p, double tol = 1e-7) {
    const int d = p.num_vars;
    struct Con {
        std::vector<double> a;
        double b = 0.0;
        Relation rel = Relation::LessEq;
    };
    std::vector<Con> cons;
    for (const auto& row : p.rows) {
        Con c{std::vector<double>(d, 0.0), row.rhs, row.rel};
        for (auto [j, v] : row.coeffs) c.a[j] += v;
        cons.push_back(std::move(c));
    }
    for (int j = 0; j < d; ++j) {
        Con lo{std::vector<double>(d, 0.0), p.lower[j], Relation::GreaterEq};
        lo.a[j] = 1.0;
        cons.push_back(std::move(lo));
        Con hi{std::vector<double>(d, 0.0), p.upper[j], Relation::LessEq};
        hi.a[j] = 1.0;
        cons.push_back(std::move(hi));
    }
    std::vector<double> obj(d, 0.0);
    for (auto [j, v] : p.objective) obj[j] += v;

    const int total = static_cast<int>(cons.size());
    BruteLpResult best;
    std::vector<int> idx(d);

    std::function<void(int, int)> visit = [&](int from, int depth) {
        if (depth == d) {
            std::vector<std::vector<double>> m(d, std::vector<double>(d + 1));
            for (int i = 0; i < d; ++i) {
                for (int j = 0; j < d; ++j) m[i][j] = cons[idx[i]].a[j];
                m[i][d] = cons[idx[i]].b;
            }
            for (int col = 0; col < d; ++col) {
                int piv = -1;
                double largest = 1e-9;
                for (int r = col; r < d; ++r) {
                    if (std::fabs(m[r][col]) > largest) {
                        largest = std::fabs(m[r][col]);
                        piv = r;
                    }
                }
                if (piv < 0) return;  // dependent subset, no vertex here
                std::swap(m[col], m[piv]);
                for (int r = 0; r < d; ++r) {
                    if (r == col) continue;
                    const double factor = m[r][col] / m[col][col];
                    for (int j = col; j <= d; ++j) m[r][j] -= factor * m[col][j];
                }
            }
            std::vector<double> x(d);
            for (int i = 0; i < d; ++i) x[i] = m[i][d] / m[i][i];
            for (const Con& c : cons) {
                double lhs = 0.0;
                for (int j = 0; j < d; ++j) lhs += c.a[j] * x[j];
                const double slack = lhs - c.b;
                if (c.rel == Relation::LessEq && slack > tol) return;
                if (c.rel == Relation::GreaterEq && slack < -tol) return;
                if (c.rel == Relation::Equal && std::fabs(slack) > tol) return;
            }
            double val = 0.0;
            for (int j = 0; j < d; ++j) val += obj[j] * x[j];
            if (!best.feasible || val < best.objective) {
                best.feasible = true;
                best.objective = val;
                best.x = x;
            }
            return;
        }
        for (int i = from; i <= total - (d - depth); ++i) {
            idx[depth] = i;
            visit(i + 1, depth + 1);
        }
    };
    visit(0, 0);
    return best;
}

// Best deterministic loss by trying every node subset: a strategy's loss is
// the largest value among nodes it leaves undefended, so the optimum is the
// minimum over defendable subsets of the worst value outside them.
inline double brute_force_pure(const Instance& inst) {
    const int n = inst.node_count();
    double best = kLpInf;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> nodes;
        for (int u = 0; u < n; ++u)
            if (mask & (1u << u)) nodes.push_back(u);
        if (!can_defend(inst, nodes, inst.resource())) continue;
        double worst = 0.0;
        for (int u = 0; u < n; ++u)
            if (!(mask & (1u << u))) worst = std::max(worst, inst.alpha()[u]);
        best = std::min(best, worst);
    }
    return best;
}

// True when some subset of the items sums to exactly half the total.
inline bool has_even_partition(const std::vector<double>& items) {
    const int n = static_cast<int>(items.size());
    double total = 0.0;
    for (double v : items) total += v;
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1) s += items[i];
        if (std::fabs(2.0 * s - total) < 1e-9) return true;
    }
    return false;
}

inline double prob_mass(const MixedStrategy& m) {
    double mass = 0.0;
    for (double p : m.probs) mass += p;
    return mass;
}

}  // namespace secgame::testing
