#include "secgame/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <sstream>
#include <string>
#include <unordered_map>

namespace secgame {

int LpProblem::add_variable(double lb, double ub) {
    lower.push_back(lb);
    upper.push_back(ub);
    return num_vars++;
}

void LpProblem::add_row(std::vector<std::pair<int, double>> coeffs, Relation rel, double rhs) {
    rows.push_back(Row{std::move(coeffs), rel, rhs});
}

void LpProblem::set_objective(int var, double coeff) { objective.emplace_back(var, coeff); }

namespace {

constexpr double kDualTol = 1e-9;   // reduced-cost threshold for entering variables
constexpr double kPivotTol = 1e-9;  // minimum pivot magnitude
constexpr double kRatioTie = 1e-9;  // relative window for ratio-test ties

double row_tol(double rhs) { return kLpTol * (1.0 + std::abs(rhs)); }

void validate_problem(const LpProblem& p) {
    if (p.num_vars < 0 || static_cast<int>(p.lower.size()) != p.num_vars ||
        static_cast<int>(p.upper.size()) != p.num_vars)
        throw ContractError("lp: bounds arrays out of sync with num_vars");
    auto check_var = [&](int v) {
        if (v < 0 || v >= p.num_vars) throw ContractError("lp: variable index out of range");
    };
    for (const auto& [v, c] : p.objective) {
        check_var(v);
        if (!std::isfinite(c)) throw ContractError("lp: objective coefficient not finite");
    }
    for (int j = 0; j < p.num_vars; ++j) {
        if (std::isnan(p.lower[j]) || std::isnan(p.upper[j]))
            throw ContractError("lp: NaN bound");
    }
    for (const auto& row : p.rows) {
        if (!std::isfinite(row.rhs)) throw ContractError("lp: rhs not finite");
        for (const auto& [v, c] : row.coeffs) {
            check_var(v);
            if (!std::isfinite(c)) throw ContractError("lp: coefficient not finite");
        }
    }
}

struct CanonRow {
    std::vector<std::pair<int, double>> coeffs;  // sorted by variable, merged, zero-free
    Relation rel = Relation::LessEq;
    double rhs = 0.0;
};

struct Prepared {
    bool infeasible = false;
    std::vector<CanonRow> rows;
};

// Merge duplicate coefficients, drop empty rows after checking them, and
// collapse rows with identical coefficient patterns onto their tightest rhs.
// Exact duplicates are common in the probability programs (many nodes share
// one loss value and defender pattern), and collapsing them shrinks the basis.
Prepared canonicalize(const LpProblem& p) {
    Prepared out;
    std::unordered_map<std::string, std::size_t> seen;
    for (const auto& row : p.rows) {
        std::map<int, double> acc;
        for (const auto& [v, c] : row.coeffs) acc[v] += c;
        CanonRow cr;
        cr.rel = row.rel;
        cr.rhs = row.rhs;
        for (const auto& [v, c] : acc)
            if (c != 0.0) cr.coeffs.emplace_back(v, c);

        if (cr.coeffs.empty()) {
            bool ok = true;
            switch (cr.rel) {
                case Relation::LessEq: ok = 0.0 <= cr.rhs + row_tol(cr.rhs); break;
                case Relation::GreaterEq: ok = 0.0 >= cr.rhs - row_tol(cr.rhs); break;
                case Relation::Equal: ok = std::abs(cr.rhs) <= row_tol(cr.rhs); break;
            }
            if (!ok) {
                out.infeasible = true;
                return out;
            }
            continue;
        }

        std::string key(1, static_cast<char>(cr.rel));
        key.reserve(1 + cr.coeffs.size() * (sizeof(int) + sizeof(double)));
        for (const auto& [v, c] : cr.coeffs) {
            key.append(reinterpret_cast<const char*>(&v), sizeof(v));
            key.append(reinterpret_cast<const char*>(&c), sizeof(c));
        }
        auto [it, inserted] = seen.emplace(std::move(key), out.rows.size());
        if (inserted) {
            out.rows.push_back(std::move(cr));
            continue;
        }
        CanonRow& kept = out.rows[it->second];
        switch (cr.rel) {
            case Relation::LessEq: kept.rhs = std::min(kept.rhs, cr.rhs); break;
            case Relation::GreaterEq: kept.rhs = std::max(kept.rhs, cr.rhs); break;
            case Relation::Equal:
                if (std::abs(kept.rhs - cr.rhs) > row_tol(std::max(kept.rhs, cr.rhs))) {
                    out.infeasible = true;
                    return out;
                }
                break;
        }
    }
    return out;
}

// How an original variable maps onto the non-negative standard-form columns.
struct VarMap {
    enum class Kind { Shifted, Mirrored, Split } kind = Kind::Shifted;
    int col = -1;      // main column (positive part for Split)
    int neg_col = -1;  // Split only
    double offset = 0.0;
};

struct Standard {
    int m = 0;      // rows, all equalities with b >= 0
    int ncols = 0;  // structural + slack/surplus + artificial columns
    std::vector<std::vector<std::pair<int, double>>> cols;  // per column: (row, value)
    std::vector<double> b;
    std::vector<double> cost;  // phase-two cost per column
    std::vector<std::uint8_t> artificial;
    std::vector<int> init_basis;  // per row
    std::vector<VarMap> vmap;     // per original variable
    bool has_artificial = false;
};

Standard build_standard(const LpProblem& p, const std::vector<CanonRow>& canon) {
    Standard sp;
    sp.vmap.resize(p.num_vars);

    auto new_col = [&sp]() {
        sp.cols.emplace_back();
        sp.cost.push_back(0.0);
        sp.artificial.push_back(0);
        return sp.ncols++;
    };

    for (int j = 0; j < p.num_vars; ++j) {
        const double lb = p.lower[j], ub = p.upper[j];
        VarMap& vm = sp.vmap[j];
        if (lb == -kLpInf && ub == kLpInf) {
            vm.kind = VarMap::Kind::Split;
            vm.col = new_col();
            vm.neg_col = new_col();
        } else if (lb != -kLpInf) {
            vm.kind = VarMap::Kind::Shifted;
            vm.col = new_col();
            vm.offset = lb;
        } else {
            vm.kind = VarMap::Kind::Mirrored;
            vm.col = new_col();
            vm.offset = ub;
        }
    }

    struct Pending {
        std::vector<std::pair<int, double>> coeffs;  // over columns
        Relation rel;
        double rhs;
    };
    std::vector<Pending> pending;
    pending.reserve(canon.size() + p.num_vars);

    for (const CanonRow& row : canon) {
        Pending pr;
        pr.rel = row.rel;
        pr.rhs = row.rhs;
        for (const auto& [v, a] : row.coeffs) {
            const VarMap& vm = sp.vmap[v];
            switch (vm.kind) {
                case VarMap::Kind::Shifted:
                    pr.coeffs.emplace_back(vm.col, a);
                    pr.rhs -= a * vm.offset;
                    break;
                case VarMap::Kind::Mirrored:
                    pr.coeffs.emplace_back(vm.col, -a);
                    pr.rhs -= a * vm.offset;
                    break;
                case VarMap::Kind::Split:
                    pr.coeffs.emplace_back(vm.col, a);
                    pr.coeffs.emplace_back(vm.neg_col, -a);
                    break;
            }
        }
        pending.push_back(std::move(pr));
    }

    // Finite upper bounds of shifted variables become explicit rows.
    for (int j = 0; j < p.num_vars; ++j) {
        const VarMap& vm = sp.vmap[j];
        if (vm.kind == VarMap::Kind::Shifted && p.upper[j] != kLpInf)
            pending.push_back(Pending{{{vm.col, 1.0}}, Relation::LessEq, p.upper[j] - p.lower[j]});
    }

    for (Pending& pr : pending) {
        if (pr.rhs < 0.0) {
            for (auto& [c, a] : pr.coeffs) a = -a;
            pr.rhs = -pr.rhs;
            if (pr.rel == Relation::LessEq)
                pr.rel = Relation::GreaterEq;
            else if (pr.rel == Relation::GreaterEq)
                pr.rel = Relation::LessEq;
        }
        const int row = sp.m++;
        sp.b.push_back(pr.rhs);
        for (const auto& [c, a] : pr.coeffs) sp.cols[c].emplace_back(row, a);

        if (pr.rel == Relation::LessEq) {
            const int slack = new_col();
            sp.cols[slack].emplace_back(row, 1.0);
            sp.init_basis.push_back(slack);
            continue;
        }
        if (pr.rel == Relation::GreaterEq) {
            const int surplus = new_col();
            sp.cols[surplus].emplace_back(row, -1.0);
        }
        const int art = new_col();
        sp.artificial[art] = 1;
        sp.has_artificial = true;
        sp.cols[art].emplace_back(row, 1.0);
        sp.init_basis.push_back(art);
    }

    std::map<int, double> obj;
    for (const auto& [v, c] : p.objective) obj[v] += c;
    for (const auto& [v, c] : obj) {
        const VarMap& vm = sp.vmap[v];
        switch (vm.kind) {
            case VarMap::Kind::Shifted: sp.cost[vm.col] += c; break;
            case VarMap::Kind::Mirrored: sp.cost[vm.col] -= c; break;
            case VarMap::Kind::Split:
                sp.cost[vm.col] += c;
                sp.cost[vm.neg_col] -= c;
                break;
        }
    }
    return sp;
}

class Simplex {
public:
    explicit Simplex(const Standard& sp)
        : sp_(sp), m_(sp.m), n_(sp.ncols), basis_(sp.init_basis), in_basis_(sp.ncols, 0),
          Binv_(static_cast<std::size_t>(sp.m) * sp.m), xB_(sp.m), y_(sp.m), w_(sp.m) {
        for (int c : basis_) in_basis_[c] = 1;
        refactor();
    }

    enum class Outcome { Optimal, Unbounded };

    const std::vector<int>& basis() const { return basis_; }
    const std::vector<double>& basic_values() const { return xB_; }

    double objective(const std::vector<double>& cost) const {
        double z = 0.0;
        for (int i = 0; i < m_; ++i) z += cost[basis_[i]] * xB_[i];
        return z;
    }

    void refactor() {
        // Dense Gauss-Jordan inversion of the basis matrix.  Zero-factor row
        // operations are skipped, so near-identity bases invert in O(m^2).
        std::vector<double> A(static_cast<std::size_t>(m_) * m_, 0.0);
        for (int k = 0; k < m_; ++k)
            for (const auto& [row, val] : sp_.cols[basis_[k]]) A[static_cast<std::size_t>(row) * m_ + k] = val;
        std::fill(Binv_.begin(), Binv_.end(), 0.0);
        for (int i = 0; i < m_; ++i) Binv_[static_cast<std::size_t>(i) * m_ + i] = 1.0;

        for (int k = 0; k < m_; ++k) {
            int piv = -1;
            double best = 1e-12;
            for (int i = k; i < m_; ++i) {
                double v = std::abs(A[static_cast<std::size_t>(i) * m_ + k]);
                if (v > best) {
                    best = v;
                    piv = i;
                }
            }
            if (piv < 0) throw SolverError("simplex: singular basis during refactorisation");
            if (piv != k) {
                for (int c = 0; c < m_; ++c) {
                    std::swap(A[static_cast<std::size_t>(piv) * m_ + c], A[static_cast<std::size_t>(k) * m_ + c]);
                    std::swap(Binv_[static_cast<std::size_t>(piv) * m_ + c], Binv_[static_cast<std::size_t>(k) * m_ + c]);
                }
            }
            double* ak = &A[static_cast<std::size_t>(k) * m_];
            double* bk = &Binv_[static_cast<std::size_t>(k) * m_];
            const double inv = 1.0 / ak[k];
            for (int c = 0; c < m_; ++c) {
                ak[c] *= inv;
                bk[c] *= inv;
            }
            for (int i = 0; i < m_; ++i) {
                if (i == k) continue;
                const double f = A[static_cast<std::size_t>(i) * m_ + k];
                if (f == 0.0) continue;
                double* ai = &A[static_cast<std::size_t>(i) * m_];
                double* bi = &Binv_[static_cast<std::size_t>(i) * m_];
                for (int c = 0; c < m_; ++c) {
                    ai[c] -= f * ak[c];
                    bi[c] -= f * bk[c];
                }
            }
        }
        recompute_values();
    }

    // Runs the current phase to optimality.  `allowed` masks columns that may
    // enter the basis (artificials are locked out and, once out, stay out).
    Outcome run(const std::vector<double>& cost, const std::vector<std::uint8_t>& allowed,
                bool phase_two, bool bland_start, int refactor_every, long max_iters) {
        bool bland = bland_start;
        int degenerate_run = 0;
        int since_refactor = 0;
        for (long iters = 0;; ++iters) {
            if (iters > max_iters) throw SolverError("simplex: iteration limit reached");

            // BTRAN: y = c_B * Binv.
            std::fill(y_.begin(), y_.end(), 0.0);
            for (int i = 0; i < m_; ++i) {
                const double ci = cost[basis_[i]];
                if (ci == 0.0) continue;
                const double* row = &Binv_[static_cast<std::size_t>(i) * m_];
                for (int r = 0; r < m_; ++r) y_[r] += ci * row[r];
            }

            int entering = -1;
            double best_d = -kDualTol;
            for (int j = 0; j < n_; ++j) {
                if (in_basis_[j] || !allowed[j]) continue;
                double d = cost[j];
                for (const auto& [r, v] : sp_.cols[j]) d -= y_[r] * v;
                if (d < best_d) {
                    best_d = d;
                    entering = j;
                    if (bland) break;  // smallest eligible index
                }
            }
            if (entering < 0) return Outcome::Optimal;

            // FTRAN: w = Binv * A_j.
            std::fill(w_.begin(), w_.end(), 0.0);
            for (const auto& [r, v] : sp_.cols[entering]) {
                if (v == 0.0) continue;
                for (int i = 0; i < m_; ++i) w_[i] += Binv_[static_cast<std::size_t>(i) * m_ + r] * v;
            }

            int leave = -1;
            double best_ratio = kLpInf;
            for (int i = 0; i < m_; ++i) {
                const double wi = w_[i];
                double ratio;
                if (wi > kPivotTol) {
                    ratio = std::max(xB_[i], 0.0) / wi;
                } else if (phase_two && wi < -kPivotTol && sp_.artificial[basis_[i]]) {
                    // A leftover artificial pinned at zero must not grow; treat
                    // it as an immediate blocker and pivot it out instead.
                    ratio = std::max(xB_[i], 0.0) / -wi;
                } else {
                    continue;
                }
                if (leave < 0 || ratio < best_ratio - kRatioTie * (1.0 + best_ratio)) {
                    best_ratio = ratio;
                    leave = i;
                } else if (ratio <= best_ratio + kRatioTie * (1.0 + best_ratio)) {
                    if (bland) {
                        if (basis_[i] < basis_[leave]) leave = i;
                    } else if (std::abs(wi) > std::abs(w_[leave]) ||
                               (std::abs(wi) == std::abs(w_[leave]) && basis_[i] < basis_[leave])) {
                        leave = i;
                    }
                }
            }
            if (leave < 0) {
                if (!phase_two)
                    throw SolverError("simplex: phase one became unbounded");
                return Outcome::Unbounded;
            }

            if (best_ratio <= 1e-12) {
                if (++degenerate_run > 50) bland = true;
            } else {
                degenerate_run = 0;
                bland = bland_start;
            }

            pivot(entering, leave, std::max(best_ratio, 0.0));
            if (++since_refactor >= refactor_every) {
                refactor();
                since_refactor = 0;
            }
        }
    }

private:
    void recompute_values() {
        for (int i = 0; i < m_; ++i) {
            const double* row = &Binv_[static_cast<std::size_t>(i) * m_];
            double v = 0.0;
            for (int r = 0; r < m_; ++r) v += row[r] * sp_.b[r];
            xB_[i] = (v < 0.0 && v > -1e-9) ? 0.0 : v;
        }
    }

    void pivot(int entering, int r, double theta) {
        const double piv = w_[r];
        double* rowr = &Binv_[static_cast<std::size_t>(r) * m_];
        const double inv = 1.0 / piv;
        for (int c = 0; c < m_; ++c) rowr[c] *= inv;
        for (int i = 0; i < m_; ++i) {
            if (i == r) continue;
            const double f = w_[i];
            if (f == 0.0) continue;
            double* rowi = &Binv_[static_cast<std::size_t>(i) * m_];
            for (int c = 0; c < m_; ++c) rowi[c] -= f * rowr[c];
        }
        for (int i = 0; i < m_; ++i) {
            if (i == r) continue;
            xB_[i] -= theta * w_[i];
            if (xB_[i] < 0.0 && xB_[i] > -1e-10) xB_[i] = 0.0;
        }
        xB_[r] = theta;
        in_basis_[basis_[r]] = 0;
        basis_[r] = entering;
        in_basis_[entering] = 1;
    }

    const Standard& sp_;
    int m_, n_;
    std::vector<int> basis_;
    std::vector<std::uint8_t> in_basis_;
    std::vector<double> Binv_, xB_, y_, w_;
};

std::vector<double> recover_solution(const LpProblem& p, const Standard& sp,
                                     const std::vector<double>& x_std) {
    std::vector<double> x(p.num_vars, 0.0);
    for (int j = 0; j < p.num_vars; ++j) {
        const VarMap& vm = sp.vmap[j];
        switch (vm.kind) {
            case VarMap::Kind::Shifted: x[j] = vm.offset + x_std[vm.col]; break;
            case VarMap::Kind::Mirrored: x[j] = vm.offset - x_std[vm.col]; break;
            case VarMap::Kind::Split: x[j] = x_std[vm.col] - x_std[vm.neg_col]; break;
        }
    }
    return x;
}

bool verify_solution(const LpProblem& p, const std::vector<double>& x) {
    for (int j = 0; j < p.num_vars; ++j) {
        if (!std::isfinite(x[j])) return false;
        if (p.lower[j] != -kLpInf && x[j] < p.lower[j] - row_tol(p.lower[j])) return false;
        if (p.upper[j] != kLpInf && x[j] > p.upper[j] + row_tol(p.upper[j])) return false;
    }
    for (const auto& row : p.rows) {
        double act = 0.0;
        for (const auto& [v, c] : row.coeffs) act += c * x[v];
        const double tol = row_tol(row.rhs);
        switch (row.rel) {
            case Relation::LessEq:
                if (act > row.rhs + tol) return false;
                break;
            case Relation::GreaterEq:
                if (act < row.rhs - tol) return false;
                break;
            case Relation::Equal:
                if (std::abs(act - row.rhs) > tol) return false;
                break;
        }
    }
    return true;
}

struct Settings {
    bool bland_from_start = false;
    int refactor_every = 800;
};

LpSolution attempt(const LpProblem& p, const std::vector<CanonRow>& canon, const Settings& st) {
    Standard sp = build_standard(p, canon);
    LpSolution sol;

    std::vector<double> x_std(sp.ncols, 0.0);
    if (sp.m == 0) {
        // Only bounds remain: each column sits at zero unless a negative cost
        // pushes it to +inf.
        for (int j = 0; j < sp.ncols; ++j) {
            if (sp.cost[j] < -kDualTol) {
                sol.status = LpStatus::Unbounded;
                return sol;
            }
        }
    } else {
        Simplex simplex(sp);
        const long max_iters = 2000 + 40L * sp.m + 2L * sp.ncols;

        if (sp.has_artificial) {
            std::vector<double> cost1(sp.ncols, 0.0);
            std::vector<std::uint8_t> allowed(sp.ncols, 1);
            for (int j = 0; j < sp.ncols; ++j) {
                if (sp.artificial[j]) {
                    cost1[j] = 1.0;
                    allowed[j] = 0;  // may start basic but never re-enters
                }
            }
            simplex.run(cost1, allowed, /*phase_two=*/false, st.bland_from_start,
                        st.refactor_every, max_iters);
            simplex.refactor();
            double ninf = simplex.objective(cost1);
            double bmax = 0.0;
            for (double v : sp.b) bmax = std::max(bmax, std::abs(v));
            if (ninf > kLpTol * (1.0 + bmax)) {
                sol.status = LpStatus::Infeasible;
                return sol;
            }
        }

        std::vector<std::uint8_t> allowed(sp.ncols, 1);
        for (int j = 0; j < sp.ncols; ++j)
            if (sp.artificial[j]) allowed[j] = 0;
        Simplex::Outcome out = simplex.run(sp.cost, allowed, /*phase_two=*/true,
                                           st.bland_from_start, st.refactor_every, max_iters);
        if (out == Simplex::Outcome::Unbounded) {
            sol.status = LpStatus::Unbounded;
            return sol;
        }
        for (int i = 0; i < sp.m; ++i)
            x_std[simplex.basis()[i]] = std::max(simplex.basic_values()[i], 0.0);
    }

    sol.x = recover_solution(p, sp, x_std);
    if (!verify_solution(p, sol.x))
        throw SolverError("simplex: solution failed verification against the original program");
    sol.objective = 0.0;
    for (const auto& [v, c] : p.objective) sol.objective += c * sol.x[v];
    sol.status = LpStatus::Optimal;
    return sol;
}

}  // namespace

LpSolution solve(const LpProblem& p) {
    validate_problem(p);
    for (int j = 0; j < p.num_vars; ++j) {
        if (p.lower[j] > p.upper[j]) {
            LpSolution sol;
            sol.status = LpStatus::Infeasible;
            return sol;
        }
    }
    Prepared pre = canonicalize(p);
    if (pre.infeasible) {
        LpSolution sol;
        sol.status = LpStatus::Infeasible;
        return sol;
    }
    try {
        return attempt(p, pre.rows, Settings{false, 800});
    } catch (const SolverError&) {
        // Retry once with Bland's rule from the start and frequent
        // refactorisation; if this also fails the error propagates.
    }
    return attempt(p, pre.rows, Settings{true, 100});
}

std::string to_lp_format(const LpProblem& p) {
    std::ostringstream out;
    out.precision(17);
    auto term = [&](double c, int v, bool first) {
        if (c < 0.0)
            out << (first ? "-" : "- ");
        else if (!first)
            out << "+ ";
        out << std::abs(c) << " x" << v << " ";
    };
    out << "Minimize\n obj: ";
    if (p.objective.empty()) out << "0 x0 ";
    bool first = true;
    for (const auto& [v, c] : p.objective) {
        term(c, v, first);
        first = false;
    }
    out << "\nSubject To\n";
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
        const auto& row = p.rows[i];
        out << " c" << i << ": ";
        first = true;
        for (const auto& [v, c] : row.coeffs) {
            term(c, v, first);
            first = false;
        }
        if (first) out << "0 x0 ";
        switch (row.rel) {
            case Relation::LessEq: out << "<= "; break;
            case Relation::GreaterEq: out << ">= "; break;
            case Relation::Equal: out << "= "; break;
        }
        out << row.rhs << "\n";
    }
    out << "Bounds\n";
    for (int j = 0; j < p.num_vars; ++j) {
        const double lb = p.lower[j], ub = p.upper[j];
        if (lb == 0.0 && ub == kLpInf) continue;  // CPLEX default
        if (lb == -kLpInf && ub == kLpInf) {
            out << " x" << j << " free\n";
        } else if (lb == -kLpInf) {
            out << " -inf <= x" << j << " <= " << ub << "\n";
        } else if (ub == kLpInf) {
            out << " " << lb << " <= x" << j << "\n";
        } else {
            out << " " << lb << " <= x" << j << " <= " << ub << "\n";
        }
    }
    out << "End\n";
    return out.str();
}

LpProblem build_defend_set_lp(const Instance& inst, const std::vector<int>& S, double budget) {
    if (!std::isfinite(budget) || budget < 0.0)
        throw ContractError("budget must be finite and >= 0");
    LpProblem p;
    const int n = inst.node_count();
    for (int u = 0; u < n; ++u) p.add_variable();

    std::vector<std::pair<int, double>> budget_row;
    budget_row.reserve(n);
    for (int u = 0; u < n; ++u) budget_row.emplace_back(u, 1.0);
    p.add_row(std::move(budget_row), Relation::LessEq, budget);

    for (int u : S) {
        if (u < 0 || u >= n) throw ContractError("defend set index out of range");
        std::vector<std::pair<int, double>> row;
        row.emplace_back(u, 1.0);
        for (const auto& [v, w] : inst.neighbors(u))
            if (w != 0.0) row.emplace_back(v, w);
        p.add_row(std::move(row), Relation::GreaterEq, inst.theta()[u]);
    }
    return p;
}

std::optional<PureStrategy> can_defend(const Instance& inst, const std::vector<int>& S,
                                       double budget) {
    if (!std::isfinite(budget) || budget < 0.0)
        throw ContractError("budget must be finite and >= 0");
    if (inst.isolated()) {
        // Without sharing, defending S needs exactly theta_u per member.
        double need = 0.0;
        std::vector<int> dedup;
        std::vector<std::uint8_t> seen(inst.node_count(), 0);
        for (int u : S) {
            if (u < 0 || u >= inst.node_count())
                throw ContractError("defend set index out of range");
            if (seen[u]) continue;
            seen[u] = 1;
            dedup.push_back(u);
            need += inst.theta()[u];
        }
        if (need > budget + row_tol(budget)) return std::nullopt;
        return theta_on(inst, dedup);
    }

    LpSolution sol = solve(build_defend_set_lp(inst, S, budget));
    if (sol.status == LpStatus::Infeasible) return std::nullopt;
    if (sol.status != LpStatus::Optimal)
        throw SolverError("defend-set feasibility program reported unbounded");

    PureStrategy r;
    r.r = std::move(sol.x);
    for (double& v : r.r) v = std::max(v, 0.0);

    // The witness must actually register as defending S under the status
    // tolerance, which is tighter than the solver's feasibility slack.  A
    // marginal shortfall is repaired by scaling up within the budget slack.
    std::vector<double> pi = defending_power(inst, r);
    double scale = 1.0;
    for (int u : S) {
        if (pi[u] >= inst.theta()[u] - kStatusTol) continue;
        if (pi[u] <= 0.0) throw SolverError("defend-set witness failed verification");
        scale = std::max(scale, inst.theta()[u] / pi[u]);
    }
    if (scale > 1.0) {
        double sum = 0.0;
        for (double v : r.r) sum += v;
        if (scale > 1.0 + 1e-6 || scale * sum > budget + kFeasTol)
            throw SolverError("defend-set witness failed verification");
        for (double& v : r.r) v *= scale;
    }
    return r;
}

LpProblem build_fractional_lp(const Instance& inst, double budget) {
    if (!std::isfinite(budget) || budget < 0.0)
        throw ContractError("budget must be finite and >= 0");
    LpProblem p;
    const int n = inst.node_count();
    for (int u = 0; u < n; ++u) p.add_variable();
    const int L = p.add_variable();  // lower bound 0 keeps the loss non-negative
    p.set_objective(L, 1.0);

    std::vector<std::pair<int, double>> budget_row;
    budget_row.reserve(n);
    for (int u = 0; u < n; ++u) budget_row.emplace_back(u, 1.0);
    p.add_row(std::move(budget_row), Relation::LessEq, budget);

    for (int u = 0; u < n; ++u) {
        // (1 - pi_u / theta_u) * alpha_u <= L, written with pi_u expanded.
        const double scale = inst.alpha()[u] / inst.theta()[u];
        std::vector<std::pair<int, double>> row;
        row.emplace_back(u, scale);
        for (const auto& [v, w] : inst.neighbors(u))
            if (w != 0.0) row.emplace_back(v, scale * w);
        row.emplace_back(L, 1.0);
        p.add_row(std::move(row), Relation::GreaterEq, inst.alpha()[u]);
    }
    return p;
}

LpProblem build_prob_lp(const Instance& inst, const std::vector<std::vector<int>>& statuses) {
    if (statuses.empty()) throw ContractError("probability program needs at least one status");
    const int n = inst.node_count();
    const int k = static_cast<int>(statuses.size());
    for (const auto& x : statuses) {
        if (static_cast<int>(x.size()) != n) throw ContractError("status has wrong dimension");
        for (int v : x)
            if (v != 0 && v != 1) throw ContractError("status entries must be 0 or 1");
    }

    LpProblem p;
    for (int j = 0; j < k; ++j) p.add_variable();
    const int L = p.add_variable();
    p.set_objective(L, 1.0);

    std::vector<std::pair<int, double>> mass_row;
    mass_row.reserve(k);
    for (int j = 0; j < k; ++j) mass_row.emplace_back(j, 1.0);
    p.add_row(std::move(mass_row), Relation::Equal, 1.0);

    for (int u = 0; u < n; ++u) {
        // (1 - sum_j p_j x_u(j)) * alpha_u <= L.
        std::vector<std::pair<int, double>> row;
        for (int j = 0; j < k; ++j)
            if (statuses[j][u]) row.emplace_back(j, inst.alpha()[u]);
        row.emplace_back(L, 1.0);
        p.add_row(std::move(row), Relation::GreaterEq, inst.alpha()[u]);
    }
    return p;
}

}  // namespace secgame
