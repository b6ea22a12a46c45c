// Acceptance harness: runs the project's end-to-end criteria and prints one
// [PASS]/[FAIL] line each.  The exit code is the number of failed criteria.
// argv[1] names the CLI binary, used by the determinism criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "secgame/bench.hpp"
#include "secgame/format.hpp"
#include "secgame/fractional.hpp"
#include "secgame/gen.hpp"
#include "secgame/mixrounding.hpp"
#include "secgame/oracle.hpp"
#include "secgame/patching.hpp"
#include "secgame/pure.hpp"
#include "../support/fixtures.hpp"

namespace {

using namespace secgame;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void check_close(std::ostringstream& fail, const char* label, double got, double want,
                 double tol) {
    if (std::fabs(got - want) > tol)
        fail << label << " = " << fmt9(got) << " (want " << fmt9(want) << "); ";
}

double mass_of(const MixedStrategy& m) {
    double mass = 0.0;
    for (double p : m.probs) mass += p;
    return mass;
}

// Criterion 1: the two worked examples produce their hand-computed optima
// quickly.
std::string criterion_worked_examples() {
    std::ostringstream fail;
    const Instance ex1 = testing::make_example1();
    const Instance ex2 = testing::make_example2();

    const auto t0 = Clock::now();
    const double opt_p1 = optimal_pure(ex1).loss;
    const double opt_m1 = exact_opt_mixed(ex1).opt_m;
    const double patch1 = patch(ex1, PatchConfig{3, 0}).result;
    const double opt_m2 = exact_opt_mixed(ex2).opt_m;
    const double opt_f2 = optimal_fractional(ex2, 4.0).loss;
    const double elapsed = ms_since(t0);

    check_close(fail, "example1 opt_p", opt_p1, 3.0, 1e-6);
    check_close(fail, "example1 opt_m", opt_m1, 1.0, 1e-6);
    check_close(fail, "example1 patch(3)", patch1, 1.0, 1e-6);
    check_close(fail, "example2 opt_m", opt_m2, 1.0, 1e-6);
    check_close(fail, "example2 opt_f(4)", opt_f2, 0.75, 1e-6);
    if (elapsed >= 1000.0) fail << "took " << fmt9(elapsed) << " ms (limit 1000); ";
    return fail.str();
}

// Criterion 2: deterministic >= mixed >= fractional on 200 seeded instances,
// isolated and sharing alike, within two minutes.
std::string criterion_optimum_ordering() {
    std::ostringstream fail;
    const auto t0 = Clock::now();
    for (int i = 0; i < 200; ++i) {
        const int n = 5 + i % 10;
        const bool sharing = i % 2 == 1;
        const int m = sharing ? std::min(n * (n - 1) / 2, n + i % 7) : 0;
        const double rf = 0.25 + 0.05 * (i % 5);
        const Instance inst = testing::random_instance(n, m, 40000 + i, rf, !sharing);

        const double opt_p = optimal_pure(inst).loss;
        const double opt_m = exact_opt_mixed(inst).opt_m;
        const double opt_f = optimal_fractional(inst).loss;
        if (opt_p < opt_m - 1e-6)
            fail << "#" << i << " opt_p " << fmt9(opt_p) << " < opt_m " << fmt9(opt_m) << "; ";
        if (opt_m < opt_f - 1e-6)
            fail << "#" << i << " opt_m " << fmt9(opt_m) << " < opt_f " << fmt9(opt_f) << "; ";
        if (fail.tellp() > 300) return fail.str();
    }
    const double elapsed = ms_since(t0);
    if (elapsed >= 120000.0) fail << "took " << fmt9(elapsed) << " ms (limit 120000); ";
    return fail.str();
}

// Criterion 3: on isolated instances with R >= 2 * theta_max, the rounding
// route meets the reduced-budget fractional optimum and stays a genuine
// mixed-strategy upper bound with bounded support and mass.
std::string criterion_upper_bound() {
    std::ostringstream fail;
    SplitMix64 rng(50001);
    for (int i = 0; i < 100; ++i) {
        const int n = 6 + i % 7;
        std::vector<double> theta(n), alpha(n);
        for (int u = 0; u < n; ++u) {
            theta[u] = rng.next_real(1.0, 10.0);
            alpha[u] = static_cast<double>(rng.next_int(1, 9));
        }
        const double tmax = *std::max_element(theta.begin(), theta.end());
        double tsum = 0.0;
        for (double t : theta) tsum += t;
        const double resource = 2.0 * tmax + rng.next_unit() * 0.5 * tsum;
        const Instance inst(theta, alpha, {}, resource);

        const UpperBoundResult ub = upper_bound_mixed(inst);
        const double reduced = optimal_fractional(inst, resource - tmax).loss;
        const double full = optimal_fractional(inst).loss;
        const double opt_m = exact_opt_mixed(inst).opt_m;

        if (std::fabs(ub.loss - reduced) > 1e-5)
            fail << "#" << i << " loss " << fmt9(ub.loss) << " vs reduced optimum "
                 << fmt9(reduced) << "; ";
        if (ub.loss < full - 1e-6)
            fail << "#" << i << " loss below full-budget optimum " << fmt9(full) << "; ";
        if (ub.loss < opt_m - 1e-5)
            fail << "#" << i << " loss below mixed optimum " << fmt9(opt_m) << "; ";
        if (static_cast<int>(ub.strategy.support.size()) > n * n)
            fail << "#" << i << " support " << ub.strategy.support.size() << " > n^2; ";
        if (mass_of(ub.strategy) > 1.0 + 1e-7)
            fail << "#" << i << " probability mass " << fmt9(mass_of(ub.strategy)) << "; ";
        if (fail.tellp() > 300) return fail.str();
    }
    return fail.str();
}

// Criterion 4: the fractional optimum is midpoint-convex in the budget.
std::string criterion_convexity() {
    std::ostringstream fail;
    SplitMix64 rng(60001);
    for (int i = 0; i < 100; ++i) {
        const int n = 5 + i % 6;
        const bool sharing = i % 3 == 0;
        const int m = sharing ? n + i % 5 : 0;
        const Instance inst = testing::random_instance(n, m, 61000 + i, 0.3, !sharing);

        const double hi = inst.theta_sum() * 1.2;
        const double r1 = rng.next_real(0.0, hi);
        const double r2 = rng.next_real(0.0, hi);
        const std::vector<double> v = opt_f_curve(inst, {r1, r2, 0.5 * (r1 + r2)});
        if (v[0] + v[1] < 2.0 * v[2] - 1e-6) {
            fail << "#" << i << " f(" << fmt9(r1) << ") + f(" << fmt9(r2) << ") = "
                 << fmt9(v[0] + v[1]) << " < 2 * " << fmt9(v[2]) << "; ";
            if (fail.tellp() > 300) return fail.str();
        }
    }
    return fail.str();
}

// Criterion 5: on number multisets, the mixed optimum is exactly one half iff
// the numbers split into two equal-sum halves.
std::string criterion_partition() {
    std::ostringstream fail;
    SplitMix64 rng(31415);
    int split_cases = 0, gap_cases = 0;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> numbers;
        if (trial % 2 == 0) {
            // Duplicated draws always split into two identical halves.
            const int k = 2 + static_cast<int>(rng.next_int(0, 4));
            for (int j = 0; j < k; ++j) {
                const double v = static_cast<double>(rng.next_int(1, 6));
                numbers.push_back(v);
                numbers.push_back(v);
            }
        } else {
            // An odd integer total can never split into two equal halves.
            const int k = 3 + static_cast<int>(rng.next_int(0, 9));
            long long sum = 0;
            for (int j = 0; j < k; ++j) {
                const long long v = rng.next_int(1, 6);
                numbers.push_back(static_cast<double>(v));
                sum += v;
            }
            if (sum % 2 == 0) numbers.back() += 1.0;
        }

        const bool splits = testing::has_even_partition(numbers);
        const double opt_m = exact_opt_mixed(gen_even_partition_instance(numbers)).opt_m;
        const bool at_half = std::fabs(opt_m - 0.5) <= 1e-9;
        if (splits != at_half) {
            fail << "#" << trial << " opt_m " << fmt9(opt_m)
                 << (splits ? " with" : " without") << " an even split; ";
            if (fail.tellp() > 300) return fail.str();
        }
        (splits ? split_cases : gap_cases) += 1;
    }
    if (split_cases < 15 || gap_cases < 15)
        fail << "unbalanced sample: " << split_cases << " splits / " << gap_cases
             << " gaps; ";
    return fail.str();
}

// Criterion 6: the bipartite family keeps the fractional optimum at most
// 1 - 1/(2 beta) while no sampled pure strategy with budget beta * R defends
// more than 2 beta R nodes.
std::string criterion_bipartite_gap() {
    std::ostringstream fail;
    for (const double beta : {1.5, 2.0}) {
        const double resource = 1.0;
        const BipartiteGapInstance gap = gen_bipartite_gap_instance(beta, resource);
        const Instance& inst = gap.instance;
        const int n = inst.node_count();

        const double opt_f = optimal_fractional(inst).loss;
        if (opt_f > 1.0 - 1.0 / (2.0 * beta) + 1e-6)
            fail << "beta " << fmt9(beta) << ": opt_f " << fmt9(opt_f) << " above "
                 << fmt9(1.0 - 1.0 / (2.0 * beta)) << "; ";

        const double budget = beta * resource;
        const Instance boosted = inst.with_resource(budget);
        const long long cap = std::llround(2.0 * beta * resource);
        SplitMix64 rng(70000 + static_cast<std::uint64_t>(beta * 10.0));
        long long worst = 0;

        auto defended_count = [&](const PureStrategy& s) {
            const std::vector<int> x = defending_status(boosted, s);
            long long count = 0;
            for (int b : x) count += b;
            worst = std::max(worst, count);
            return count;
        };

        int violations = 0;
        // Random allocations of the full boosted budget.
        for (int t = 0; t < 500; ++t) {
            PureStrategy s{std::vector<double>(n, 0.0)};
            double total = 0.0;
            for (double& v : s.r) {
                v = rng.next_unit();
                total += v;
            }
            for (double& v : s.r) v *= budget / total;
            if (defended_count(s) > cap) ++violations;
        }
        // Greedy adversary: fill the cheapest remaining deficit first.
        for (int t = 0; t < 250; ++t) {
            PureStrategy s{std::vector<double>(n, 0.0)};
            double left = budget;
            std::vector<int> order(n);
            for (int u = 0; u < n; ++u) order[u] = u;
            for (int u = n - 1; u > 0; --u)
                std::swap(order[u], order[rng.next_int(0, u)]);
            for (int u : order) {
                const double deficit = inst.theta()[u] - defending_power(boosted, s)[u];
                if (deficit <= 0.0) continue;
                const double pay = std::min(deficit, left);
                s.r[u] += pay;
                left -= pay;
                if (left <= 0.0) break;
            }
            if (defended_count(s) > cap) ++violations;
        }
        // Structured adversary: saturate a few first-side nodes, then spread
        // what remains over the second side to exploit the shared edges.
        for (int t = 0; t < 250; ++t) {
            PureStrategy s{std::vector<double>(n, 0.0)};
            double left = budget;
            const int k = static_cast<int>(rng.next_int(0, gap.u_count));
            for (int u = 0; u < k && left > 0.0; ++u) {
                const double pay = std::min(1.0, left);
                s.r[u] += pay;
                left -= pay;
            }
            if (left > 0.0)
                for (int v = gap.u_count; v < n; ++v) s.r[v] += left / gap.v_count;
            if (defended_count(s) > cap) ++violations;
        }

        if (violations > 0)
            fail << "beta " << fmt9(beta) << ": " << violations
                 << " strategies above the " << cap << "-node cap (worst " << worst
                 << "); ";
    }
    return fail.str();
}

// Criterion 7: patching makes the guaranteed per-round progress, never
// regresses, and with a support of one reproduces the pure optimum exactly.
std::string criterion_patch_progress() {
    std::ostringstream fail;
    int eligible = 0;
    for (int i = 0; i < 100; ++i) {
        const int n = 8 + i % 5;
        const bool sharing = i % 4 == 0;
        const int m = sharing ? n + 3 : 0;
        const Instance inst = testing::random_instance(n, m, 71000 + i, 0.35, !sharing);
        const std::uint64_t seed = 1000 + i;

        const double single = patch(inst, PatchConfig{1, seed}).result;
        const double opt_p = optimal_pure(inst).loss;
        if (single != opt_p)
            fail << "#" << i << " patch(1) " << fmt9(single) << " != opt_p " << fmt9(opt_p)
                 << "; ";

        const PatchResult res = patch(inst, PatchConfig{6, seed});
        const auto& steps = res.trace.steps;
        for (size_t k = 0; k + 1 < steps.size(); ++k) {
            if (steps[k + 1].result > steps[k].result + 1e-9)
                fail << "#" << i << " result regressed at round " << k + 1 << "; ";

            const bool inserted = steps[k + 1].support == steps[k].support + 1;
            if (!inserted || steps[k].fallback || steps[k].delta_l <= 1e-9) continue;

            // Rebuild the mixed strategy the round started from; the solver
            // is deterministic, so the same prefix yields the same mix.
            std::vector<PureStrategy> prefix(res.strategy.support.begin(),
                                             res.strategy.support.begin() + steps[k].support);
            MixedStrategy mixed{prefix, prob_lp(inst, prefix).first};
            const std::vector<int> target =
                shared_max_top(inst, mixed_loss(inst, mixed).per_node);
            ++eligible;
            if (!progress_bound_check(inst, mixed, target, steps[k + 1].result))
                fail << "#" << i << " round " << k + 1 << " missed the progress bound; ";
        }
        if (fail.tellp() > 300) return fail.str();
    }
    if (eligible == 0) fail << "no eligible improvement rounds were exercised; ";
    return fail.str();
}

const EdgeList& large_graph() {
    static const EdgeList graph = random_edge_list(1000, 27000, 77);
    return graph;
}

// Criterion 8: on a 1000-node uniform-threshold graph, a 30-round patch run
// closes to within 1% of the fractional optimum (5% after five rounds) inside
// five minutes.
std::string criterion_large_uniform() {
    std::ostringstream fail;
    GenConfig cfg;
    cfg.seed = 78;
    cfg.uniform_theta = 1.0;
    cfg.isolated = true;
    cfg.resource_fraction = 0.2;
    const Instance inst = generate_instance(large_graph(), cfg);

    const auto t0 = Clock::now();
    const PatchResult res = patch(inst, PatchConfig{30, 79});
    const double opt_f = optimal_fractional(inst).loss;
    const double elapsed = ms_since(t0);

    const double p5 = res.trace.steps.at(4).result;
    const double p30 = res.result;
    if (std::fabs(p5 - opt_f) > 0.05 * opt_f + 1e-9)
        fail << "patch(5) " << fmt9(p5) << " not within 5% of opt_f " << fmt9(opt_f) << "; ";
    if (std::fabs(p30 - opt_f) > 0.01 * opt_f + 1e-9)
        fail << "patch(30) " << fmt9(p30) << " not within 1% of opt_f " << fmt9(opt_f)
             << "; ";
    if (elapsed >= 300000.0) fail << "took " << fmt9(elapsed) << " ms (limit 300000); ";
    return fail.str();
}

// Criterion 9: on the same graph with general thresholds, the rounding route
// needs a far larger support than 30 patch rounds for a comparable loss.
std::string criterion_support_sizes() {
    std::ostringstream fail;
    GenConfig cfg;
    cfg.seed = 78;
    cfg.isolated = true;
    cfg.resource_fraction = 0.2;
    const Instance inst = generate_instance(large_graph(), cfg);

    const UpperBoundResult ub = upper_bound_mixed(inst);
    const PatchResult p30 = patch(inst, PatchConfig{30, 79});

    const size_t support_ub = ub.strategy.support.size();
    const size_t support_patch = p30.strategy.support.size();
    if (support_ub < 5 * support_patch)
        fail << "rounding support " << support_ub << " < 5 * patch support "
             << support_patch << "; ";
    if (std::fabs(p30.result - ub.loss) > 0.05 * ub.loss)
        fail << "losses " << fmt9(p30.result) << " vs " << fmt9(ub.loss)
             << " differ by more than 5%; ";
    return fail.str();
}

// --- determinism harness -----------------------------------------------------

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Drops the final (milliseconds) column of every data row.
std::string strip_ms_column(const std::string& csv) {
    std::istringstream in(csv);
    std::ostringstream out;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!first) {
            const size_t comma = line.rfind(',');
            if (comma != std::string::npos) line.resize(comma);
        }
        first = false;
        out << line << "\n";
    }
    return out.str();
}

// Criterion 10: every subcommand, run twice with the same seeds, produces
// byte-identical stdout and output files (bench modulo its timing column).
std::string criterion_determinism(const std::string& cli_arg) {
    if (cli_arg.empty()) return "no CLI binary path was passed to the harness; ";
    namespace fs = std::filesystem;
    // Runs happen inside a scratch directory, so the binary path must survive
    // the chdir.
    const std::string cli = fs::absolute(cli_arg).string();
    std::ostringstream fail;

    const fs::path dir =
        fs::temp_directory_path() /
        ("secgame_determinism_" +
         std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
    fs::create_directories(dir);

    {
        std::ofstream edges(dir / "graph.edges");
        edges << "0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n6 7\n0 4\n1 5\n2 6\n";
    }
    const std::string graph = (dir / "graph.edges").string();

    struct Job {
        std::string name;
        std::string args;                   // "%" marks spots for the run suffix
        std::vector<std::string> outputs;   // files to compare, with "%"
        bool strip_ms = false;
    };
    const std::vector<Job> jobs = {
        {"gen", "gen --edges " + graph + " --seed 5 --uniform-theta 1 --isolated"
                " --resource-frac 0.5 -o instA%.json", {"instA%.json"}, false},
        {"gen-general", "gen --edges " + graph + " --seed 6 -o instB%.json",
         {"instB%.json"}, false},
        {"solve-pure", "solve-pure instB1.json -o pure%.json", {"pure%.json"}, false},
        {"solve-frac", "solve-frac instB1.json --budget 3.5 --dump-lp lp%.txt -o frac%.json",
         {"lp%.txt", "frac%.json"}, false},
        {"round-mixed", "round-mixed instA1.json -o round%.json", {"round%.json"}, false},
        {"patch", "patch instB1.json --iters 3 --seed 1 -o patch%.json",
         {"patch%.json"}, false},
        {"oracle", "oracle instB1.json -o oracle%.json", {"oracle%.json"}, false},
        {"gen-hard even-partition",
         "gen-hard even-partition --numbers 1,1,2 -o part%.json", {"part%.json"}, false},
        {"gen-hard bipartite-gap",
         "gen-hard bipartite-gap --beta 1.5 --resource 1 -o gap%.json", {"gap%.json"}, false},
        {"bench", "bench instA1.json --iters 3 --seed 1 -o bench%.csv", {"bench%.csv"}, true},
    };

    auto with_suffix = [](std::string text, const std::string& suffix) {
        size_t pos;
        while ((pos = text.find('%')) != std::string::npos) text.replace(pos, 1, suffix);
        return text;
    };

    for (const Job& job : jobs) {
        std::vector<std::string> stdouts;
        bool ran = true;
        for (int run = 1; run <= 2 && ran; ++run) {
            const std::string suffix = std::to_string(run);
            const fs::path out = dir / ("stdout_" + std::to_string(stdouts.size()) + "_" +
                                        suffix + ".txt");
            const std::string cmd = "cd \"" + dir.string() + "\" && \"" + cli + "\" " +
                                    with_suffix(job.args, suffix) + " > \"" + out.string() +
                                    "\" 2> /dev/null";
            if (std::system(cmd.c_str()) != 0) {
                fail << job.name << ": nonzero exit; ";
                ran = false;
                break;
            }
            stdouts.push_back(slurp(out));
        }
        if (!ran) continue;
        if (stdouts[0] != stdouts[1]) fail << job.name << ": stdout differs; ";
        for (const std::string& tmpl : job.outputs) {
            std::string a = slurp(dir / with_suffix(tmpl, "1"));
            std::string b = slurp(dir / with_suffix(tmpl, "2"));
            if (job.strip_ms) {
                a = strip_ms_column(a);
                b = strip_ms_column(b);
            }
            if (a.empty()) fail << job.name << ": " << with_suffix(tmpl, "1") << " missing; ";
            if (a != b) fail << job.name << ": " << with_suffix(tmpl, "") << " differs; ";
        }
    }

    std::error_code ec;
    fs::remove_all(dir, ec);
    return fail.str();
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";

    const std::vector<std::pair<const char*, std::function<std::string()>>> criteria = {
        {"worked examples", criterion_worked_examples},
        {"optimum ordering", criterion_optimum_ordering},
        {"rounding upper bound", criterion_upper_bound},
        {"budget convexity", criterion_convexity},
        {"partition threshold", criterion_partition},
        {"bipartite gap family", criterion_bipartite_gap},
        {"patch progress", criterion_patch_progress},
        {"large uniform run", criterion_large_uniform},
        {"support sizes", criterion_support_sizes},
        {"determinism", [&cli] { return criterion_determinism(cli); }},
    };

    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = Clock::now();
        std::string detail;
        try {
            detail = criteria[i].second();
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what() + "; ";
        }
        const double elapsed = ms_since(t0);
        const bool pass = detail.empty();
        failures += pass ? 0 : 1;
        std::printf("[%s] criterion %zu (%s)%s%s [%.0f ms]\n", pass ? "PASS" : "FAIL", i + 1,
                    criteria[i].first, pass ? "" : ": ", detail.c_str(), elapsed);
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures;
}
