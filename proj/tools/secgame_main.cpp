#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "secgame/bench.hpp"
#include "secgame/format.hpp"
#include "secgame/fractional.hpp"
#include "secgame/gen.hpp"
#include "secgame/json_io.hpp"
#include "secgame/mixrounding.hpp"
#include "secgame/oracle.hpp"
#include "secgame/patching.hpp"
#include "secgame/pure.hpp"

namespace {

using namespace secgame;

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open for writing: " + path);
    out << text;
}

MixedStrategy as_mixed(PureStrategy r) {
    MixedStrategy m;
    m.support.push_back(std::move(r));
    m.probs.push_back(1.0);
    return m;
}

void print_kv(const char* key, double value) {
    std::cout << key << " = " << fmt9(value) << "\n";
}

void print_kv(const char* key, long long value) { std::cout << key << " = " << value << "\n"; }

int run(int argc, char** argv) {
    CLI::App app{"Stackelberg network security game solver"};
    app.require_subcommand(1);

    std::string instance_path, out_path, edges_path, dump_lp_path;
    double budget = -1.0;
    int iters = 1;
    std::uint64_t seed = 0;

    auto* solve_pure = app.add_subcommand("solve-pure", "optimal deterministic allocation");
    solve_pure->add_option("instance", instance_path)->required();
    solve_pure->add_option("-o,--output", out_path, "write the strategy as JSON");

    auto* solve_frac = app.add_subcommand("solve-frac", "optimal fractional allocation");
    solve_frac->add_option("instance", instance_path)->required();
    solve_frac->add_option("--budget", budget, "override the instance resource");
    solve_frac->add_option("--dump-lp", dump_lp_path, "write the program in LP text format");
    solve_frac->add_option("-o,--output", out_path, "write the allocation as JSON");

    auto* round_mixed =
        app.add_subcommand("round-mixed", "mixed strategy from the reduced-budget optimum");
    round_mixed->add_option("instance", instance_path)->required();
    round_mixed->add_option("-o,--output", out_path, "write the strategy as JSON");

    auto* patch_cmd = app.add_subcommand("patch", "small-support iterative mixed strategy");
    patch_cmd->add_option("instance", instance_path)->required();
    patch_cmd->add_option("--iters", iters, "support budget")->required();
    patch_cmd->add_option("--seed", seed, "seed for the redraw fallback");
    patch_cmd->add_option("-o,--output", out_path, "write the strategy as JSON");

    auto* oracle_cmd = app.add_subcommand("oracle", "exact mixed optimum (small n)");
    oracle_cmd->add_option("instance", instance_path)->required();
    oracle_cmd->add_option("-o,--output", out_path, "write the strategy as JSON");

    bool gen_isolated = false;
    std::optional<double> uniform_theta;
    double resource_frac = 0.2;
    auto* gen_cmd = app.add_subcommand("gen", "random instance over a graph file");
    gen_cmd->add_option("--edges", edges_path, "edge list file")->required();
    gen_cmd->add_option("--seed", seed)->required();
    gen_cmd->add_flag("--isolated", gen_isolated, "zero all edge weights");
    gen_cmd->add_option("--uniform-theta", uniform_theta, "same threshold everywhere");
    gen_cmd->add_option("--resource-frac", resource_frac, "resource as fraction of threshold sum");
    gen_cmd->add_option("-o,--output", out_path, "instance JSON path")->required();

    auto* gen_hard = app.add_subcommand("gen-hard", "hard instance families");
    gen_hard->require_subcommand(1);
    std::vector<double> numbers;
    auto* even_cmd = gen_hard->add_subcommand("even-partition", "partition-encoding instance");
    even_cmd->add_option("--numbers", numbers, "positive numbers to split")
        ->required()
        ->delimiter(',');
    even_cmd->add_option("-o,--output", out_path, "instance JSON path")->required();
    double beta = 2.0, gap_resource = 1.0;
    auto* gap_cmd = gen_hard->add_subcommand("bipartite-gap", "fractional-vs-mixed gap instance");
    gap_cmd->add_option("--beta", beta, "gap parameter > 1")->required();
    gap_cmd->add_option("--resource", gap_resource, "total resource")->required();
    gap_cmd->add_option("-o,--output", out_path, "instance JSON path")->required();

    auto* bench_cmd = app.add_subcommand("bench", "patching run with reference optima, CSV out");
    bench_cmd->add_option("instance", instance_path)->required();
    bench_cmd->add_option("--iters", iters, "support budget")->required();
    bench_cmd->add_option("--seed", seed, "seed for the redraw fallback");
    bench_cmd->add_option("-o,--output", out_path, "trace CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage problems share the parse-error exit code
    }

    if (solve_pure->parsed()) {
        const Instance inst = load_instance(instance_path);
        PureResult res = optimal_pure(inst);
        print_kv("opt_p", res.loss);
        if (!out_path.empty()) save_strategy(as_mixed(std::move(res.strategy)), out_path);
        return 0;
    }
    if (solve_frac->parsed()) {
        const Instance inst = load_instance(instance_path);
        const double b = solve_frac->count("--budget") ? budget : inst.resource();
        if (!dump_lp_path.empty()) write_text(dump_lp_path, to_lp_format(build_fractional_lp(inst, b)));
        FractionalResult res = optimal_fractional(inst, b);
        print_kv("opt_f", res.loss);
        if (!out_path.empty()) save_strategy(as_mixed(std::move(res.strategy)), out_path);
        return 0;
    }
    if (round_mixed->parsed()) {
        const Instance inst = load_instance(instance_path);
        UpperBoundResult res = upper_bound_mixed(inst);
        double mass = 0.0;
        for (double p : res.strategy.probs) mass += p;
        print_kv("loss", res.loss);
        print_kv("support", static_cast<long long>(res.strategy.support.size()));
        print_kv("prob_mass", mass);
        if (!out_path.empty()) save_strategy(res.strategy, out_path);
        return 0;
    }
    if (patch_cmd->parsed()) {
        const Instance inst = load_instance(instance_path);
        PatchResult res = patch(inst, PatchConfig{iters, seed});
        print_kv("result", res.result);
        print_kv("support", static_cast<long long>(res.strategy.support.size()));
        if (!out_path.empty()) save_strategy(res.strategy, out_path);
        return 0;
    }
    if (oracle_cmd->parsed()) {
        const Instance inst = load_instance(instance_path);
        OracleResult res = exact_opt_mixed(inst);
        print_kv("opt_m", res.opt_m);
        print_kv("support", static_cast<long long>(res.strategy.support.size()));
        if (!out_path.empty()) save_strategy(res.strategy, out_path);
        return 0;
    }
    if (gen_cmd->parsed()) {
        const EdgeList edges = load_edge_list(edges_path);
        GenConfig cfg;
        cfg.seed = seed;
        cfg.isolated = gen_isolated;
        cfg.uniform_theta = uniform_theta;
        cfg.resource_fraction = resource_frac;
        const Instance inst = generate_instance(edges, cfg);
        save_instance(inst, out_path);
        print_kv("nodes", static_cast<long long>(inst.node_count()));
        print_kv("edges", static_cast<long long>(edges.edges.size()));
        print_kv("self_loops_dropped", static_cast<long long>(edges.self_loops_dropped));
        print_kv("duplicates_dropped", static_cast<long long>(edges.duplicates_dropped));
        print_kv("resource", inst.resource());
        return 0;
    }
    if (even_cmd->parsed()) {
        const Instance inst = gen_even_partition_instance(numbers);
        save_instance(inst, out_path);
        print_kv("nodes", static_cast<long long>(inst.node_count()));
        print_kv("resource", inst.resource());
        return 0;
    }
    if (gap_cmd->parsed()) {
        const BipartiteGapInstance gap = gen_bipartite_gap_instance(beta, gap_resource);
        save_instance(gap.instance, out_path);
        print_kv("u_nodes", static_cast<long long>(gap.u_count));
        print_kv("v_nodes", static_cast<long long>(gap.v_count));
        print_kv("weight", gap.weight);
        print_kv("resource", gap.instance.resource());
        return 0;
    }
    if (bench_cmd->parsed()) {
        const Instance inst = load_instance(instance_path);
        const BenchReport report = bench_patching(inst, iters, seed);
        write_text(out_path, bench_to_csv(report));
        print_kv("result", report.patch.result);
        print_kv("support", static_cast<long long>(report.patch.strategy.support.size()));
        print_kv("opt_p", report.opt_p);
        print_kv("opt_f", report.opt_f);
        if (report.opt_f_reduced) print_kv("opt_f_minus_theta_max", *report.opt_f_reduced);
        std::fprintf(stderr, "timing_ms patch=%.3f opt_p=%.3f opt_f=%.3f opt_f_reduced=%.3f\n",
                     report.patch_ms, report.opt_p_ms, report.opt_f_ms,
                     report.opt_f_reduced_ms);
        return 0;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ContractError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 3;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 3;
    }
}
