#include "secgame/bench.hpp"

#include <chrono>
#include <sstream>

#include "secgame/format.hpp"
#include "secgame/fractional.hpp"
#include "secgame/pure.hpp"

namespace secgame {

namespace {

template <typename F>
auto timed(double& ms, F&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    auto result = fn();
    ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

}  // namespace

BenchReport bench_patching(const Instance& inst, int d_max, std::uint64_t seed) {
    double patch_ms = 0.0, opt_p_ms = 0.0, opt_f_ms = 0.0, reduced_ms = 0.0;

    PatchResult pr = timed(patch_ms, [&] { return patch(inst, PatchConfig{d_max, seed}); });
    const double opt_p = timed(opt_p_ms, [&] { return optimal_pure(inst).loss; });
    const double opt_f = timed(opt_f_ms, [&] { return optimal_fractional(inst).loss; });

    std::optional<double> reduced;
    if (inst.isolated() && inst.resource() >= inst.theta_max()) {
        reduced = timed(reduced_ms, [&] {
            return optimal_fractional(inst, inst.resource() - inst.theta_max()).loss;
        });
    }

    return BenchReport{std::move(pr), opt_p,    opt_f,    reduced,
                       patch_ms,      opt_p_ms, opt_f_ms, reduced_ms};
}

std::string bench_to_csv(const BenchReport& report) {
    std::ostringstream out;
    out << trace_to_csv(report.patch.trace);
    out << "opt_p,1," << fmt9(report.opt_p) << ",0,0," << fmt9(report.opt_p_ms) << '\n';
    out << "opt_f,0," << fmt9(report.opt_f) << ",0,0," << fmt9(report.opt_f_ms) << '\n';
    if (report.opt_f_reduced) {
        out << "opt_f_minus_theta_max,0," << fmt9(*report.opt_f_reduced) << ",0,0,"
            << fmt9(report.opt_f_reduced_ms) << '\n';
    }
    return out.str();
}

}  // namespace secgame
