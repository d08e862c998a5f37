// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include "ecsa/benchmarks.hpp"
#include "ecsa/experiment.hpp"
#include "ecsa/schedule.hpp"
#include "ecsa/sobol.hpp"
#include "ecsa/stats.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

using namespace ecsa;
namespace ex = ecsa::experiment;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
    std::printf("criterion %d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::vector<ex::TrialRecord> to_records(const std::vector<ex::TrialResult>& results) {
    std::vector<ex::TrialRecord> out;
    for (const auto& r : results)
        out.push_back({bench::label(r.function), std::string(ex::to_string(r.algorithm)), r.trial, r.seed,
                       r.best_fitness, r.evaluations});
    return out;
}

void superiority(const std::vector<ex::ComparisonRow>& rows) {
    std::map<std::string, const ex::ComparisonRow*> by;
    for (const auto& r : rows) by[r.function] = &r;
    bool unimodal_ok = true;
    std::string detail = "ECSA better on:";
    for (const char* f : {"F1", "F2", "F3", "F4"}) {
        const bool better = by.at(f)->ecsa.mean < by.at(f)->csa.mean;
        unimodal_ok = unimodal_ok && better;
        detail += std::string(" ") + f + (better ? "+" : "-");
    }
    int multimodal = 0;
    for (const char* f : {"F8", "F9", "F10", "F11", "F12", "F13"}) {
        const bool better = by.at(f)->ecsa.mean < by.at(f)->csa.mean;
        multimodal += better;
        detail += std::string(" ") + f + (better ? "+" : "-");
    }
    int significant = 0;
    for (const auto& r : rows) significant += r.verdict == stats::Verdict::significantly_different;
    detail += fmt("; multimodal %d/6 (need 4); significant %d/13 (need 9)", multimodal, significant);
    report(1, unimodal_ok && multimodal >= 4 && significant >= 9, detail);
}

void rosenbrock_pattern(const std::vector<ex::ComparisonRow>& rows) {
    const auto it = std::find_if(rows.begin(), rows.end(), [](const auto& r) { return r.function == "F5"; });
    report(2, it->p_value >= 0.01,
           fmt("F5 p = %.3g (need >= 0.01); CSA mean %.4g, ECSA mean %.4g", it->p_value, it->csa.mean, it->ecsa.mean));
}

void sobol_exactness() {
    bool ok = true;
    SobolGenerator one(1);
    const std::uint32_t expected[4] = {0x80000000u, 0xC0000000u, 0x40000000u, 0x60000000u};
    const double values[4] = {0.5, 0.75, 0.25, 0.375};
    for (int i = 0; i < 4; ++i) {
        const auto raw = one.next_raw().at(0);
        ok = ok && raw == expected[i] && static_cast<double>(raw) * 0x1p-32 == values[i];
    }
    // The (0, 8, 2)-net: indices 0..255 of the sequence.
    SobolGenerator two(2, 0);
    int cells[4][4] = {};
    for (int i = 0; i < 256; ++i) {
        const auto p = two.next();
        ++cells[static_cast<int>(p[0] * 4)][static_cast<int>(p[1] * 4)];
    }
    int lo = 256, hi = 0;
    for (auto& row : cells)
        for (int c : row) lo = std::min(lo, c), hi = std::max(hi, c);
    report(3, ok && lo == 16 && hi == 16, fmt("1-D prefix %s; 4x4 cell counts in [%d, %d]", ok ? "exact" : "wrong", lo, hi));
}

void scheduler_exactness() {
    ScheduleState s = ScheduleState::cosine(0.25, 0.5, 100, 2);
    std::map<int, double> seen;
    for (int t = 0; t <= 300; ++t) {
        if (t == 0 || t == 50 || t == 100 || t == 300) seen[t] = cosine_value(s);
        s = advance(s);
    }
    const bool ok = std::fabs(seen[0] - 0.5) <= 1e-12 && std::fabs(seen[50] - 0.375) <= 1e-12 &&
                    std::fabs(seen[100] - 0.5) <= 1e-12 && std::fabs(seen[300] - 0.5) <= 1e-12;
    report(4, ok, fmt("t=0: %.15g, t=50: %.15g, t=100: %.15g, t=300: %.15g", seen[0], seen[50], seen[100], seen[300]));
}

void wilcoxon_oracle() {
    Rng rng(20240611);
    int cases = 0, mismatches = 0;
    double worst = 0;
    for (std::size_t n = 1; n <= 7; ++n) {
        for (std::size_t m = 1; m <= 7; ++m) {
            for (int rep = 0; rep < 10; ++rep) {
                std::vector<double> a(n), b(m);
                const double scale = rep % 2 ? 1.0 : 5.0; // coarse rounding gives ties
                for (double& x : a) x = std::round(rng.normal() * scale);
                for (double& x : b) x = std::round((rng.normal() + 0.3 * rep) * scale);
                const double diff = std::fabs(stats::rank_sum_p(a, b) - oracle::rank_sum_p_bruteforce(a, b));
                worst = std::max(worst, diff);
                mismatches += diff > 1e-12;
                ++cases;
            }
        }
    }
    const std::vector<double> a{1, 2, 3}, b{4, 5, 6};
    const double p = stats::rank_sum_p(a, b);
    report(5, mismatches == 0 && p == 0.1,
           fmt("%d samples, %d mismatches (max diff %.2g); {1,2,3} vs {4,5,6} p = %.17g", cases, mismatches, worst, p));
}

void benchmark_oracles() {
    Rng rng(31337);
    int mismatches = 0;
    double worst = 0;
    for (const auto& spec : bench::suite()) {
        if (spec.stochastic) continue;
        for (int i = 0; i < 100; ++i) {
            Vector x(spec.dim);
            for (std::size_t k = 0; k < x.size(); ++k) x[k] = uniform(rng, spec.box.lower()[k], spec.box.upper()[k]);
            const double got = bench::evaluate(spec, x, rng);
            const double want = oracle::by_index(static_cast<int>(spec.id), x);
            const double rel = std::fabs(got - want) / std::max(1.0, std::fabs(want));
            worst = std::max(worst, rel);
            mismatches += rel > 1e-12;
        }
    }
    Rng r(0);
    auto at = [&](bench::FunctionId id, double v) { return bench::evaluate(bench::make_spec(id), Vector(15, v), r); };
    const double f1 = at(bench::FunctionId::F1, 0), f8 = at(bench::FunctionId::F8, 0), f9 = at(bench::FunctionId::F9, 0),
                 f10 = at(bench::FunctionId::F10, 0), f12 = at(bench::FunctionId::F12, -1),
                 f5 = at(bench::FunctionId::F5, 1), f11 = at(bench::FunctionId::F11, 420.9687);
    const bool optima = f1 <= 1e-9 && f8 <= 1e-9 && f9 <= 1e-9 && f10 <= 1e-9 && f12 <= 1e-9 && f5 == 0.0 &&
                        std::fabs(f11 - (-418.9829 * 15)) < 0.01;
    report(6, mismatches == 0 && optima,
           fmt("1200 points, %d mismatches (max rel %.2g); optima F1 %.2g F8 %.2g F9 %.2g F10 %.2g F12 %.2g F5 %.2g, "
               "F11 %.6f vs %.6f",
               mismatches, worst, f1, f8, f9, f10, f12, f5, f11, -418.9829 * 15));
}

void allocation_convergence() {
    const auto instance = la::synth_instance(50, 11, 20240611);
    ex::AllocateConfig cfg;
    cfg.trials = 30;
    const auto rep = ex::run_allocation(instance, cfg);
    const ex::AllocationResult* csa = nullptr;
    const ex::AllocationResult* ecsa = nullptr;
    for (const auto& r : rep.results) (r.algorithm == ex::Algorithm::csa ? csa : ecsa) = &r;
    const double best_gap = ecsa->runs[ecsa->best_run].gap;
    report(7, best_gap <= 0.05 && ecsa->mean_gap <= csa->mean_gap,
           fmt("optimum %.6g; ECSA best gap %.4f (need <= 0.05); mean gap ECSA %.4f vs CSA %.4f", rep.optimum, best_gap,
               ecsa->mean_gap, csa->mean_gap));
}

void reduction_identity() {
    int compared = 0, identical = 0;
    for (const auto& spec : bench::suite()) {
        for (std::uint64_t seed : {1u, 2u}) {
            auto csa = OptimizerConfig::csa();
            auto ecsa = OptimizerConfig::ecsa();
            ecsa.schedule.pa_min = ecsa.schedule.pa_max = 0.25;
            ecsa.schedule.alpha_min = ecsa.schedule.alpha_max = 0.01;
            ecsa.init = InitMethod::random;
            csa.seed = ecsa.seed = seed;
            const auto a = run(csa, spec.box, bench::objective(spec));
            const auto b = run(ecsa, spec.box, bench::objective(spec));
            ++compared;
            identical += a.best_fitness == b.best_fitness && a.best.position == b.best.position;
        }
    }
    report(8, identical == compared, fmt("%d of %d run pairs bit-identical", identical, compared));
}

void elitism(const std::vector<ex::TrialResult>& results) {
    std::size_t violations = 0;
    for (const auto& r : results)
        for (std::size_t t = 1; t < r.trace.size(); ++t) violations += r.trace[t] > r.trace[t - 1];
    report(9, results.size() == 780 && violations == 0,
           fmt("%zu runs, %zu increasing steps", results.size(), violations));
}

} // namespace

int main() {
    const auto start = std::chrono::steady_clock::now();
    const auto results = ex::run_bench(ex::ExperimentConfig{});
    const auto rows = ex::compare(to_records(results));
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("default protocol: %zu runs in %.1f s\n", results.size(), seconds);
    for (const auto& r : rows)
        std::printf("  %-4s csa %-12.4g ecsa %-12.4g p %-10.3g %s\n", r.function.c_str(), r.csa.mean, r.ecsa.mean,
                    r.p_value, std::string(stats::to_string(r.verdict)).c_str());

    superiority(rows);
    rosenbrock_pattern(rows);
    sobol_exactness();
    scheduler_exactness();
    wilcoxon_oracle();
    benchmark_oracles();
    allocation_convergence();
    reduction_identity();
    elitism(results);
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
