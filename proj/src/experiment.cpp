#include "ecsa/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace ecsa::experiment {

std::string_view to_string(Algorithm a) noexcept {
    return a == Algorithm::csa ? "csa" : "ecsa";
}

std::optional<Algorithm> parse_algorithm(std::string_view text) {
    if (text == "csa" || text == "CSA") return Algorithm::csa;
    if (text == "ecsa" || text == "ECSA") return Algorithm::ecsa;
    return std::nullopt;
}

OptimizerConfig make_config(Algorithm algorithm, const Overrides& o, std::uint64_t seed) {
    OptimizerConfig c = algorithm == Algorithm::csa ? OptimizerConfig::csa() : OptimizerConfig::ecsa();
    if (o.population) c.population = *o.population;
    if (o.iterations) c.iterations = *o.iterations;
    if (algorithm == Algorithm::ecsa) {
        auto& s = c.schedule;
        if (o.pa_min) s.pa_min = *o.pa_min;
        if (o.pa_max) s.pa_max = *o.pa_max;
        if (o.alpha_min) s.alpha_min = *o.alpha_min;
        if (o.alpha_max) s.alpha_max = *o.alpha_max;
        if (o.t0) s.t0 = *o.t0;
        if (o.t_mult) s.t_mult = *o.t_mult;
    }
    c.seed = seed;
    c.validate();
    return c;
}

void ExperimentConfig::validate() const {
    if (trials == 0) throw std::invalid_argument("trials must be positive");
    if (algorithms.empty()) throw std::invalid_argument("no algorithms selected");
    if (dim == 0) throw std::invalid_argument("dimension must be positive");
    for (Algorithm a : algorithms) make_config(a, overrides, 0);
}

std::vector<bench::FunctionId> ExperimentConfig::resolved_functions() const {
    if (!functions.empty()) return functions;
    std::vector<bench::FunctionId> all;
    for (const auto& spec : bench::suite(1)) all.push_back(spec.id);
    return all;
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::string_view algorithm, std::string_view function,
                         std::size_t trial) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&](std::string_view s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
    };
    mix(algorithm);
    mix("/");
    mix(function);
    mix("/");
    mix(std::to_string(trial));
    return base_seed + h;
}

std::size_t default_workers() {
    if (const char* env = std::getenv("ECSA_WORKERS")) {
        std::size_t n = 0;
        const std::string_view text(env);
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
        if (ec == std::errc{} && ptr == text.data() + text.size() && n > 0) return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

/// Runs task(i) for i in [0, count) on `workers` threads; rethrows the first
/// failure after all threads have joined.
template <typename Task>
void parallel_for(std::size_t count, std::size_t workers, Task task) {
    if (workers == 0) workers = default_workers();
    workers = std::min(workers, std::max<std::size_t>(count, 1));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < count;) {
            try {
                task(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = count;
            }
        }
    };
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

void write_trace(const std::filesystem::path& path, const Vector& trace) {
    auto out = open_out(path);
    out << "iteration,best_fitness\n";
    for (std::size_t t = 0; t < trace.size(); ++t) out << t << ',' << format_double(trace[t]) << '\n';
}

std::string fixed_width(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << std::scientific << v;
    return os.str();
}

} // namespace

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::vector<TrialResult> run_bench(const ExperimentConfig& config) {
    config.validate();
    struct Cell {
        bench::ObjectiveSpec spec;
        Algorithm algorithm;
        std::size_t trial;
    };
    std::vector<Cell> cells;
    for (auto id : config.resolved_functions()) {
        const auto spec = bench::make_spec(id, config.dim);
        for (Algorithm a : config.algorithms) {
            for (std::size_t t = 0; t < config.trials; ++t) cells.push_back(Cell{spec, a, t});
        }
    }

    std::vector<TrialResult> results(cells.size());
    parallel_for(cells.size(), config.workers ? config.workers : default_workers(), [&](std::size_t i) {
        const Cell& cell = cells[i];
        const std::uint64_t seed =
            trial_seed(config.base_seed, to_string(cell.algorithm), bench::label(cell.spec.id), cell.trial);
        const OptimizerConfig oc = make_config(cell.algorithm, config.overrides, seed);
        RunTrace trace = run(oc, cell.spec.box, bench::objective(cell.spec));
        results[i] = TrialResult{cell.spec.id,        cell.algorithm,    cell.trial,
                                 seed,                trace.best.fitness, trace.evaluations,
                                 std::move(trace.best_fitness)};
    });
    return results;
}

std::vector<CellSummary> summarize_cells(const std::vector<TrialResult>& results) {
    std::vector<CellSummary> out;
    std::vector<double> values;
    for (std::size_t i = 0; i < results.size();) {
        std::size_t j = i;
        values.clear();
        while (j < results.size() && results[j].function == results[i].function &&
               results[j].algorithm == results[i].algorithm)
            values.push_back(results[j++].best_fitness);
        stats::Summary s{values.front(), 0.0};
        if (values.size() >= 2) s = stats::summarize(values);
        out.push_back(CellSummary{bench::label(results[i].function), std::string(to_string(results[i].algorithm)), s});
        i = j;
    }
    return out;
}

void ensure_writable_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir))
        throw std::runtime_error("cannot create output directory " + dir.string());
    const auto probe = dir / ".write_probe";
    {
        std::ofstream out(probe);
        if (!out) throw std::runtime_error("output directory " + dir.string() + " is not writable");
    }
    std::filesystem::remove(probe, ec);
}

void write_trials_csv(std::ostream& out, const std::vector<TrialResult>& results) {
    out << "function,algorithm,trial,seed,best_fitness,evaluations\n";
    for (const auto& r : results) {
        out << bench::label(r.function) << ',' << to_string(r.algorithm) << ',' << r.trial << ',' << r.seed << ','
            << format_double(r.best_fitness) << ',' << r.evaluations << '\n';
    }
}

void write_bench_outputs(const std::vector<TrialResult>& results, const std::filesystem::path& dir) {
    ensure_writable_dir(dir);
    ensure_writable_dir(dir / "traces");
    ensure_writable_dir(dir / "mean_traces");

    {
        auto out = open_out(dir / "trials.csv");
        write_trials_csv(out, results);
    }

    const auto cells = summarize_cells(results);
    {
        auto out = open_out(dir / "summary.csv");
        out << "function,algorithm,mean,std\n";
        for (const auto& c : cells)
            out << c.function << ',' << c.algorithm << ',' << format_double(c.summary.mean) << ','
                << format_double(c.summary.std) << '\n';
    }
    {
        // Wide layout: one line per function, a mean/std column pair per algorithm.
        std::vector<std::string> algorithms, functions;
        std::map<std::pair<std::string, std::string>, stats::Summary> by_cell;
        for (const auto& c : cells) {
            if (std::find(functions.begin(), functions.end(), c.function) == functions.end())
                functions.push_back(c.function);
            if (std::find(algorithms.begin(), algorithms.end(), c.algorithm) == algorithms.end())
                algorithms.push_back(c.algorithm);
            by_cell[{c.function, c.algorithm}] = c.summary;
        }
        auto out = open_out(dir / "summary.txt");
        out << std::left << std::setw(6) << "";
        for (const auto& a : algorithms) out << std::setw(30) << a;
        out << '\n' << std::setw(6) << "";
        for (std::size_t k = 0; k < algorithms.size(); ++k) out << std::setw(15) << "mean" << std::setw(15) << "std";
        out << '\n';
        for (const auto& f : functions) {
            out << std::setw(6) << f;
            for (const auto& a : algorithms) {
                const auto it = by_cell.find({f, a});
                if (it == by_cell.end()) {
                    out << std::setw(15) << "-" << std::setw(15) << "-";
                } else {
                    out << std::setw(15) << fixed_width(it->second.mean) << std::setw(15) << fixed_width(it->second.std);
                }
            }
            out << '\n';
        }
    }

    std::map<std::pair<std::string, std::string>, std::vector<const Vector*>> grouped;
    for (const auto& r : results) {
        const std::string f = bench::label(r.function);
        const std::string a(to_string(r.algorithm));
        write_trace(dir / "traces" / (f + "_" + a + "_t" + std::to_string(r.trial) + ".csv"), r.trace);
        grouped[{f, a}].push_back(&r.trace);
    }
    for (const auto& [key, traces] : grouped)
        write_trace(dir / "mean_traces" / (key.first + "_" + key.second + ".csv"), mean_trace(traces));
}

Vector mean_trace(const std::vector<const Vector*>& traces) {
    if (traces.empty()) return {};
    const std::size_t len = traces.front()->size();
    Vector mean(len, 0.0);
    for (const Vector* t : traces) {
        if (t->size() != len) throw std::invalid_argument("mean_trace: traces differ in length");
        for (std::size_t i = 0; i < len; ++i) mean[i] += (*t)[i];
    }
    for (double& v : mean) v /= static_cast<double>(traces.size());
    return mean;
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream row(line);
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

template <typename T>
T parse_number(const std::string& text, const std::string& where) {
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw std::runtime_error(where + ": cannot parse '" + text + "'");
    return value;
}

} // namespace

std::vector<TrialRecord> read_trials_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("trials file is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = split_csv(line);
    const std::vector<std::string> expected{"function", "algorithm", "trial", "seed", "best_fitness", "evaluations"};
    std::map<std::string, std::size_t> column;
    for (std::size_t i = 0; i < header.size(); ++i) column[header[i]] = i;
    for (const auto& name : expected) {
        if (!column.count(name)) throw std::runtime_error("trials file is missing the '" + name + "' column");
    }

    std::vector<TrialRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto f = split_csv(line);
        const std::string where = "trials line " + std::to_string(line_no);
        if (f.size() != header.size()) throw std::runtime_error(where + ": wrong number of fields");
        records.push_back(TrialRecord{
            f[column["function"]],
            f[column["algorithm"]],
            parse_number<std::size_t>(f[column["trial"]], where),
            parse_number<std::uint64_t>(f[column["seed"]], where),
            parse_number<double>(f[column["best_fitness"]], where),
            parse_number<std::uint64_t>(f[column["evaluations"]], where),
        });
    }
    return records;
}

std::vector<TrialRecord> read_trials_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_trials_csv(in);
}

std::vector<ComparisonRow> compare(const std::vector<TrialRecord>& records, double level) {
    std::vector<std::string> order;
    std::map<std::string, std::vector<double>> csa, ecsa;
    for (const auto& r : records) {
        if (std::find(order.begin(), order.end(), r.function) == order.end()) order.push_back(r.function);
        const auto alg = parse_algorithm(r.algorithm);
        if (!alg) throw std::runtime_error("unknown algorithm '" + r.algorithm + "' in results");
        (*alg == Algorithm::csa ? csa : ecsa)[r.function].push_back(r.best_fitness);
    }
    std::vector<ComparisonRow> rows;
    for (const auto& f : order) {
        if (!csa.count(f)) throw std::runtime_error(f + ": no csa results to compare");
        if (!ecsa.count(f)) throw std::runtime_error(f + ": no ecsa results to compare");
        const auto& a = csa[f];
        const auto& b = ecsa[f];
        if (a.size() < 2 || b.size() < 2) throw std::runtime_error(f + ": need at least two trials per algorithm");
        ComparisonRow row{f, stats::summarize(a), stats::summarize(b), stats::rank_sum_p(a, b),
                          stats::Verdict::comparable, "tie"};
        row.verdict = stats::decide(row.p_value, level);
        if (row.ecsa.mean < row.csa.mean) row.winner = "ecsa";
        else if (row.csa.mean < row.ecsa.mean) row.winner = "csa";
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_comparison_csv(std::ostream& out, const std::vector<ComparisonRow>& rows) {
    out << "function,csa_mean,csa_std,ecsa_mean,ecsa_std,p_value,verdict,winner\n";
    for (const auto& r : rows) {
        out << r.function << ',' << format_double(r.csa.mean) << ',' << format_double(r.csa.std) << ','
            << format_double(r.ecsa.mean) << ',' << format_double(r.ecsa.std) << ',' << format_double(r.p_value) << ','
            << stats::to_string(r.verdict) << ',' << r.winner << '\n';
    }
}

void write_comparison_table(std::ostream& out, const std::vector<ComparisonRow>& rows) {
    out << std::left << std::setw(6) << "fn" << std::setw(15) << "csa_mean" << std::setw(15) << "csa_std"
        << std::setw(15) << "ecsa_mean" << std::setw(15) << "ecsa_std" << std::setw(15) << "p_value"
        << std::setw(25) << "verdict"
        << "winner\n";
    std::size_t significant = 0;
    for (const auto& r : rows) {
        out << std::setw(6) << r.function << std::setw(15) << fixed_width(r.csa.mean) << std::setw(15)
            << fixed_width(r.csa.std) << std::setw(15) << fixed_width(r.ecsa.mean) << std::setw(15)
            << fixed_width(r.ecsa.std) << std::setw(15) << fixed_width(r.p_value) << std::setw(25)
            << stats::to_string(r.verdict) << r.winner << '\n';
        if (r.verdict == stats::Verdict::significantly_different) ++significant;
    }
    out << significant << " of " << rows.size() << " functions significantly different\n";
}

AllocationReport run_allocation(const la::AllocationInstance& instance, const AllocateConfig& config) {
    if (config.trials == 0) throw std::invalid_argument("trials must be positive");
    if (config.algorithms.empty()) throw std::invalid_argument("no algorithms selected");

    const double optimum = la::optimal_assignment(instance).fitness;
    const SearchBox box = la::encoded_box(instance);
    const Objective objective = la::objective(instance);

    AllocationReport report{optimum, {}};
    for (Algorithm a : config.algorithms) {
        make_config(a, config.overrides, 0);
        report.results.push_back(AllocationResult{a, std::vector<AllocationRun>(config.trials)});
    }

    const std::size_t n_cells = config.algorithms.size() * config.trials;
    parallel_for(n_cells, config.workers ? config.workers : default_workers(), [&](std::size_t i) {
        AllocationResult& result = report.results[i / config.trials];
        const std::size_t t = i % config.trials;
        const std::uint64_t seed = trial_seed(config.base_seed, to_string(result.algorithm), "LA", t);
        RunTrace trace = run(make_config(result.algorithm, config.overrides, seed), box, objective);
        la::Assignment assignment = la::decode(trace.best.position, instance);
        const double f = la::fitness(instance, assignment);
        const double gap = optimum > 0.0 ? (f - optimum) / optimum : f - optimum;
        result.runs[t] = AllocationRun{t, seed, f, gap, trace.evaluations, std::move(assignment),
                                       std::move(trace.best_fitness)};
    });

    for (auto& result : report.results) {
        std::vector<double> values, gaps;
        for (const auto& r : result.runs) {
            values.push_back(r.fitness);
            gaps.push_back(r.gap);
        }
        result.fitness = values.size() >= 2 ? stats::summarize(values) : stats::Summary{values.front(), 0.0};
        result.mean_gap = std::accumulate(gaps.begin(), gaps.end(), 0.0) / static_cast<double>(gaps.size());
        result.best_run = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
    }
    return report;
}

void write_allocation_outputs(const la::AllocationInstance& instance, const AllocationReport& report,
                              const std::filesystem::path& dir) {
    ensure_writable_dir(dir);
    ensure_writable_dir(dir / "traces");
    ensure_writable_dir(dir / "mean_traces");
    {
        auto out = open_out(dir / "allocation_summary.csv");
        out << "algorithm,trials,mean_fitness,std_fitness,best_fitness,optimal_fitness,mean_gap,best_gap\n";
        for (const auto& r : report.results) {
            const auto& best = r.runs[r.best_run];
            out << to_string(r.algorithm) << ',' << r.runs.size() << ',' << format_double(r.fitness.mean) << ','
                << format_double(r.fitness.std) << ',' << format_double(best.fitness) << ','
                << format_double(report.optimum) << ',' << format_double(r.mean_gap) << ',' << format_double(best.gap)
                << '\n';
        }
    }
    {
        auto out = open_out(dir / "allocation_runs.csv");
        out << "algorithm,trial,seed,fitness,gap_to_optimal,evaluations\n";
        for (const auto& r : report.results) {
            for (const auto& run : r.runs)
                out << to_string(r.algorithm) << ',' << run.trial << ',' << run.seed << ',' << format_double(run.fitness)
                    << ',' << format_double(run.gap) << ',' << run.evaluations << '\n';
        }
    }
    for (const auto& r : report.results) {
        const std::string a(to_string(r.algorithm));
        {
            auto out = open_out(dir / ("best_" + a + ".csv"));
            la::write_assignment_csv(out, instance, r.runs[r.best_run].assignment);
        }
        std::vector<const Vector*> traces;
        for (const auto& run : r.runs) {
            write_trace(dir / "traces" / (a + "_t" + std::to_string(run.trial) + ".csv"), run.trace);
            traces.push_back(&run.trace);
        }
        write_trace(dir / "mean_traces" / (a + ".csv"), mean_trace(traces));
    }
}

void write_allocation_table(std::ostream& out, const AllocationReport& report) {
    out << "optimal fitness (nearest-area oracle): " << fixed_width(report.optimum) << '\n';
    out << std::left << std::setw(6) << "alg" << std::setw(8) << "trials" << std::setw(15) << "mean" << std::setw(15)
        << "std" << std::setw(15) << "best" << std::setw(15) << "mean_gap"
        << "best_gap\n";
    for (const auto& r : report.results) {
        const auto& best = r.runs[r.best_run];
        out << std::setw(6) << to_string(r.algorithm) << std::setw(8) << r.runs.size() << std::setw(15)
            << fixed_width(r.fitness.mean) << std::setw(15) << fixed_width(r.fitness.std) << std::setw(15)
            << fixed_width(best.fitness) << std::setw(15) << fixed_width(r.mean_gap) << fixed_width(best.gap) << '\n';
    }
}

} // namespace ecsa::experiment
