// Command-line front end: benchmark protocol, comparison, location-allocation
// runs and inspection utilities for the Sobol and schedule modules.

#include "ecsa/allocation.hpp"
#include "ecsa/benchmarks.hpp"
#include "ecsa/experiment.hpp"
#include "ecsa/schedule.hpp"
#include "ecsa/sobol.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

namespace {

using namespace ecsa;
using experiment::Algorithm;

std::vector<std::string> split_list(const std::vector<std::string>& items) {
    std::vector<std::string> out;
    for (const auto& item : items) {
        std::stringstream ss(item);
        for (std::string part; std::getline(ss, part, ',');) {
            if (!part.empty()) out.push_back(part);
        }
    }
    return out;
}

std::vector<bench::FunctionId> parse_functions(const std::vector<std::string>& items) {
    std::vector<bench::FunctionId> ids;
    for (const auto& s : split_list(items)) {
        if (s == "all") return {};
        const auto id = bench::parse_id(s);
        if (!id) throw std::invalid_argument("invalid function id '" + s + "' (expected F1..F13 or all)");
        ids.push_back(*id);
    }
    return ids;
}

std::vector<Algorithm> parse_algorithms(const std::vector<std::string>& items) {
    std::vector<Algorithm> out;
    for (const auto& s : split_list(items)) {
        const auto a = experiment::parse_algorithm(s);
        if (!a) throw std::invalid_argument("invalid algorithm '" + s + "' (expected csa or ecsa)");
        out.push_back(*a);
    }
    if (out.empty()) throw std::invalid_argument("no algorithms selected");
    return out;
}

/// Optimizer settings shared by `bench` and `allocate`. Values read from a
/// --config file are applied first; flags given on the command line win.
struct CommonOptions {
    std::string config_path;
    std::vector<std::string> algorithms{"csa", "ecsa"};
    std::size_t trials = 30;
    std::uint64_t seed = 20240611;
    std::size_t population = 0;
    std::size_t iterations = 0;
    double pa_min = 0, pa_max = 0, alpha_min = 0, alpha_max = 0, t_mult = 0;
    std::uint64_t t0 = 0;
    std::string out;

    std::map<std::string, CLI::Option*> flags;

    void add_to(CLI::App& app, const std::string& default_out) {
        out = default_out;
        flags["config"] = app.add_option("--config", config_path, "JSON config file; flags override its values");
        flags["algorithms"] =
            app.add_option("--algorithms,--algorithm", algorithms, "csa, ecsa or both (comma separated)");
        flags["trials"] = app.add_option("--trials", trials, "Trials per cell");
        flags["seed"] = app.add_option("--seed", seed, "Base seed");
        flags["population"] = app.add_option("--population", population, "Number of nests");
        flags["iterations"] = app.add_option("--iterations", iterations, "Iterations per run");
        flags["pa_min"] = app.add_option("--pa-min", pa_min, "ECSA minimum discovery rate");
        flags["pa_max"] = app.add_option("--pa-max", pa_max, "ECSA maximum discovery rate");
        flags["alpha_min"] = app.add_option("--alpha-min", alpha_min, "ECSA minimum step size");
        flags["alpha_max"] = app.add_option("--alpha-max", alpha_max, "ECSA maximum step size");
        flags["t0"] = app.add_option("--t0", t0, "ECSA first cycle length");
        flags["t_mult"] = app.add_option("--t-mult,--tmult", t_mult, "ECSA cycle length multiplier");
        flags["out"] = app.add_option("--out", out, "Output directory");
    }

    bool given(const std::string& key) const { return flags.at(key)->count() > 0; }

    /// Loads --config (if any) into fields whose flag was not given.
    nlohmann::json load_config() {
        if (config_path.empty()) return nlohmann::json::object();
        std::ifstream in(config_path);
        if (!in) throw std::runtime_error("cannot open config file " + config_path);
        nlohmann::json cfg;
        try {
            cfg = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw std::runtime_error("malformed config file: " + std::string(e.what()));
        }
        if (!cfg.is_object()) throw std::runtime_error("config file must hold a JSON object");
        auto take = [&](const char* key, auto& field) {
            if (cfg.contains(key) && !given(key)) field = cfg[key].get<std::decay_t<decltype(field)>>();
        };
        if (cfg.contains("algorithms") && !given("algorithms"))
            algorithms = cfg["algorithms"].get<std::vector<std::string>>();
        take("trials", trials);
        take("seed", seed);
        take("population", population);
        take("iterations", iterations);
        take("pa_min", pa_min);
        take("pa_max", pa_max);
        take("alpha_min", alpha_min);
        take("alpha_max", alpha_max);
        take("t0", t0);
        take("t_mult", t_mult);
        take("out", out);
        set_from_config_ = cfg;
        return cfg;
    }

    experiment::Overrides overrides() const {
        experiment::Overrides o;
        auto set = [&](const char* key, auto value, auto& target) {
            if (given(key) || set_from_config_.contains(key)) target = value;
        };
        set("population", population, o.population);
        set("iterations", iterations, o.iterations);
        set("pa_min", pa_min, o.pa_min);
        set("pa_max", pa_max, o.pa_max);
        set("alpha_min", alpha_min, o.alpha_min);
        set("alpha_max", alpha_max, o.alpha_max);
        set("t0", t0, o.t0);
        set("t_mult", t_mult, o.t_mult);
        return o;
    }

private:
    nlohmann::json set_from_config_ = nlohmann::json::object();
};

void print_suite(std::ostream& out, std::size_t dim) {
    out << std::left << std::setw(5) << "id" << std::setw(26) << "name" << std::setw(5) << "dim" << std::setw(18)
        << "bounds" << std::setw(12) << "optimum"
        << "optimizer\n";
    for (const auto& s : bench::suite(dim)) {
        std::ostringstream bounds;
        bounds << '[' << s.box.lower()[0] << ", " << s.box.upper()[0] << ']';
        std::ostringstream optimizer;
        if (s.optimizer) optimizer << (*s.optimizer)[0] << " (all coordinates)";
        else optimizer << "unknown";
        if (s.stochastic) optimizer << ", plus U[0,1) noise";
        out << std::setw(5) << bench::label(s.id) << std::setw(26) << s.name << std::setw(5) << s.dim
            << std::setw(18) << bounds.str() << std::setw(12) << experiment::format_double(s.optimum_value)
            << optimizer.str() << '\n';
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cuckoo search (CSA) and enhanced cuckoo search (ECSA) experiments"};
    app.require_subcommand(1);

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "Run the F1-F13 benchmark protocol");
    CommonOptions bench_opts;
    bench_opts.add_to(*bench_cmd, "results");
    std::vector<std::string> functions{"all"};
    std::size_t dim = bench::kDefaultDim;
    auto* functions_opt = bench_cmd->add_option("--functions", functions, "F1..F13 (comma separated) or all");
    auto* dim_opt = bench_cmd->add_option("--dim", dim, "Problem dimension");
    auto* list_cmd = bench_cmd->add_subcommand("list", "Print the benchmark suite");

    // compare
    auto* compare_cmd = app.add_subcommand("compare", "Wilcoxon rank-sum comparison of bench results");
    std::string results_path;
    std::string compare_out;
    double level = 0.05;
    compare_cmd->add_option("results", results_path, "trials.csv or the bench output directory")->required();
    compare_cmd->add_option("--out", compare_out, "Write comparison.csv into this directory");
    compare_cmd->add_option("--level", level, "Significance level")->check(CLI::Range(0.0, 1.0));

    // allocate
    auto* allocate_cmd = app.add_subcommand("allocate", "Discretized CSA/ECSA on a location-allocation instance");
    CommonOptions alloc_opts;
    alloc_opts.add_to(*allocate_cmd, "allocation");
    std::string instance_path, blocks_csv, areas_csv;
    bool synthetic = false;
    std::size_t synth_blocks = 50, synth_areas = 11;
    std::uint64_t synth_seed = 1;
    auto* instance_opt = allocate_cmd->add_option("--instance", instance_path, "JSON instance file");
    auto* blocks_opt = allocate_cmd->add_option("--blocks", blocks_csv, "Blocks CSV (id,x,y)");
    auto* areas_opt = allocate_cmd->add_option("--areas", areas_csv, "Areas CSV (id,x,y)");
    auto* synth_flag = allocate_cmd->add_flag("--synthetic", synthetic, "Use a synthetic unit-square instance");
    allocate_cmd->add_option("--n-blocks", synth_blocks, "Synthetic block count");
    allocate_cmd->add_option("--n-areas", synth_areas, "Synthetic area count");
    allocate_cmd->add_option("--instance-seed", synth_seed, "Synthetic instance seed");
    instance_opt->excludes(blocks_opt)->excludes(synth_flag);
    blocks_opt->needs(areas_opt)->excludes(synth_flag);
    areas_opt->needs(blocks_opt);

    // sobol
    auto* sobol_cmd = app.add_subcommand("sobol", "Emit Sobol points as CSV");
    std::size_t sobol_dim = 1, sobol_count = 1;
    std::uint64_t sobol_skip = 1;
    std::string table_path;
    sobol_cmd->add_option("--dim", sobol_dim, "Dimension")->required();
    sobol_cmd->add_option("--count", sobol_count, "Number of points")->required();
    sobol_cmd->add_option("--skip", sobol_skip, "Index of the first emitted point");
    sobol_cmd->add_option("--table", table_path, "Direction-number table file (d s a m_1 ... m_s)");

    // schedule
    auto* schedule_cmd = app.add_subcommand("schedule", "Emit the ECSA (iteration, P_a, alpha) table");
    ScheduleConfig sched;
    std::size_t sched_iters = 500;
    schedule_cmd->add_option("--t0", sched.t0, "First cycle length");
    schedule_cmd->add_option("--tmult,--t-mult", sched.t_mult, "Cycle length multiplier");
    schedule_cmd->add_option("--iters,--iterations", sched_iters, "Number of rows");
    schedule_cmd->add_option("--pa-min", sched.pa_min);
    schedule_cmd->add_option("--pa-max", sched.pa_max);
    schedule_cmd->add_option("--alpha-min", sched.alpha_min);
    schedule_cmd->add_option("--alpha-max", sched.alpha_max);

    CLI11_PARSE(app, argc, argv);

    try {
        if (bench_cmd->parsed()) {
            if (list_cmd->parsed()) {
                print_suite(std::cout, dim);
                return 0;
            }
            const auto cfg_file = bench_opts.load_config();
            if (cfg_file.contains("functions") && !functions_opt->count())
                functions = cfg_file["functions"].get<std::vector<std::string>>();
            if (cfg_file.contains("dim") && !dim_opt->count()) dim = cfg_file["dim"].get<std::size_t>();

            experiment::ExperimentConfig cfg;
            cfg.functions = parse_functions(functions);
            cfg.algorithms = parse_algorithms(bench_opts.algorithms);
            cfg.trials = bench_opts.trials;
            cfg.base_seed = bench_opts.seed;
            cfg.dim = dim;
            cfg.overrides = bench_opts.overrides();
            cfg.validate();
            experiment::ensure_writable_dir(bench_opts.out);

            const auto results = experiment::run_bench(cfg);
            experiment::write_bench_outputs(results, bench_opts.out);
            std::cout << results.size() << " runs written to " << bench_opts.out << '\n';
            std::ifstream summary(std::filesystem::path(bench_opts.out) / "summary.txt");
            std::cout << summary.rdbuf();
            return 0;
        }

        if (compare_cmd->parsed()) {
            std::filesystem::path path(results_path);
            if (std::filesystem::is_directory(path)) path /= "trials.csv";
            const auto rows = experiment::compare(experiment::read_trials_csv(path), level);
            experiment::write_comparison_table(std::cout, rows);
            if (!compare_out.empty()) {
                experiment::ensure_writable_dir(compare_out);
                std::ofstream out(std::filesystem::path(compare_out) / "comparison.csv");
                if (!out) throw std::runtime_error("cannot write comparison.csv");
                experiment::write_comparison_csv(out, rows);
            }
            return 0;
        }

        if (allocate_cmd->parsed()) {
            alloc_opts.load_config();
            if (!synthetic && instance_path.empty() && blocks_csv.empty())
                throw std::invalid_argument("allocate needs --instance, --blocks/--areas or --synthetic");
            const la::AllocationInstance instance =
                synthetic              ? la::synth_instance(synth_blocks, synth_areas, synth_seed)
                : !instance_path.empty() ? la::load_instance(instance_path)
                                         : la::load_instance_csv(blocks_csv, areas_csv);
            experiment::AllocateConfig cfg;
            cfg.algorithms = parse_algorithms(alloc_opts.algorithms);
            cfg.trials = alloc_opts.trials;
            cfg.base_seed = alloc_opts.seed;
            cfg.overrides = alloc_opts.overrides();
            if (cfg.trials == 0) throw std::invalid_argument("trials must be positive");
            for (auto a : cfg.algorithms) experiment::make_config(a, cfg.overrides, 0);
            experiment::ensure_writable_dir(alloc_opts.out);

            const auto report = experiment::run_allocation(instance, cfg);
            experiment::write_allocation_outputs(instance, report, alloc_opts.out);
            std::cout << instance.n_blocks() << " blocks, " << instance.n_areas() << " areas\n";
            experiment::write_allocation_table(std::cout, report);
            return 0;
        }

        if (sobol_cmd->parsed()) {
            const SobolTable table = table_path.empty() ? SobolTable::builtin() : SobolTable::load(table_path);
            SobolGenerator gen(sobol_dim, sobol_skip, table);
            Vector point(sobol_dim);
            for (std::size_t i = 0; i < sobol_count; ++i) {
                gen.next(point);
                for (std::size_t k = 0; k < point.size(); ++k)
                    std::cout << (k ? "," : "") << experiment::format_double(point[k]);
                std::cout << '\n';
            }
            return 0;
        }

        if (schedule_cmd->parsed()) {
            ScheduleState pa = sched.discovery();
            ScheduleState alpha = sched.step();
            std::cout << "iteration,pa,alpha\n";
            for (std::size_t t = 0; t < sched_iters; ++t) {
                const auto p = ecsa_params(pa, alpha);
                std::cout << t << ',' << experiment::format_double(p.discovery_rate) << ','
                          << experiment::format_double(p.step_size) << '\n';
                pa = advance(pa);
                alpha = advance(alpha);
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
