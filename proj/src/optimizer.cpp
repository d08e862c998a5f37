#include "ecsa/optimizer.hpp"

#include "ecsa/sobol.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace ecsa {

OptimizerConfig OptimizerConfig::csa() {
    OptimizerConfig c;
    c.schedule = ScheduleConfig{0.25, 0.25, 0.01, 0.01, 100, 2.0};
    c.init = InitMethod::random;
    return c;
}

OptimizerConfig OptimizerConfig::ecsa() {
    OptimizerConfig c;
    c.schedule = ScheduleConfig{0.25, 0.5, 0.01, 0.05, 100, 2.0};
    c.init = InitMethod::sobol;
    return c;
}

void OptimizerConfig::validate() const {
    if (population == 0) throw std::invalid_argument("optimizer: population must be positive");
    const auto& s = schedule;
    if (!(0.0 <= s.pa_min && s.pa_min <= s.pa_max && s.pa_max <= 1.0))
        throw std::invalid_argument("optimizer: discovery rate range must satisfy 0 <= pa_min <= pa_max <= 1");
    if (!(0.0 <= s.alpha_min && s.alpha_min <= s.alpha_max))
        throw std::invalid_argument("optimizer: step size range must satisfy 0 <= alpha_min <= alpha_max");
    s.discovery().validate();
    mantegna_sigma(levy_beta);
}

std::vector<Candidate> init_population(const OptimizerConfig& config, const SearchBox& box,
                                       const Objective& objective, Rng& rng) {
    if (config.population == 0) throw std::invalid_argument("init_population: population must be positive");
    std::vector<Vector> positions;
    if (config.init == InitMethod::sobol) {
        positions = sobol_population(config.population, box);
    } else {
        positions.reserve(config.population);
        for (std::size_t i = 0; i < config.population; ++i) {
            Vector x(box.dim());
            for (std::size_t k = 0; k < x.size(); ++k) x[k] = uniform(rng, box.lower()[k], box.upper()[k]);
            positions.push_back(std::move(x));
        }
    }
    std::vector<Candidate> nests;
    nests.reserve(positions.size());
    for (auto& x : positions) {
        const double f = objective(x, rng);
        nests.push_back(Candidate{std::move(x), f});
    }
    return nests;
}

std::size_t best_index(std::span<const Candidate> population) {
    if (population.empty()) throw std::invalid_argument("best_index: empty population");
    std::size_t best = 0;
    for (std::size_t i = 1; i < population.size(); ++i) {
        if (population[i].fitness < population[best].fitness) best = i;
    }
    return best;
}

Candidate levy_update(const Candidate& nest, const Candidate& best, double alpha, const LevyParams& levy,
                      Rng& rng, const SearchBox& box, const Objective& objective) {
    const std::size_t dim = nest.position.size();
    if (best.position.size() != dim) throw std::invalid_argument("levy_update: nest and best differ in dimension");

    const Vector step = levy_step(levy, rng, dim);
    const bool at_best = nest.position == best.position;
    Vector proposal(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        const double scale = at_best ? 1.0 : nest.position[k] - best.position[k];
        proposal[k] = nest.position[k] + alpha * step[k] * scale;
    }
    clamp_in_place(proposal, box);
    const double f = objective(proposal, rng);
    if (f <= nest.fitness) return Candidate{std::move(proposal), f};
    return nest;
}

std::size_t abandon_nests(std::vector<Candidate>& population, double discovery_rate, Rng& rng,
                          const SearchBox& box, const Objective& objective) {
    if (!(discovery_rate >= 0.0 && discovery_rate <= 1.0))
        throw std::invalid_argument("abandon_nests: discovery rate must lie in [0, 1]");
    const std::size_t n = population.size();

    const std::size_t keep = best_index(population);
    std::vector<Vector> snapshot;
    snapshot.reserve(n);
    for (const auto& c : population) snapshot.push_back(c.position);

    std::size_t abandoned = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == keep) continue;
        if (!(rng.unit() < discovery_rate)) continue;
        const std::size_t p = rng.index(n);
        std::size_t q = rng.index(n - 1);
        if (q >= p) ++q;
        const double r = rng.unit();
        Vector x = population[i].position;
        for (std::size_t k = 0; k < x.size(); ++k) x[k] += r * (snapshot[p][k] - snapshot[q][k]);
        clamp_in_place(x, box);
        const double f = objective(x, rng);
        if (f <= population[i].fitness) population[i] = Candidate{std::move(x), f};
        ++abandoned;
    }
    return abandoned;
}

RunTrace run(const OptimizerConfig& config, const SearchBox& box, const Objective& objective) {
    config.validate();
    if (config.init == InitMethod::sobol && box.dim() > SobolTable::builtin().capacity())
        throw std::invalid_argument("optimizer: box dimension exceeds Sobol table capacity");

    Rng rng(config.seed);
    const LevyParams levy = LevyParams::mantegna(config.levy_beta);
    ScheduleState discovery = config.schedule.discovery();
    ScheduleState step = config.schedule.step();

    RunTrace trace;
    std::vector<Candidate> nests = init_population(config, box, objective, rng);
    trace.evaluations = nests.size();
    trace.best_fitness.reserve(config.iterations);
    std::size_t best = best_index(nests);

    for (std::size_t t = 0; t < config.iterations; ++t) {
        const CuckooParams params = ecsa_params(discovery, step);

        if (config.levy_mode == LevyMode::all_nests) {
            const Candidate leader = nests[best];
            for (auto& nest : nests) nest = levy_update(nest, leader, params.step_size, levy, rng, box, objective);
            trace.evaluations += nests.size();
            const std::size_t abandoned = abandon_nests(nests, params.discovery_rate, rng, box, objective);
            trace.evaluations += abandoned;
            trace.replacements += abandoned;
        } else {
            const std::size_t i = rng.index(nests.size());
            Candidate cuckoo = nests[i];
            cuckoo.fitness = std::numeric_limits<double>::infinity();
            cuckoo = levy_update(cuckoo, nests[best], params.step_size, levy, rng, box, objective);
            trace.evaluations += 1;
            const std::size_t j = rng.index(nests.size());
            if (cuckoo.fitness < nests[j].fitness) {
                nests[j] = std::move(cuckoo);
                ++trace.replacements;
            }
            const std::size_t abandoned = abandon_nests(nests, params.discovery_rate, rng, box, objective);
            trace.evaluations += abandoned;
        }

        best = best_index(nests);
        trace.best_fitness.push_back(nests[best].fitness);
        discovery = advance(discovery);
        step = advance(step);
    }

    trace.best = nests[best];
    return trace;
}

std::string_view to_string(InitMethod m) noexcept {
    return m == InitMethod::random ? "random" : "sobol";
}

} // namespace ecsa
