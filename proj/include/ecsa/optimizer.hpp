#pragma once

#include "ecsa/core.hpp"
#include "ecsa/levy.hpp"
#include "ecsa/schedule.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace ecsa {

/// Black-box objective. The generator is the run's own stream; objectives
/// that need noise draw from it so a run stays reproducible from its seed.
using Objective = std::function<double(std::span<const double>, Rng&)>;

enum class InitMethod { random, sobol };

enum class LevyMode {
    all_nests,     // every nest receives a Levy proposal each iteration
    single_cuckoo, // one cuckoo per iteration replaces a random nest if better
};

struct OptimizerConfig {
    std::size_t population = 50;
    std::size_t iterations = 500;
    ScheduleConfig schedule;
    InitMethod init = InitMethod::sobol;
    LevyMode levy_mode = LevyMode::all_nests;
    double levy_beta = 1.5;
    std::uint64_t seed = 0;

    /// Fixed P_a = 0.25, alpha = 0.01, uniform random initialization.
    static OptimizerConfig csa();
    /// P_a annealed 0.5 -> 0.25, alpha annealed 0.05 -> 0.01 (T_0 = 100,
    /// T_mult = 2), Sobol initialization.
    static OptimizerConfig ecsa();

    void validate() const;
};

struct RunTrace {
    Vector best_fitness;         // one entry per iteration, after that iteration
    Candidate best;
    std::uint64_t evaluations = 0;
    std::uint64_t replacements = 0; // abandoned nests (all_nests) or accepted cuckoos (single_cuckoo)
};

/// Initial nests, evaluated: uniform random for InitMethod::random, Sobol
/// points mapped onto the box for InitMethod::sobol.
std::vector<Candidate> init_population(const OptimizerConfig& config, const SearchBox& box,
                                       const Objective& objective, Rng& rng);

/// Index of the lowest-fitness nest (first one on ties).
std::size_t best_index(std::span<const Candidate> population);

/// Levy move of `nest` relative to `best`:
///   x' = clamp(x + alpha * step .* (x - best))
/// or x' = clamp(x + alpha * step) when x coincides with best. The proposal is
/// evaluated once and kept when it is no worse than the nest.
Candidate levy_update(const Candidate& nest, const Candidate& best, double alpha, const LevyParams& levy,
                      Rng& rng, const SearchBox& box, const Objective& objective);

/// Each nest other than the current best is abandoned with probability
/// `discovery_rate` and rebuilt as clamp(x + r (x_p - x_q)) with r ~ U[0,1) and
/// p != q drawn from the population as it stood on entry. Returns the number of
/// abandoned nests (one evaluation each).
std::size_t abandon_nests(std::vector<Candidate>& population, double discovery_rate, Rng& rng,
                          const SearchBox& box, const Objective& objective);

RunTrace run(const OptimizerConfig& config, const SearchBox& box, const Objective& objective);

std::string_view to_string(InitMethod m) noexcept;

} // namespace ecsa
