#pragma once

#include "ecsa/core.hpp"
#include "ecsa/optimizer.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ecsa::bench {

/// The classical F1-F13 suite: seven unimodal functions followed by six
/// multimodal ones.
enum class FunctionId {
    F1 = 1, // Sphere
    F2,     // Schwefel 2.22
    F3,     // Schwefel 1.2
    F4,     // Schwefel 2.21
    F5,     // Rosenbrock
    F6,     // Step
    F7,     // Quartic with noise
    F8,     // Rastrigin
    F9,     // Ackley
    F10,    // Griewank
    F11,    // Schwefel 2.26
    F12,    // Generalized penalized 1
    F13,    // Generalized penalized 2
};

inline constexpr std::size_t kSuiteSize = 13;
inline constexpr std::size_t kDefaultDim = 15;

struct ObjectiveSpec {
    FunctionId id;
    std::string name;
    std::size_t dim;
    SearchBox box;
    double optimum_value;
    std::optional<Vector> optimizer; // global minimizer, when known in closed form
    bool stochastic = false;
    bool unimodal = false;
};

ObjectiveSpec make_spec(FunctionId id, std::size_t dim = kDefaultDim);
std::vector<ObjectiveSpec> suite(std::size_t dim = kDefaultDim);

/// Evaluates without any argument checks. Only F7 touches `rng` (one uniform
/// draw per call).
double evaluate_unchecked(FunctionId id, std::span<const double> x, Rng& rng);

/// Strict evaluation: throws std::invalid_argument on a dimension mismatch and
/// std::out_of_range when x lies outside the function's box.
double evaluate(const ObjectiveSpec& spec, std::span<const double> x, Rng& rng);

/// Objective for the optimizer; strict unless `checked` is false.
Objective objective(const ObjectiveSpec& spec, bool checked = true);

std::string label(FunctionId id);                   // "F7"
std::optional<FunctionId> parse_id(std::string_view text); // "F7", "f7" or "7"

/// Boundary penalty u(x, a, k, m) of the penalized functions.
double penalty(double x, double a, double k, double m);

} // namespace ecsa::bench
