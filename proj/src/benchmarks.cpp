#include "ecsa/benchmarks.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ecsa::bench {

namespace {

constexpr double kPi = std::numbers::pi;

double sq(double v) { return v * v; }

double sphere(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

double schwefel_222(std::span<const double> x) {
    double sum = 0.0, prod = 1.0;
    for (double v : x) {
        sum += std::abs(v);
        prod *= std::abs(v);
    }
    return sum + prod;
}

double schwefel_12(std::span<const double> x) {
    double s = 0.0, prefix = 0.0;
    for (double v : x) {
        prefix += v;
        s += prefix * prefix;
    }
    return s;
}

double schwefel_221(std::span<const double> x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
}

double rosenbrock(std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) s += 100.0 * sq(x[i + 1] - x[i] * x[i]) + sq(x[i] - 1.0);
    return s;
}

double step(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += sq(std::floor(v + 0.5));
    return s;
}

double quartic_noise(std::span<const double> x, Rng& rng) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += static_cast<double>(i + 1) * sq(sq(x[i]));
    return s + rng.unit();
}

double rastrigin(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v - 10.0 * std::cos(2.0 * kPi * v) + 10.0;
    return s;
}

double ackley(std::span<const double> x) {
    const double n = static_cast<double>(x.size());
    double sq_sum = 0.0, cos_sum = 0.0;
    for (double v : x) {
        sq_sum += v * v;
        cos_sum += std::cos(2.0 * kPi * v);
    }
    return -20.0 * std::exp(-0.2 * std::sqrt(sq_sum / n)) - std::exp(cos_sum / n) + 20.0 + std::numbers::e;
}

double griewank(std::span<const double> x) {
    double s = 0.0, p = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        s += x[i] * x[i];
        p *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
    }
    return s / 4000.0 - p + 1.0;
}

double schwefel_226(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s -= v * std::sin(std::sqrt(std::abs(v)));
    return s;
}

double penalized_1(std::span<const double> x) {
    const std::size_t n = x.size();
    auto y = [&](std::size_t i) { return 1.0 + (x[i] + 1.0) / 4.0; };
    double s = 10.0 * sq(std::sin(kPi * y(0)));
    for (std::size_t i = 0; i + 1 < n; ++i) s += sq(y(i) - 1.0) * (1.0 + 10.0 * sq(std::sin(kPi * y(i + 1))));
    s += sq(y(n - 1) - 1.0);
    double pen = 0.0;
    for (double v : x) pen += penalty(v, 10.0, 100.0, 4.0);
    return kPi / static_cast<double>(n) * s + pen;
}

double penalized_2(std::span<const double> x) {
    const std::size_t n = x.size();
    double s = sq(std::sin(3.0 * kPi * x[0]));
    for (std::size_t i = 0; i + 1 < n; ++i) s += sq(x[i] - 1.0) * (1.0 + sq(std::sin(3.0 * kPi * x[i + 1])));
    s += sq(x[n - 1] - 1.0) * (1.0 + sq(std::sin(2.0 * kPi * x[n - 1])));
    double pen = 0.0;
    for (double v : x) pen += penalty(v, 5.0, 100.0, 4.0);
    return 0.1 * s + pen;
}

} // namespace

double penalty(double x, double a, double k, double m) {
    if (x > a) return k * std::pow(x - a, m);
    if (x < -a) return k * std::pow(-x - a, m);
    return 0.0;
}

double evaluate_unchecked(FunctionId id, std::span<const double> x, Rng& rng) {
    switch (id) {
    case FunctionId::F1: return sphere(x);
    case FunctionId::F2: return schwefel_222(x);
    case FunctionId::F3: return schwefel_12(x);
    case FunctionId::F4: return schwefel_221(x);
    case FunctionId::F5: return rosenbrock(x);
    case FunctionId::F6: return step(x);
    case FunctionId::F7: return quartic_noise(x, rng);
    case FunctionId::F8: return rastrigin(x);
    case FunctionId::F9: return ackley(x);
    case FunctionId::F10: return griewank(x);
    case FunctionId::F11: return schwefel_226(x);
    case FunctionId::F12: return penalized_1(x);
    case FunctionId::F13: return penalized_2(x);
    }
    throw std::invalid_argument("unknown benchmark function");
}

double evaluate(const ObjectiveSpec& spec, std::span<const double> x, Rng& rng) {
    if (x.size() != spec.dim)
        throw std::invalid_argument(label(spec.id) + ": expected " + std::to_string(spec.dim) + " coordinates, got " +
                                    std::to_string(x.size()));
    if (!spec.box.contains(x)) throw std::out_of_range(label(spec.id) + ": point outside the search box");
    return evaluate_unchecked(spec.id, x, rng);
}

Objective objective(const ObjectiveSpec& spec, bool checked) {
    if (checked) return [spec](std::span<const double> x, Rng& rng) { return evaluate(spec, x, rng); };
    return [id = spec.id](std::span<const double> x, Rng& rng) { return evaluate_unchecked(id, x, rng); };
}

ObjectiveSpec make_spec(FunctionId id, std::size_t dim) {
    if (dim == 0) throw std::invalid_argument("benchmark dimension must be positive");
    const double n = static_cast<double>(dim);
    auto spec = [&](std::string name, double bound, double opt_value, std::optional<double> opt_coord,
                    bool unimodal) {
        std::optional<Vector> optimizer;
        if (opt_coord) optimizer = Vector(dim, *opt_coord);
        return ObjectiveSpec{id, std::move(name), dim, SearchBox::uniform(dim, -bound, bound), opt_value,
                             std::move(optimizer), id == FunctionId::F7, unimodal};
    };
    switch (id) {
    case FunctionId::F1: return spec("Sphere", 100.0, 0.0, 0.0, true);
    case FunctionId::F2: return spec("Schwefel 2.22", 10.0, 0.0, 0.0, true);
    case FunctionId::F3: return spec("Schwefel 1.20", 100.0, 0.0, 0.0, true);
    case FunctionId::F4: return spec("Schwefel 2.21", 100.0, 0.0, 0.0, true);
    case FunctionId::F5: return spec("Rosenbrock", 30.0, 0.0, 1.0, true);
    case FunctionId::F6: return spec("Step", 100.0, 0.0, 0.0, true);
    case FunctionId::F7: return spec("Quartic Noise", 1.28, 0.0, 0.0, true);
    case FunctionId::F8: return spec("Rastrigin", 5.12, 0.0, 0.0, false);
    case FunctionId::F9: return spec("Ackley", 32.0, 0.0, 0.0, false);
    case FunctionId::F10: return spec("Griewank", 600.0, 0.0, 0.0, false);
    case FunctionId::F11: return spec("Schwefel", 500.0, -418.9829 * n, 420.9687, false);
    case FunctionId::F12: return spec("Generalized Penalized 1", 50.0, 0.0, -1.0, false);
    case FunctionId::F13: return spec("Generalized Penalized 2", 50.0, 0.0, 1.0, false);
    }
    throw std::invalid_argument("unknown benchmark function");
}

std::vector<ObjectiveSpec> suite(std::size_t dim) {
    std::vector<ObjectiveSpec> out;
    out.reserve(kSuiteSize);
    for (int i = 1; i <= static_cast<int>(kSuiteSize); ++i) out.push_back(make_spec(static_cast<FunctionId>(i), dim));
    return out;
}

std::string label(FunctionId id) {
    return "F" + std::to_string(static_cast<int>(id));
}

std::optional<FunctionId> parse_id(std::string_view text) {
    if (!text.empty() && (text.front() == 'F' || text.front() == 'f')) text.remove_prefix(1);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
    if (value < 1 || value > static_cast<int>(kSuiteSize)) return std::nullopt;
    return static_cast<FunctionId>(value);
}

} // namespace ecsa::bench
