#include "ecsa/levy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ecsa {

double mantegna_sigma(double beta) {
    if (!(beta > 0.0 && beta <= 2.0)) throw std::invalid_argument("mantegna_sigma: beta must lie in (0, 2]");
    const double num = std::tgamma(1.0 + beta) * std::sin(std::numbers::pi * beta / 2.0);
    const double den = std::tgamma((1.0 + beta) / 2.0) * beta * std::pow(2.0, (beta - 1.0) / 2.0);
    return std::pow(num / den, 1.0 / beta);
}

LevyParams LevyParams::mantegna(double beta) {
    return LevyParams{beta, mantegna_sigma(beta)};
}

void levy_step(const LevyParams& params, Rng& rng, std::span<double> out) {
    if (!(params.beta > 0.0 && params.beta <= 2.0)) throw std::invalid_argument("levy_step: beta must lie in (0, 2]");
    if (!(params.sigma_u > 0.0)) throw std::invalid_argument("levy_step: sigma_u must be positive");
    const double inv_beta = 1.0 / params.beta;
    for (double& s : out) {
        const double u = rng.normal() * params.sigma_u;
        const double v = rng.normal();
        s = u / std::pow(std::abs(v), inv_beta);
    }
}

Vector levy_step(const LevyParams& params, Rng& rng, std::size_t dim) {
    Vector out(dim);
    levy_step(params, rng, out);
    return out;
}

} // namespace ecsa
