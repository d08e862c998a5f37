#pragma once

#include "ecsa/core.hpp"

namespace ecsa {

/// Mantegna scale for stability index beta in (0, 2]:
///   sigma_u = [G(1+b) sin(pi b / 2) / (G((1+b)/2) b 2^((b-1)/2))]^(1/b)
double mantegna_sigma(double beta);

struct LevyParams {
    double beta = 1.5;
    double sigma_u = 0.0;

    /// Parameters with sigma_u from mantegna_sigma(beta).
    static LevyParams mantegna(double beta = 1.5);
};

/// `dim` i.i.d. Mantegna draws u / |v|^(1/beta), u ~ N(0, sigma_u^2), v ~ N(0, 1).
/// For each coordinate u's normal is drawn before v's.
Vector levy_step(const LevyParams& params, Rng& rng, std::size_t dim);
void levy_step(const LevyParams& params, Rng& rng, std::span<double> out);

} // namespace ecsa
