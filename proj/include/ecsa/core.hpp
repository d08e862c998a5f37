#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace ecsa {

using Vector = std::vector<double>;

/// Axis-aligned search box. Every coordinate satisfies lower[k] < upper[k].
class SearchBox {
public:
    SearchBox(Vector lower, Vector upper);

    /// Same interval [lo, hi] on every one of `dim` axes.
    static SearchBox uniform(std::size_t dim, double lo, double hi);

    std::size_t dim() const noexcept { return lower_.size(); }
    const Vector& lower() const noexcept { return lower_; }
    const Vector& upper() const noexcept { return upper_; }
    double width(std::size_t k) const { return upper_[k] - lower_[k]; }

    bool contains(std::span<const double> x) const noexcept;

    friend bool operator==(const SearchBox&, const SearchBox&) = default;

private:
    Vector lower_;
    Vector upper_;
};

/// A nest: one candidate solution and its cached objective value (lower is better).
struct Candidate {
    Vector position;
    double fitness = std::numeric_limits<double>::infinity();
};

/// Per-coordinate projection onto the box. Throws std::invalid_argument on a
/// dimension mismatch.
Vector clamp(std::span<const double> position, const SearchBox& box);
void clamp_in_place(Vector& position, const SearchBox& box);

/// xoshiro256** seeded through splitmix64. This is the only generator used in
/// the project; a given seed always yields the same stream.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed = 0) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;

    /// 53-bit uniform double in [0, 1).
    double unit() noexcept;

    /// Standard normal via Box-Muller (cosine branch only, one variate per
    /// call, no caching): sqrt(-2 ln(1 - u1)) * cos(2 pi u2).
    double normal() noexcept;

    /// Uniform index in [0, n). Requires n > 0.
    std::size_t index(std::size_t n) noexcept;

    std::uint64_t seed() const noexcept { return seed_; }

private:
    std::uint64_t seed_;
    std::array<std::uint64_t, 4> s_{};
};

/// Uniform real in [lo, hi). Throws std::invalid_argument when lo >= hi.
double uniform(Rng& rng, double lo, double hi);

} // namespace ecsa
