#include "ecsa/core.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ecsa {

SearchBox::SearchBox(Vector lower, Vector upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.empty())
        throw std::invalid_argument("search box must have at least one dimension");
    if (lower_.size() != upper_.size())
        throw std::invalid_argument("search box lower/upper length mismatch");
    for (std::size_t k = 0; k < lower_.size(); ++k) {
        if (!(lower_[k] < upper_[k]))
            throw std::invalid_argument("search box axis " + std::to_string(k) + " has lower >= upper");
    }
}

SearchBox SearchBox::uniform(std::size_t dim, double lo, double hi) {
    return SearchBox(Vector(dim, lo), Vector(dim, hi));
}

bool SearchBox::contains(std::span<const double> x) const noexcept {
    if (x.size() != dim()) return false;
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (!(x[k] >= lower_[k] && x[k] <= upper_[k])) return false;
    }
    return true;
}

Vector clamp(std::span<const double> position, const SearchBox& box) {
    Vector out(position.begin(), position.end());
    clamp_in_place(out, box);
    return out;
}

void clamp_in_place(Vector& position, const SearchBox& box) {
    if (position.size() != box.dim())
        throw std::invalid_argument("clamp: position has " + std::to_string(position.size()) +
                                    " coordinates, box has " + std::to_string(box.dim()));
    for (std::size_t k = 0; k < position.size(); ++k)
        position[k] = std::min(std::max(position[k], box.lower()[k]), box.upper()[k]);
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace

Rng::Rng(std::uint64_t seed) noexcept : seed_(seed) {
    std::uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64(sm);
}

Rng::result_type Rng::operator()() noexcept {
    const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return result;
}

double Rng::unit() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double Rng::normal() noexcept {
    const double u1 = unit();
    const double u2 = unit();
    return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::size_t Rng::index(std::size_t n) noexcept {
    // Lemire multiply-shift without rejection; bias is at most n / 2^64.
    __extension__ using u128 = unsigned __int128;
    const u128 wide = static_cast<u128>((*this)()) * n;
    return static_cast<std::size_t>(wide >> 64);
}

double uniform(Rng& rng, double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("uniform: requires lo < hi");
    const double v = lo + (hi - lo) * rng.unit();
    // Rounding can land exactly on hi for wide ranges.
    return v < hi ? v : std::nextafter(hi, lo);
}

} // namespace ecsa
