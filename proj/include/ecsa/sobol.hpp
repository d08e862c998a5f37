#pragma once

#include "ecsa/core.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace ecsa {

/// Primitive polynomials and initial direction integers, one entry per
/// dimension. Text format, one line per dimension:
///
///     d s a m_1 ... m_s
///
/// with d the 1-based dimension index, s the polynomial degree, a the interior
/// polynomial coefficients packed as an integer and m_k odd with m_k < 2^k.
/// Dimension 1 (van der Corput, all m_k = 1) is implicit and may be omitted.
/// Lines that do not start with a digit are ignored, so the header row of the
/// published Joe-Kuo files parses as-is.
class SobolTable {
public:
    static constexpr unsigned kBits = 32;
    using Directions = std::array<std::uint32_t, kBits>;

    /// Embedded Joe-Kuo (new-joe-kuo-6) numbers for the first 1024 dimensions.
    static const SobolTable& builtin();

    static SobolTable parse(std::istream& in);
    static SobolTable parse(std::string_view text);
    static SobolTable load(const std::filesystem::path& path);

    /// Number of dimensions the table supports.
    std::size_t capacity() const noexcept { return entries_.size() + 1; }

    /// Direction numbers v_1..v_32 of dimension `d` (0-based), scaled so that
    /// v_k = m_k * 2^(32-k).
    Directions directions(std::size_t d) const;

private:
    struct Entry {
        unsigned degree = 0;
        std::uint32_t coefficients = 0;
        std::vector<std::uint32_t> m;
    };
    std::vector<Entry> entries_; // dimensions 2..capacity()
};

/// Gray-code (Antonov-Saleev) Sobol generator. Each step XORs a single
/// direction number, chosen by the lowest zero bit of the point counter.
///
/// By default the all-zeros point of index 0 is skipped, so the first call to
/// next() returns the point of index 1. Indices are limited to 2^32 - 1;
/// requesting a point past that throws std::overflow_error.
class SobolGenerator {
public:
    explicit SobolGenerator(std::size_t dim, std::uint64_t skip = 1,
                            const SobolTable& table = SobolTable::builtin());

    std::size_t dim() const noexcept { return directions_.size(); }

    /// Index of the point the next call to next() will return.
    std::uint64_t index() const noexcept { return index_; }

    Vector next();
    void next(std::span<double> out);

    /// Same as next() but as raw 32-bit fractions.
    std::vector<std::uint32_t> next_raw();

private:
    void advance();

    std::vector<SobolTable::Directions> directions_;
    std::vector<std::uint32_t> state_;
    std::uint64_t index_ = 0;
};

/// `count` Sobol points (index 1 onwards) mapped affinely onto `box`.
std::vector<Vector> sobol_population(std::size_t count, const SearchBox& box);

} // namespace ecsa
