#include "ecsa/sobol.hpp"

#include <bit>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace ecsa {

extern const char* const kJoeKuoTableText;

SobolTable SobolTable::parse(std::istream& in) {
    SobolTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || !std::isdigit(static_cast<unsigned char>(line[first]))) continue;

        auto fail = [&](const std::string& what) {
            return std::runtime_error("sobol table line " + std::to_string(line_no) + ": " + what);
        };

        std::istringstream fields(line);
        std::uint64_t d = 0, s = 0, a = 0;
        if (!(fields >> d >> s >> a)) throw fail("expected 'd s a m_1 ... m_s'");
        if (d == 1 && table.entries_.empty()) continue; // explicit van der Corput row
        if (d != table.entries_.size() + 2)
            throw fail("expected dimension " + std::to_string(table.entries_.size() + 2) + ", got " +
                       std::to_string(d));
        if (s == 0 || s >= kBits) throw fail("degree out of range");
        if (s > 1 && a >= (1ULL << (s - 1))) throw fail("coefficient integer too large for degree");

        Entry entry;
        entry.degree = static_cast<unsigned>(s);
        entry.coefficients = static_cast<std::uint32_t>(a);
        for (std::uint64_t k = 1; k <= s; ++k) {
            std::uint64_t m = 0;
            if (!(fields >> m)) throw fail("expected " + std::to_string(s) + " direction integers");
            if (m % 2 == 0 || m >= (1ULL << k))
                throw fail("m_" + std::to_string(k) + " must be odd and below 2^" + std::to_string(k));
            entry.m.push_back(static_cast<std::uint32_t>(m));
        }
        std::string extra;
        if (fields >> extra) throw fail("trailing fields");
        table.entries_.push_back(std::move(entry));
    }
    return table;
}

SobolTable SobolTable::parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse(in);
}

SobolTable SobolTable::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open sobol table " + path.string());
    return parse(in);
}

const SobolTable& SobolTable::builtin() {
    static const SobolTable table = parse(std::string_view(kJoeKuoTableText));
    return table;
}

SobolTable::Directions SobolTable::directions(std::size_t d) const {
    if (d >= capacity())
        throw std::out_of_range("sobol dimension " + std::to_string(d + 1) + " exceeds table capacity " +
                                std::to_string(capacity()));
    Directions v{};
    if (d == 0) {
        for (unsigned k = 0; k < kBits; ++k) v[k] = 1u << (kBits - 1 - k);
        return v;
    }
    const Entry& e = entries_[d - 1];
    const unsigned s = e.degree;
    for (unsigned k = 0; k < s; ++k) v[k] = e.m[k] << (kBits - 1 - k);
    for (unsigned k = s; k < kBits; ++k) {
        std::uint32_t value = v[k - s] ^ (v[k - s] >> s);
        for (unsigned j = 1; j < s; ++j) {
            if ((e.coefficients >> (s - 1 - j)) & 1u) value ^= v[k - j];
        }
        v[k] = value;
    }
    return v;
}

SobolGenerator::SobolGenerator(std::size_t dim, std::uint64_t skip, const SobolTable& table) {
    if (dim == 0) throw std::invalid_argument("sobol: dimension must be positive");
    if (dim > table.capacity())
        throw std::invalid_argument("sobol: dimension " + std::to_string(dim) + " exceeds table capacity " +
                                    std::to_string(table.capacity()));
    if (skip > 0xFFFFFFFFULL) throw std::invalid_argument("sobol: skip beyond 32-bit index range");
    directions_.reserve(dim);
    for (std::size_t d = 0; d < dim; ++d) directions_.push_back(table.directions(d));
    state_.assign(dim, 0);

    // Point n is the XOR of the directions selected by the bits of gray(n).
    const std::uint64_t gray = skip ^ (skip >> 1);
    for (unsigned k = 0; k < SobolTable::kBits; ++k) {
        if ((gray >> k) & 1u) {
            for (std::size_t d = 0; d < dim; ++d) state_[d] ^= directions_[d][k];
        }
    }
    index_ = skip;
}

void SobolGenerator::advance() {
    const auto bit = static_cast<unsigned>(std::countr_one(index_));
    ++index_;
    if (bit >= SobolTable::kBits) return; // index_ is now 2^32; the next call throws
    for (std::size_t d = 0; d < state_.size(); ++d) state_[d] ^= directions_[d][bit];
}

std::vector<std::uint32_t> SobolGenerator::next_raw() {
    if (index_ > 0xFFFFFFFFULL) throw std::overflow_error("sobol: 32-bit point index exhausted");
    std::vector<std::uint32_t> out = state_;
    advance();
    return out;
}

void SobolGenerator::next(std::span<double> out) {
    if (out.size() != dim()) throw std::invalid_argument("sobol: output span has wrong dimension");
    if (index_ > 0xFFFFFFFFULL) throw std::overflow_error("sobol: 32-bit point index exhausted");
    for (std::size_t d = 0; d < state_.size(); ++d) out[d] = static_cast<double>(state_[d]) * 0x1.0p-32;
    advance();
}

Vector SobolGenerator::next() {
    Vector out(dim());
    next(out);
    return out;
}

std::vector<Vector> sobol_population(std::size_t count, const SearchBox& box) {
    if (count == 0) throw std::invalid_argument("sobol_population: count must be positive");
    SobolGenerator gen(box.dim());
    std::vector<Vector> points;
    points.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Vector p = gen.next();
        for (std::size_t k = 0; k < p.size(); ++k) p[k] = box.lower()[k] + p[k] * box.width(k);
        points.push_back(std::move(p));
    }
    return points;
}

} // namespace ecsa
