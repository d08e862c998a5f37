#include "doctest.h"

#include "ecsa/sobol.hpp"

#include <array>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

using namespace ecsa;

TEST_CASE("first points") {
    CHECK(SobolGenerator(1).next() == Vector{0.5});
    CHECK(SobolGenerator(2).next() == Vector{0.5, 0.5});
    CHECK_THROWS_AS(SobolGenerator(0), std::invalid_argument);
    CHECK_THROWS_AS(SobolGenerator(SobolTable::builtin().capacity() + 1), std::invalid_argument);
    CHECK_NOTHROW(SobolGenerator(SobolTable::builtin().capacity()));
}

TEST_CASE("van der Corput prefix by hand XOR") {
    // Dimension 1 uses v_k = 2^(32-k). Gray code g(n) = n ^ (n >> 1):
    // g(1)=1 -> v1, g(2)=3 -> v1^v2, g(3)=2 -> v2, g(4)=6 -> v2^v3.
    const std::uint32_t v1 = 1u << 31, v2 = 1u << 30, v3 = 1u << 29;
    const std::array<std::uint32_t, 4> expected{v1, v1 ^ v2, v2, v2 ^ v3};
    SobolGenerator gen(1);
    for (std::uint32_t e : expected) CHECK(gen.next_raw().at(0) == e);

    SobolGenerator again(1);
    for (double e : {0.5, 0.75, 0.25, 0.375}) CHECK(again.next().at(0) == e);
}

TEST_CASE("matches reference Joe-Kuo points") {
    // Unscrambled points produced by an unrelated Sobol implementation.
    const std::vector<Vector> expected{
        {0.5, 0.5, 0.5, 0.5, 0.5},           {0.75, 0.25, 0.25, 0.25, 0.75},
        {0.25, 0.75, 0.75, 0.75, 0.25},      {0.375, 0.375, 0.625, 0.875, 0.375},
        {0.875, 0.875, 0.125, 0.375, 0.875}, {0.625, 0.125, 0.875, 0.625, 0.625},
        {0.125, 0.625, 0.375, 0.125, 0.125}, {0.1875, 0.3125, 0.9375, 0.4375, 0.5625},
    };
    SobolGenerator gen(5);
    for (const auto& e : expected) CHECK(gen.next() == e);

    SobolGenerator wide(1024);
    Vector p;
    for (int i = 1; i <= 100; ++i) p = wide.next();
    CHECK(p[0] == 0.4140625);
    CHECK(p[1] == 0.2578125);
    CHECK(p[14] == 0.3203125);
    CHECK(p[549] == 0.8203125);
    CHECK(p[1023] == 0.9453125);
    for (int i = 101; i <= 1000; ++i) p = wide.next();
    CHECK(p[0] == 0.2197265625);
    CHECK(p[1] == 0.0966796875);
    CHECK(p[14] == 0.1435546875);
    CHECK(p[549] == 0.2216796875);
    CHECK(p[1023] == 0.7138671875);
}

TEST_CASE("gray order visits the same points as natural order") {
    // Natural-order construction: x_n = XOR of v_k over the set bits of n.
    const std::size_t dim = 7;
    std::vector<SobolTable::Directions> dirs;
    for (std::size_t d = 0; d < dim; ++d) dirs.push_back(SobolTable::builtin().directions(d));
    const std::uint32_t count = 1u << 10;
    std::set<std::vector<std::uint32_t>> natural, gray;
    for (std::uint32_t n = 0; n < count; ++n) {
        std::vector<std::uint32_t> x(dim, 0);
        for (std::size_t d = 0; d < dim; ++d)
            for (unsigned k = 0; k < 32; ++k)
                if (n >> k & 1u) x[d] ^= dirs[d][k];
        natural.insert(x);
    }
    SobolGenerator gen(dim, 0);
    for (std::uint32_t n = 0; n < count; ++n) gray.insert(gen.next_raw());
    CHECK(natural == gray);
}

TEST_CASE("dyadic intervals of the first 2^k points") {
    for (unsigned k = 1; k <= 6; ++k) {
        const std::size_t n = std::size_t{1} << k;
        SobolGenerator gen(4, 0);
        std::vector<std::vector<int>> hits(4, std::vector<int>(n, 0));
        for (std::size_t i = 0; i < n; ++i) {
            const Vector p = gen.next();
            for (std::size_t d = 0; d < 4; ++d) ++hits[d][static_cast<std::size_t>(p[d] * n)];
        }
        for (const auto& row : hits)
            for (int h : row) CHECK(h == 1);
    }
}

TEST_CASE("4x4 net over the first 256 two-dimensional points") {
    SobolGenerator gen(2, 0);
    int cells[4][4] = {};
    for (int i = 0; i < 256; ++i) {
        const Vector p = gen.next();
        ++cells[static_cast<int>(p[0] * 4)][static_cast<int>(p[1] * 4)];
    }
    for (auto& row : cells)
        for (int c : row) CHECK(c == 16);
}

TEST_CASE("half balance over 2^k points") {
    SobolGenerator gen(20, 0);
    std::vector<int> low(20, 0);
    for (int i = 0; i < 1024; ++i) {
        const Vector p = gen.next();
        for (std::size_t d = 0; d < 20; ++d) low[d] += p[d] < 0.5;
    }
    for (int c : low) CHECK(c == 512);
}

TEST_CASE("points stay in the unit cube and are distinct") {
    SobolGenerator gen(15);
    std::set<Vector> seen;
    for (int i = 0; i < 50; ++i) {
        const Vector p = gen.next();
        for (double v : p) {
            CHECK(v >= 0.0);
            CHECK(v < 1.0);
        }
        seen.insert(p);
    }
    CHECK(seen.size() == 50);
}

TEST_CASE("skip and index bookkeeping") {
    SobolGenerator a(3, 0);
    CHECK(a.index() == 0);
    CHECK(a.next() == Vector{0.0, 0.0, 0.0});
    a.next();
    a.next();
    SobolGenerator b(3, 3);
    CHECK(b.index() == 3);
    CHECK(a.next() == b.next());
    CHECK(a.index() == 4);
}

TEST_CASE("index overflow is reported") {
    SobolGenerator gen(2, 0xFFFFFFFFull);
    CHECK_NOTHROW(gen.next());
    CHECK_THROWS_AS(gen.next(), std::overflow_error);
    CHECK_THROWS_AS(SobolGenerator(2, 0x100000000ull), std::invalid_argument);
}

TEST_CASE("table parsing") {
    const auto t = SobolTable::parse(std::string_view("d s a m_i\n2 1 0 1\n3 2 1 1 3\n"));
    CHECK(t.capacity() == 3);
    const auto d2 = t.directions(1);
    CHECK(d2[0] == 1u << 31);
    CHECK(d2[1] == (1u << 31 | 1u << 30)); // v2 = v1 ^ (v1 >> 1)
    CHECK(t.directions(2) == SobolTable::builtin().directions(2));

    CHECK_NOTHROW(SobolTable::parse(std::string_view("1 0 0\n2 1 0 1\n")));
    CHECK_THROWS(SobolTable::parse(std::string_view("2 1 0 2\n")));       // even m
    CHECK_THROWS(SobolTable::parse(std::string_view("2 1 0 3\n")));       // m >= 2^k
    CHECK_THROWS(SobolTable::parse(std::string_view("3 1 0 1\n")));       // gap
    CHECK_THROWS(SobolTable::parse(std::string_view("2 2 0 1\n")));       // too few m
    CHECK_THROWS(SobolTable::load("/nonexistent/table.txt"));
    CHECK_THROWS_AS(t.directions(3), std::out_of_range);
}

TEST_CASE("population maps affinely onto the box") {
    const auto unit = sobol_population(8, SearchBox::uniform(3, 0.0, 1.0));
    SobolGenerator gen(3);
    for (const auto& p : unit) CHECK(p == gen.next());

    const auto mid = sobol_population(1, SearchBox({-4.0, 10.0}, {2.0, 20.0}));
    CHECK(mid.at(0) == Vector{-1.0, 15.0});
    CHECK_THROWS_AS(sobol_population(0, SearchBox::uniform(2, 0, 1)), std::invalid_argument);
}
