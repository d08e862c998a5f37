#include "doctest.h"

#include "ecsa/benchmarks.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

using namespace ecsa;
using namespace ecsa::bench;

namespace {
double eval(FunctionId id, const Vector& x) {
    Rng rng(0);
    return evaluate(make_spec(id, x.size()), x, rng);
}
} // namespace

TEST_CASE("suite layout") {
    const auto s = suite();
    REQUIRE(s.size() == 13);
    const double bounds[13] = {100, 10, 100, 100, 30, 100, 1.28, 5.12, 32, 600, 500, 50, 50};
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(static_cast<std::size_t>(s[i].id) == i + 1);
        CHECK(s[i].dim == 15);
        CHECK(s[i].box == SearchBox::uniform(15, -bounds[i], bounds[i]));
        CHECK(s[i].unimodal == (i < 7));
        CHECK(s[i].stochastic == (i == 6));
    }
    CHECK(make_spec(FunctionId::F11).optimum_value == doctest::Approx(-418.9829 * 15).epsilon(1e-12));
    CHECK(make_spec(FunctionId::F11, 4).optimum_value == doctest::Approx(-418.9829 * 4).epsilon(1e-12));
}

TEST_CASE("known values") {
    CHECK(eval(FunctionId::F1, Vector(15, 0.0)) == 0.0);
    CHECK(eval(FunctionId::F5, Vector(15, 1.0)) == 0.0);
    CHECK(eval(FunctionId::F6, Vector(15, 0.4)) == 0.0);
    CHECK(eval(FunctionId::F11, Vector(15, 420.9687)) == doctest::Approx(-6284.74).epsilon(1e-6));
    CHECK(eval(FunctionId::F9, Vector(15, 0.0)) <= 1e-14);
    CHECK(eval(FunctionId::F12, Vector(15, -1.0)) <= 1e-9);
    CHECK(eval(FunctionId::F13, Vector(15, 1.0)) <= 1e-9);
}

TEST_CASE("optimizers reach their optimum values") {
    for (const auto& spec : suite()) {
        if (spec.stochastic || !spec.optimizer) continue;
        Rng rng(0);
        const double f = evaluate(spec, *spec.optimizer, rng);
        if (spec.id == FunctionId::F11)
            CHECK(std::fabs(f - spec.optimum_value) < 0.01);
        else
            CHECK(std::fabs(f - spec.optimum_value) <= 1e-9);
    }
}

TEST_CASE("optimizers are local minima along every axis") {
    for (const auto& spec : suite()) {
        if (spec.stochastic || !spec.optimizer) continue;
        Rng rng(0);
        const double f0 = evaluate(spec, *spec.optimizer, rng);
        for (std::size_t k = 0; k < spec.dim; ++k) {
            Vector x = *spec.optimizer;
            x[k] += 1e-3;
            CHECK_MESSAGE(f0 <= evaluate(spec, x, rng), label(spec.id) << " axis " << k);
        }
    }
}

TEST_CASE("matches the reference implementation at random points") {
    Rng rng(2718);
    for (const auto& spec : suite()) {
        const int f = static_cast<int>(spec.id);
        for (int i = 0; i < 100; ++i) {
            Vector x(spec.dim);
            for (std::size_t k = 0; k < x.size(); ++k) x[k] = uniform(rng, spec.box.lower()[k], spec.box.upper()[k]);
            Rng eval_rng(i);
            double got = evaluate(spec, x, eval_rng);
            if (spec.stochastic) {
                Rng noise(i);
                got -= noise.unit();
            }
            const double want = oracle::by_index(f, x);
            CHECK_MESSAGE(std::fabs(got - want) <= 1e-12 * std::max(1.0, std::fabs(want)), label(spec.id));
        }
    }
}

TEST_CASE("quartic noise") {
    const auto spec = make_spec(FunctionId::F7);
    Rng rng(4);
    for (int i = 0; i < 1000; ++i) {
        const double f = evaluate(spec, Vector(15, 0.0), rng);
        CHECK(f >= 0.0);
        CHECK(f < 1.0);
    }
    Rng a(5), b(5);
    CHECK(evaluate(spec, Vector(15, 0.1), a) == evaluate(spec, Vector(15, 0.1), b));
}

TEST_CASE("strict evaluation") {
    const auto spec = make_spec(FunctionId::F8);
    Rng rng(0);
    CHECK_THROWS_AS(evaluate(spec, Vector(14, 0.0), rng), std::invalid_argument);
    Vector x(15, 0.0);
    x[3] = 5.2;
    CHECK_THROWS_AS(evaluate(spec, x, rng), std::out_of_range);
    CHECK_THROWS_AS(objective(spec)(x, rng), std::out_of_range);
    CHECK_NOTHROW(objective(spec, false)(x, rng));
}

TEST_CASE("labels and penalty") {
    CHECK(label(FunctionId::F7) == "F7");
    CHECK(parse_id("F7") == FunctionId::F7);
    CHECK(parse_id("f13") == FunctionId::F13);
    CHECK(parse_id("1") == FunctionId::F1);
    CHECK_FALSE(parse_id("F14").has_value());
    CHECK_FALSE(parse_id("F0").has_value());
    CHECK_FALSE(parse_id("sphere").has_value());
    CHECK(penalty(12.0, 10, 100, 4) == 100.0 * 16.0);
    CHECK(penalty(-12.0, 10, 100, 4) == 100.0 * 16.0);
    CHECK(penalty(3.0, 5, 100, 4) == 0.0);
}
