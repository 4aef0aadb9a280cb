#include <doctest.h>

#include <cmath>
#include <limits>

#include "pointpair/optimize.hpp"
#include "pointpair/random.hpp"

using namespace pointpair;

TEST_CASE("nelder-mead finds the maximum of a concave quadratic") {
    const std::function<double(std::span<const double>)> f = [](std::span<const double> p) {
        return -(p[0] - 1.0) * (p[0] - 1.0) - 3.0 * (p[1] + 2.0) * (p[1] + 2.0) + 5.0;
    };
    const std::vector<double> step{0.5, 0.5};
    const auto r = nelder_mead_maximize(f, {0.0, 0.0}, step);
    CHECK(r.converged);
    CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.x[1] == doctest::Approx(-2.0).epsilon(1e-6));
    CHECK(r.value == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("nelder-mead handles the Rosenbrock valley") {
    const std::function<double(std::span<const double>)> f = [](std::span<const double> p) {
        return -(100.0 * std::pow(p[1] - p[0] * p[0], 2) + std::pow(1.0 - p[0], 2));
    };
    const std::vector<double> step{0.1, 0.1};
    const auto r = nelder_mead_maximize(f, {-1.2, 1.0}, step);
    CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("nelder-mead respects infeasible regions") {
    // Maximum of -|p|^2 + 2 p0 is at p0 = 1, but only p0 <= 0.5 is allowed.
    const std::function<double(std::span<const double>)> f = [](std::span<const double> p) {
        if (p[0] > 0.5) return -std::numeric_limits<double>::infinity();
        return -(p[0] * p[0] + p[1] * p[1]) + 2.0 * p[0];
    };
    const std::vector<double> step{0.2, 0.2};
    const auto r = nelder_mead_maximize(f, {-1.0, 1.0}, step);
    CHECK(r.x[0] <= 0.5);
    CHECK(r.x[0] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(std::abs(r.x[1]) < 1e-6);
}

TEST_CASE("nelder-mead respects the evaluation cap") {
    int calls = 0;
    const std::function<double(std::span<const double>)> f = [&](std::span<const double> p) {
        ++calls;
        return -std::abs(p[0]) - std::abs(p[1]) - std::abs(p[2]);
    };
    NelderMeadOptions o;
    o.max_evals = 50;
    const std::vector<double> step{1.0, 1.0, 1.0};
    const auto r = nelder_mead_maximize(f, {3.0, 3.0, 3.0}, step, o);
    CHECK(r.evaluations <= 50);
    CHECK(calls == r.evaluations);
}

TEST_CASE("rng streams are reproducible and independent") {
    Rng a(5, 1), b(5, 1), c(5, 2);
    bool differs = false;
    for (int i = 0; i < 100; ++i) {
        const double u = a.uniform();
        CHECK(u == b.uniform());
        CHECK(u > 0.0);
        CHECK(u < 1.0);
        differs |= u != c.uniform();
    }
    CHECK(differs);
    std::vector<double> v(4);
    a.unit_vector(v);
    double s = 0.0;
    for (double x : v) s += x * x;
    CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
    std::vector<double> one(1);
    a.unit_vector(one);
    CHECK(std::abs(one[0]) == 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double l = a.log_uniform(1e-3, 1e3);
        CHECK(l >= 1e-3);
        CHECK(l <= 1e3);
    }
}
