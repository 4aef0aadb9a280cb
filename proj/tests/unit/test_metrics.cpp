#include <doctest.h>

#include <cmath>

#include "pointpair/error.hpp"
#include "pointpair/metrics.hpp"
#include "pointpair/random.hpp"

using namespace pointpair;

namespace {

// Hand-written forms used as the test-side reference.
double ref_pair(double dist, double alpha, double dx, double dy) {
    return dist / std::sqrt(dist * dist + alpha * dx * dy);
}

} // namespace

TEST_CASE("point pair function by hand") {
    const auto iv = Domain::interval(-1, 1);
    CHECK(point_pair(iv, Point{-1.0 / 3}, Point{1.0 / 3}) == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-15));
    CHECK(point_pair(iv, Point{0.2}, Point{0.2}) == 0.0);
    CHECK(point_pair(Domain::half_space(2), Point{0.0, 1.0}, Point{0.0, 2.0}) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(point_pair(Domain::unit_ball(2), Point{0.5, 0.0}, Point{-0.5, 0.0}) ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK_THROWS_AS(point_pair(iv, Point{1.0}, Point{0.0}), MembershipError);
    CHECK_THROWS_AS(point_pair(iv, Point{0.0, 0.0}, Point{0.0}), DimensionError);
}

TEST_CASE("generalized point pair function") {
    CHECK(point_pair_alpha(Domain::positive_axis(), 4.0, Point{1.0}, Point{3.0}) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(point_pair_alpha(Domain::positive_axis(), 7.0, Point{2.0}, Point{2.0}) == 0.0);
    // Root of 3t^2 - 4.75t + 0.75 = 0 on the ray through the center.
    const double t = (4.75 + std::sqrt(4.75 * 4.75 - 9.0)) / 6.0;
    CHECK(point_pair_alpha(Domain::punctured_space(2), 3.5, Point{t, 0.0}, Point{0.5, 0.0}) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(point_pair_alpha(Domain::punctured_space(2), 3.5, Point{1.405455, 0.0}, Point{0.5, 0.0}) ==
          doctest::Approx(0.5).epsilon(1e-5));
    CHECK_THROWS_AS(point_pair_alpha(Domain::positive_axis(), 0.0, Point{1.0}, Point{2.0}), ParameterError);
    CHECK_THROWS_AS(point_pair_alpha(Domain::positive_axis(), -1.0, Point{1.0}, Point{2.0}), ParameterError);
    CHECK_THROWS_AS(point_pair_alpha(Domain::positive_axis(), 4.0, Point{-1.0}, Point{2.0}), MembershipError);

    Rng rng(11);
    const auto ball = Domain::unit_ball(3);
    for (int i = 0; i < 200; ++i) {
        const Point x{rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)};
        const Point y{rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)};
        const double alpha = rng.log_uniform(0.01, 100.0);
        const double expect = ref_pair(distance(x, y), alpha, 1.0 - norm(x), 1.0 - norm(y));
        CHECK(point_pair_alpha(ball, alpha, x, y) == doctest::Approx(expect).epsilon(1e-14));
    }
}

TEST_CASE("triangular ratio metric closed forms") {
    CHECK(triangular_ratio(Domain::positive_axis(), Point{1.0}, Point{3.0}) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(triangular_ratio(Domain::positive_axis(), Point{2.0}, Point{2.0}) == 0.0);
    CHECK(triangular_ratio(Domain::half_space(2), Point{0.0, 1.0}, Point{0.0, 2.0}) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    // Interval: the better of the two endpoints, |x-y| / min(x+y-2a, 2b-x-y).
    CHECK(triangular_ratio(Domain::interval(-1, 1), Point{0.5}, Point{0.9}) == doctest::Approx(0.4 / 0.6).epsilon(1e-14));
    CHECK(triangular_ratio(Domain::interval(-1, 1), Point{-0.5}, Point{-0.9}) == doctest::Approx(0.4 / 0.6).epsilon(1e-14));
    CHECK_THROWS_AS(triangular_ratio(Domain::unit_ball(2), Point{0.0, 0.0}, Point{0.1, 0.0}), UnsupportedDomainError);
}

TEST_CASE("inversion psi") {
    CHECK(psi_alpha(4.0, Point{0.5, 0.0}, Point{0.25, 0.0}) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(point_pair_alpha(Domain::exterior_ball(2), 4.0, Point{2.0, 0.0}, Point{4.0, 0.0}) ==
          doctest::Approx(0.5).epsilon(1e-15));
    CHECK(psi_alpha(4.0, Point{0.5, 0.0}, Point{-0.5, 0.0}) == doctest::Approx(0.8944271909999159).epsilon(1e-15));
    CHECK(psi_alpha(4.0, Point{0.3, 0.1}, Point{0.3, 0.1}) == 0.0);
    CHECK(invert(Point{0.5, 0.0}) == Point{2.0, 0.0});
    CHECK_THROWS_AS(psi_alpha(0.0, Point{0.5, 0.0}, Point{0.2, 0.0}), ParameterError);
    CHECK_THROWS_AS(psi_alpha(4.0, Point{0.0, 0.0}, Point{0.2, 0.0}), MembershipError);
    CHECK_THROWS_AS(psi_alpha(4.0, Point{1.0, 0.0}, Point{0.2, 0.0}), MembershipError);
}

TEST_CASE("metric text forms and dispatch") {
    CHECK(to_string(parse_metric("ppf")) == "ppf");
    CHECK(to_string(parse_metric("ppf:alpha=3.5")) == "ppf:alpha=3.5");
    CHECK(to_string(parse_metric("s")) == "s");
    CHECK(to_string(parse_metric("psi:alpha=4")) == "psi:alpha=4");
    CHECK(parse_metric("psi") == MetricSpec::inversion_psi(4.0));
    for (const char* bad : {"", "pp", "ppf:alpha=0", "ppf:alpha=-1", "ppf:beta=2", "ppf:alpha=", "s:alpha=2", "psi:alpha=x"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_metric(bad), ParseError);
    }
    CHECK_THROWS_AS(MetricSpec::generalized(0.0), ParameterError);

    const Point x{0.0, 1.0}, y{0.0, 2.0};
    CHECK(evaluate(MetricSpec::point_pair(), Domain::half_space(2), x, y) ==
          doctest::Approx(evaluate(MetricSpec::triangular_ratio(), Domain::half_space(2), x, y)).epsilon(1e-15));
    CHECK_THROWS_AS(evaluate(MetricSpec::triangular_ratio(), Domain::unit_ball(2), Point{0.0, 0.0}, Point{0.1, 0.0}),
                    UnsupportedDomainError);
    CHECK_THROWS_AS(evaluate(MetricSpec::inversion_psi(4.0), Domain::unit_ball(2), Point{0.1, 0.0}, Point{0.2, 0.0}),
                    UnsupportedDomainError);
    CHECK(evaluate(MetricSpec::inversion_psi(4.0), Domain::punctured_ball(2), Point{0.5, 0.0}, Point{0.25, 0.0}) ==
          doctest::Approx(0.5));
}
