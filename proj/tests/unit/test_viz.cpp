#include <doctest.h>

#include <cmath>

#include "pointpair/error.hpp"
#include "pointpair/viz.hpp"

using namespace pointpair;

namespace {

// Test-side oracle: bisection on p^3.5((t,0),(0.5,0)) - 0.5 along the x axis.
double axis_crossing(double lo, double hi) {
    auto g = [](double t) {
        const double d = std::abs(t - 0.5);
        return d / std::sqrt(d * d + 3.5 * std::abs(t) * 0.5) - 0.5;
    };
    const bool rising = g(hi) > g(lo);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        ((g(mid) > 0.0) == rising ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("disk trace reproduces the on-axis roots") {
    const auto metric = MetricSpec::generalized(3.5);
    const auto domain = Domain::punctured_space(2);
    const Point center{0.5, 0.0};
    const auto tr = trace_disk(metric, domain, center, 0.5, 360);
    REQUIRE(tr.polyline.size() == 360);
    REQUIRE(tr.multiplicity_flags.size() == 360);
    const double right = axis_crossing(0.5, 10.0);
    const double left = axis_crossing(1e-12, 0.5);
    CHECK(right == doctest::Approx(1.405454994277343).epsilon(1e-12));
    CHECK(left == doctest::Approx(0.177878339055990).epsilon(1e-12));
    CHECK(std::abs(tr.polyline[0].crossing[0] - right) < 1e-6);
    CHECK(std::abs(tr.polyline[180].crossing[0] - left) < 1e-6);
    for (const auto& r : tr.polyline) {
        CHECK(contains(domain, r.crossing));
        CHECK(std::abs(evaluate(metric, domain, r.crossing, center) - 0.5) <= 1e-6);
    }
}

TEST_CASE("disk traces nest") {
    const auto metric = MetricSpec::generalized(3.5);
    const auto domain = Domain::punctured_space(2);
    const Point center{0.5, 0.0};
    const auto inner = trace_disk(metric, domain, center, 0.3, 64);
    const auto outer = trace_disk(metric, domain, center, 0.6, 64);
    for (std::size_t i = 0; i < 64; ++i) {
        if (inner.multiplicity_flags[i] || outer.multiplicity_flags[i]) continue;
        CHECK(distance(inner.polyline[i].crossing, center) <= distance(outer.polyline[i].crossing, center));
    }
}

TEST_CASE("psi disk stays inside the punctured ball") {
    const auto metric = MetricSpec::inversion_psi(4.0);
    const auto domain = Domain::punctured_ball(2);
    const auto tr = trace_disk(metric, domain, Point{0.5, 0.0}, 0.865, 360);
    REQUIRE(tr.polyline.size() == 360);
    for (const auto& r : tr.polyline) {
        CHECK(contains(domain, r.crossing));
        CHECK(std::abs(evaluate(metric, domain, r.crossing, Point{0.5, 0.0}) - 0.865) <= 1e-6);
    }
}

TEST_CASE("disk trace preconditions") {
    const auto metric = MetricSpec::point_pair();
    CHECK_THROWS_AS(trace_disk(metric, Domain::unit_ball(2), Point{1.0, 0.0}, 0.5, 16), MembershipError);
    CHECK_THROWS_AS(trace_disk(metric, Domain::unit_ball(2), Point{0.0, 0.0}, 1.0, 16), ParameterError);
    CHECK_THROWS_AS(trace_disk(metric, Domain::unit_ball(2), Point{0.0, 0.0}, 0.0, 16), ParameterError);
    CHECK_THROWS_AS(trace_disk(metric, Domain::unit_ball(2), Point{0.0, 0.0}, 0.5, 7), ParameterError);
    CHECK_THROWS_AS(trace_disk(metric, Domain::unit_ball(3), Point{0.0, 0.0, 0.0}, 0.5, 16), DimensionError);
}

TEST_CASE("trace emission") {
    const auto tr = trace_disk(MetricSpec::point_pair(), Domain::unit_ball(2), Point{0.2, 0.1}, 0.4, 8);
    const auto csv = emit_trace(tr, TraceFormat::Csv);
    CHECK(csv.rfind("angle,x,y,flag\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);

    DiskTrace four = tr;
    four.polyline.resize(4);
    four.multiplicity_flags.resize(4);
    const auto csv4 = emit_trace(four, TraceFormat::Csv);
    CHECK(std::count(csv4.begin(), csv4.end(), '\n') == 5);

    const auto svg = emit_trace(tr, TraceFormat::Svg);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("<path") != std::string::npos);
    CHECK(svg.find("<circle") != std::string::npos);

    DiskTrace empty;
    CHECK_THROWS_AS(emit_trace(empty, TraceFormat::Csv), ParameterError);
}
