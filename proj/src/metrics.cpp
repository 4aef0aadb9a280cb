#include "pointpair/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "pointpair/error.hpp"
#include "text.hpp"

namespace pointpair {

namespace {

void require_alpha(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw ParameterError("alpha must be a finite positive number, got " +
                             text::format_double(alpha));
}

void require_member(const Domain& domain, const Point& x) {
    // boundary_distance raises the dimension and membership errors.
    (void)boundary_distance(domain, x);
}

double s_unchecked(const Domain& domain, std::span<const double> x,
                   std::span<const double> y) noexcept {
    const double dxy = distance(x, y);
    if (dxy == 0.0) return 0.0;
    if (domain.is<PositiveAxis>()) return dxy / (x[0] + y[0]);
    if (domain.is<Interval>()) {
        const auto& iv = domain.as<Interval>();
        // Both points lie on the same side of each endpoint.
        const double via_a = (x[0] - iv.a) + (y[0] - iv.a);
        const double via_b = (iv.b - x[0]) + (iv.b - y[0]);
        return dxy / std::min(via_a, via_b);
    }
    // Half-space: the infimum over the boundary is attained at the reflection.
    double s = 0.0;
    const std::size_t n = x.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double d = x[i] - y[i];
        s += d * d;
    }
    const double h = x[n - 1] + y[n - 1];
    return dxy / std::sqrt(s + h * h);
}

} // namespace

MetricSpec MetricSpec::generalized(double alpha) {
    require_alpha(alpha);
    return MetricSpec(Family::GeneralizedPointPair, alpha);
}

MetricSpec MetricSpec::inversion_psi(double alpha) {
    require_alpha(alpha);
    return MetricSpec(Family::InversionPsi, alpha);
}

void MetricSpec::check_domain(const Domain& domain) const {
    switch (family_) {
    case Family::PointPair:
    case Family::GeneralizedPointPair:
        return;
    case Family::TriangularRatio:
        if (domain.is<PositiveAxis>() || domain.is<HalfSpace>() || domain.is<Interval>()) return;
        throw UnsupportedDomainError("triangular ratio metric has no closed form on " +
                                     to_string(domain));
    case Family::InversionPsi:
        if (domain.is<PuncturedBall>()) return;
        throw UnsupportedDomainError("psi is only defined on the punctured ball, not " +
                                     to_string(domain));
    }
}

MetricSpec parse_metric(const std::string& raw) {
    const std::string s = text::normalize(raw);
    auto alpha_of = [&](const std::string& rest) {
        const std::string key = "alpha=";
        if (rest.rfind(key, 0) != 0) throw ParseError("expected 'alpha=<value>' in '" + raw + "'");
        return text::parse_double(rest.substr(key.size()));
    };
    const auto colon = s.find(':');
    const std::string kind = s.substr(0, colon);
    const bool has_args = colon != std::string::npos;
    try {
        if (kind == "ppf")
            return has_args ? MetricSpec::generalized(alpha_of(s.substr(colon + 1)))
                            : MetricSpec::point_pair();
        if (kind == "psi")
            return MetricSpec::inversion_psi(has_args ? alpha_of(s.substr(colon + 1)) : 4.0);
        if (kind == "s" && !has_args) return MetricSpec::triangular_ratio();
    } catch (const ParameterError& e) {
        throw ParseError("invalid metric '" + raw + "': " + e.what());
    }
    throw ParseError("unknown metric '" + raw + "'");
}

std::string to_string(const MetricSpec& metric) {
    switch (metric.family()) {
    case MetricSpec::Family::PointPair:
        return "ppf";
    case MetricSpec::Family::GeneralizedPointPair:
        return "ppf:alpha=" + text::format_double(metric.alpha());
    case MetricSpec::Family::TriangularRatio:
        return "s";
    case MetricSpec::Family::InversionPsi:
        return "psi:alpha=" + text::format_double(metric.alpha());
    }
    return {};
}

namespace detail {

double evaluate_unchecked(const MetricSpec& metric, const Domain& domain,
                          std::span<const double> x, std::span<const double> y) noexcept {
    switch (metric.family()) {
    case MetricSpec::Family::PointPair:
    case MetricSpec::Family::GeneralizedPointPair:
        return pair_quotient(distance(x, y), metric.alpha() * distance_unchecked(domain, x) *
                                                 distance_unchecked(domain, y));
    case MetricSpec::Family::TriangularRatio:
        return s_unchecked(domain, x, y);
    case MetricSpec::Family::InversionPsi: {
        const double rx = norm(x);
        const double ry = norm(y);
        return pair_quotient(distance(x, y),
                             metric.alpha() * rx * ry * (1.0 - rx) * (1.0 - ry));
    }
    }
    return 0.0;
}

} // namespace detail

double point_pair(const Domain& domain, const Point& x, const Point& y) {
    return evaluate(MetricSpec::point_pair(), domain, x, y);
}

double point_pair_alpha(const Domain& domain, double alpha, const Point& x, const Point& y) {
    return evaluate(MetricSpec::generalized(alpha), domain, x, y);
}

double triangular_ratio(const Domain& domain, const Point& x, const Point& y) {
    return evaluate(MetricSpec::triangular_ratio(), domain, x, y);
}

double psi_alpha(double alpha, const Point& x, const Point& y) {
    return evaluate(MetricSpec::inversion_psi(alpha), Domain::punctured_ball(x.dim()), x, y);
}

Point invert(const Point& x) {
    double r2 = 0.0;
    for (double c : x.coords()) r2 += c * c;
    if (!(r2 > 0.0)) throw ParameterError("cannot invert the origin");
    return (1.0 / r2) * x;
}

double evaluate(const MetricSpec& metric, const Domain& domain, const Point& x, const Point& y) {
    metric.check_domain(domain);
    require_member(domain, x);
    require_member(domain, y);
    if (x == y) return 0.0;
    return detail::evaluate_unchecked(metric, domain, x.coords(), y.coords());
}

} // namespace pointpair
