#include "pointpair/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "parallel.hpp"
#include "pointpair/error.hpp"
#include "search.hpp"
#include "text.hpp"

namespace pointpair {

namespace {

void require_positive_alpha(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw ParameterError("alpha must be a finite positive number");
}

// Splits `budget` samples over `units` units, the remainder going to the first ones.
std::int64_t unit_share(std::int64_t budget, std::size_t units, std::size_t index) {
    const auto u = static_cast<std::int64_t>(units);
    return budget / u + (static_cast<std::int64_t>(index) < budget % u ? 1 : 0);
}

std::size_t unit_count(std::int64_t budget, const SearchOptions& options) {
    const auto restarts = static_cast<std::int64_t>(std::max(1, options.restarts));
    return static_cast<std::size_t>(std::min(budget, restarts));
}

// The ratio is symmetric in x and y; report the lexicographically smaller
// point as x so witnesses have a stable orientation.
Triple oriented(Triple t) {
    const auto a = t.x.coords(), b = t.y.coords();
    if (std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end())) std::swap(t.x, t.y);
    return t;
}

} // namespace

MetricSpec metric_for(AlphaFamily family, double alpha) {
    return family == AlphaFamily::InversionPsi ? MetricSpec::inversion_psi(alpha)
                                               : MetricSpec::generalized(alpha);
}

double triangle_ratio(const MetricSpec& metric, const Domain& domain, const Triple& t) {
    if (t.x == t.y || t.z == t.x || t.z == t.y)
        throw DegenerateTripleError("triangle ratio needs z distinct from x and y, and x != y");
    const double num = evaluate(metric, domain, t.x, t.y);
    const double den = evaluate(metric, domain, t.x, t.z) + evaluate(metric, domain, t.z, t.y);
    return num / den;
}

QuasiEstimate estimate_quasi_constant(const MetricSpec& metric, const Domain& domain,
                                      std::int64_t budget, std::uint64_t seed,
                                      const SearchOptions& options) {
    if (budget < 1000) throw ParameterError("estimate_quasi_constant needs budget >= 1000");
    const detail::TripleSpace space(metric, domain);
    const std::size_t units = unit_count(budget, options);
    std::vector<detail::UnitResult> results(units);
    detail::parallel_for(0, units, options.workers, [&](std::size_t i) {
        results[i] = detail::run_unit(space, seed, i, unit_share(budget, units, i),
                                      options.refine_evals);
    });

    QuasiEstimate est;
    est.restarts = static_cast<int>(units);
    std::size_t best = units;
    for (std::size_t i = 0; i < units; ++i) {
        est.evaluations += results[i].evaluations;
        if (results[i].params.empty()) continue;
        if (best == units || results[i].value > results[best].value) best = i;
    }
    if (best == units) throw NumericalError("no admissible triple was sampled");

    std::vector<double> xyz(3 * space.ambient_dim());
    space.decode(results[best].params, xyz);
    est.witness = oriented(space.to_triple(xyz));
    est.c_hat = triangle_ratio(metric, domain, est.witness);
    est.converged = results[best].converged;
    return est;
}

std::optional<Violation> find_violation(const MetricSpec& metric, const Domain& domain,
                                        std::int64_t budget, std::uint64_t seed,
                                        const SearchOptions& options) {
    if (budget < 1) throw ParameterError("find_violation needs budget >= 1");
    const detail::TripleSpace space(metric, domain);
    const std::size_t units = unit_count(budget, options);
    const double threshold = 1.0 + options.violation_margin;
    const std::size_t batch = detail::resolve_workers(options.workers);

    std::vector<double> xyz(3 * space.ambient_dim());
    for (std::size_t start = 0; start < units; start += batch) {
        const std::size_t stop = std::min(units, start + batch);
        std::vector<detail::UnitResult> results(stop - start);
        detail::parallel_for(start, stop, options.workers, [&](std::size_t i) {
            results[i - start] = detail::run_unit(space, seed, i, unit_share(budget, units, i),
                                                  options.refine_evals);
        });
        // Lowest unit index wins, independent of the batch size.
        for (const auto& r : results) {
            if (r.params.empty() || !(r.value > threshold)) continue;
            space.decode(r.params, xyz);
            Violation v{oriented(space.to_triple(xyz)), 0.0};
            v.ratio = triangle_ratio(metric, domain, v.triple);
            if (v.ratio > threshold) return v;
        }
    }
    return std::nullopt;
}

ThresholdReport alpha_threshold(const Domain& domain, double alpha_lo, double alpha_hi, double tol,
                                std::int64_t budget, std::uint64_t seed, AlphaFamily family,
                                const SearchOptions& options) {
    if (!(alpha_lo > 0.0) || !(alpha_lo < alpha_hi) || !std::isfinite(alpha_hi))
        throw ParameterError("alpha_threshold needs 0 < alpha_lo < alpha_hi");
    if (!(tol > 0.0)) throw ParameterError("alpha_threshold needs tol > 0");

    ThresholdReport report;
    report.alpha_low = alpha_lo;
    auto probe = [&](double alpha) {
        ThresholdProbe p{alpha, find_violation(metric_for(family, alpha), domain, budget, seed, options)};
        report.probes.push_back(p);
        return p.violation.has_value();
    };

    if (!probe(alpha_hi)) {
        report.alpha_low = alpha_hi;
        return report;
    }
    double lo = alpha_lo;
    double hi = alpha_hi;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (probe(mid))
            hi = mid;
        else
            lo = mid;
    }
    report.alpha_low = lo;
    report.alpha_high = hi;
    return report;
}

double ball_ratio(double alpha, double k) {
    const double q = 1.0 - k;
    return std::sqrt((k * k + alpha * q) / (4.0 * k * k + alpha * q * q));
}

Violation ball_counterexample(double alpha, std::size_t n) {
    require_positive_alpha(alpha);
    if (n < 1) throw ParameterError("dimension must be at least 1");
    const double k = alpha / (4.0 + alpha);
    const Point e1 = Point::unit(n, 0);
    Violation v{Triple{k * e1, (-k) * e1, Point::zero(n)}, ball_ratio(alpha, k)};
    const double direct =
        triangle_ratio(MetricSpec::generalized(alpha), Domain::unit_ball(n), v.triple);
    if (std::abs(direct - v.ratio) > 1e-12 * v.ratio)
        throw NumericalError("closed-form ball ratio disagrees with direct evaluation");
    return v;
}

Triple rplus_violation_from_t(double alpha, double t) {
    require_positive_alpha(alpha);
    if (!(t > 2.0) || !(t < (alpha - 6.0) / 3.0))
        throw ParameterError("need 2 < t < (alpha-6)/3, got t = " + text::format_double(t) +
                             " at alpha = " + text::format_double(alpha));
    const double u2 = 0.5 * (t + std::sqrt(t * t - 4.0));
    return Triple{Point{1.0 / u2}, Point{u2}, Point{1.0}};
}

Triple sharpness_witness(const Point& z0, double r, const Point& direction) {
    if (!(r > 0.0)) throw ParameterError("radius must be positive");
    if (direction.dim() != z0.dim()) throw DimensionError("direction and center differ in dimension");
    const Point offset = (r / 3.0) * direction;
    return Triple{z0 - offset, z0 + offset, z0};
}

double c_star_k(double alpha) {
    require_positive_alpha(alpha);
    // (alpha+3 - sqrt(4 alpha+9)) / (alpha+2), rationalized to avoid cancellation
    // for small alpha.
    return alpha / (alpha + 3.0 + std::sqrt(4.0 * alpha + 9.0));
}

double c_star(double alpha) { return ball_ratio(alpha, c_star_k(alpha)); }

OneDimClass classify_1d(const Domain& domain) {
    if (domain.is<PositiveAxis>()) return {true, 1.0};
    if (domain.is<Interval>()) return {false, kSqrt5Over2};
    throw UnsupportedDomainError("classify_1d needs a one-dimensional domain, got " +
                                 to_string(domain));
}

} // namespace pointpair
