#pragma once

#include <cmath>
#include <span>
#include <string>

#include "pointpair/geometry.hpp"

namespace pointpair {

/// Selects one of the intrinsic distance functions and its parameter.
class MetricSpec {
public:
    enum class Family {
        PointPair,            ///< p_G, the alpha = 4 member of the family below
        GeneralizedPointPair, ///< p^alpha_G
        TriangularRatio,      ///< s_G (closed forms on rplus, half-space, interval)
        InversionPsi,         ///< psi^alpha on the punctured ball
    };

    static MetricSpec point_pair() { return MetricSpec(Family::PointPair, 4.0); }
    /// Throws ParameterError unless alpha > 0.
    static MetricSpec generalized(double alpha);
    static MetricSpec triangular_ratio() { return MetricSpec(Family::TriangularRatio, 0.0); }
    static MetricSpec inversion_psi(double alpha);

    Family family() const noexcept { return family_; }
    /// The weight in front of the boundary term; 4 for PointPair, unused for s_G.
    double alpha() const noexcept { return alpha_; }

    /// Throws UnsupportedDomainError if the family is not defined on `domain`.
    void check_domain(const Domain& domain) const;

    friend bool operator==(const MetricSpec&, const MetricSpec&) = default;

private:
    MetricSpec(Family f, double alpha) : family_(f), alpha_(alpha) {}
    Family family_;
    double alpha_;
};

/// Text forms "ppf", "ppf:alpha=3.5", "s", "psi:alpha=4".
MetricSpec parse_metric(const std::string& text);
std::string to_string(const MetricSpec& metric);

/// |x-y| / sqrt(|x-y|^2 + 4 d(x) d(y)); exactly 0 when x == y.
double point_pair(const Domain& domain, const Point& x, const Point& y);

/// |x-y| / sqrt(|x-y|^2 + alpha d(x) d(y)).
double point_pair_alpha(const Domain& domain, double alpha, const Point& x, const Point& y);

/// s_G in closed form on PositiveAxis, HalfSpace and Interval.
double triangular_ratio(const Domain& domain, const Point& x, const Point& y);

/// psi^alpha on the punctured ball B^n \ {0}, n = x.dim().
double psi_alpha(double alpha, const Point& x, const Point& y);

/// Inversion x -> x / |x|^2 in the unit sphere.
Point invert(const Point& x);

/// Dispatches on the metric family; validates membership and domain support.
double evaluate(const MetricSpec& metric, const Domain& domain, const Point& x, const Point& y);

namespace detail {

/// Unchecked evaluation for the search loops. Arguments are assumed to be members
/// and the family to be supported on the domain.
double evaluate_unchecked(const MetricSpec& metric, const Domain& domain,
                          std::span<const double> x, std::span<const double> y) noexcept;

/// The quotient form shared by the point pair family:
/// dist / sqrt(dist^2 + weight), with 0 for dist == 0.
inline double pair_quotient(double dist, double weight) noexcept {
    if (dist == 0.0) return 0.0;
    return dist / std::sqrt(dist * dist + weight);
}

} // namespace detail

} // namespace pointpair
