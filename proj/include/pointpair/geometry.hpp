#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace pointpair {

class Rng;

/// A coordinate vector in R^n. Coordinates are always finite.
class Point {
public:
    Point() = default;
    explicit Point(std::vector<double> coords);
    Point(std::initializer_list<double> coords);

    /// Unit vector e_{axis} in R^n.
    static Point unit(std::size_t n, std::size_t axis);
    static Point zero(std::size_t n);

    std::size_t dim() const noexcept { return coords_.size(); }
    double operator[](std::size_t i) const { return coords_[i]; }
    std::span<const double> coords() const noexcept { return coords_; }
    const std::vector<double>& values() const noexcept { return coords_; }

    friend bool operator==(const Point&, const Point&) = default;

private:
    std::vector<double> coords_;
};

Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
Point operator*(double s, const Point& a);

double norm(std::span<const double> v) noexcept;
double distance(std::span<const double> a, std::span<const double> b) noexcept;
double norm(const Point& p) noexcept;
double distance(const Point& a, const Point& b);

// Domain variants. Each is a proper, nonempty, open, connected subset of R^n.

struct Interval {
    double a = -1.0;
    double b = 1.0;
};
struct PositiveAxis {};
struct HalfSpace {
    std::size_t n = 2;
};
struct UnitBall {
    std::size_t n = 2;
};
struct PuncturedSpace {
    std::size_t n = 2;
};
struct PuncturedBall {
    std::size_t n = 2;
};
struct ExteriorBall {
    std::size_t n = 2;
};
/// R^3 minus the x3-axis.
struct PuncturedAxis3D {};
struct MultiPunctured {
    std::size_t n = 2;
    std::vector<Point> punctures;
};

/// Minimum separation between two punctures of a MultiPunctured domain.
inline constexpr double kMinPunctureSeparation = 1e-12;

class Domain {
public:
    using Variant = std::variant<Interval, PositiveAxis, HalfSpace, UnitBall, PuncturedSpace,
                                 PuncturedBall, ExteriorBall, PuncturedAxis3D, MultiPunctured>;

    /// Validates the variant's parameters; throws ParameterError on violation.
    explicit Domain(Variant v);

    static Domain interval(double a, double b) { return Domain(Interval{a, b}); }
    static Domain positive_axis() { return Domain(PositiveAxis{}); }
    static Domain half_space(std::size_t n) { return Domain(HalfSpace{n}); }
    static Domain unit_ball(std::size_t n) { return Domain(UnitBall{n}); }
    static Domain punctured_space(std::size_t n) { return Domain(PuncturedSpace{n}); }
    static Domain punctured_ball(std::size_t n) { return Domain(PuncturedBall{n}); }
    static Domain exterior_ball(std::size_t n) { return Domain(ExteriorBall{n}); }
    static Domain punctured_axis3d() { return Domain(PuncturedAxis3D{}); }
    static Domain multi_punctured(std::size_t n, std::vector<Point> punctures) {
        return Domain(MultiPunctured{n, std::move(punctures)});
    }

    const Variant& variant() const noexcept { return v_; }
    std::size_t dim() const noexcept;

    template <class T>
    bool is() const noexcept {
        return std::holds_alternative<T>(v_);
    }
    template <class T>
    const T& as() const {
        return std::get<T>(v_);
    }

    /// True for PositiveAxis and PuncturedSpace: invariant under x -> lambda x.
    bool scale_invariant() const noexcept;

private:
    Variant v_;
};

/// d_G(x): Euclidean distance from x to the boundary of the domain.
/// Throws DimensionError or MembershipError.
double boundary_distance(const Domain& domain, const Point& x);

/// Strict membership in the open set. Throws DimensionError.
bool contains(const Domain& domain, const Point& x);

/// `count` members of the domain, deterministic in `seed`.
std::vector<Point> sample_interior(const Domain& domain, std::uint64_t seed, std::size_t count);

/// Mirror image of a half-space point in the boundary hyperplane.
Point reflect_across_boundary(const Point& x);

/// Largest s such that center + s' * dir lies in the domain for all 0 <= s' < s.
/// Infinite when the ray never meets the boundary. `dir` must be a unit vector.
double ray_exit(const Domain& domain, const Point& center, const Point& dir);

/// Text form, e.g. "interval:-1:1", "ball:2", "multipunct:2:[(-1,0),(1,0)]".
std::string to_string(const Domain& domain);
Domain parse_domain(const std::string& text);

/// Comma-separated coordinates, e.g. "0.5,-1".
Point parse_point(const std::string& text);
std::string to_string(const Point& p);

namespace detail {

// Unchecked kernels used by the search loops. The caller guarantees matching
// dimension; membership is reported rather than enforced.
bool contains_unchecked(const Domain& domain, std::span<const double> x) noexcept;
double distance_unchecked(const Domain& domain, std::span<const double> x) noexcept;
/// One draw from the sampling distribution used by sample_interior.
void sample_point(const Domain& domain, Rng& rng, std::span<double> out);

} // namespace detail

} // namespace pointpair
