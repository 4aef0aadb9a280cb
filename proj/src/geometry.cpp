#include "pointpair/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "pointpair/error.hpp"
#include "pointpair/random.hpp"
#include "overloaded.hpp"
#include "text.hpp"

namespace pointpair {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Log-uniform radius range used by the unbounded, scale-invariant variants.
constexpr double kRadiusLo = 1e-3;
constexpr double kRadiusHi = 1e3;
// Sampled points closer than this to a puncture are redrawn.
constexpr double kPunctureClearance = 1e-9;
// A ray passing within this relative distance of a point puncture hits it.
constexpr double kRayHitTolerance = 1e-12;

using detail::overloaded;

double dot(std::span<const double> a, std::span<const double> b) noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void check_dim(const Domain& domain, const Point& x) {
    if (x.dim() != domain.dim())
        throw DimensionError("point of dimension " + std::to_string(x.dim()) +
                             " used with " + to_string(domain) + " (dimension " +
                             std::to_string(domain.dim()) + ")");
}

// Distance along the ray c + s d (s > 0) at which it passes through the point p,
// or infinity if it misses.
double ray_hits_point(std::span<const double> c, std::span<const double> d,
                      std::span<const double> p) {
    std::vector<double> w(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) w[i] = p[i] - c[i];
    const double along = dot(w, d);
    if (along <= 0.0) return kInf;
    double off = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double e = w[i] - along * d[i];
        off += e * e;
    }
    return std::sqrt(off) <= kRayHitTolerance * norm(w) ? along : kInf;
}

// First s > 0 with |c + s d| = 1 for a ray starting inside the unit sphere.
double ray_leaves_ball(std::span<const double> c, std::span<const double> d) {
    const double b = dot(c, d);
    const double q = dot(c, c) - 1.0;
    return -b + std::sqrt(std::max(0.0, b * b - q));
}

} // namespace

// ---------------------------------------------------------------- Point

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw ParameterError("a point needs at least one coordinate");
    for (double c : coords_)
        if (!std::isfinite(c)) throw ParameterError("point coordinates must be finite");
}

Point::Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

Point Point::unit(std::size_t n, std::size_t axis) {
    if (axis >= n) throw ParameterError("unit vector axis out of range");
    std::vector<double> c(n, 0.0);
    c[axis] = 1.0;
    return Point(std::move(c));
}

Point Point::zero(std::size_t n) { return Point(std::vector<double>(n, 0.0)); }

Point operator+(const Point& a, const Point& b) {
    if (a.dim() != b.dim()) throw DimensionError("point dimensions differ");
    std::vector<double> c(a.dim());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] + b[i];
    return Point(std::move(c));
}

Point operator-(const Point& a, const Point& b) {
    if (a.dim() != b.dim()) throw DimensionError("point dimensions differ");
    std::vector<double> c(a.dim());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] - b[i];
    return Point(std::move(c));
}

Point operator*(double s, const Point& a) {
    std::vector<double> c(a.dim());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = s * a[i];
    return Point(std::move(c));
}

double norm(std::span<const double> v) noexcept { return std::sqrt(dot(v, v)); }

double distance(std::span<const double> a, std::span<const double> b) noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

double norm(const Point& p) noexcept { return norm(p.coords()); }

double distance(const Point& a, const Point& b) {
    if (a.dim() != b.dim()) throw DimensionError("point dimensions differ");
    return distance(a.coords(), b.coords());
}

// ---------------------------------------------------------------- Domain

Domain::Domain(Variant v) : v_(std::move(v)) {
    std::visit(overloaded{
                   [](const Interval& d) {
                       if (!std::isfinite(d.a) || !std::isfinite(d.b) || !(d.a < d.b))
                           throw ParameterError("interval needs finite a < b");
                   },
                   [](const PositiveAxis&) {},
                   [](const HalfSpace& d) {
                       if (d.n < 2) throw ParameterError("half-space needs n >= 2");
                   },
                   [](const UnitBall& d) {
                       if (d.n < 1) throw ParameterError("ball needs n >= 1");
                   },
                   [](const PuncturedSpace& d) {
                       if (d.n < 1) throw ParameterError("punctured space needs n >= 1");
                   },
                   [](const PuncturedBall& d) {
                       if (d.n < 1) throw ParameterError("punctured ball needs n >= 1");
                   },
                   [](const ExteriorBall& d) {
                       if (d.n < 2) throw ParameterError("exterior of the ball needs n >= 2");
                   },
                   [](const PuncturedAxis3D&) {},
                   [](const MultiPunctured& d) {
                       if (d.n < 1) throw ParameterError("multi-punctured space needs n >= 1");
                       if (d.punctures.empty())
                           throw ParameterError("multi-punctured space needs a puncture");
                       for (const auto& p : d.punctures)
                           if (p.dim() != d.n)
                               throw DimensionError("puncture dimension differs from n");
                       for (std::size_t i = 0; i < d.punctures.size(); ++i)
                           for (std::size_t j = i + 1; j < d.punctures.size(); ++j)
                               if (distance(d.punctures[i], d.punctures[j]) <=
                                   kMinPunctureSeparation)
                                   throw ParameterError("punctures must be distinct");
                   },
               },
               v_);
}

std::size_t Domain::dim() const noexcept {
    return std::visit(overloaded{
                          [](const Interval&) -> std::size_t { return 1; },
                          [](const PositiveAxis&) -> std::size_t { return 1; },
                          [](const PuncturedAxis3D&) -> std::size_t { return 3; },
                          [](const auto& d) -> std::size_t { return d.n; },
                      },
                      v_);
}

bool Domain::scale_invariant() const noexcept {
    return is<PositiveAxis>() || is<PuncturedSpace>();
}

// ---------------------------------------------------------------- kernels

namespace detail {

// Each branch is oriented so that the value is positive exactly on the open set,
// which makes membership and d_G > 0 the same computed predicate.
double distance_unchecked(const Domain& domain, std::span<const double> x) noexcept {
    return std::visit(
        overloaded{
            [&](const Interval& d) { return std::min(x[0] - d.a, d.b - x[0]); },
            [&](const PositiveAxis&) { return x[0]; },
            [&](const HalfSpace& d) { return x[d.n - 1]; },
            [&](const UnitBall&) { return 1.0 - norm(x); },
            [&](const PuncturedSpace&) { return norm(x); },
            [&](const PuncturedBall&) {
                const double r = norm(x);
                return std::min(r, 1.0 - r);
            },
            [&](const ExteriorBall&) { return norm(x) - 1.0; },
            [&](const PuncturedAxis3D&) { return std::sqrt(x[0] * x[0] + x[1] * x[1]); },
            [&](const MultiPunctured& d) {
                double best = kInf;
                for (const auto& p : d.punctures) best = std::min(best, distance(x, p.coords()));
                return best;
            },
        },
        domain.variant());
}

bool contains_unchecked(const Domain& domain, std::span<const double> x) noexcept {
    return distance_unchecked(domain, x) > 0.0;
}

void sample_point(const Domain& domain, Rng& rng, std::span<double> out) {
    const std::size_t n = out.size();
    auto acceptable = [&] {
        const double d = distance_unchecked(domain, out);
        if (!(d > 0.0)) return false;
        if (domain.is<PuncturedSpace>() || domain.is<PuncturedBall>())
            return norm(out) >= kPunctureClearance;
        if (domain.is<MultiPunctured>()) return d >= kPunctureClearance;
        return true;
    };
    auto radial = [&](double r) {
        rng.unit_vector(out);
        for (double& c : out) c *= r;
    };
    do {
        std::visit(
            overloaded{
                [&](const Interval& d) { out[0] = rng.uniform(d.a, d.b); },
                [&](const PositiveAxis&) { out[0] = rng.log_uniform(kRadiusLo, kRadiusHi); },
                [&](const PuncturedSpace&) { radial(rng.log_uniform(kRadiusLo, kRadiusHi)); },
                [&](const HalfSpace&) {
                    rng.unit_vector(out.first(n - 1));
                    const double r = rng.log_uniform(kRadiusLo, kRadiusHi);
                    for (std::size_t i = 0; i + 1 < n; ++i) out[i] *= r;
                    out[n - 1] = rng.log_uniform(kRadiusLo, kRadiusHi);
                },
                [&](const UnitBall&) {
                    radial(std::pow(rng.uniform(), 1.0 / static_cast<double>(n)));
                },
                [&](const PuncturedBall&) {
                    radial(std::pow(rng.uniform(), 1.0 / static_cast<double>(n)));
                },
                [&](const ExteriorBall&) { radial(1.0 + rng.log_uniform(kRadiusLo, kRadiusHi)); },
                [&](const PuncturedAxis3D&) {
                    const double rho = rng.log_uniform(kRadiusLo, kRadiusHi);
                    const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
                    out[0] = rho * std::cos(phi);
                    out[1] = rho * std::sin(phi);
                    out[2] = rng.uniform(-1.0, 1.0) * rng.log_uniform(kRadiusLo, kRadiusHi);
                },
                [&](const MultiPunctured& d) {
                    std::vector<double> lo(n, kInf), hi(n, -kInf);
                    for (const auto& p : d.punctures)
                        for (std::size_t i = 0; i < n; ++i) {
                            lo[i] = std::min(lo[i], p[i]);
                            hi[i] = std::max(hi[i], p[i]);
                        }
                    double extent = 1.0;
                    for (std::size_t i = 0; i < n; ++i) extent = std::max(extent, hi[i] - lo[i]);
                    for (std::size_t i = 0; i < n; ++i)
                        out[i] = rng.uniform(lo[i] - extent, hi[i] + extent);
                },
            },
            domain.variant());
    } while (!acceptable());
}

} // namespace detail

// ---------------------------------------------------------------- public ops

double boundary_distance(const Domain& domain, const Point& x) {
    check_dim(domain, x);
    const double d = detail::distance_unchecked(domain, x.coords());
    if (!(d > 0.0))
        throw MembershipError("point " + to_string(x) + " is not in " + to_string(domain));
    return d;
}

bool contains(const Domain& domain, const Point& x) {
    check_dim(domain, x);
    return detail::contains_unchecked(domain, x.coords());
}

std::vector<Point> sample_interior(const Domain& domain, std::uint64_t seed, std::size_t count) {
    if (count < 1) throw ParameterError("sample count must be at least 1");
    Rng rng(seed);
    std::vector<Point> pts;
    pts.reserve(count);
    std::vector<double> buf(domain.dim());
    for (std::size_t i = 0; i < count; ++i) {
        detail::sample_point(domain, rng, buf);
        pts.emplace_back(buf);
    }
    return pts;
}

Point reflect_across_boundary(const Point& x) {
    std::vector<double> c = x.values();
    c.back() = -c.back();
    return Point(std::move(c));
}

double ray_exit(const Domain& domain, const Point& center, const Point& dir) {
    check_dim(domain, center);
    check_dim(domain, dir);
    if (!contains(domain, center))
        throw MembershipError("ray origin " + to_string(center) + " is not in " +
                              to_string(domain));
    const auto c = center.coords();
    const auto d = dir.coords();
    const std::size_t n = c.size();
    return std::visit(
        overloaded{
            [&](const Interval& iv) { return d[0] > 0.0 ? (iv.b - c[0]) / d[0] : (c[0] - iv.a) / -d[0]; },
            [&](const PositiveAxis&) { return d[0] < 0.0 ? c[0] / -d[0] : kInf; },
            [&](const HalfSpace&) { return d[n - 1] < 0.0 ? c[n - 1] / -d[n - 1] : kInf; },
            [&](const UnitBall&) { return ray_leaves_ball(c, d); },
            [&](const PuncturedSpace&) {
                return ray_hits_point(c, d, std::vector<double>(n, 0.0));
            },
            [&](const PuncturedBall&) {
                return std::min(ray_hits_point(c, d, std::vector<double>(n, 0.0)),
                                ray_leaves_ball(c, d));
            },
            [&](const ExteriorBall&) {
                const double b = dot(c, d);
                const double disc = b * b - (dot(c, c) - 1.0);
                if (b >= 0.0 || disc < 0.0) return kInf;
                return -b - std::sqrt(disc);
            },
            [&](const PuncturedAxis3D&) {
                // Project onto the x1x2-plane; the axis becomes the origin.
                const double dn = std::hypot(d[0], d[1]);
                if (dn == 0.0) return kInf;
                const std::vector<double> c2{c[0], c[1]}, d2{d[0] / dn, d[1] / dn};
                return ray_hits_point(c2, d2, std::vector<double>{0.0, 0.0}) / dn;
            },
            [&](const MultiPunctured& mp) {
                double best = kInf;
                for (const auto& p : mp.punctures)
                    best = std::min(best, ray_hits_point(c, d, p.coords()));
                return best;
            },
        },
        domain.variant());
}

// ---------------------------------------------------------------- text forms

std::string to_string(const Point& p) {
    std::string s;
    for (std::size_t i = 0; i < p.dim(); ++i) {
        if (i) s += ',';
        s += text::format_double(p[i]);
    }
    return s;
}

Point parse_point(const std::string& raw) {
    const std::string s = text::normalize(raw);
    std::vector<double> c;
    for (const auto& tok : text::split(s, ',')) c.push_back(text::parse_double(tok));
    return Point(std::move(c));
}

std::string to_string(const Domain& domain) {
    using text::format_double;
    return std::visit(
        overloaded{
            [](const Interval& d) { return "interval:" + format_double(d.a) + ":" + format_double(d.b); },
            [](const PositiveAxis&) { return std::string("rplus"); },
            [](const HalfSpace& d) { return "halfspace:" + std::to_string(d.n); },
            [](const UnitBall& d) { return "ball:" + std::to_string(d.n); },
            [](const PuncturedSpace& d) { return "punctured:" + std::to_string(d.n); },
            [](const PuncturedBall& d) { return "puncturedball:" + std::to_string(d.n); },
            [](const ExteriorBall& d) { return "exterior:" + std::to_string(d.n); },
            [](const PuncturedAxis3D&) { return std::string("axis3d"); },
            [](const MultiPunctured& d) {
                std::string s = "multipunct:" + std::to_string(d.n) + ":[";
                for (std::size_t i = 0; i < d.punctures.size(); ++i) {
                    if (i) s += ',';
                    s += "(" + to_string(d.punctures[i]) + ")";
                }
                return s + "]";
            },
        },
        domain.variant());
}

Domain parse_domain(const std::string& raw) {
    const std::string s = text::normalize(raw);
    const auto colon = s.find(':');
    const std::string kind = s.substr(0, colon);
    const std::string rest = colon == std::string::npos ? std::string() : s.substr(colon + 1);

    auto need_no_args = [&] {
        if (colon != std::string::npos)
            throw ParseError("domain '" + kind + "' takes no parameters");
    };
    auto dimension = [&](const std::string& tok) -> std::size_t {
        const long long n = text::parse_int(tok);
        if (n < 1) throw ParseError("dimension must be positive in '" + raw + "'");
        return static_cast<std::size_t>(n);
    };
    auto single_dimension = [&] {
        if (colon == std::string::npos || rest.find(':') != std::string::npos)
            throw ParseError("domain '" + kind + "' needs exactly one dimension: '" + raw + "'");
        return dimension(rest);
    };

    try {
        if (kind == "interval") {
            const auto parts = text::split(rest, ':');
            if (colon == std::string::npos || parts.size() != 2)
                throw ParseError("expected interval:a:b, got '" + raw + "'");
            return Domain::interval(text::parse_double(parts[0]), text::parse_double(parts[1]));
        }
        if (kind == "rplus") return need_no_args(), Domain::positive_axis();
        if (kind == "axis3d") return need_no_args(), Domain::punctured_axis3d();
        if (kind == "halfspace") return Domain::half_space(single_dimension());
        if (kind == "ball") return Domain::unit_ball(single_dimension());
        if (kind == "punctured") return Domain::punctured_space(single_dimension());
        if (kind == "puncturedball") return Domain::punctured_ball(single_dimension());
        if (kind == "exterior") return Domain::exterior_ball(single_dimension());
        if (kind == "multipunct") {
            const auto c2 = rest.find(':');
            if (colon == std::string::npos || c2 == std::string::npos)
                throw ParseError("expected multipunct:n:[(..),(..)], got '" + raw + "'");
            const std::size_t n = dimension(rest.substr(0, c2));
            const std::string list = rest.substr(c2 + 1);
            if (list.size() < 2 || list.front() != '[' || list.back() != ']')
                throw ParseError("puncture list must be bracketed: '" + raw + "'");
            std::vector<Point> punctures;
            std::size_t pos = 1;
            while (pos < list.size() - 1) {
                if (list[pos] == ',') {
                    ++pos;
                    continue;
                }
                if (list[pos] != '(') throw ParseError("expected '(' in puncture list: '" + raw + "'");
                const auto close = list.find(')', pos);
                if (close == std::string::npos) throw ParseError("unbalanced '(' in '" + raw + "'");
                punctures.push_back(parse_point(list.substr(pos + 1, close - pos - 1)));
                pos = close + 1;
            }
            return Domain::multi_punctured(n, std::move(punctures));
        }
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError("invalid domain '" + raw + "': " + e.what());
    }
    throw ParseError("unknown domain '" + raw + "'");
}

} // namespace pointpair
