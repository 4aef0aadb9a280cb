#include "pointpair/viz.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "parallel.hpp"
#include "pointpair/error.hpp"

namespace pointpair {

namespace {

constexpr double kScanStart = 1e-4; // first scan radius, in units of d_G(center)
constexpr double kScanGrowth = 1.05;
constexpr double kBisectTol = 1e-8;
constexpr int kMultiplicityGrid = 256;
// Stand-in for the exit of rays that never meet the boundary, in units of the
// first crossing, for the multiplicity scan only.
constexpr double kOpenRayReach = 8.0;
constexpr double kScanLimit = 1e12; // give up beyond this many d_G(center)

struct RayResult {
    double s = 0.0;
    bool multiple = false;
};

RayResult trace_ray(const MetricSpec& metric, const Domain& domain, const Point& center,
                    double level, const Point& dir) {
    const double exit = ray_exit(domain, center, dir);
    const double d0 = boundary_distance(domain, center);
    std::vector<double> buf(center.dim());
    auto gap = [&](double s) {
        for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = center[i] + s * dir[i];
        if (!detail::contains_unchecked(domain, buf)) return std::numeric_limits<double>::quiet_NaN();
        return detail::evaluate_unchecked(metric, domain, buf, center.coords()) - level;
    };

    // Scan outward until the level is reached, staying strictly inside.
    const double last = std::isfinite(exit) ? exit * (1.0 - 1e-12) : kScanLimit * d0;
    double lo = 0.0;
    double hi = std::min(kScanStart * d0, last);
    for (;;) {
        const double g = gap(hi);
        if (g >= 0.0) break;
        if (hi >= last || std::isnan(g))
            throw NumericalError("level " + std::to_string(level) + " not reached before the ray leaves the domain");
        lo = hi;
        hi = std::min(hi * kScanGrowth, last);
    }
    while (hi - lo > kBisectTol * std::max(1.0, hi)) {
        const double mid = 0.5 * (lo + hi);
        (gap(mid) >= 0.0 ? hi : lo) = mid;
    }
    // Bisection leaves m(hi) within the metric's slope times the bracket width;
    // take the endpoint closer to the level.
    const double s = std::abs(gap(lo)) < std::abs(gap(hi)) ? lo : hi;

    const double reach = std::isfinite(exit) ? last : kOpenRayReach * s;
    int changes = 0;
    bool below = true; // m(center) = 0 < level
    for (int k = 1; k <= kMultiplicityGrid; ++k) {
        const double g = gap(reach * k / kMultiplicityGrid);
        if (std::isnan(g)) break;
        const bool now_below = g < 0.0;
        if (now_below != below) ++changes;
        below = now_below;
    }
    return {s, changes > 1};
}

std::string fmt9(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

} // namespace

DiskTrace trace_disk(const MetricSpec& metric, const Domain& domain, const Point& center,
                     double level, int rays, unsigned workers) {
    if (domain.dim() != 2) throw DimensionError("disk tracing needs a two-dimensional domain");
    if (center.dim() != 2) throw DimensionError("center must be a point of the plane");
    metric.check_domain(domain);
    if (!contains(domain, center)) throw MembershipError("center " + to_string(center) + " is not in the domain");
    if (!(level > 0.0 && level < 1.0)) throw ParameterError("level must lie in (0, 1)");
    if (rays < 8) throw ParameterError("at least 8 rays are needed");

    DiskTrace trace;
    trace.center = center;
    trace.level = level;
    trace.rays = rays;
    std::vector<RayResult> results(static_cast<std::size_t>(rays));
    std::vector<double> angles(results.size());
    detail::parallel_for(0, results.size(), workers, [&](std::size_t i) {
        angles[i] = 2.0 * std::numbers::pi * static_cast<double>(i) / rays;
        const Point dir{std::cos(angles[i]), std::sin(angles[i])};
        results[i] = trace_ray(metric, domain, center, level, dir);
    });
    for (std::size_t i = 0; i < results.size(); ++i) {
        const Point dir{std::cos(angles[i]), std::sin(angles[i])};
        trace.polyline.push_back({angles[i], center + results[i].s * dir});
        trace.multiplicity_flags.push_back(results[i].multiple);
    }
    return trace;
}

std::string emit_trace(const DiskTrace& trace, TraceFormat format) {
    if (trace.polyline.empty()) throw ParameterError("cannot emit an empty trace");
    std::string out;
    if (format == TraceFormat::Csv) {
        out = "angle,x,y,flag\n";
        for (std::size_t i = 0; i < trace.polyline.size(); ++i) {
            const auto& r = trace.polyline[i];
            const bool flag = i < trace.multiplicity_flags.size() && trace.multiplicity_flags[i];
            out += fmt9(r.angle) + "," + fmt9(r.crossing[0]) + "," + fmt9(r.crossing[1]) + "," +
                   (flag ? "1" : "0") + "\n";
        }
        return out;
    }

    double xmin = trace.center[0], xmax = xmin, ymin = trace.center[1], ymax = ymin;
    for (const auto& r : trace.polyline) {
        xmin = std::min(xmin, r.crossing[0]);
        xmax = std::max(xmax, r.crossing[0]);
        ymin = std::min(ymin, r.crossing[1]);
        ymax = std::max(ymax, r.crossing[1]);
    }
    const double span = std::max({xmax - xmin, ymax - ymin, 1e-12});
    const double mx = 0.05 * std::max(xmax - xmin, 1e-3 * span);
    const double my = 0.05 * std::max(ymax - ymin, 1e-3 * span);
    const double w = xmax - xmin + 2 * mx, h = ymax - ymin + 2 * my;
    // SVG y grows downward; flip so the picture has the usual orientation.
    auto px = [&](double x) { return fmt9(x); };
    auto py = [&](double y) { return fmt9(-y); };

    out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + fmt9(xmin - mx) + " " +
           fmt9(-(ymax + my)) + " " + fmt9(w) + " " + fmt9(h) + "\">\n";
    out += "  <path fill=\"none\" stroke=\"black\" stroke-width=\"" + fmt9(0.003 * std::max(w, h)) +
           "\" d=\"";
    for (std::size_t i = 0; i < trace.polyline.size(); ++i) {
        const auto& c = trace.polyline[i].crossing;
        out += (i == 0 ? "M" : " L") + px(c[0]) + " " + py(c[1]);
    }
    out += " Z\"/>\n";
    out += "  <circle cx=\"" + px(trace.center[0]) + "\" cy=\"" + py(trace.center[1]) + "\" r=\"" +
           fmt9(0.01 * std::max(w, h)) + "\" fill=\"red\"/>\n";
    out += "</svg>\n";
    return out;
}

} // namespace pointpair
