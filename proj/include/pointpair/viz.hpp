#pragma once

#include <string>
#include <vector>

#include "pointpair/metrics.hpp"

namespace pointpair {

struct RayCrossing {
    double angle = 0.0; ///< radians, measured from the +x axis
    Point crossing;
};

/// Boundary of the metric disk {x : m(x, center) < level} sampled along rays.
struct DiskTrace {
    Point center;
    double level = 0.0;
    int rays = 0;
    std::vector<RayCrossing> polyline;
    /// True where the ray showed more than one crossing of the level; only the
    /// first one is recorded.
    std::vector<bool> multiplicity_flags;
};

/// Traces the level set along `rays` equally spaced directions. Requires a
/// two-dimensional domain, a member center, 0 < level < 1 and rays >= 8.
DiskTrace trace_disk(const MetricSpec& metric, const Domain& domain, const Point& center,
                     double level, int rays, unsigned workers = 1);

enum class TraceFormat { Csv, Svg };

/// CSV ("angle,x,y,flag") or a standalone SVG document.
std::string emit_trace(const DiskTrace& trace, TraceFormat format);

} // namespace pointpair
