#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pointpair/geometry.hpp"
#include "pointpair/metrics.hpp"

namespace pointpair {

/// sqrt(5)/2, the sharp quasi-metric constant of the point pair function.
inline const double kSqrt5Over2 = 1.1180339887498948482;

struct Triple {
    Point x;
    Point y;
    Point z;
};

/// Knobs shared by the supremum search and the violation search.
struct SearchOptions {
    /// Independent multi-start units; each owns budget/restarts samples and one
    /// local refinement.
    int restarts = 8;
    /// Evaluation cap of each local refinement.
    int refine_evals = 20000;
    /// Worker threads; 0 uses the hardware concurrency. Results do not depend on it.
    unsigned workers = 1;
    /// A triple violates the triangle inequality when its ratio exceeds 1 + this.
    double violation_margin = 1e-9;
};

struct QuasiEstimate {
    double c_hat = 0.0;
    Triple witness;
    std::int64_t evaluations = 0;
    int restarts = 0;
    /// The refinement that produced the witness met its tolerances.
    bool converged = false;
};

struct Violation {
    Triple triple;
    double ratio = 0.0;
};

struct ThresholdProbe {
    double alpha = 0.0;
    /// Present when a violation was found and re-verified at this alpha.
    std::optional<Violation> violation;
};

/// Outcome of bisecting on alpha. alpha_high is certain (a verified violation
/// exists there); alpha_low is presumptive (no violation within budget).
struct ThresholdReport {
    double alpha_low = 0.0;
    std::optional<double> alpha_high;
    std::vector<ThresholdProbe> probes;

    double width() const { return alpha_high ? *alpha_high - alpha_low : 0.0; }
    bool brackets(double alpha) const {
        return alpha_high && alpha_low <= alpha && alpha <= *alpha_high;
    }
};

/// Which alpha-indexed family the threshold search walks.
enum class AlphaFamily { GeneralizedPointPair, InversionPsi };

MetricSpec metric_for(AlphaFamily family, double alpha);

/// m(x,y) / (m(x,z) + m(z,y)). Throws DegenerateTripleError if x == y or z
/// coincides with x or y, and the usual membership/dimension errors.
double triangle_ratio(const MetricSpec& metric, const Domain& domain, const Triple& t);

/// Multi-start estimate of sup c(x,y,z;G) over triples of the fixed domain.
/// Requires budget >= 1000. Deterministic in (seed, budget, options.restarts).
QuasiEstimate estimate_quasi_constant(const MetricSpec& metric, const Domain& domain,
                                      std::int64_t budget, std::uint64_t seed,
                                      const SearchOptions& options = {});

/// First triple (by restart index) whose refined ratio exceeds 1 + margin,
/// re-verified by direct evaluation; nothing if the budget is exhausted.
std::optional<Violation> find_violation(const MetricSpec& metric, const Domain& domain,
                                        std::int64_t budget, std::uint64_t seed,
                                        const SearchOptions& options = {});

/// Bisection on alpha between alpha_lo and alpha_hi until the bracket is at
/// most `tol` wide. The upper end is probed first; if it shows no violation the
/// report has no alpha_high.
ThresholdReport alpha_threshold(const Domain& domain, double alpha_lo, double alpha_hi, double tol,
                                std::int64_t budget, std::uint64_t seed,
                                AlphaFamily family = AlphaFamily::GeneralizedPointPair,
                                const SearchOptions& options = {});

/// sqrt((k^2 + alpha(1-k)) / (4k^2 + alpha(1-k)^2)): the triangle ratio of p^alpha
/// on the unit ball at x = k e1, y = -k e1, z = 0.
double ball_ratio(double alpha, double k);

/// The counterexample on the unit ball with k = alpha/(4+alpha). The ratio is the
/// closed form, checked against direct evaluation (NumericalError on mismatch).
Violation ball_counterexample(double alpha, std::size_t n);

/// Triple (1/u^2, u^2, 1) on the positive axis with u^2 = (t + sqrt(t^2-4))/2,
/// for 2 < t < (alpha-6)/3. Violates the triangle inequality for p^alpha.
Triple rplus_violation_from_t(double alpha, double t);

/// x = z0 - (r/3) dir, y = z0 + (r/3) dir, z = z0.
Triple sharpness_witness(const Point& z0, double r, const Point& direction);

/// Maximizer of ball_ratio(alpha, .) over (0, 1).
double c_star_k(double alpha);
/// Lower bound for the quasi-metric constant of p^alpha on the unit ball.
double c_star(double alpha);

struct OneDimClass {
    bool metric = false;
    /// Sharp quasi-metric constant (1 for a metric).
    double constant = 1.0;
};

/// Classification of p_G on a one-dimensional domain by the size of its boundary.
OneDimClass classify_1d(const Domain& domain);

} // namespace pointpair
