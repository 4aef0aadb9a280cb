#pragma once

#include <cstdint>
#include <vector>

namespace pointpair::oracles {

// Each margin is oriented so that "the inequality holds" means margin >= 0.

/// One evaluated point of a sweep.
struct MarginSample {
    std::vector<double> inputs;
    double margin = 0.0;
};

/// Reduction of a sweep: minimum margin and where it occurred.
struct SweepSummary {
    std::int64_t samples = 0;
    MarginSample min;
    /// Samples with a negative margin below the sweep's tolerance.
    std::int64_t failures = 0;
};

/// f(x,y) = (y-x) / sqrt((y-x)^2 + 4(1+x)(1-y)) on [-1,0]x[0,1], 0 when x == y.
double lemma31_f(double x, double y);
/// g(x,y) = (y-x) / (2-x-y) on [0,1]^2, 0 when x == y.
double lemma31_g(double x, double y);

/// f(x,z) + g(z,y) - (2/sqrt5) f(x,y) for -1 <= x <= 0 <= z <= y <= 1.
double lemma31_margin(double x, double z, double y);

/// (f(x,z) + g(z,y)) / f(x,y) - 2/sqrt5, the scale-free form of the same
/// inequality. Zero only at the equality triple; undefined (throws) when x == y.
double lemma31_relative_margin(double x, double z, double y);

/// 10 z^4 + 16 z^3 + (12/5) z^2 - (16/5) z + 2/5.
double h_poly(double zeta);

struct Lemma41Margins {
    double arsh = 0.0; ///< sum of the two arsinh terms minus the combined one
    double th = 0.0;   ///< the same comparison after the map s -> sqrt(s^2/(1+s^2))
};

/// Both sh-inequalities with A = sh(x+y), a = sh(u+v), B = sh x, C = sh y,
/// b = sh u, c = sh v. All arguments nonnegative.
Lemma41Margins lemma41_margin(double x, double y, double u, double v);

/// Margin of the inequality with A fixed by A/sqrt(1+A^2) = B/sqrt(1+B^2) +
/// C/sqrt(1+C^2) and a = b + c. Throws ParameterError when no such A exists.
double lemma52_margin(double B, double C, double b, double c);

/// (t-2)(3t-(alpha-6)).
double rplus_margin(double alpha, double t);
/// 3t^2 - alpha t + 2 alpha - 12, the expanded form.
double rplus_margin_expanded(double alpha, double t);

// Sweeps. Random sweeps are deterministic in seed and split across `workers`
// threads with an order-independent reduction.

/// Uniform samples of the ordered box -1 <= x <= 0 <= z <= y <= 1.
SweepSummary sweep_lemma31(std::int64_t samples, std::uint64_t seed, unsigned workers = 1);

/// Local minimization of lemma31_relative_margin over the ordered box, started
/// from the best of `starts` random points. Returns the minimizer and the
/// absolute margin there.
MarginSample refine_lemma31(std::uint64_t seed, int starts = 64);

/// h on `points` equally spaced nodes of [0, 1].
SweepSummary sweep_h(std::int64_t points);

/// Uniform samples of [0, 5]^4; the summary tracks min(arsh, th).
SweepSummary sweep_lemma41(std::int64_t samples, std::uint64_t seed, unsigned workers = 1);

/// B, C uniform on (0, 3] with a valid A, b, c uniform on [0, 5].
SweepSummary sweep_lemma52(std::int64_t samples, std::uint64_t seed, unsigned workers = 1);

/// rplus_margin on `points` equally spaced nodes of [t_lo, t_hi].
SweepSummary sweep_rplus(double alpha, std::int64_t points, double t_lo = 2.0, double t_hi = 100.0);

/// Every evaluated sample, for record output. Same draws as the sweep with
/// the same arguments.
std::vector<MarginSample> samples_lemma31(std::int64_t samples, std::uint64_t seed);
std::vector<MarginSample> samples_lemma41(std::int64_t samples, std::uint64_t seed);
std::vector<MarginSample> samples_lemma52(std::int64_t samples, std::uint64_t seed);

} // namespace pointpair::oracles
