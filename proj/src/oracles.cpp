#include "pointpair/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "parallel.hpp"
#include "pointpair/error.hpp"
#include "pointpair/optimize.hpp"
#include "pointpair/random.hpp"

namespace pointpair::oracles {

namespace {

const double kTwoOverSqrt5 = 2.0 / std::sqrt(5.0);

// Random sweeps always use this many independent streams; workers only decide
// how they are scheduled.
constexpr std::size_t kStreams = 16;

constexpr double kLemma31Slack = 1e-12;
constexpr double kHSlack = 1e-12;
constexpr double kSinhSlack = 1e-9;

std::int64_t stream_share(std::int64_t total, std::size_t index) {
    const auto k = static_cast<std::int64_t>(kStreams);
    return total / k + (static_cast<std::int64_t>(index) < total % k ? 1 : 0);
}

// Smaller margin wins; ties go to the earlier sample so reductions are stable.
void absorb(SweepSummary& acc, const MarginSample& s, double slack) {
    if (acc.samples == 0 || s.margin < acc.min.margin) acc.min = s;
    ++acc.samples;
    if (s.margin < -slack) ++acc.failures;
}

void merge(SweepSummary& acc, const SweepSummary& part) {
    if (part.samples == 0) return;
    if (acc.samples == 0 || part.min.margin < acc.min.margin) acc.min = part.min;
    acc.samples += part.samples;
    acc.failures += part.failures;
}

using Draw = std::function<MarginSample(Rng&)>;

SweepSummary random_sweep(const Draw& draw, std::int64_t samples, std::uint64_t seed,
                          unsigned workers, double slack) {
    if (samples < 1) throw ParameterError("a sweep needs at least one sample");
    std::vector<SweepSummary> parts(kStreams);
    detail::parallel_for(0, kStreams, workers, [&](std::size_t i) {
        Rng rng(seed, i);
        for (std::int64_t k = stream_share(samples, i); k > 0; --k) absorb(parts[i], draw(rng), slack);
    });
    SweepSummary total;
    for (const auto& p : parts) merge(total, p);
    return total;
}

std::vector<MarginSample> random_samples(const Draw& draw, std::int64_t samples, std::uint64_t seed) {
    if (samples < 1) throw ParameterError("a sweep needs at least one sample");
    std::vector<MarginSample> out;
    out.reserve(static_cast<std::size_t>(samples));
    for (std::size_t i = 0; i < kStreams; ++i) {
        Rng rng(seed, i);
        for (std::int64_t k = stream_share(samples, i); k > 0; --k) out.push_back(draw(rng));
    }
    return out;
}

MarginSample draw_lemma31(Rng& rng) {
    const double x = rng.uniform(-1.0, 0.0);
    double z = rng.uniform();
    double y = rng.uniform();
    if (z > y) std::swap(z, y);
    return {{x, z, y}, lemma31_margin(x, z, y)};
}

MarginSample draw_lemma41(Rng& rng) {
    const double x = rng.uniform(0.0, 5.0), y = rng.uniform(0.0, 5.0);
    const double u = rng.uniform(0.0, 5.0), v = rng.uniform(0.0, 5.0);
    const auto m = lemma41_margin(x, y, u, v);
    return {{x, y, u, v}, std::min(m.arsh, m.th)};
}

double squash(double t) { return t / std::sqrt(1.0 + t * t); }

MarginSample draw_lemma52(Rng& rng) {
    for (;;) {
        const double B = rng.uniform(0.0, 3.0), C = rng.uniform(0.0, 3.0);
        if (!(squash(B) + squash(C) < 1.0)) continue;
        const double b = rng.uniform(0.0, 5.0), c = rng.uniform(0.0, 5.0);
        return {{B, C, b, c}, lemma52_margin(B, C, b, c)};
    }
}

// sqrt(s / (1 + s)) for s = P^2 + p^2.
double th_term(double P, double p) {
    const double s = P * P + p * p;
    return std::sqrt(s / (1.0 + s));
}

} // namespace

double lemma31_f(double x, double y) {
    if (x == y) return 0.0;
    const double d = y - x;
    return d / std::sqrt(d * d + 4.0 * (1.0 + x) * (1.0 - y));
}

double lemma31_g(double x, double y) {
    if (x == y) return 0.0;
    return (y - x) / (2.0 - x - y);
}

double lemma31_margin(double x, double z, double y) {
    if (!(-1.0 <= x && x <= 0.0 && 0.0 <= z && z <= y && y <= 1.0))
        throw ParameterError("lemma31_margin needs -1 <= x <= 0 <= z <= y <= 1");
    return lemma31_f(x, z) + lemma31_g(z, y) - kTwoOverSqrt5 * lemma31_f(x, y);
}

double lemma31_relative_margin(double x, double z, double y) {
    (void)lemma31_margin(x, z, y);
    const double fxy = lemma31_f(x, y);
    if (fxy == 0.0) throw ParameterError("relative margin undefined at x == y");
    return (lemma31_f(x, z) + lemma31_g(z, y)) / fxy - kTwoOverSqrt5;
}

double h_poly(double zeta) {
    if (!(zeta >= 0.0)) throw ParameterError("h_poly needs zeta >= 0");
    // Horner form of 10 z^4 + 16 z^3 + 12/5 z^2 - 16/5 z + 2/5.
    return (((10.0 * zeta + 16.0) * zeta + 2.4) * zeta - 3.2) * zeta + 0.4;
}

Lemma41Margins lemma41_margin(double x, double y, double u, double v) {
    if (!(x >= 0.0 && y >= 0.0 && u >= 0.0 && v >= 0.0))
        throw ParameterError("lemma41_margin needs nonnegative arguments");
    const double A = std::sinh(x + y), a = std::sinh(u + v);
    const double B = std::sinh(x), C = std::sinh(y);
    const double b = std::sinh(u), c = std::sinh(v);
    Lemma41Margins m;
    m.arsh = std::asinh(std::hypot(B, b)) + std::asinh(std::hypot(C, c)) - std::asinh(std::hypot(A, a));
    m.th = th_term(B, b) + th_term(C, c) - th_term(A, a);
    return m;
}

double lemma52_margin(double B, double C, double b, double c) {
    if (!(B > 0.0 && C > 0.0 && b >= 0.0 && c >= 0.0))
        throw ParameterError("lemma52_margin needs B, C > 0 and b, c >= 0");
    const double a1 = squash(B) + squash(C);
    if (!(a1 < 1.0)) throw ParameterError("no A satisfies the equality case: B and C too large");
    const double A = a1 / std::sqrt(1.0 - a1 * a1);
    return th_term(B, b) + th_term(C, c) - th_term(A, b + c);
}

double rplus_margin(double alpha, double t) {
    if (!(alpha > 0.0) || !(t >= 2.0)) throw ParameterError("rplus_margin needs alpha > 0, t >= 2");
    return (t - 2.0) * (3.0 * t - (alpha - 6.0));
}

double rplus_margin_expanded(double alpha, double t) {
    if (!(alpha > 0.0) || !(t >= 2.0)) throw ParameterError("rplus_margin needs alpha > 0, t >= 2");
    return 3.0 * t * t - alpha * t + 2.0 * alpha - 12.0;
}

SweepSummary sweep_lemma31(std::int64_t samples, std::uint64_t seed, unsigned workers) {
    return random_sweep(draw_lemma31, samples, seed, workers, kLemma31Slack);
}

SweepSummary sweep_lemma41(std::int64_t samples, std::uint64_t seed, unsigned workers) {
    return random_sweep(draw_lemma41, samples, seed, workers, kSinhSlack);
}

SweepSummary sweep_lemma52(std::int64_t samples, std::uint64_t seed, unsigned workers) {
    return random_sweep(draw_lemma52, samples, seed, workers, kSinhSlack);
}

std::vector<MarginSample> samples_lemma31(std::int64_t samples, std::uint64_t seed) {
    return random_samples(draw_lemma31, samples, seed);
}

std::vector<MarginSample> samples_lemma41(std::int64_t samples, std::uint64_t seed) {
    return random_samples(draw_lemma41, samples, seed);
}

std::vector<MarginSample> samples_lemma52(std::int64_t samples, std::uint64_t seed) {
    return random_samples(draw_lemma52, samples, seed);
}

MarginSample refine_lemma31(std::uint64_t seed, int starts) {
    if (starts < 1) throw ParameterError("refine_lemma31 needs at least one start");
    // Projection onto the ordered box plus a quadratic penalty for the distance
    // moved, so the simplex is pulled back toward the feasible set.
    auto project = [](std::span<const double> p, double& penalty) {
        const double x = std::clamp(p[0], -1.0, 0.0);
        const double z = std::clamp(p[1], 0.0, 1.0);
        const double y = std::clamp(p[2], z, 1.0);
        penalty = (p[0] - x) * (p[0] - x) + (p[1] - z) * (p[1] - z) + (p[2] - y) * (p[2] - y);
        return std::array<double, 3>{x, z, y};
    };
    const std::function<double(std::span<const double>)> objective = [&](std::span<const double> p) {
        double penalty = 0.0;
        const auto q = project(p, penalty);
        if (q[0] == q[2]) return -std::numeric_limits<double>::infinity();
        return -lemma31_relative_margin(q[0], q[1], q[2]) - penalty;
    };

    Rng rng(seed, 0);
    std::vector<std::pair<double, std::vector<double>>> candidates;
    for (int i = 0; i < starts; ++i) {
        auto s = draw_lemma31(rng).inputs;
        if (s[0] == s[2]) continue;
        candidates.emplace_back(lemma31_relative_margin(s[0], s[1], s[2]), std::move(s));
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    candidates.resize(std::min<std::size_t>(candidates.size(), 8));

    MarginSample best;
    double best_rel = std::numeric_limits<double>::infinity();
    NelderMeadOptions opts;
    opts.max_evals = 20000;
    const std::vector<double> step{0.05, 0.05, 0.05};
    for (auto& [rel, start] : candidates) {
        const auto r = nelder_mead_maximize(objective, start, step, opts);
        double penalty = 0.0;
        const auto q = project(r.x, penalty);
        const double rel_here = lemma31_relative_margin(q[0], q[1], q[2]);
        if (rel_here < best_rel) {
            best_rel = rel_here;
            best = {{q[0], q[1], q[2]}, lemma31_margin(q[0], q[1], q[2])};
        }
    }
    return best;
}

SweepSummary sweep_h(std::int64_t points) {
    if (points < 2) throw ParameterError("sweep_h needs at least two grid points");
    SweepSummary acc;
    const double step = 1.0 / static_cast<double>(points - 1);
    for (std::int64_t i = 0; i < points; ++i) {
        const double zeta = static_cast<double>(i) * step;
        absorb(acc, {{zeta}, h_poly(zeta)}, kHSlack);
    }
    return acc;
}

SweepSummary sweep_rplus(double alpha, std::int64_t points, double t_lo, double t_hi) {
    if (points < 2 || !(t_lo >= 2.0) || !(t_lo < t_hi))
        throw ParameterError("sweep_rplus needs 2 <= t_lo < t_hi and at least two points");
    SweepSummary acc;
    const double step = (t_hi - t_lo) / static_cast<double>(points - 1);
    for (std::int64_t i = 0; i < points; ++i) {
        const double t = t_lo + static_cast<double>(i) * step;
        absorb(acc, {{alpha, t}, rplus_margin(alpha, t)}, 0.0);
    }
    return acc;
}

} // namespace pointpair::oracles
