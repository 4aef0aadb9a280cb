#include "search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pointpair/optimize.hpp"

namespace pointpair::detail {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// Triples whose closest pair is nearer than this (relative to the largest
// boundary distance among the three) are discarded.
constexpr double kDegenerateGuard = 1e-9;
// Local candidates are drawn at log-uniform radii in this multiple of d_G(x).
constexpr double kLocalLo = 1e-3;
constexpr double kLocalHi = 10.0;
constexpr int kLocalTries = 8;

bool pinnable(const Domain& d) {
    return d.is<PositiveAxis>() || d.is<PuncturedSpace>() || d.is<HalfSpace>() ||
           d.is<PuncturedAxis3D>();
}

void scale(std::span<double> v, double s) {
    for (double& c : v) c *= s;
}

} // namespace

TripleSpace::TripleSpace(const MetricSpec& metric, const Domain& domain)
    : metric_(metric), domain_(domain), n_(domain.dim()), pinned_(pinnable(domain)) {
    metric_.check_domain(domain_);
}

void TripleSpace::decode(std::span<const double> params, std::span<double> xyz) const {
    if (!pinned_) {
        std::copy(params.begin(), params.end(), xyz.begin());
        return;
    }
    std::copy(params.begin(), params.end(), xyz.begin());
    auto z = xyz.subspan(2 * n_, n_);
    std::fill(z.begin(), z.end(), 0.0);
    // Canonical z: e_n on the half-space, e_1 elsewhere.
    z[domain_.is<HalfSpace>() ? n_ - 1 : 0] = 1.0;
}

void TripleSpace::encode(std::span<double> xyz, std::span<double> params) const {
    const std::size_t n = n_;
    auto x = xyz.subspan(0, n);
    auto y = xyz.subspan(n, n);
    auto z = xyz.subspan(2 * n, n);
    if (pinned_) {
        if (domain_.is<PositiveAxis>()) {
            const double s = 1.0 / z[0];
            scale(xyz, s);
        } else if (domain_.is<PuncturedSpace>()) {
            const double r = norm(z);
            scale(xyz, 1.0 / r);
            if (n == 1) {
                if (z[0] < 0.0) scale(xyz, -1.0);
            } else {
                // Householder reflection taking z/|z| to e1.
                std::vector<double> v(z.begin(), z.end());
                v[0] -= 1.0;
                double vv = 0.0;
                for (double c : v) vv += c * c;
                if (vv > 1e-30) {
                    for (auto w : {x, y}) {
                        double vw = 0.0;
                        for (std::size_t i = 0; i < n; ++i) vw += v[i] * w[i];
                        for (std::size_t i = 0; i < n; ++i) w[i] -= 2.0 * vw / vv * v[i];
                    }
                }
            }
        } else if (domain_.is<HalfSpace>()) {
            const double h = z[n - 1];
            for (auto w : {x, y})
                for (std::size_t i = 0; i + 1 < n; ++i) w[i] -= z[i];
            scale(x, 1.0 / h);
            scale(y, 1.0 / h);
        } else if (domain_.is<PuncturedAxis3D>()) {
            const double rho = std::hypot(z[0], z[1]);
            const double c = z[0] / rho;
            const double s = z[1] / rho;
            for (auto w : {x, y}) {
                const double a = w[0], b = w[1];
                w[0] = (a * c + b * s) / rho;
                w[1] = (-a * s + b * c) / rho;
                w[2] = (w[2] - z[2]) / rho;
            }
        }
        std::fill(z.begin(), z.end(), 0.0);
        z[domain_.is<HalfSpace>() ? n - 1 : 0] = 1.0;
    }
    std::copy(xyz.begin(), xyz.begin() + static_cast<std::ptrdiff_t>(param_dim()), params.begin());
}

double TripleSpace::ratio(std::span<const double> xyz) const noexcept {
    const auto x = xyz.subspan(0, n_);
    const auto y = xyz.subspan(n_, n_);
    const auto z = xyz.subspan(2 * n_, n_);
    const double dx = distance_unchecked(domain_, x);
    const double dy = distance_unchecked(domain_, y);
    const double dz = distance_unchecked(domain_, z);
    if (!(dx > 0.0) || !(dy > 0.0) || !(dz > 0.0)) return kNegInf;
    const double closest = std::min({distance(x, y), distance(x, z), distance(z, y)});
    if (!(closest >= kDegenerateGuard * std::max({dx, dy, dz}))) return kNegInf;
    const double num = evaluate_unchecked(metric_, domain_, x, y);
    const double den = evaluate_unchecked(metric_, domain_, x, z) +
                       evaluate_unchecked(metric_, domain_, z, y);
    const double r = num / den;
    return std::isfinite(r) ? r : kNegInf;
}

void TripleSpace::draw_near(Rng& rng, std::span<const double> anchor, double radius,
                            std::span<double> out) const {
    for (int attempt = 0; attempt < kLocalTries; ++attempt) {
        rng.unit_vector(out);
        const double r = radius * rng.log_uniform(kLocalLo, kLocalHi);
        for (std::size_t i = 0; i < n_; ++i) out[i] = anchor[i] + r * out[i];
        if (contains_unchecked(domain_, out)) return;
    }
    sample_point(domain_, rng, out);
}

void TripleSpace::sample(Rng& rng, std::span<double> xyz) const {
    auto x = xyz.subspan(0, n_);
    auto y = xyz.subspan(n_, n_);
    auto z = xyz.subspan(2 * n_, n_);
    sample_point(domain_, rng, x);
    const double u = rng.uniform();
    if (u < 0.35) {
        sample_point(domain_, rng, y);
        sample_point(domain_, rng, z);
        return;
    }
    const double dx = distance_unchecked(domain_, x);
    draw_near(rng, x, dx, y);
    if (u < 0.7) {
        draw_near(rng, x, dx, z);
        return;
    }
    // z near the segment [x, y]: the region where the ratio is largest.
    const double t = rng.uniform();
    const double len = distance(x, y);
    std::vector<double> mid(n_);
    for (std::size_t i = 0; i < n_; ++i) mid[i] = x[i] + t * (y[i] - x[i]);
    if (contains_unchecked(domain_, mid))
        draw_near(rng, mid, 0.1 * len, z);
    else
        draw_near(rng, x, dx, z);
}

std::vector<double> TripleSpace::initial_step(std::span<const double> params) const {
    std::vector<double> xyz(3 * n_);
    decode(params, xyz);
    const auto x = std::span<const double>(xyz).subspan(0, n_);
    const auto y = std::span<const double>(xyz).subspan(n_, n_);
    const auto z = std::span<const double>(xyz).subspan(2 * n_, n_);
    const double closest = std::min({distance(x, y), distance(x, z), distance(z, y)});
    std::vector<double> step(param_dim());
    const std::size_t free_points = pinned_ ? 2 : 3;
    for (std::size_t k = 0; k < free_points; ++k) {
        const double d = distance_unchecked(domain_, std::span<const double>(xyz).subspan(k * n_, n_));
        const double s = 0.1 * std::min(d, closest);
        for (std::size_t i = 0; i < n_; ++i) step[k * n_ + i] = s;
    }
    return step;
}

Triple TripleSpace::to_triple(std::span<const double> xyz) const {
    auto pt = [&](std::size_t k) {
        auto s = xyz.subspan(k * n_, n_);
        return Point(std::vector<double>(s.begin(), s.end()));
    };
    return Triple{pt(0), pt(1), pt(2)};
}

UnitResult run_unit(const TripleSpace& space, std::uint64_t seed, std::size_t index,
                    std::int64_t samples, int refine_evals) {
    Rng rng(seed, index + 1);
    const std::size_t n3 = 3 * space.ambient_dim();
    std::vector<double> xyz(n3), params(space.param_dim());

    UnitResult result;
    result.value = kNegInf;
    for (std::int64_t i = 0; i < samples; ++i) {
        space.sample(rng, xyz);
        if (space.ratio(xyz) == kNegInf) continue;
        space.encode(xyz, params);
        // Re-evaluate after normalization so the recorded value matches the parameters.
        space.decode(params, xyz);
        const double v = space.ratio(xyz);
        if (v > result.value) {
            result.value = v;
            result.params = params;
        }
    }
    result.evaluations = samples;
    if (result.params.empty() || refine_evals <= 0) return result;

    std::vector<double> scratch(n3);
    const std::function<double(std::span<const double>)> objective =
        [&](std::span<const double> p) {
            space.decode(p, scratch);
            return space.ratio(scratch);
        };
    NelderMeadOptions opts;
    opts.max_evals = refine_evals;
    const auto step = space.initial_step(result.params);
    auto refined = nelder_mead_maximize(objective, result.params, step, opts);
    result.evaluations += refined.evaluations;
    result.converged = refined.converged;
    if (refined.value >= result.value) {
        result.value = refined.value;
        result.params = std::move(refined.x);
    }
    return result;
}

} // namespace pointpair::detail
