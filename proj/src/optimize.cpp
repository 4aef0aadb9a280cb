#include "pointpair/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "pointpair/error.hpp"

namespace pointpair {

namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

struct Vertex {
    std::vector<double> x;
    double f; // objective value; larger is better
};

class Simplex {
public:
    Simplex(const std::function<double(std::span<const double>)>& objective, int budget)
        : objective_(objective), budget_(budget) {}

    bool exhausted() const { return evals_ >= budget_; }
    int evaluations() const { return evals_; }

    double eval(std::span<const double> x) {
        ++evals_;
        const double v = objective_(x);
        return std::isnan(v) ? -std::numeric_limits<double>::infinity() : v;
    }

    // One run from a fresh simplex around `start`; returns the best vertex.
    Vertex run(const Vertex& start, std::span<const double> step, double ftol, double xtol,
               bool& converged) {
        const std::size_t n = start.x.size();
        std::vector<Vertex> v;
        v.reserve(n + 1);
        v.push_back(start);
        for (std::size_t i = 0; i < n && !exhausted(); ++i) {
            Vertex w = start;
            w.x[i] += step[i];
            w.f = eval(w.x);
            if (w.f == -std::numeric_limits<double>::infinity()) {
                // Try the opposite side before giving up on this edge.
                w.x[i] = start.x[i] - step[i];
                w.f = eval(w.x);
            }
            v.push_back(std::move(w));
        }
        if (v.size() < n + 1) {
            converged = false;
            return start;
        }

        double step_norm = 0.0;
        for (double s : step) step_norm = std::max(step_norm, std::abs(s));
        std::vector<double> centroid(n), trial(n);

        converged = false;
        while (!exhausted()) {
            std::sort(v.begin(), v.end(), [](const Vertex& a, const Vertex& b) { return a.f > b.f; });
            const Vertex& best = v.front();
            const Vertex& worst = v.back();

            double diameter = 0.0;
            for (std::size_t k = 1; k <= n; ++k)
                for (std::size_t i = 0; i < n; ++i)
                    diameter = std::max(diameter, std::abs(v[k].x[i] - best.x[i]));
            const bool flat = std::isfinite(worst.f) &&
                              best.f - worst.f <= ftol * std::max(1.0, std::abs(best.f));
            if (flat && diameter <= xtol * step_norm) {
                converged = true;
                break;
            }
            if (diameter == 0.0) break;

            std::fill(centroid.begin(), centroid.end(), 0.0);
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t i = 0; i < n; ++i) centroid[i] += v[k].x[i];
            for (double& c : centroid) c /= static_cast<double>(n);

            auto along = [&](double coef) {
                for (std::size_t i = 0; i < n; ++i)
                    trial[i] = centroid[i] + coef * (centroid[i] - worst.x[i]);
                return Vertex{trial, eval(trial)};
            };

            Vertex r = along(kReflect);
            if (r.f > best.f) {
                Vertex e = along(kExpand);
                v.back() = e.f > r.f ? std::move(e) : std::move(r);
                continue;
            }
            if (r.f > v[n - 1].f) {
                v.back() = std::move(r);
                continue;
            }
            const bool outside = r.f > worst.f;
            Vertex c = outside ? along(kContract * kReflect) : along(-kContract);
            if (outside ? c.f >= r.f : c.f > worst.f) {
                v.back() = std::move(c);
                continue;
            }
            for (std::size_t k = 1; k <= n && !exhausted(); ++k) {
                for (std::size_t i = 0; i < n; ++i)
                    v[k].x[i] = best.x[i] + kShrink * (v[k].x[i] - best.x[i]);
                v[k].f = eval(v[k].x);
            }
        }
        return *std::max_element(v.begin(), v.end(),
                                 [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    }

private:
    const std::function<double(std::span<const double>)>& objective_;
    int budget_;
    int evals_ = 0;
};

} // namespace

NelderMeadResult nelder_mead_maximize(const std::function<double(std::span<const double>)>& objective,
                                      std::vector<double> x0, std::span<const double> step,
                                      const NelderMeadOptions& options) {
    if (step.size() != x0.size()) throw DimensionError("step size vector has the wrong length");
    Simplex simplex(objective, options.max_evals);
    Vertex best{std::move(x0), 0.0};
    best.f = simplex.eval(best.x);
    if (!std::isfinite(best.f)) return {best.x, best.f, simplex.evaluations(), false};

    std::vector<double> cur_step(step.begin(), step.end());
    bool converged = false;
    for (int round = 0; round <= options.max_restarts && !simplex.exhausted(); ++round) {
        const Vertex next = simplex.run(best, cur_step, options.ftol, options.xtol, converged);
        const double gain = next.f - best.f;
        if (next.f > best.f) best = next;
        if (!converged) break;
        if (round > 0 && gain <= options.ftol * std::max(1.0, std::abs(best.f))) break;
        for (double& s : cur_step) s *= 0.5;
    }
    return {best.x, best.f, simplex.evaluations(), converged};
}

} // namespace pointpair
