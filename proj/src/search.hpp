#pragma once

// Internal machinery for the triangle-ratio searches: the parametrization of
// triples, the sampler and one multi-start unit.

#include <cstdint>
#include <span>
#include <vector>

#include "pointpair/analysis.hpp"
#include "pointpair/random.hpp"

namespace pointpair::detail {

/// Triples of a fixed domain as a flat parameter vector. On domains with a
/// transitive similarity group acting on z (rplus, punctured space, half-space,
/// punctured axis) z is pinned to a canonical point and only x, y are free.
class TripleSpace {
public:
    TripleSpace(const MetricSpec& metric, const Domain& domain);

    std::size_t ambient_dim() const noexcept { return n_; }
    std::size_t param_dim() const noexcept { return pinned_ ? 2 * n_ : 3 * n_; }
    bool pinned() const noexcept { return pinned_; }

    /// Parameters -> flat (x, y, z) buffer of length 3n.
    void decode(std::span<const double> params, std::span<double> xyz) const;
    /// Maps the triple by a ratio-preserving similarity (when pinned) and
    /// extracts the parameters. `xyz` is modified in place.
    void encode(std::span<double> xyz, std::span<double> params) const;

    /// Triangle ratio of a flat triple; -infinity for non-members and for
    /// triples whose closest pair is below the degeneracy guard.
    double ratio(std::span<const double> xyz) const noexcept;

    /// Draws a candidate triple (flat buffer of length 3n).
    void sample(Rng& rng, std::span<double> xyz) const;

    /// Initial simplex steps for a refinement started at `params`.
    std::vector<double> initial_step(std::span<const double> params) const;

    Triple to_triple(std::span<const double> xyz) const;

private:
    void draw_near(Rng& rng, std::span<const double> anchor, double radius,
                   std::span<double> out) const;

    MetricSpec metric_;
    Domain domain_;
    std::size_t n_;
    bool pinned_;
};

struct UnitResult {
    std::vector<double> params;
    double value = 0.0;
    std::int64_t evaluations = 0;
    bool converged = false;
};

/// One multi-start unit: `samples` random candidates, then a Nelder-Mead
/// refinement of the best one. Uses the stream (seed, index).
UnitResult run_unit(const TripleSpace& space, std::uint64_t seed, std::size_t index,
                    std::int64_t samples, int refine_evals);

} // namespace pointpair::detail
