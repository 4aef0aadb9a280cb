#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace pointpair {

/// Seeded generator shared by the samplers and the search. A (seed, stream)
/// pair identifies an independent sequence, so parallel workers can each own
/// one without coordination.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    /// Uniform on the open interval (0, 1).
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// exp of a uniform draw on [log lo, log hi].
    double log_uniform(double lo, double hi);
    double normal();
    /// Uniform direction on the unit sphere S^{n-1}; n = out.size().
    void unit_vector(std::span<double> out);
    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

} // namespace pointpair
