#include "pointpair/random.hpp"

#include <cmath>

namespace pointpair {

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                      0x9e3779b9u};
    engine_.seed(seq);
}

double Rng::uniform() {
    // 53 random bits, shifted by half an ulp so that 0 is never produced.
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
}

double Rng::normal() { return normal_(engine_); }

void Rng::unit_vector(std::span<double> out) {
    if (out.size() == 1) {
        out[0] = (engine_() & 1u) ? 1.0 : -1.0;
        return;
    }
    for (;;) {
        double sq = 0.0;
        for (double& c : out) {
            c = normal();
            sq += c * c;
        }
        if (sq > 1e-24) {
            const double inv = 1.0 / std::sqrt(sq);
            for (double& c : out) c *= inv;
            return;
        }
    }
}

} // namespace pointpair
