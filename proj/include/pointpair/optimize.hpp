#pragma once

#include <functional>
#include <span>
#include <vector>

namespace pointpair {

struct NelderMeadOptions {
    int max_evals = 20000;
    /// Converged when the spread of values over the simplex is below
    /// ftol * max(1, |best|) and its diameter is below xtol times the initial step.
    double ftol = 1e-15;
    double xtol = 1e-10;
    /// Fresh simplices rebuilt around the best vertex after convergence.
    int max_restarts = 6;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    int evaluations = 0;
    bool converged = false;
};

/// Maximizes `objective` with the Nelder-Mead simplex method. The objective may
/// return -infinity to reject a point (outside the feasible set); such vertices
/// are never accepted over a finite one. `x0` must be feasible.
NelderMeadResult nelder_mead_maximize(const std::function<double(std::span<const double>)>& objective,
                                      std::vector<double> x0, std::span<const double> step,
                                      const NelderMeadOptions& options = {});

} // namespace pointpair
