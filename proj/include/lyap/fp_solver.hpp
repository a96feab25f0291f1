#pragma once

#include "lyap/model.hpp"

#include <vector>

namespace lyap {

/// Sampled stationary angular density with the extracted current.
/// For rotation-noise-free models the solve runs on the projective line and
/// the angular view is derived from it (open grid, boundary values are
/// limits).
struct DensityProfile {
    std::vector<double> phi; ///< angular nodes in (-pi, pi), increasing
    std::vector<double> fa;  ///< angular density at the nodes
    double current = 0.0;    ///< stationary current j
    double norm_error = 0.0; ///< |integral - 1| before the final normalization
    bool zero_current_branch = false;

    double fa_minus_pi = 0.0, fa_plus_pi = 0.0; ///< boundary values
    double dfa_minus_pi = 0.0, dfa_plus_pi = 0.0; ///< boundary derivatives

    /// Projective-line view (populated by the line solver; derived otherwise).
    bool line_grid = false;
    std::vector<double> z;
    std::vector<double> fz;

    /// Degenerate stationary state concentrated at one projective point
    /// (pure stretch drift): no sampled values, only the location.
    bool point_mass = false;
    bool point_at_infinity = false;
    double point_location = 0.0;
};

/// Raised when the angular noise amplitude vanishes inside the domain.
struct degenerate_diffusion : std::domain_error {
    using std::domain_error::domain_error;
};

/// Stationary solve.  Models with rotation noise use the periodic angular
/// form on a uniform grid; rotation-noise-free models with a strictly
/// positive line variance use a stretched grid on the projective line.
DensityProfile stationary_density(const DisorderModel& m, int grid_size = 4096);

/// Growth rate from the sampled density (principal values on symmetric
/// grids).
double gamma_from_density(const DisorderModel& m, const DensityProfile& d);

/// Convenience: gamma + i pi j through the solver.
cplx omega_fp(const DisorderModel& m, int grid_size = 4096);

/// Boundary-tail identity defect: the current reconstructed from the density
/// tails minus the extracted current.
double rice_residual(const DisorderModel& m, const DensityProfile& d);

/// Defect of the transform identity Q F' + R F = S + 2 Omega at the probe
/// points (lower half-plane); F from quadrature of the density, F' by
/// centered differences of probes.
double hilbert_residual(const DisorderModel& m, const DensityProfile& d, cplx omega,
                        const std::vector<cplx>& probes);

} // namespace lyap
