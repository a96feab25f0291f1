#pragma once

#include "lyap/fp_solver.hpp"
#include "lyap/model.hpp"

#include <cstdint>

namespace lyap {

/// Common knobs of the stochastic routes.  Per-step parameters are Gaussian
/// with the model's means and covariance.
struct McConfig {
    long long n_steps = 1000000; ///< product length per replica (>= 1e3)
    int n_replicas = 8;
    std::uint64_t seed = 1;
    int renorm_interval = 16;    ///< steps between norm renormalizations (>= 1)
    double burn_in_fraction = 0.1;
    double dt = 1e-2;            ///< diffusion-route step
    double z_cap = 1e6;          ///< diffusion-route reinjection threshold

    void validate() const;
};

struct McEstimate {
    double gamma_hat = 0.0, gamma_err = 0.0;
    double j_hat = 0.0, j_err = 0.0;
    long long effective_steps = 0;
};

/// Growth rate of the matrix product from accumulated log-norms with periodic
/// renormalization; spread across replicas gives the error bars.
McEstimate simulate_lyapunov(const DisorderModel& m, const McConfig& cfg);

/// Rotation number from the winding of the projective orbit (passages through
/// the point at infinity counted with orientation), after burn-in.
McEstimate simulate_rotation_number(const DisorderModel& m, const McConfig& cfg);

/// Both observables from one set of trajectories.
McEstimate simulate_product(const DisorderModel& m, const McConfig& cfg);

/// Histogram of the angular variable over the stationary stretch.
DensityProfile empirical_density(const DisorderModel& m, const McConfig& cfg, int bins);

/// Direct integration of the projective diffusion (Stratonovich, Heun
/// predictor-corrector) with reinjection at the cap; returns estimates and
/// the sampled density.
struct SdeResult {
    McEstimate estimate;
    DensityProfile density;
};
SdeResult simulate_sde(const DisorderModel& m, const McConfig& cfg, int bins = 256);

} // namespace lyap
