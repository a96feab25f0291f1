#pragma once

#include "lyap/model.hpp"

namespace lyap {

/// Second moments of a zero-mean perturbation of the identity with four free
/// matrix entries (top row a, b; bottom row c, d).
struct ZdCovariances {
    double aa = 0, ab = 0, ac = 0, ad = 0;
    double bb = 0, bc = 0, bd = 0;
    double cc = 0, cd = 0;
    double dd = 0;

    void validate() const; ///< induced 4x4 covariance must be symmetric PSD
};

struct ZdMapping {
    DisorderModel model;
    double gamma_offset = 0.0; ///< exponent of the general product minus the
                               ///< unimodular part
};

/// Translation of the four-entry covariances into the nine continuum
/// parameters, plus the determinant offset.
ZdMapping zd_to_model(const ZdCovariances& z);

ZdCovariances zd_example1(double sigma2); ///< independent off-diagonal noise
ZdCovariances zd_example2(double sigma2); ///< four independent entries

enum class QuantumFlavor { halperin, susy, distance, mixed };

/// Point-scatterer chain: momentum k, mean spacing ell, and the per-scatterer
/// statistics of the stretch weight w and the delta weight v = k u.
struct QuantumModel {
    double k = 1.0;
    double ell = 1.0;
    double mean_w = 0.0;
    double mean_v = 0.0;
    double var_w = 0.0;
    double var_v = 0.0;
    double cov_wv = 0.0;
    double var_phase = 0.0; ///< forward-scattering phase variance (distance flavor)
    QuantumFlavor flavor = QuantumFlavor::halperin;
};

struct QuantumMapping {
    DisorderModel model;
    double energy_shift = 0.0; ///< recorded w-u ordering shift of the energy
};

QuantumMapping quantum_to_model(const QuantumModel& q);

/// Preset: vertical drift -eps/2 with unit horizontal and quarter vertical
/// noise; the growth rate is eps/2 and the invariant line density is an
/// algebraic kernel.
DisorderModel hyperbolic_bm_model(double eps);

/// Invariant line density of the preset at parameter eps.
double hyperbolic_bm_density(double eps, double x);

} // namespace lyap
