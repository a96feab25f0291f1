#pragma once

#include "lyap/sl2.hpp"

#include <array>

namespace lyap {

/// Continuum description of the per-step randomness: mean parameter vector
/// (alpha, w, u) and the symmetric non-negative 3x3 covariance of their
/// fluctuations.  Index order is 0=alpha, 1=w, 2=u throughout.
struct DisorderModel {
    IwasawaParams means;
    std::array<std::array<double, 3>, 3> cov{{{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}};

    double daa() const { return cov[0][0]; }
    double daw() const { return cov[0][1]; }
    double dau() const { return cov[0][2]; }
    double dww() const { return cov[1][1]; }
    double dwu() const { return cov[1][2]; }
    double duu() const { return cov[2][2]; }

    void set_cov(double aa, double aw, double au, double ww, double wu, double uu) {
        cov = {{{aa, aw, au}, {aw, ww, wu}, {au, wu, uu}}};
    }

    /// Largest covariance magnitude, used for structural-zero decisions.
    double cov_scale() const;
    bool zero_cov(double tol = 0.0) const;

    /// Throws std::domain_error unless cov is symmetric to 1e-14 and positive
    /// semi-definite (eigenvalues >= -1e-12 relative).
    void validate() const;

    /// Symmetric square root of the covariance (PSD required).
    std::array<std::array<double, 3>, 3> cov_sqrt() const;

    /// Model with all nine parameters multiplied by s.
    DisorderModel scaled(double s) const;

    /// Image under the reflection diag(1,-1): flips the signs of alpha, u,
    /// and of the alpha-w and w-u covariances.  Growth rate is preserved,
    /// the rotation number changes sign.
    DisorderModel mirrored() const;

    /// Image of the model under conjugation of every step matrix by t.
    /// Preserves the characteristic exponent.
    DisorderModel conjugated(const Mat2& t) const;
};

/// Helper builders for the frequently used single-parameter models.
DisorderModel scalar_model(const IwasawaParams& means, double duu);
DisorderModel susy_model(const IwasawaParams& means, double dww);
DisorderModel distance_model(const IwasawaParams& means, double daa);

/// Vector of generator coefficients g(z) = (1+z^2, -2z, -1).
std::array<double, 3> riccati_g(double z);
std::array<double, 3> riccati_g_prime(double z);

/// Angular counterparts on phi in [-pi, pi].
std::array<double, 3> angular_g(double phi);
std::array<double, 3> angular_g_prime(double phi);

/// Local drift and squared noise amplitude of the projective motion.
double drift_v(const DisorderModel& m, double z);
double variance_sigma2(const DisorderModel& m, double z);
double angular_drift(const DisorderModel& m, double phi);
double angular_variance(const DisorderModel& m, double phi);

} // namespace lyap
