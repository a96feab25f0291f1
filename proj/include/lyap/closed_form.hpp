#pragma once

#include "lyap/coeffs.hpp"

#include <array>
#include <string>

namespace lyap {

enum class Family {
    none,
    airy,
    bessel_k,
    bessel_jn,
    bessel_i_imag,
    whittaker,
    elliptic_i,
    elliptic_ii,
    hypergeometric
};

std::string to_string(Family f);

/// Raised when a model falls outside the supported zero patterns.
struct unsupported_family : std::domain_error {
    using std::domain_error::domain_error;
};

/// Record of one closed-form evaluation: the scaling family, its argument and
/// indices, the scaling-function value, and the assembled exponent.
struct ScalingEvaluation {
    Family family = Family::none;
    cplx argument{};           ///< x, zeta, s, k or the cross ratio
    cplx index1{}, index2{};   ///< nu / lambda / l / a1 and m / a2 as applicable
    std::array<cplx, 4> expo{};///< exponents a_i (hypergeometric only)
    cplx g_value{};
    cplx prefactor{};
    cplx omega{};
    bool mirrored = false;     ///< result obtained on the reflected model
    std::string note;

    double gamma() const { return omega.real(); }
    double current() const { return omega.imag() / 3.141592653589793238462643383279502884; }
};

/// Dispatches the model to its scaling family and assembles the complex
/// exponent (growth rate + i pi current).  The current is reported
/// non-negative; models driven in the opposite orientation are evaluated on
/// the reflected model and flagged.
ScalingEvaluation omega_closed(const DisorderModel& m);

/// The generic four-simple-zeros route, regardless of whether a specialized
/// family applies.  Requires positive real parts of the exponents a1, a2.
ScalingEvaluation omega_hypergeometric(const DisorderModel& m);

/// Residual of the scaling family's defining first-order identity, evaluated
/// with a centered finite-difference derivative of G (two step sizes,
/// quadratic extrapolation).  Zero for exact-limit evaluations that carry no
/// argument.
double riccati_residual(const ScalingEvaluation& e);

/// Maximum of the exponent over independent zero-mean models with
/// 2 Daa + 2 Dww + Duu = 1.
struct EllipticMaximum {
    double omega = 0.0;
    double daa = 0.0, dww = 0.0, duu = 0.0;
    double modulus = 0.0;
};
EllipticMaximum elliptic_max_unit_norm();

} // namespace lyap
