#pragma once

#include <complex>

namespace lyap::specfun {

using cplx = std::complex<double>;

/// Value of a special function together with its derivative in the principal
/// argument.
struct FunPair {
    cplx value{};
    cplx derivative{};
};

/// log Gamma for complex argument (Lanczos approximation, principal branch of
/// the asymptotic form; exp(log_gamma) is reliable, the imaginary part is not
/// reduced mod 2*pi).
cplx log_gamma(cplx z);
cplx gamma(cplx z);
double gamma(double x);

/// Airy functions.  The real forms cover the whole axis; the complex form is
/// documented for |z| <= 1e3.
FunPair airy_ai(double x);
FunPair airy_bi(double x);
FunPair airy_ai(cplx z);

/// Modified Bessel function of the second kind, |arg x| < pi.  Real or
/// imaginary order.
FunPair bessel_k(cplx nu, cplx x);
/// Log-derivative K'/K, stable for large |x| or |nu| (internally scaled).
cplx bessel_k_logderiv(double nu, double x);

/// Modified Bessel function of the first kind; ascending series for x <= 50,
/// asymptotic beyond.  Complex (in particular imaginary) order.
FunPair bessel_i(cplx nu, cplx x);
/// Ratio I_{nu+1}(x)/I_nu(x) by continued fraction; any magnitude.
cplx bessel_i_ratio(cplx nu, double x);

/// Bessel functions of the first and second kind on the positive axis.
struct JnPair {
    FunPair j;
    FunPair n;
};
JnPair bessel_jn(double nu, double x);

/// Confluent hypergeometric function of the second kind with derivative
/// U'(a,b,x) = -a U(a+1,b+1,x).  The argument may sit on the imaginary axis
/// (the defining half-line integral is rotated accordingly).
FunPair tricomi_u(cplx a, cplx b, cplx x);

/// Whittaker W function and d/dx.  Throws when m - l + 1/2 hits a pole of
/// Gamma.
FunPair whittaker_w(cplx l, cplx m, cplx x);

/// Ratio helper used by the scaling forms: returns x - 2m + 2x * U(a+1,b+1,x)/U(a,b,x)
/// with a = m - l + 1/2, b = 1 + 2m, i.e. 1 - 2x W'/W.
cplx whittaker_scaling(cplx l, cplx m, cplx x);

/// Complete elliptic integrals as functions of the parameter mm = k^2 < 1.
/// Derivatives are with respect to the parameter.
struct EllipticPair {
    FunPair k;
    FunPair e;
};
EllipticPair elliptic_ke(double mm);

/// Gauss hypergeometric function on x in (0,1); series with term recurrence.
FunPair hyp2f1(cplx a, cplx b, cplx c, double x);
/// Log-derivative F'/F by continued fractions, stable for large parameters.
cplx hyp2f1_logderiv(cplx a, cplx b, cplx c, double x);

} // namespace lyap::specfun
