#pragma once

#include <complex>
#include <stdexcept>

namespace lyap {

using cplx = std::complex<double>;

/// 2x2 real matrix with unit determinant (group element of the matrix products).
struct Mat2 {
    double m11 = 1.0, m12 = 0.0;
    double m21 = 0.0, m22 = 1.0;

    double det() const { return m11 * m22 - m12 * m21; }
    double trace() const { return m11 + m22; }
    /// Squared Frobenius norm.
    double norm2() const { return m11 * m11 + m12 * m12 + m21 * m21 + m22 * m22; }

    Mat2 inverse() const { return Mat2{m22, -m12, -m21, m11}; }

    friend Mat2 operator*(const Mat2& a, const Mat2& b) {
        return Mat2{a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
                    a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
    }
};

/// Parameters of the rotation * diagonal * shear factorization.
/// alpha is the rotation angle (principal branch (-pi, pi]), w the log-stretch
/// of the diagonal factor, u the shear of the upper-triangular factor.
struct IwasawaParams {
    double alpha = 0.0;
    double w = 0.0;
    double u = 0.0;
};

/// Point of the projective line: a finite real number or the point at infinity.
/// Infinity is a first-class value, never a large float.
struct ProjectivePoint {
    double z = 0.0;
    bool at_infinity = false;

    static ProjectivePoint infinity() { return ProjectivePoint{0.0, true}; }
    static ProjectivePoint finite(double z) { return ProjectivePoint{z, false}; }

    bool operator==(const ProjectivePoint& o) const {
        return at_infinity ? o.at_infinity : (!o.at_infinity && z == o.z);
    }
};

Mat2 rotation(double alpha);
Mat2 diagonal_stretch(double w);
Mat2 shear(double u);

/// rotation(alpha) * diag(e^w, e^-w) * shear(u).
Mat2 iwasawa_compose(const IwasawaParams& p);

/// Inverse factorization by Gram-Schmidt on the columns; requires det M = 1
/// within 1e-12 relative tolerance, else throws std::domain_error.
IwasawaParams iwasawa_decompose(const Mat2& m);

/// Linear fractional action on the projective line; a pole maps to infinity.
ProjectivePoint moebius_apply(const Mat2& m, const ProjectivePoint& p);

/// Action on a complex point (used on the upper half-plane).
cplx moebius_apply(const Mat2& m, cplx z);

/// Growth rate mu of the disorder-free matrix built from the mean parameters:
/// solves 2 cosh(mu) = trace, with Re mu >= 0.  When |trace| <= 2 the value is
/// imaginary; the branch with Im mu >= 0 is selected so that the rotation
/// number of the pure-rotation limit is non-negative.
cplx mu_exact(const IwasawaParams& means);

/// Small-parameter form sqrt(w^2 + alpha*u - alpha^2), same branch rule.
cplx mu_continuum(const IwasawaParams& means);

/// Hyperbolic distance between two points of the upper half-plane.
double hyperbolic_distance(cplx a, cplx b);

} // namespace lyap
