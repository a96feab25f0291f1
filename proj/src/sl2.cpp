#include "lyap/sl2.hpp"

#include <cmath>

namespace lyap {

Mat2 rotation(double alpha) {
    const double c = std::cos(alpha), s = std::sin(alpha);
    return Mat2{c, -s, s, c};
}

Mat2 diagonal_stretch(double w) {
    const double e = std::exp(w);
    return Mat2{e, 0.0, 0.0, 1.0 / e};
}

Mat2 shear(double u) { return Mat2{1.0, u, 0.0, 1.0}; }

Mat2 iwasawa_compose(const IwasawaParams& p) {
    return rotation(p.alpha) * diagonal_stretch(p.w) * shear(p.u);
}

IwasawaParams iwasawa_decompose(const Mat2& m) {
    const double d = m.det();
    if (std::abs(d - 1.0) > 1e-12 * std::max(1.0, m.norm2()))
        throw std::domain_error("iwasawa_decompose: matrix is not unimodular");
    const double r2 = m.m11 * m.m11 + m.m21 * m.m21;
    const double r = std::sqrt(r2);
    IwasawaParams p;
    p.alpha = std::atan2(m.m21, m.m11);
    if (p.alpha == -3.141592653589793238462643383279502884) p.alpha = -p.alpha;
    p.w = std::log(r);
    p.u = (m.m11 * m.m12 + m.m21 * m.m22) / r2;
    return p;
}

ProjectivePoint moebius_apply(const Mat2& m, const ProjectivePoint& p) {
    if (p.at_infinity) {
        // image of infinity is m11/m21
        if (m.m21 == 0.0) return ProjectivePoint::infinity();
        return ProjectivePoint::finite(m.m11 / m.m21);
    }
    const double den = m.m21 * p.z + m.m22;
    if (den == 0.0) return ProjectivePoint::infinity();
    return ProjectivePoint::finite((m.m11 * p.z + m.m12) / den);
}

cplx moebius_apply(const Mat2& m, cplx z) {
    return (m.m11 * z + m.m12) / (m.m21 * z + m.m22);
}

cplx mu_exact(const IwasawaParams& means) {
    const double tr = std::sin(means.alpha) * std::exp(means.w) * means.u +
                      2.0 * std::cos(means.alpha) * std::cosh(means.w);
    const double h = tr / 2.0;
    if (h >= 1.0) return cplx(std::acosh(h), 0.0);
    if (h <= -1.0) return cplx(std::acosh(-h), 3.141592653589793238462643383279502884);
    return cplx(0.0, std::acos(h));
}

cplx mu_continuum(const IwasawaParams& means) {
    const double s = means.w * means.w + means.alpha * means.u - means.alpha * means.alpha;
    if (s >= 0.0) return cplx(std::sqrt(s), 0.0);
    return cplx(0.0, std::sqrt(-s));
}

double hyperbolic_distance(cplx a, cplx b) {
    const double dx = a.real() - b.real();
    const double ya = a.imag(), yb = b.imag();
    const double c = (dx * dx + ya * ya + yb * yb) / (2.0 * ya * yb);
    return std::acosh(c);
}

} // namespace lyap
