#include "lyap/coeffs.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace lyap {

int Poly::degree(double tol) const {
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k)
        if (std::abs(c[k]) > tol) return k;
    return -1;
}

cplx Poly::eval(cplx y) const {
    cplx s = 0.0;
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) s = s * y + c[k];
    return s;
}

double Poly::eval(double y) const {
    double s = 0.0;
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) s = s * y + c[k];
    return s;
}

cplx Poly::deriv_eval(cplx y) const {
    cplx s = 0.0;
    for (int k = static_cast<int>(c.size()) - 1; k >= 1; --k) s = s * y + double(k) * c[k];
    return s;
}

Poly Poly::deriv() const {
    Poly d;
    if (c.size() <= 1) return Poly{{0.0}};
    d.c.resize(c.size() - 1);
    for (size_t k = 1; k < c.size(); ++k) d.c[k - 1] = double(k) * c[k];
    return d;
}

Poly operator+(const Poly& a, const Poly& b) {
    Poly s;
    s.c.resize(std::max(a.c.size(), b.c.size()), 0.0);
    for (size_t k = 0; k < a.c.size(); ++k) s.c[k] += a.c[k];
    for (size_t k = 0; k < b.c.size(); ++k) s.c[k] += b.c[k];
    return s;
}

Poly operator*(double s, const Poly& a) {
    Poly r = a;
    for (auto& x : r.c) x *= s;
    return r;
}

CoefficientSet build_coefficients(const DisorderModel& m) {
    m.validate();
    CoefficientSet cs;
    cs.model = m;
    const double aa = m.daa(), aw = m.daw(), au = m.dau();
    const double ww = m.dww(), wu = m.dwu(), uu = m.duu();
    const double al = m.means.alpha, w = m.means.w, u = m.means.u;

    cs.q.c = {aa + uu - 2.0 * au, -4.0 * aw + 4.0 * wu, 2.0 * aa + 4.0 * ww - 2.0 * au,
              -4.0 * aw, aa};
    cs.r0.c = {2.0 * (al - u), -4.0 * w, 2.0 * al, 0.0};
    cs.r2.c = {-4.0 * aw, 2.0 * aa + 4.0 * ww, -4.0 * aw, 2.0 * aa};
    cs.s0.c = {-2.0 * w, 2.0 * al, 0.0};
    cs.s2.c = {aa, 0.0, aa};
    cs.r = cs.r0 + cs.r2;
    cs.s = cs.s0 + cs.s2;
    return cs;
}

std::string to_string(ZeroLabel label) {
    switch (label) {
        case ZeroLabel::disorder_free: return "disorder-free";
        case ZeroLabel::one_quadruple: return "1q";
        case ZeroLabel::two_double: return "2d";
        case ZeroLabel::double_two_simple: return "1d+2s";
        case ZeroLabel::four_simple: return "4s";
        case ZeroLabel::degenerate_other: return "degenerate-other";
    }
    return "?";
}

namespace {

std::vector<cplx> polynomial_roots(const std::vector<double>& coeff, int deg) {
    // companion-matrix eigenvalues followed by two Newton polish steps
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -coeff[i] / coeff[deg];
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp);
    Poly p;
    p.c.assign(coeff.begin(), coeff.begin() + deg + 1);
    std::vector<cplx> roots(deg);
    for (int i = 0; i < deg; ++i) {
        cplx y(es.eigenvalues()(i).real(), es.eigenvalues()(i).imag());
        for (int it = 0; it < 2; ++it) {
            cplx dp = p.deriv_eval(y);
            if (std::abs(dp) < 1e-300) break;
            cplx step = p.eval(y) / dp;
            if (std::abs(step) > 0.5 * (1.0 + std::abs(y))) break;
            y -= step;
        }
        roots[i] = y;
    }
    return roots;
}

} // namespace

ZeroPattern classify_zeros(const CoefficientSet& c) {
    ZeroPattern zp;
    const double qmax = std::max({std::abs(c.q.c[0]), std::abs(c.q.c[1]), std::abs(c.q.c[2]),
                                  std::abs(c.q.c[3]), std::abs(c.q.c[4])});
    if (qmax == 0.0) {
        zp.label = ZeroLabel::disorder_free;
        zp.multiplicity_at_infinity = 4;
        return zp;
    }
    const double trim = 1e-13 * qmax;
    const int deg = c.q.degree(trim);
    zp.multiplicity_at_infinity = 4 - deg;
    if (deg == 0) {
        zp.label = ZeroLabel::one_quadruple;
        return zp;
    }

    zp.zeros = polynomial_roots(c.q.c, deg);

    // cluster nearby zeros into multiple ones
    std::vector<cplx> rem = zp.zeros;
    while (!rem.empty()) {
        cplx y = rem.front();
        std::vector<cplx> group{y};
        rem.erase(rem.begin());
        for (size_t i = 0; i < rem.size();) {
            if (std::abs(rem[i] - y) < 1e-6 * (1.0 + std::abs(y))) {
                group.push_back(rem[i]);
                rem.erase(rem.begin() + i);
            } else {
                ++i;
            }
        }
        cplx mean = 0.0;
        for (cplx g : group) mean += g;
        mean /= double(group.size());
        zp.distinct.push_back(mean);
        zp.multiplicities.push_back(static_cast<int>(group.size()));
    }

    // real-axis proximity: simple real zeros cannot occur for a non-negative Q
    bool real_zero = false, real_double = false;
    for (size_t i = 0; i < zp.distinct.size(); ++i) {
        if (std::abs(zp.distinct[i].imag()) < 1e-6 * (1.0 + std::abs(zp.distinct[i]))) {
            real_zero = true;
            if (zp.multiplicities[i] == 2) real_double = true;
        }
    }

    std::vector<int> mult = zp.multiplicities;
    std::sort(mult.begin(), mult.end());
    const int inf = zp.multiplicity_at_infinity;

    if (inf == 2 && mult == std::vector<int>{2}) {
        zp.label = ZeroLabel::two_double; // one finite double (0 for pure stretch noise,
                                          // real for fully correlated noise)
    } else if (inf == 2 && mult == std::vector<int>{1, 1} && !real_zero) {
        zp.label = ZeroLabel::double_two_simple;
    } else if (inf == 0 && mult == std::vector<int>{2, 2} && !real_zero) {
        // conjugate pair of double zeros
        cplx p0 = zp.distinct[0], p1 = zp.distinct[1];
        zp.label = (std::abs(p0 - std::conj(p1)) < 1e-6 * (1.0 + std::abs(p0)))
                       ? ZeroLabel::two_double
                       : ZeroLabel::degenerate_other;
    } else if (inf == 0 && mult == std::vector<int>{1, 1, 1, 1} && !real_zero) {
        std::vector<cplx> lower, upper;
        for (cplx y : zp.zeros) (y.imag() < 0 ? lower : upper).push_back(y);
        if (lower.size() == 2 && upper.size() == 2) {
            auto by_re = [](cplx a, cplx b) {
                return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
            };
            std::sort(lower.begin(), lower.end(), by_re);
            // conjugate pairing check
            bool ok = true;
            for (cplx y : lower) {
                bool found = false;
                for (cplx v : upper)
                    if (std::abs(v - std::conj(y)) < 1e-6 * (1.0 + std::abs(y))) found = true;
                ok = ok && found;
            }
            if (ok) {
                zp.label = ZeroLabel::four_simple;
                zp.labeled = {lower[0], lower[1], std::conj(lower[1]), std::conj(lower[0])};
                zp.has_labeling = true;
            } else {
                zp.label = ZeroLabel::degenerate_other;
            }
        } else {
            zp.label = ZeroLabel::degenerate_other;
        }
    } else if (real_double && inf == 0 && mult == std::vector<int>{2, 2}) {
        zp.label = ZeroLabel::degenerate_other;
    } else {
        zp.label = ZeroLabel::degenerate_other;
    }
    return zp;
}

std::array<cplx, 4> exponents(const CoefficientSet& c, const ZeroPattern& z) {
    if (z.label != ZeroLabel::four_simple || !z.has_labeling)
        throw std::domain_error("exponents: requires four simple finite zeros");
    std::array<cplx, 4> a;
    for (int i = 0; i < 4; ++i) a[i] = c.r.eval(z.labeled[i]) / c.q.deriv_eval(z.labeled[i]);
    // enforce the conjugate symmetry of the labeling exactly
    a[2] = std::conj(a[1]);
    a[3] = std::conj(a[0]);
    const cplx sum = a[0] + a[1] + a[2] + a[3];
    if (std::abs(sum - 2.0) > 1e-7)
        throw std::domain_error("exponents: sum rule violated, zeros inaccurate");
    return a;
}

namespace {

/// Net drift-to-variance integral around the circle; vanishes exactly on
/// zero-current models with a strictly positive angular variance.
double angular_loop_integral(const DisorderModel& m, int n = 4096) {
    const double h = 2.0 * 3.141592653589793238462643383279502884 / n;
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        const double phi = -3.141592653589793238462643383279502884 + (i + 0.5) * h;
        s += angular_drift(m, phi) / angular_variance(m, phi);
    }
    return 2.0 * s * h;
}

} // namespace

ZeroCurrentResult zero_current_test(const DisorderModel& m, double tol) {
    CoefficientSet cs = build_coefficients(m);
    ZeroPattern zp = classify_zeros(cs);
    ZeroCurrentResult res;

    if (zp.label == ZeroLabel::four_simple) {
        auto a = exponents(cs, zp);
        res.residual = std::abs(std::imag(a[0] + a[1]));
        res.zero_current = res.residual < tol;
        return res;
    }

    res.delegated = true;
    const double al = m.means.alpha, w = m.means.w, u = m.means.u;
    switch (zp.label) {
        case ZeroLabel::disorder_free: {
            const cplx mu = mu_continuum(m.means);
            res.residual = std::abs(mu.imag());
            res.zero_current = res.residual < tol;
            return res;
        }
        case ZeroLabel::one_quadruple:
            // pure shear noise: the rotation number vanishes only without rotation drift
            res.zero_current = (al == 0.0);
            return res;
        case ZeroLabel::two_double:
        case ZeroLabel::double_two_simple:
        case ZeroLabel::degenerate_other: {
            if (m.daa() > 0.0) {
                res.residual = std::abs(angular_loop_integral(m));
                res.zero_current = res.residual < std::max(tol, 1e-8);
                return res;
            }
            if (al == 0.0) {
                res.zero_current = true;
                return res;
            }
            if (m.duu() == 0.0 && m.dww() > 0.0) {
                res.zero_current = al * (u - al) >= 0.0; // oscillatory branch carries current
                return res;
            }
            if (m.dww() > 0.0 && m.duu() > 0.0 &&
                std::abs(m.dwu() * m.dwu() - m.dww() * m.duu()) <
                    1e-12 * m.dww() * m.duu()) {
                const double c = m.dwu() >= 0 ? 1.0 : -1.0;
                const double y0 = 0.5 * std::sqrt(m.duu() / m.dww());
                const double beta =
                    u - al + 2.0 * (m.dww() - w) * c * y0 - al * y0 * y0;
                res.zero_current = al * beta >= 0.0;
                return res;
            }
            res.zero_current = false; // rotation drift with a degenerate boundary
            return res;
        }
    }
    return res;
}

} // namespace lyap
