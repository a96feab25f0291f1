#include "lyap/closed_form.hpp"

#include "lyap/specfun.hpp"

#include <cmath>
#include <limits>

namespace lyap {

namespace sf = specfun;

namespace {

constexpr double pi = 3.141592653589793238462643383279502884;

ScalingEvaluation make_exact(Family f, cplx omega, const char* note) {
    ScalingEvaluation e;
    e.family = f;
    e.omega = omega;
    e.argument = cplx(std::numeric_limits<double>::quiet_NaN(), 0.0);
    e.note = note;
    return e;
}

/// Supersymmetric-type evaluation shared by the pure log-stretch noise and the
/// fully correlated stretch/shear noise: Omega = dww * G with G built from the
/// modified Bessel kernel (monotone branch) or the oscillatory pair.
ScalingEvaluation bessel_real_index(double dww, double nu, double q, const char* note) {
    ScalingEvaluation e;
    e.index1 = nu;
    e.prefactor = dww;
    e.note = note;
    if (q == 0.0) {
        e.family = Family::bessel_k;
        e.argument = 0.0;
        e.g_value = std::abs(nu);
        e.omega = dww * e.g_value;
        return e;
    }
    if (q > 0.0) {
        const double x = std::sqrt(q) / dww;
        e.family = Family::bessel_k;
        e.argument = x;
        e.g_value = -x * sf::bessel_k_logderiv(nu, x);
        e.omega = dww * e.g_value;
        return e;
    }
    const double zeta = std::sqrt(-q) / dww;
    sf::JnPair jn = sf::bessel_jn(nu, zeta);
    const cplx c = jn.j.value - cplx(0, 1) * jn.n.value;
    const cplx cp = jn.j.derivative - cplx(0, 1) * jn.n.derivative;
    e.family = Family::bessel_jn;
    e.argument = zeta;
    e.g_value = -zeta * cp / c;
    e.omega = dww * e.g_value;
    return e;
}

/// Conjugate-pair double zeros moved to +-i: the integrating factor has power
/// exponents A, conj(A) and essential parts B, conj(B) at the two zeros; the
/// vanishing condition reduces to three modified-Bessel terms of imaginary
/// order, or to a plain residue condition when B vanishes.
ScalingEvaluation double_pair_at_i(const CoefficientSet& cs, const char* note) {
    const double c = cs.model.daa();
    const cplx i(0.0, 1.0);
    const cplx ri = cs.r.eval(i);
    const cplx rpi = cs.r.deriv_eval(i);
    const cplx big_a = -(rpi + i * ri) / (4.0 * c);
    const cplx big_b = -ri / (4.0 * c);
    const cplx nu0 = big_a - 1.0;

    const double s0 = cs.s.c[0], s1 = cs.s.c[1], s2 = cs.s.c[2];
    const double r0 = cs.r.c[0], r1 = cs.r.c[1];
    const cplx n2 = s0 + s2 - r1;
    const cplx n1 = s1 - r0;
    const cplx n0 = s0 - c;
    const cplx p2 = -n2 - i * n1 + n0;
    const cplx p0 = -n2 + i * n1 + n0;

    const double scale = (std::abs(ri) + std::abs(rpi)) / (4.0 * c) + 1.0;
    ScalingEvaluation e;
    e.family = Family::bessel_i_imag;
    e.index1 = nu0;
    e.prefactor = c;
    e.note = note;
    if (std::abs(big_b) < 1e-11 * scale) {
        // no essential singularity at the double zeros
        if (std::abs(nu0) < 1e-8) {
            // single-valued integrating factor: plain residue condition
            e.argument = 0.0;
            e.g_value = 0.0;
            e.omega = -0.25 * (n2 + n0);
            return e;
        }
        const bool rotation_only = cs.model.dww() == 0.0 && cs.model.duu() == 0.0 &&
                                   cs.model.dau() == 0.0 && cs.model.means.w == 0.0 &&
                                   cs.model.means.u == 0.0;
        if (rotation_only) {
            // commuting rotations: growth-free winding
            e.argument = 0.0;
            e.g_value = nu0;
            e.omega = c * nu0 - 0.25 * (n2 + n0);
            return e;
        }
        throw unsupported_family(
            "double-pair pattern with vanishing essential part and nontrivial exponent");
    }

    // exponential parts e^{a t + b/t}; fix sqrt(b/a) through the positive root
    // of the product so the three terms share one branch
    const cplx b = -i * big_b / 2.0;
    const double s = std::abs(big_b); // 2 sqrt(a b), real positive
    const cplx phase = 2.0 * b / s;   // sqrt(b/a) on that branch
    const cplx rplus = sf::bessel_i_ratio(nu0, s);            // I_{nu0+1}/I_{nu0}
    const cplx rminus = 1.0 / sf::bessel_i_ratio(nu0 - 1.0, s); // I_{nu0-1}/I_{nu0}
    const cplx cond = 2.0 * (n2 + n0) + p2 * phase * rplus + p0 / phase * rminus;
    e.argument = s;
    e.g_value = nu0 + s * rplus; // s I'/I of the kernel
    e.omega = -cond / 8.0;
    return e;
}

ScalingEvaluation dispatch(const DisorderModel& m, int depth);

/// Generic conjugate double pair: conjugate the model so the pair sits at +-i,
/// then snap the covariances onto the exact double-zero pattern (floating
/// point splits true double zeros at the square root of the noise).
ScalingEvaluation double_pair_generic(const DisorderModel& m, const ZeroPattern& zp, int depth) {
    cplx p = zp.distinct[0].imag() < 0 ? zp.distinct[0] : zp.distinct[1];
    const double sigma = p.real(), tau = -p.imag();
    if (std::abs(sigma) < 1e-5 && std::abs(tau - 1.0) < 1e-5) {
        DisorderModel snapped = m;
        const double ww = (m.dww() + 0.5 * m.dau() + 0.25 * m.duu()) / 3.0;
        snapped.set_cov(m.daa(), 0.0, 2.0 * ww, ww, 0.0, 4.0 * ww);
        return double_pair_at_i(build_coefficients(snapped), "conjugate double pair");
    }
    const double rt = std::sqrt(tau);
    const Mat2 t{1.0 / rt, -sigma / rt, 0.0, rt};
    DisorderModel moved = m.conjugated(t);
    ScalingEvaluation e = dispatch(moved, depth + 1);
    e.note += " (normalized frame)";
    return e;
}

ScalingEvaluation elliptic_eval(const DisorderModel& m) {
    const double daa = m.daa(), dww = m.dww(), duu = m.duu();
    const double delta = std::sqrt(daa * (daa + duu));
    const double tt = daa + 2.0 * dww;
    ScalingEvaluation e;
    e.prefactor = delta;
    if (std::abs(delta - tt) <= 1e-12 * (delta + tt)) {
        e.family = Family::elliptic_i;
        e.argument = 0.0;
        e.g_value = 0.0;
        e.omega = dww;
        e.note = "borderline moduli";
        return e;
    }
    if (delta < tt) {
        const double m2 = (tt - delta) / (tt + delta);
        sf::EllipticPair ke = sf::elliptic_ke(m2);
        const double ratio = ke.e.value.real() / ke.k.value.real();
        e.family = Family::elliptic_i;
        e.argument = std::sqrt(m2);
        e.omega = 0.5 * ((tt + delta) * ratio - (daa + delta));
        e.g_value = (e.omega - dww) / delta;
        return e;
    }
    const double m2 = (delta - tt) / (2.0 * delta);
    sf::EllipticPair ke = sf::elliptic_ke(m2);
    const double ratio = ke.e.value.real() / ke.k.value.real();
    e.family = Family::elliptic_ii;
    e.argument = std::sqrt(m2);
    e.omega = delta * ratio - 0.5 * (daa + delta);
    e.g_value = (e.omega - dww) / delta;
    return e;
}

ScalingEvaluation hypergeometric_eval(const DisorderModel& m, const CoefficientSet& cs,
                                      const ZeroPattern& zp) {
    auto a = exponents(cs, zp);
    if (std::abs(std::real(a[0] + a[1]) - 1.0) > 1e-6)
        throw std::domain_error("omega_hypergeometric: exponent sum check failed");
    if (a[0].real() <= 0.0 || a[1].real() <= 0.0)
        throw unsupported_family(
            "omega_hypergeometric: exponents with non-positive real part are not covered");
    const cplx y1 = zp.labeled[0], y2 = zp.labeled[1], y3 = zp.labeled[2], y4 = zp.labeled[3];
    const cplx xr = (y1 - y2) * (y4 - y3) / ((y1 - y3) * (y4 - y2));
    if (std::abs(xr.imag()) > 1e-7 * (1.0 + std::abs(xr)))
        throw std::domain_error("omega_hypergeometric: cross ratio not real");
    const double x = xr.real();
    if (!(x > 0.0 && x < 1.0))
        throw std::domain_error("omega_hypergeometric: cross ratio outside (0,1)");

    const cplx g = double(x) * sf::hyp2f1_logderiv(1.0 - a[2], a[0], a[0] + a[1], x);
    ScalingEvaluation e;
    e.family = Family::hypergeometric;
    e.argument = x;
    e.index1 = a[0];
    e.index2 = a[1];
    e.expo = a;
    e.g_value = g;
    e.prefactor = m.daa() * (y1 - y4) * (y3 - y2);
    e.omega = 0.5 * (e.prefactor * g + cs.r.eval(y1) / (y1 - y3) - cs.s.eval(y1));
    return e;
}

/// Snap covariance dust below the structural tolerance to exact zero.
DisorderModel structurally_cleaned(DisorderModel m) {
    const double tol = 1e-13 * m.cov_scale();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (std::abs(m.cov[i][j]) <= tol) m.cov[i][j] = 0.0;
    if (m.daa() == 0.0) {
        m.cov[0][1] = m.cov[1][0] = 0.0;
        m.cov[0][2] = m.cov[2][0] = 0.0;
    }
    if (m.dww() == 0.0) m.cov[1][2] = m.cov[2][1] = 0.0;
    if (m.duu() == 0.0) {
        m.cov[1][2] = m.cov[2][1] = 0.0;
        m.cov[0][2] = m.cov[2][0] = 0.0;
    }
    return m;
}

ScalingEvaluation dispatch(const DisorderModel& raw, int depth) {
    if (depth > 3) throw std::runtime_error("omega_closed: frame normalization did not settle");
    const DisorderModel m = structurally_cleaned(raw);
    const double al = m.means.alpha, w = m.means.w, u = m.means.u;
    CoefficientSet cs = build_coefficients(m);
    ZeroPattern zp = classify_zeros(cs);

    if (zp.label == ZeroLabel::disorder_free)
        return make_exact(Family::none, mu_continuum(m.means), "no disorder");

    // structural dispatch first: which covariance block is active
    const bool no_rot_noise = m.daa() == 0.0 && m.daw() == 0.0 && m.dau() == 0.0;
    if (no_rot_noise) {
        if (al == 0.0)
            return make_exact(m.dww() > 0.0 ? (m.duu() > 0.0 ? Family::whittaker : Family::bessel_k)
                                            : Family::airy,
                              std::abs(w), "commuting reduction");
        if (m.dww() == 0.0) {
            // shear noise alone: Airy scaling
            const double beta = std::cbrt(al * al * m.duu() / 2.0);
            const cplx mu = mu_continuum(m.means);
            const double x = std::real(mu * mu) / (beta * beta);
            sf::FunPair ai = sf::airy_ai(x), bi = sf::airy_bi(x);
            ScalingEvaluation e;
            e.family = Family::airy;
            e.argument = x;
            e.prefactor = beta;
            e.g_value = (ai.derivative + cplx(0, 1) * bi.derivative) /
                        (ai.value + cplx(0, 1) * bi.value);
            e.omega = beta * e.g_value;
            return e;
        }
        if (m.duu() == 0.0) {
            const double nu = w / m.dww();
            return bessel_real_index(m.dww(), nu, al * (u - al), "stretch noise");
        }
        const double cc = m.dwu() / std::sqrt(m.dww() * m.duu());
        const double y0 = 0.5 * std::sqrt(m.duu() / m.dww());
        if (std::abs(cc * cc - 1.0) < 1e-12) {
            const double csgn = cc >= 0.0 ? 1.0 : -1.0;
            const double nu = (w + al * csgn * y0) / m.dww();
            const double beta = u - al + 2.0 * (m.dww() - w) * csgn * y0 - al * y0 * y0;
            return bessel_real_index(m.dww(), nu, al * beta, "fully correlated noise");
        }
        // two correlated noises: Whittaker scaling
        const double b = std::sqrt(1.0 - cc * cc);
        const cplx x = cplx(0.0, al * b * y0 / m.dww());
        const cplx l = cplx(0.0, cc / (2.0 * b)) +
                       cplx(0.0, (u - al - 2.0 * w * cc * y0 + al * (1.0 - 2.0 * cc * cc) * y0 * y0) /
                                     (4.0 * m.dww() * b * y0));
        const cplx mm = -(w + al * cc * y0) / (2.0 * m.dww());
        ScalingEvaluation e;
        e.family = Family::whittaker;
        e.argument = x;
        e.index1 = l;
        e.index2 = mm;
        e.prefactor = m.dww();
        e.g_value = sf::whittaker_scaling(l, mm, x);
        e.omega = m.dww() * e.g_value;
        return e;
    }

    switch (zp.label) {
        case ZeroLabel::one_quadruple:
        case ZeroLabel::double_two_simple:
            // reachable only with rotation-noise cross terms, which positive
            // semi-definiteness excludes
            throw unsupported_family("omega_closed: unexpected degenerate pattern");
        case ZeroLabel::two_double:
            return double_pair_generic(m, zp, depth);
        case ZeroLabel::four_simple: {
            const bool zero_means = al == 0.0 && w == 0.0 && u == 0.0;
            const bool diag_cov = m.daw() == 0.0 && m.dau() == 0.0 && m.dwu() == 0.0;
            if (zero_means && diag_cov) return elliptic_eval(m);
            return hypergeometric_eval(m, cs, zp);
        }
        default:
            throw unsupported_family("omega_closed: pattern outside the classification");
    }
}

ScalingEvaluation orient(ScalingEvaluation e, const DisorderModel& m, int depth,
                         ScalingEvaluation (*eval)(const DisorderModel&, int)) {
    if (e.omega.imag() < -1e-11 * (1.0 + std::abs(e.omega))) {
        ScalingEvaluation f = eval(m.mirrored(), depth);
        f.mirrored = true;
        return f;
    }
    return e;
}

ScalingEvaluation hyp_entry(const DisorderModel& m, int) {
    CoefficientSet cs = build_coefficients(m);
    ZeroPattern zp = classify_zeros(cs);
    if (zp.label != ZeroLabel::four_simple)
        throw unsupported_family("omega_hypergeometric: requires four simple zeros");
    return hypergeometric_eval(m, cs, zp);
}

} // namespace

std::string to_string(Family f) {
    switch (f) {
        case Family::none: return "none";
        case Family::airy: return "Airy";
        case Family::bessel_k: return "Bessel (real index)";
        case Family::bessel_jn: return "Bessel (oscillatory)";
        case Family::bessel_i_imag: return "Bessel (imaginary index)";
        case Family::whittaker: return "Whittaker";
        case Family::elliptic_i: return "elliptic (regime I)";
        case Family::elliptic_ii: return "elliptic (regime II)";
        case Family::hypergeometric: return "hypergeometric";
    }
    return "?";
}

ScalingEvaluation omega_closed(const DisorderModel& m) {
    m.validate();
    return orient(dispatch(m, 0), m, 0, &dispatch);
}

ScalingEvaluation omega_hypergeometric(const DisorderModel& m) {
    m.validate();
    return orient(hyp_entry(m, 0), m, 0, &hyp_entry);
}

namespace {

cplx family_g(const ScalingEvaluation& e, double x) {
    switch (e.family) {
        case Family::airy: {
            sf::FunPair ai = sf::airy_ai(x), bi = sf::airy_bi(x);
            return (ai.derivative + cplx(0, 1) * bi.derivative) /
                   (ai.value + cplx(0, 1) * bi.value);
        }
        case Family::bessel_k:
            return -x * sf::bessel_k_logderiv(e.index1.real(), x);
        case Family::bessel_jn: {
            sf::JnPair jn = sf::bessel_jn(e.index1.real(), x);
            const cplx c = jn.j.value - cplx(0, 1) * jn.n.value;
            const cplx cp = jn.j.derivative - cplx(0, 1) * jn.n.derivative;
            return -x * cp / c;
        }
        case Family::bessel_i_imag:
            return e.index1 + x * sf::bessel_i_ratio(e.index1, x);
        case Family::whittaker:
            return sf::whittaker_scaling(e.index1, e.index2, cplx(0.0, x));
        case Family::elliptic_i: {
            sf::EllipticPair ke = sf::elliptic_ke(x * x);
            // dK/dk = 2k dK/dm
            const cplx kk = ke.k.value, kp = 2.0 * x * ke.k.derivative;
            return x * kp / kk - x * x / (1.0 - x * x);
        }
        case Family::elliptic_ii: {
            sf::EllipticPair ke = sf::elliptic_ke(x * x);
            const cplx kk = ke.k.value, kp = 2.0 * x * ke.k.derivative;
            return x * (1.0 - x * x) * kp / kk;
        }
        case Family::hypergeometric:
            return double(x) *
                   sf::hyp2f1_logderiv(1.0 - e.expo[2], e.expo[0], e.expo[0] + e.expo[1], x);
        case Family::none:
            break;
    }
    throw std::domain_error("riccati_residual: family carries no scaling function");
}

cplx riccati_rhs(const ScalingEvaluation& e, double x, cplx g, cplx gp) {
    switch (e.family) {
        case Family::airy:
            return g * g + gp - x;
        case Family::bessel_k: {
            const cplx nu = e.index1;
            return g * g - x * gp - (x * x + nu * nu);
        }
        case Family::bessel_jn: {
            const cplx nu = e.index1;
            return g * g - x * gp - (nu * nu - x * x);
        }
        case Family::bessel_i_imag: {
            const cplx nu = e.index1;
            return g * g + x * gp - (x * x + nu * nu);
        }
        case Family::whittaker: {
            const cplx l = e.index1, mm = e.index2, xc(0.0, x);
            // derivative in the imaginary direction: d/dx = i d/d|x|
            return g * g - 2.0 * xc * (gp / cplx(0.0, 1.0)) -
                   (xc * xc - 4.0 * l * xc + 4.0 * mm * mm);
        }
        case Family::elliptic_i:
            return g * g + x * gp + x * x / ((1.0 - x * x) * (1.0 - x * x));
        case Family::elliptic_ii:
            return g * g + x * (1.0 - x * x) * gp - x * x * (1.0 - x * x);
        case Family::hypergeometric: {
            const cplx a1 = e.expo[0], a2 = e.expo[1], a3 = e.expo[2];
            return (1.0 - x) * g * g + x * (1.0 - x) * gp +
                   ((a3 - a1 - 1.0) * x + a1 + a2 - 1.0) * g - a1 * (1.0 - a3) * x;
        }
        case Family::none:
            break;
    }
    return 0.0;
}

} // namespace

double riccati_residual(const ScalingEvaluation& e) {
    if (e.family == Family::none)
        throw std::domain_error("riccati_residual: no scaling family");
    const double x = e.family == Family::whittaker ? e.argument.imag() : e.argument.real();
    if (!std::isfinite(x) || x == 0.0) return 0.0; // exact-limit evaluation
    const double h1 = 1e-5 * std::max(1.0, std::abs(x));
    auto deriv = [&](double h) {
        return (family_g(e, x + h) - family_g(e, x - h)) / (2.0 * h);
    };
    const cplx d1 = deriv(h1), d2 = deriv(0.5 * h1);
    const cplx gp = (4.0 * d2 - d1) / 3.0;
    const cplx g = family_g(e, x);
    return std::abs(riccati_rhs(e, x, g, gp));
}

EllipticMaximum elliptic_max_unit_norm() {
    auto f = [](double daa, double dww) {
        const double duu = 1.0 - 2.0 * daa - 2.0 * dww;
        if (daa <= 0.0 || dww <= 0.0 || duu <= 0.0) return -1.0;
        DisorderModel m;
        m.set_cov(daa, 0, 0, dww, 0, duu);
        return elliptic_eval(m).omega.real();
    };
    // Nelder-Mead on the two free variances
    double p[3][2] = {{0.03, 0.40}, {0.06, 0.40}, {0.04, 0.45}};
    double v[3];
    for (int i = 0; i < 3; ++i) v[i] = f(p[i][0], p[i][1]);
    for (int it = 0; it < 300; ++it) {
        int hi = 0, lo = 0;
        for (int i = 1; i < 3; ++i) {
            if (v[i] < v[hi]) hi = i;
            if (v[i] > v[lo]) lo = i;
        }
        double c0 = 0, c1 = 0;
        for (int i = 0; i < 3; ++i)
            if (i != hi) {
                c0 += 0.5 * p[i][0];
                c1 += 0.5 * p[i][1];
            }
        double r0 = 2 * c0 - p[hi][0], r1 = 2 * c1 - p[hi][1];
        double vr = f(r0, r1);
        if (vr > v[lo]) {
            double e0 = c0 + 2 * (r0 - c0), e1 = c1 + 2 * (r1 - c1);
            double ve = f(e0, e1);
            if (ve > vr) {
                p[hi][0] = e0;
                p[hi][1] = e1;
                v[hi] = ve;
            } else {
                p[hi][0] = r0;
                p[hi][1] = r1;
                v[hi] = vr;
            }
        } else if (vr > v[hi]) {
            p[hi][0] = r0;
            p[hi][1] = r1;
            v[hi] = vr;
        } else {
            double s0 = 0.5 * (p[hi][0] + c0), s1 = 0.5 * (p[hi][1] + c1);
            double vs = f(s0, s1);
            if (vs > v[hi]) {
                p[hi][0] = s0;
                p[hi][1] = s1;
                v[hi] = vs;
            } else {
                for (int i = 0; i < 3; ++i)
                    if (i != lo) {
                        p[i][0] = 0.5 * (p[i][0] + p[lo][0]);
                        p[i][1] = 0.5 * (p[i][1] + p[lo][1]);
                        v[i] = f(p[i][0], p[i][1]);
                    }
            }
        }
        double spread = std::abs(v[0] - v[1]) + std::abs(v[1] - v[2]);
        if (spread < 1e-14) break;
    }
    int lo = 0;
    for (int i = 1; i < 3; ++i)
        if (v[i] > v[lo]) lo = i;
    EllipticMaximum out;
    out.daa = p[lo][0];
    out.dww = p[lo][1];
    out.duu = 1.0 - 2.0 * out.daa - 2.0 * out.dww;
    out.omega = v[lo];
    DisorderModel m;
    m.set_cov(out.daa, 0, 0, out.dww, 0, out.duu);
    out.modulus = elliptic_eval(m).argument.real();
    return out;
}

} // namespace lyap
