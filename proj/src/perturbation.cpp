#include "lyap/perturbation.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace lyap {

namespace {

struct Params {
    double a, w, u; // mean parameters
    cplx mu;
};

/// Second-order numerator coefficients of the six covariances; the full
/// coefficient divides by -8 mu^2.
std::array<cplx, 6> omega2_coeffs(const Params& p) {
    const double a = p.a, w = p.w, u = p.u;
    const cplx mu = p.mu;
    return {
        cplx(4.0 * w * w + u * u),              // aa
        cplx(4.0 * a * (a - u)),                // ww
        cplx(a * a),                            // uu
        4.0 * (-u * mu - 2.0 * a * w + w * u),  // aw
        2.0 * (2.0 * w * mu - 2.0 * w * w - a * u), // au
        4.0 * a * (w - mu),                     // wu
    };
}

/// One fourth-order monomial: covariance slot pair and its numerator
/// coefficient (the full term divides by -128 mu^5).
struct QuarticTerm {
    int i, j; // 0 aa, 1 ww, 2 uu, 3 aw, 4 au, 5 wu
    std::function<cplx(const Params&)> coef;
};

const std::vector<QuarticTerm>& quartic_table() {
    using P = const Params&;
    static const std::vector<QuarticTerm> table = {
        {0, 0, [](P p) {
             const double a = p.a, w = p.w, u = p.u;
             return cplx((4 * w * w + u * u) *
                         (16 * a * a - 16 * a * u + 4 * w * w + 5 * u * u));
         }},
        {1, 1, [](P p) {
             const double a = p.a, w = p.w, u = p.u;
             return cplx(16 * a * (a - u) * (a * a - a * u + 4 * w * w));
         }},
        {2, 2, [](P p) { return cplx(5 * p.a * p.a * p.a * p.a); }},
        {3, 3, [](P p) {
             const double a = p.a, w = p.w, u = p.u;
             return 16.0 * (4 * u * w * (2 * a - u) * p.mu + 20 * a * a * w * w +
                            a * a * u * u - 20 * a * w * w * u - a * u * u * u +
                            4 * w * w * u * u);
         }},
        {4, 4, [](P p) {
             const double a = p.a, w = p.w, u = p.u;
             return 4.0 * a *
                    (-8 * w * (2 * a - u) * p.mu + 8 * a * a * u + 20 * a * w * w -
                     3 * a * u * u - 8 * u * w * w);
         }},
        {5, 5, [](P p) {
             const double a = p.a, w = p.w, u = p.u;
             return 16.0 * a * a * (-4 * w * p.mu + a * a - a * u + 4 * w * w);
         }},
        {0, 1, [](P p) {
             const double a = p.a, w = p.w, u = p.u;
             return cplx(8 * (20 * a * a * w * w - a * a * u * u + a * u * u * u -
                              20 * a * u * w * w + 6 * u * u * w * w));
         }},
        {0, 2, [](P p) {
             const double a = p.a, w = p.w, u = p.u;
             return cplx(2 * (8 * a * a * a * u + 12 * a * a * w * w - 3 * a * a * u * u +
                              8 * w * w * w * w));
         }},
        {0, 3, [](P p) {
             const double a = p.a, w = p.w, u = p.u;
             return 8.0 * (2 * a - u) *
                    (-2 * u * (2 * a - u) * p.mu -
                     w * (8 * a * a - 8 * a * u + 5 * u * u + 12 * w * w));
         }},
        {0, 4, [](P p) {
             const double a = p.a, w = p.w, u = p.u;
             return 4.0 * (4 * w * (2 * a - u) * (2 * a - u) * p.mu - 8 * a * a * a * u -
                           32 * a * a * w * w + 4 * a * a * u * u - a * u * u * u +
                           20 * a * u * w * w - 8 * w * w * w * w - 6 * u * u * w * w);
         }},
        {0, 5, [](P p) {
             const double a = p.a, w = p.w, u = p.u;
             return 8.0 * (-2 * (2 * a - u) * (2 * w * w + a * u) * p.mu +
                           w * (8 * a * a * a + 12 * a * w * w - 3 * a * u * u -
                                8 * u * w * w));
         }},
        {1, 2, [](P p) {
             const double a = p.a, w = p.w, u = p.u;
             return cplx(8 * a * a * (-a * a + a * u + 6 * w * w));
         }},
        {1, 3, [](P p) {
             const double a = p.a, w = p.w, u = p.u;
             return 32.0 * w *
                    (-2 * w * u * p.mu - 6 * a * a * a + 9 * a * a * u - 4 * a * w * w -
                     3 * a * u * u + 2 * u * w * w);
         }},
        {1, 4, [](P p) {
             const double a = p.a, w = p.w, u = p.u;
             return 16.0 * a *
                    (4 * (a - u) * w * p.mu + a * a * u - 10 * a * w * w - a * u * u +
                     4 * u * w * w);
         }},
        {1, 5, [](P p) {
             const double a = p.a, w = p.w, u = p.u;
             return 32.0 * a * w * (-2 * w * p.mu + 3 * a * a - 3 * a * u + 2 * w * w);
         }},
        {2, 3, [](P p) {
             const double a = p.a, w = p.w, u = p.u;
             return 8.0 * a *
                    (2.0 * (-2 * a * a + a * u + 2 * w * w) * p.mu -
                     w * (2 * a * a + 3 * a * u + 8 * w * w));
         }},
        {2, 4, [](P p) {
             const double a = p.a, w = p.w, u = p.u;
             return 4.0 * a * a * (4 * w * p.mu - 4 * a * a - a * u - 6 * w * w);
         }},
        {2, 5, [](P p) { return 8.0 * p.a * p.a * p.a * (5.0 * p.w - 2.0 * p.mu); }},
        {3, 4, [](P p) {
             const double a = p.a, w = p.w, u = p.u;
             return 16.0 * (2 * (2 * a - u) * (a * u - 2 * w * w) * p.mu +
                            w * (8 * a * a * a - 4 * a * a * u + a * u * u +
                                 2 * a * w * w - 4 * u * w * w));
         }},
        {3, 5, [](P p) {
             const double a = p.a, w = p.w, u = p.u;
             return 32.0 * (4 * w * w * w * p.mu - 4 * a * a * a * a + 5 * a * a * a * u -
                            2 * a * a * w * w - a * a * u * u - 4 * w * w * w * w);
         }},
        {4, 5, [](P p) {
             const double a = p.a, w = p.w, u = p.u;
             return 16.0 * a *
                    (2.0 * (2 * a * a - a * u + 2 * w * w) * p.mu +
                     w * (-6 * a * a + a * u - 4 * w * w));
         }},
    };
    return table;
}

std::array<double, 6> cov_slots(const DisorderModel& m) {
    return {m.daa(), m.dww(), m.duu(), m.daw(), m.dau(), m.dwu()};
}

Params make_params(const DisorderModel& m) {
    Params p{m.means.alpha, m.means.w, m.means.u, mu_continuum(m.means)};
    if (std::abs(p.mu) < 1e-14 * (1.0 + std::abs(p.a) + std::abs(p.w) + std::abs(p.u)))
        throw std::domain_error("omega_weak: clean growth rate vanishes (band edge)");
    return p;
}

} // namespace

cplx omega_weak_second(const DisorderModel& m) {
    const Params p = make_params(m);
    const auto coeffs = omega2_coeffs(p);
    const auto d = cov_slots(m);
    cplx num = 0.0;
    for (int i = 0; i < 6; ++i) num += coeffs[i] * d[i];
    return num / (-8.0 * p.mu * p.mu);
}

cplx omega_weak_fourth(const DisorderModel& m) {
    const Params p = make_params(m);
    const auto d = cov_slots(m);
    cplx num = 0.0;
    for (const auto& term : quartic_table()) num += term.coef(p) * d[term.i] * d[term.j];
    const cplx mu2 = p.mu * p.mu;
    return num / (-128.0 * mu2 * mu2 * p.mu);
}

cplx omega_weak(const DisorderModel& m, int order) {
    if (order != 0 && order != 2 && order != 4)
        throw std::invalid_argument("omega_weak: order must be 0, 2 or 4");
    m.validate();
    cplx omega = make_params(m).mu;
    if (order >= 2) omega += omega_weak_second(m);
    if (order >= 4) omega += omega_weak_fourth(m);
    return omega;
}

cplx omega2_general(const DisorderModel& m) {
    m.validate();
    const double a = m.means.alpha, w = m.means.w, u = m.means.u;
    const cplx mu = mu_exact(m.means);
    const double sa = std::sin(a), ca = std::cos(a);
    if (std::abs(sa) < 1e-14 || std::abs(std::sinh(mu)) < 1e-14)
        throw std::domain_error("omega2_general: vanishing denominator");
    const cplx chwm = std::cosh(cplx(w) - mu);
    const cplx ewm = std::exp(cplx(w) - mu);
    const double e2w = std::exp(2.0 * w);
    const double shw = std::sinh(w);
    cplx num = 0.0;
    num += sa * (u * u * e2w + 4.0 * shw * shw) * m.daa();
    num += 4.0 * sa * sa * (sa - u * ca) * m.dww();
    num += sa * sa * sa * e2w * m.duu();
    num += -8.0 * (chwm - ca) * (1.0 - ca * std::exp(-cplx(w) - mu)) * m.daw();
    num += -4.0 * sa * ewm * (chwm - ca) * m.dau();
    num += -4.0 * sa * sa * (ca - ewm) * m.dwu();
    const cplx sh = std::sinh(mu);
    return num / (-8.0 * sa * sh * sh);
}

int omega4_monomial_count() { return static_cast<int>(quartic_table().size()); }

} // namespace lyap
