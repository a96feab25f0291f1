#include "lyap/specfun.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

using namespace lyap::specfun;
using cplx = lyap::specfun::cplx;

namespace {
double gam(double x) { return lyap::specfun::gamma(x); }
} // namespace

namespace {

constexpr double pi = 3.141592653589793238462643383279502884;

// ---- test-side oracles, independent of the library paths ----

/// Stirling-series log gamma with argument lifting (oracle-only).
cplx oracle_lgamma(cplx z) {
    cplx shift = 0.0;
    while (z.real() < 20.0) {
        shift -= std::log(z);
        z += 1.0;
    }
    static const double bern[] = {1.0 / 12, -1.0 / 360, 1.0 / 1260, -1.0 / 1680,
                                  1.0 / 1188, -691.0 / 360360, 1.0 / 156};
    cplx s = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * pi);
    cplx zp = z;
    for (double b : bern) {
        s += b / zp;
        zp *= z * z;
    }
    return s + shift;
}

/// Taylor solution of y'' = x y from the origin (oracle for the decaying
/// branch at moderate argument).
double oracle_airy(double x, double y0, double dy0) {
    // series y = sum c_n x^n with c_{n+2} = c_{n-1} / ((n+1)(n+2))
    std::vector<double> c(120, 0.0);
    c[0] = y0;
    c[1] = dy0;
    for (int n = 2; n < 120; ++n)
        if (n >= 3) c[n] = c[n - 3] / (double(n) * double(n - 1));
    c[2] = 0.0;
    double s = 0.0;
    for (int n = 119; n >= 0; --n) s = s * x + c[n];
    return s;
}

/// Composite Simpson quadrature.
template <typename F>
double oracle_simpson(F f, double a, double b, int n) {
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + (b - a) * i / n) * (i % 2 ? 4.0 : 2.0);
    return s * (b - a) / (3.0 * n);
}

} // namespace

TEST_CASE("gamma function against the lifted Stirling series") {
    for (cplx z : {cplx(0.25, 0), cplx(2.0 / 3.0, 0), cplx(5.5, 0), cplx(1.0, 3.0),
                   cplx(-0.4, 1.7), cplx(80.5, -150.0)}) {
        const cplx mine = log_gamma(z);
        const cplx ref = oracle_lgamma(z);
        CHECK(std::abs(std::exp(mine - ref) - 1.0) < 1e-12);
    }
    CHECK(gam(5.0) == doctest::Approx(24.0).epsilon(1e-14));
}

TEST_CASE("airy values at the origin carry the gamma normalization") {
    FunPair ai = airy_ai(0.0);
    CHECK(ai.value.real() ==
          doctest::Approx(std::pow(3.0, -2.0 / 3.0) / gam(2.0 / 3.0)).epsilon(1e-13));
    CHECK(ai.derivative.real() ==
          doctest::Approx(-std::pow(3.0, -1.0 / 3.0) / gam(1.0 / 3.0)).epsilon(1e-13));
}

TEST_CASE("airy wronskian on a grid") {
    for (int i = 0; i <= 50; ++i) {
        const double x = -12.0 + 24.0 * i / 50.0;
        FunPair ai = airy_ai(x), bi = airy_bi(x);
        const double w = (ai.derivative * bi.value - ai.value * bi.derivative).real();
        CHECK(w == doctest::Approx(-1.0 / pi).epsilon(1e-12));
    }
}

TEST_CASE("airy against the Taylor oracle") {
    const double y0 = airy_ai(0.0).value.real();
    const double dy0 = airy_ai(0.0).derivative.real();
    for (double x : {2.0, -3.0, 3.9}) {
        CHECK(airy_ai(x).value.real() == doctest::Approx(oracle_airy(x, y0, dy0)).epsilon(5e-13));
    }
    const double b0 = airy_bi(0.0).value.real();
    const double db0 = airy_bi(0.0).derivative.real();
    CHECK(airy_bi(2.5).value.real() == doctest::Approx(oracle_airy(2.5, b0, db0)).epsilon(5e-13));
}

TEST_CASE("complex airy satisfies the differential equation") {
    for (cplx z : {cplx(3.0, 2.0), cplx(-4.0, 3.0), cplx(8.0, 6.0), cplx(-20.0, 4.0),
                   cplx(1.0, -25.0), cplx(-10.0, -14.0), cplx(0.5, 0.4)}) {
        auto second = [&](double h) {
            FunPair p = airy_ai(z + h), m = airy_ai(z - h);
            return (p.derivative - m.derivative) / (2.0 * h);
        };
        const cplx d1 = second(1e-3), d2 = second(5e-4);
        const cplx dd = (4.0 * d2 - d1) / 3.0;
        FunPair c = airy_ai(z);
        CHECK(std::abs(dd - z * c.value) / std::abs(c.value) < 1e-7);
    }
}

TEST_CASE("second-kind Bessel kernel: equation residual and wronskian with the first kind") {
    // residual of the modified equation at (0.7, 2.3) with extrapolated second
    // derivative
    const double nu = 0.7, x = 2.3;
    auto dk = [&](double h) {
        return (bessel_k(nu, x + h).derivative - bessel_k(nu, x - h).derivative) / (2.0 * h);
    };
    const cplx kpp = (4.0 * dk(5e-4) - dk(1e-3)) / 3.0;
    FunPair k = bessel_k(nu, x);
    const cplx res = x * x * kpp + x * k.derivative - (x * x + nu * nu) * k.value;
    CHECK(std::abs(res) < 1e-9);

    // I K' - I' K = -1/x
    for (double xx : {0.5, 5.0, 20.0, 45.0}) {
        for (double nn : {0.0, 1.0 / 3.0, 0.7, 4.0}) {
            FunPair iv = bessel_i(nn, xx);
            FunPair kv = bessel_k(nn, xx);
            const cplx w = iv.value * kv.derivative - iv.derivative * kv.value;
            CHECK(std::abs(w + 1.0 / xx) < 1e-12 * (1.0 + std::abs(w)));
        }
    }
}

TEST_CASE("first/second kind pair on the axis") {
    JnPair jn = bessel_jn(0.7, 1.5);
    const double w = (jn.j.derivative * jn.n.value - jn.j.value * jn.n.derivative).real();
    CHECK(w == doctest::Approx(-2.0 / (pi * 1.5)).epsilon(1e-12));

    for (int i = 1; i <= 25; ++i) {
        const double x = 0.4 + 1.9 * i;
        for (double nu : {-3.3, 0.0, 2.5, 11.0}) {
            JnPair p = bessel_jn(nu, x);
            const double ww = (p.j.derivative * p.n.value - p.j.value * p.n.derivative).real();
            CHECK(ww == doctest::Approx(-2.0 / (pi * x)).epsilon(1e-9));
        }
    }
}

TEST_CASE("imaginary-index modified Bessel against the ascending series oracle") {
    const cplx nu(0.0, 1.0);
    const double x = 2.0;
    cplx sum = 0.0;
    for (int n = 0; n < 60; ++n) {
        const cplx lg = oracle_lgamma(nu + double(n) + 1.0);
        sum += std::exp((nu + 2.0 * double(n)) * std::log(x / 2.0) - oracle_lgamma(cplx(n + 1.0)) -
                        lg);
    }
    FunPair iv = bessel_i(nu, x);
    CHECK(std::abs(iv.value - sum) < 1e-12 * std::abs(sum));

    // ratio fraction consistent with direct values, including large arguments
    for (double xx : {2.0, 30.0, 48.0}) {
        const cplx r = bessel_i_ratio(nu, xx);
        const cplx direct = bessel_i(nu + 1.0, xx).value / bessel_i(nu, xx).value;
        CHECK(std::abs(r - direct) < 1e-11 * std::abs(direct));
    }
}

TEST_CASE("whittaker function: equation residual, imaginary argument, tricomi relation") {
    auto ode_residual = [](cplx l, cplx m, cplx x, cplx dir) {
        const double h = 1e-3;
        auto dW = [&](double hh) {
            return (whittaker_w(l, m, x + dir * hh).derivative -
                    whittaker_w(l, m, x - dir * hh).derivative) /
                   (2.0 * hh * dir);
        };
        const cplx wpp = (4.0 * dW(0.5 * h) - dW(h)) / 3.0;
        FunPair w = whittaker_w(l, m, x);
        const cplx res =
            4.0 * x * x * wpp - (x * x - 4.0 * l * x + 4.0 * m * m - 1.0) * w.value;
        return std::abs(res) / std::abs(w.value);
    };
    CHECK(ode_residual(cplx(0, 0.3), -0.4, cplx(1.0, 0), 1.0) < 1e-8);
    // imaginary argument, the regime used by the correlated-noise family
    CHECK(ode_residual(cplx(0, 0.8), 0.6, cplx(0, 2.5), cplx(0, 1)) < 1e-8);

    // relation to the confluent second-kind function at one point
    const cplx a(0.4, 0.0), b(1.6, 0.0), z(1.3, 0.0);
    FunPair u = tricomi_u(a, b, z);
    const cplx viaW = std::pow(z, -0.5 * b) * std::exp(0.5 * z) *
                      whittaker_w(-a + 0.5 * b, 0.5 * (b - 1.0), z).value;
    CHECK(std::abs(u.value - viaW) < 1e-10 * std::abs(viaW));
    // direct half-line integral oracle; substitute tau = t^a to remove the
    // endpoint singularity
    const double direct = oracle_simpson(
                              [&](double tau) {
                                  const double t = std::pow(tau, 1.0 / 0.4);
                                  return (1.0 / 0.4) * std::pow(1.0 + t, 1.6 - 0.4 - 1.0) *
                                         std::exp(-1.3 * t);
                              },
                              0.0, std::pow(60.0, 0.4), 200000) /
                          gam(0.4);
    CHECK(u.value.real() == doctest::Approx(direct).epsilon(1e-6));
}

TEST_CASE("complete elliptic integrals") {
    EllipticPair e0 = elliptic_ke(0.0);
    CHECK(e0.k.value.real() == doctest::Approx(pi / 2).epsilon(1e-14));
    CHECK(e0.e.value.real() == doctest::Approx(pi / 2).epsilon(1e-14));

    // lemniscatic point
    const double lem = gam(0.25) * gam(0.25) / std::pow(2.0 * pi, 1.5);
    CHECK(lem == doctest::Approx(0.834626841674073).epsilon(1e-12));
    EllipticPair eh = elliptic_ke(0.5);
    CHECK(eh.k.value.real() == doctest::Approx(lem * pi / std::sqrt(2.0)).epsilon(1e-13));

    // quadrature oracle at parameter 0.3
    auto kint = [&](double m) {
        return oracle_simpson(
            [&](double th) { return 1.0 / std::sqrt(1.0 - m * std::sin(th) * std::sin(th)); },
            0.0, pi / 2, 4000);
    };
    CHECK(elliptic_ke(0.3).k.value.real() == doctest::Approx(kint(0.3)).epsilon(1e-12));

    // negative parameter via the modulus transformation vs direct quadrature
    CHECK(elliptic_ke(-0.7).k.value.real() == doctest::Approx(kint(-0.7)).epsilon(1e-12));
    auto eint = [&](double m) {
        return oracle_simpson(
            [&](double th) { return std::sqrt(1.0 - m * std::sin(th) * std::sin(th)); }, 0.0,
            pi / 2, 4000);
    };
    CHECK(elliptic_ke(-0.7).e.value.real() == doctest::Approx(eint(-0.7)).epsilon(1e-12));

    // derivative identities against finite differences
    const double m = 0.37, h = 1e-6;
    CHECK(elliptic_ke(m).k.derivative.real() ==
          doctest::Approx((kint(m + h) - kint(m - h)) / (2 * h)).epsilon(1e-6));

    CHECK_THROWS_AS(elliptic_ke(1.0), std::domain_error);
}

TEST_CASE("gauss hypergeometric series and log-derivative") {
    CHECK(hyp2f1(0.3, 0.7, 1.1, 0.0).value.real() == doctest::Approx(1.0));
    CHECK(hyp2f1(1.0, 1.0, 2.0, 0.4).value.real() ==
          doctest::Approx(-std::log(0.6) / 0.4).epsilon(1e-14));

    // brute-force partial sums with extrapolation as an oracle
    const cplx a(0.5, 0.85), b(0.5, -0.85), c(1.0, 0.0);
    const double x = 0.62;
    cplx t = 1.0, s200 = 0.0, s400 = 0.0;
    for (int n = 0; n < 400; ++n) {
        if (n == 200) s200 = s400;
        s400 += t;
        t *= (a + double(n)) * (b + double(n)) * x / ((c + double(n)) * double(n + 1));
    }
    const cplx oracle = s400 + (s400 - s200); // crude geometric extrapolation
    CHECK(std::abs(hyp2f1(a, b, c, x).value - oracle) < 1e-4 * std::abs(oracle));

    // differential contiguous relation b F(a,b+1;c;x) = b F + x F'
    for (double xx : {0.2, 0.55, 0.8}) {
        FunPair f = hyp2f1(a, b, c, xx);
        FunPair fb = hyp2f1(a, b + 1.0, c, xx);
        const cplx lhs = b * fb.value;
        const cplx rhs = b * f.value + xx * f.derivative;
        CHECK(std::abs(lhs - rhs) < 1e-9 * std::abs(lhs));
    }

    // large-parameter log-derivative path against the series path
    const cplx al(26.0, 14.0), bl(31.0, -14.0), cl(56.0, 0.4);
    const double xl = 0.31;
    const cplx via_series = hyp2f1(al, bl, cl, xl).derivative / hyp2f1(al, bl, cl, xl).value;
    const cplx via_ode = hyp2f1_logderiv(al + 40.0, bl, cl + 40.0, xl); // force the ODE branch
    const cplx series2 =
        hyp2f1(al + 40.0, bl, cl + 40.0, xl).derivative / hyp2f1(al + 40.0, bl, cl + 40.0, xl).value;
    CHECK(std::abs(hyp2f1_logderiv(al, bl, cl, xl) - via_series) < 1e-12 * std::abs(via_series));
    CHECK(std::abs(via_ode - series2) < 1e-9 * std::abs(series2));

    CHECK_THROWS_AS(hyp2f1(0.3, 0.7, -2.0, 0.4), std::domain_error);
    CHECK_THROWS_AS(hyp2f1(0.3, 0.7, 1.0, 0.999), std::domain_error);
}
