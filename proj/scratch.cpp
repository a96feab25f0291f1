// temporary smoke test (not part of the build)
#include "lyap/coeffs.hpp"
#include "lyap/model.hpp"
#include "lyap/sl2.hpp"
#include "lyap/specfun.hpp"

#include <cstdio>

using namespace lyap;
namespace sf = lyap::specfun;
using sf::FunPair;

int main() {
    // Airy at 0
    FunPair a0 = sf::airy_ai(0.0);
    std::printf("Ai(0)  = %.15f  (expect 0.355028053887817)\n", a0.value.real());
    std::printf("Ai'(0) = %.15f  (expect -0.258819403792807)\n", a0.derivative.real());
    FunPair b0 = sf::airy_bi(0.0);
    std::printf("Bi(0)  = %.15f  (expect 0.614926627446001)\n", b0.value.real());

    for (double x : {-20.0, -5.0, -2.0, 0.0, 2.0, 5.0, 7.0, 12.0, 30.0}) {
        FunPair ai = sf::airy_ai(x), bi = sf::airy_bi(x);
        double wr = (ai.derivative * bi.value - ai.value * bi.derivative).real();
        std::printf("x=%6.1f Ai=%.12e wronskian err=%.2e\n", x, ai.value.real(),
                    wr + 1.0 / 3.141592653589793);
    }
    // complex Airy ODE residual via series/bessel/asym regions
    for (cplx z : {cplx(3.0, 2.0), cplx(-4.0, 3.0), cplx(8.0, 6.0), cplx(-20.0, 4.0),
                   cplx(1.0, -25.0), cplx(-10.0, -14.0)}) {
        double h = 1e-4;
        FunPair p = sf::airy_ai(z + h), m = sf::airy_ai(z - h), c = sf::airy_ai(z);
        cplx second = (p.derivative - m.derivative) / (2 * h);
        std::printf("z=(%5.1f,%5.1f) |Ai''-zAi|/|Ai| = %.2e\n", z.real(), z.imag(),
                    std::abs(second - z * c.value) / std::abs(c.value));
    }

    // K ODE residual at (0.7, 2.3)
    {
        double nu = 0.7, x = 2.3, h = 1e-4;
        FunPair kp = sf::bessel_k(nu, x + h), km = sf::bessel_k(nu, x - h), kc = sf::bessel_k(nu, x);
        cplx kpp = (kp.derivative - km.derivative) / (2 * h);
        cplx res = x * x * kpp + x * kc.derivative - (x * x + nu * nu) * kc.value;
        std::printf("K ODE residual = %.2e  (K(0.7,2.3)=%.12e)\n", std::abs(res),
                    kc.value.real());
    }
    // J/N wronskian at 1.5
    {
        auto jn = sf::bessel_jn(0.7, 1.5);
        double w = (jn.j.derivative * jn.n.value - jn.j.value * jn.n.derivative).real();
        std::printf("J'N-JN' + 2/(pi x) err = %.2e\n", w + 2.0 / (3.141592653589793 * 1.5));
    }
    // I with imaginary index
    {
        FunPair i1 = sf::bessel_i(cplx(0, 1), 2.0);
        std::printf("I_i(2) = %.12f %+.12fi\n", i1.value.real(), i1.value.imag());
        cplx ratio = sf::bessel_i_ratio(cplx(0, 1), 2.0);
        FunPair i2 = sf::bessel_i(cplx(0, 1) + 1.0, 2.0);
        std::printf("ratio CF err = %.2e\n", std::abs(ratio - i2.value / i1.value));
    }
    // elliptic
    {
        auto ke = sf::elliptic_ke(0.5);
        std::printf("K(m=0.5)=%.15f (1.854074677301372) E=%.15f (1.350643881047676)\n",
                    ke.k.value.real(), ke.e.value.real());
    }
    // 2F1
    {
        FunPair f = sf::hyp2f1(1.0, 1.0, 2.0, 0.4);
        std::printf("2F1(1,1;2;0.4) = %.15f (expect %.15f)\n", f.value.real(),
                    -std::log(0.6) / 0.4);
        cplx ld = sf::hyp2f1_logderiv(1.0, 1.0, 2.0, 0.4);
        std::printf("logderiv err = %.2e\n", std::abs(ld - f.derivative / f.value));
        // ODE route vs series route at moderately large params
        cplx a(18.0, 7.0), b(21.0, -7.0), c(1.0, 0.3);
        FunPair g = sf::hyp2f1(a, b, c, 0.3);
        // force ODE
        cplx lode = sf::hyp2f1_logderiv(35.0 * a / 18.0, b, c, 0.2);
        (void)lode;
        FunPair g2 = sf::hyp2f1(35.0 * a / 18.0, b, c, 0.2);
        std::printf("2F1 ODE-vs-series: %.2e\n",
                    std::abs(lode - g2.derivative / g2.value) / std::abs(lode));
        (void)g;
    }
    // Whittaker ODE residual at (0.3i, -0.4, 1)
    {
        cplx l(0, 0.3), m(-0.4, 0), x(1.0, 0);
        double h = 1e-4;
        FunPair wp = sf::whittaker_w(l, m, x + h), wm = sf::whittaker_w(l, m, x - h),
                wc = sf::whittaker_w(l, m, x);
        cplx wpp = (wp.derivative - wm.derivative) / (2.0 * h);
        cplx res = 4.0 * x * x * wpp - (x * x - 4.0 * l * x + 4.0 * m * m - 1.0) * wc.value;
        std::printf("W ODE residual = %.2e (W=%.10e)\n", std::abs(res) / std::abs(wc.value),
                    wc.value.real());
        cplx gsc = sf::whittaker_scaling(l, m, x);
        cplx gref = 1.0 - 2.0 * x * wc.derivative / wc.value;
        std::printf("whittaker_scaling err = %.2e\n", std::abs(gsc - gref));
    }
    // sl2 basics
    {
        Mat2 m = iwasawa_compose({0.4, -0.3, 1.7});
        auto p = iwasawa_decompose(m);
        std::printf("roundtrip: %.2e %.2e %.2e\n", p.alpha - 0.4, p.w + 0.3, p.u - 1.7);
        cplx mu = mu_exact({0.0, 0.3, 0.0});
        std::printf("mu(0,0.3,0) = %.12f\n", mu.real());
        cplx mur = mu_exact({3.141592653589793 / 3.0, 0.0, 0.0});
        std::printf("mu rot = %.12f + %.12fi\n", mur.real(), mur.imag());
    }
    // coefficient polynomials
    {
        DisorderModel m = scalar_model({0.1, 0.05, 0.2}, 0.7);
        auto cs = build_coefficients(m);
        std::printf("scalar Q: deg=%d const=%.3f\n", cs.q.degree(1e-14), cs.q.c[0]);
        auto zp = classify_zeros(cs);
        std::printf("scalar label: %s\n", to_string(zp.label).c_str());
        DisorderModel d = distance_model({0.1, 0.05, 0.2}, 0.7);
        auto zd = classify_zeros(build_coefficients(d));
        std::printf("distance label: %s (zeros at +-i, mult 2)\n", to_string(zd.label).c_str());
        DisorderModel e;
        e.set_cov(0.3, 0, 0, 0.5, 0, 0.9);
        auto ze = classify_zeros(build_coefficients(e));
        std::printf("elliptic label: %s\n", to_string(ze.label).c_str());
        auto a = exponents(build_coefficients(e), ze);
        std::printf("sum a = %.12f %+.2ei\n", (a[0] + a[1] + a[2] + a[3]).real(),
                    (a[0] + a[1] + a[2] + a[3]).imag());
        std::printf("a_i = %.6f%+.6fi (expect 0.5)\n", a[0].real(), a[0].imag());
    }
    return 0;
}
