#include "lyap/fp_solver.hpp"

#include "lyap/coeffs.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

namespace lyap {

namespace {

constexpr double pi = 3.141592653589793238462643383279502884;

// 4-point Gauss-Legendre nodes on [-1, 1]
const double gl4x[2] = {0.3399810435848563, 0.8611363115940526};
const double gl4w[2] = {0.6521451548625461, 0.3478548451374538};

template <typename F>
double gl4(F f, double a, double b) {
    const double c = 0.5 * (a + b), r = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 2; ++i)
        s += gl4w[i] * (f(c + r * gl4x[i]) + f(c - r * gl4x[i]));
    return r * s;
}

template <typename F>
double adaptive_gl(F f, double a, double b, double tol, int depth = 0) {
    const double whole = gl4(f, a, b);
    const double mid = 0.5 * (a + b);
    const double split = gl4(f, a, mid) + gl4(f, mid, b);
    if (depth >= 12 || std::abs(split - whole) <= tol * (std::abs(split) + 1e-300))
        return split;
    return adaptive_gl(f, a, mid, 0.7 * tol, depth + 1) +
           adaptive_gl(f, mid, b, 0.7 * tol, depth + 1);
}

/// In-place radix-2 complex FFT (n a power of two).
void fft(std::vector<std::complex<double>>& a, bool inverse) {
    const size_t n = a.size();
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * pi / double(len) * (inverse ? 1.0 : -1.0);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0);
            for (size_t k = 0; k < len / 2; ++k) {
                auto u = a[i + k], v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (auto& x : a) x /= double(n);
}

/// Spectral derivative of periodic samples on a uniform grid starting at
/// phi0 = -pi + h/2; also evaluates f and f' at +-pi by Fourier interpolation.
struct SpectralView {
    std::vector<double> deriv;
    double f_pi, df_pi;
};

SpectralView spectral_derivative(const std::vector<double>& f) {
    const size_t n = f.size();
    std::vector<std::complex<double>> a(n);
    for (size_t i = 0; i < n; ++i) a[i] = f[i];
    fft(a, false);
    // modes k in [-n/2, n/2); sample offset phi0 = -pi + h/2 folds into phases
    const double h = 2.0 * pi / double(n);
    const double phi0 = -pi + 0.5 * h;
    std::vector<std::complex<double>> da(n);
    std::complex<double> fpi = 0.0, dfpi = 0.0;
    for (size_t k = 0; k < n; ++k) {
        double kk = (k <= n / 2) ? double(k) : double(k) - double(n);
        if (k == n / 2) kk = 0.0; // drop the unmatched Nyquist mode in d/dphi
        const std::complex<double> ik(0.0, kk);
        da[k] = a[k] * ik;
        // value at phi = pi: exp(i k (pi - phi0)) with the DFT convention
        const std::complex<double> ph =
            std::exp(std::complex<double>(0.0, kk * (pi - phi0)));
        fpi += a[k] * ph;
        dfpi += a[k] * ik * ph;
    }
    fft(da, true);
    SpectralView out;
    out.deriv.resize(n);
    for (size_t i = 0; i < n; ++i) out.deriv[i] = da[i].real();
    out.f_pi = fpi.real() / double(n);
    out.df_pi = dfpi.real() / double(n);
    return out;
}

// ---------------------------------------------------------------------------
// periodic solver (rotation noise present)
// ---------------------------------------------------------------------------

DensityProfile solve_circle(const DisorderModel& m, int n) {
    const double h = 2.0 * pi / n;
    auto q = [&](double phi) { return 2.0 * angular_drift(m, phi) / angular_variance(m, phi); };

    std::vector<double> phi(n), sig(n), jj(n);
    for (int i = 0; i < n; ++i) {
        phi[i] = -pi + (i + 0.5) * h;
        sig[i] = angular_variance(m, phi[i]);
        if (!(sig[i] > 0.0))
            throw degenerate_diffusion("stationary_density: angular variance vanishes");
    }
    const double sig_pi = angular_variance(m, pi);
    if (!(sig_pi > 0.0))
        throw degenerate_diffusion("stationary_density: angular variance vanishes at the seam");

    // cumulative drift integral at midpoints and at the seam
    double acc = gl4(q, -pi, phi[0]);
    for (int i = 0; i < n; ++i) {
        jj[i] = acc;
        if (i + 1 < n) acc += gl4(q, phi[i], phi[i + 1]);
    }
    const double jtot = acc + gl4(q, phi[n - 1], pi);

    DensityProfile d;
    d.phi = phi;
    d.fa.resize(n);

    if (std::abs(jtot) < 1e-10) {
        d.zero_current_branch = true;
        const double jmax = *std::max_element(jj.begin(), jj.end());
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            d.fa[i] = std::exp(jj[i] - jmax) / sig[i];
            sum += d.fa[i] * h;
        }
        for (int i = 0; i < n; ++i) d.fa[i] /= sum;
        d.current = 0.0;
        const double f_pi = std::exp(jtot - jmax) / sig_pi / sum; // J(pi) anchored at -pi
        d.fa_minus_pi = std::exp(0.0 - jmax) / sig_pi / sum;
        d.fa_plus_pi = f_pi;
    } else {
        // forward and backward scaled integrals of exp(J(phi) - J(t));
        // J inside a panel by local quadrature from the anchored edge
        std::vector<double> w1(n), w2(n);
        auto jlocal = [&](double a, double ja, double t) { return ja + gl4(q, a, t); };
        double wl = 0.0; // integral from -pi
        double jprev = 0.0;
        double tprev = -pi;
        for (int i = 0; i < n; ++i) {
            const double jnew = jj[i];
            const double step =
                gl4([&](double t) { return std::exp(jnew - jlocal(tprev, jprev, t)); }, tprev,
                    phi[i]);
            wl = wl * std::exp(jnew - jprev) + step;
            w1[i] = wl;
            jprev = jnew;
            tprev = phi[i];
        }
        double wr = 0.0;
        jprev = jtot;
        tprev = pi;
        for (int i = n - 1; i >= 0; --i) {
            const double jnew = jj[i];
            const double step =
                gl4([&](double t) { return std::exp(jnew - jlocal(phi[i], jnew, t)); }, phi[i],
                    tprev);
            wr = wr * std::exp(jnew - jprev) + step;
            w2[i] = wr;
            jprev = jnew;
            tprev = phi[i];
        }
        const double c1 = 1.0 / (1.0 - std::exp(jtot));
        const double c2 = 1.0 / (std::exp(-jtot) - 1.0);
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            d.fa[i] = 2.0 * (c2 * w2[i] + c1 * w1[i]) / sig[i];
            sum += d.fa[i] * h;
        }
        d.current = 1.0 / sum;
        for (int i = 0; i < n; ++i) d.fa[i] *= d.current;
        // seam values: W1(pi) via one more forward step, W2(-pi) backward
        const double w1pi =
            wl * std::exp(jtot - jj[n - 1]) +
            gl4([&](double t) { return std::exp(jtot - jlocal(phi[n - 1], jj[n - 1], t)); },
                phi[n - 1], pi);
        const double w2mpi =
            w2[0] * std::exp(0.0 - jj[0]) +
            gl4([&](double t) { return std::exp(0.0 - jlocal(-pi, 0.0, t)); }, -pi, phi[0]);
        d.fa_plus_pi = 2.0 * d.current * c1 * w1pi / sig_pi;
        d.fa_minus_pi = 2.0 * d.current * c2 * w2mpi / sig_pi;
    }

    SpectralView sv = spectral_derivative(d.fa);
    d.dfa_plus_pi = sv.df_pi;
    d.dfa_minus_pi = sv.df_pi;
    if (d.zero_current_branch) {
        d.fa_plus_pi = sv.f_pi;
        d.fa_minus_pi = sv.f_pi;
    }
    double check = 0.0;
    for (int i = 0; i < n; ++i) check += d.fa[i] * h;
    d.norm_error = std::abs(check - 1.0);
    return d;
}

// ---------------------------------------------------------------------------
// line solver (no rotation noise)
// ---------------------------------------------------------------------------

DensityProfile solve_line(const DisorderModel& m, int n) {
    const double al = m.means.alpha;
    auto sigma2 = [&](double z) { return variance_sigma2(m, z); };
    auto q = [&](double z) { return 2.0 * drift_v(m, z) / variance_sigma2(m, z); };

    // tail exponents decide the grid extent
    double tmax = 30.0;
    const bool zero_current = (al == 0.0);
    if (zero_current) {
        if (!(m.means.w < 0.0))
            throw degenerate_diffusion(
                "stationary_density: no normalizable stationary state (w >= 0, no rotation)");
        const double p = m.means.w / m.dww() - 1.0; // tail power of the density
        tmax = std::min(90.0, 30.0 / std::min(1.0, std::abs(p + 1.0)) + 8.0);
    }
    // strictly positive line variance required
    for (int i = 0; i <= 64; ++i) {
        const double z = -50.0 + 100.0 * i / 64.0;
        if (!(sigma2(z) > 0.0))
            throw degenerate_diffusion("stationary_density: line variance vanishes");
    }

    const double ht = 2.0 * tmax / n;
    std::vector<double> t(n + 1), z(n + 1), jz(n + 1);
    for (int i = 0; i <= n; ++i) {
        t[i] = -tmax + i * ht;
        z[i] = std::sinh(t[i]);
    }

    // cumulative drift integral in the projective coordinate
    auto qt = [&](double tt) { return q(std::sinh(tt)) * std::cosh(tt); };
    jz[0] = 0.0;
    for (int i = 0; i < n; ++i) jz[i + 1] = jz[i] + gl4(qt, t[i], t[i + 1]);
    // the forward integrals exponentiate the running rise of the drift
    // integral; a tall barrier means the noise is too weak for this solver
    double run_min = 0.0, bump = 0.0;
    for (int i = 0; i <= n; ++i) {
        run_min = std::min(run_min, jz[i]);
        bump = std::max(bump, jz[i] - run_min);
    }
    if (bump > 600.0)
        throw std::runtime_error("stationary_density: drift barrier overflows (too weak noise)");

    DensityProfile d;
    d.line_grid = true;
    d.z = z;
    d.fz.assign(n + 1, 0.0);

    if (zero_current) {
        d.zero_current_branch = true;
        const double jmax = *std::max_element(jz.begin(), jz.end());
        for (int i = 0; i <= n; ++i) d.fz[i] = 2.0 * std::exp(jz[i] - jmax) / sigma2(z[i]);
    } else {
        // W(z_i) = int_{-inf}^{z_i} exp(J(z_i) - J(zeta)) dzeta, forward recurrence
        DisorderModel mm = m;
        const bool flip = al < 0.0;
        if (flip) {
            // orient the drift so the current flows downward through infinity
            mm = m.mirrored();
            DensityProfile dd = solve_line(mm, n);
            std::reverse(dd.z.begin(), dd.z.end());
            std::reverse(dd.fz.begin(), dd.fz.end());
            for (auto& v : dd.z) v = -v;
            dd.current = -dd.current;
            std::reverse(dd.phi.begin(), dd.phi.end());
            for (auto& v : dd.phi) v = -v;
            std::reverse(dd.fa.begin(), dd.fa.end());
            std::swap(dd.fa_minus_pi, dd.fa_plus_pi);
            return dd;
        }
        // panel exponents computed locally, never as differences of the large
        // cumulative values; steep panels collapse onto the endpoint layer
        double w = 1.0 / std::max(1e-300, -drift_v(m, z[0]) * 2.0 / sigma2(z[0]));
        d.fz[0] = 2.0 * w / sigma2(z[0]);
        for (int i = 0; i < n; ++i) {
            const double b = t[i + 1];
            const double qb = qt(b);
            double step;
            if (qb * ht < -150.0) {
                // the layer at the right edge is far thinner than the panel:
                // endpoint expansion with the curvature corrections
                const double lam = -qb;
                const double del = std::min(ht, 8.0 / lam);
                const double qdot = (qt(b) - qt(b - del)) / del;
                const double g0 = std::cosh(b), g1 = -std::sinh(b), g2 = 0.5 * g0;
                step = g0 / lam + g1 / (lam * lam) + (2.0 * g2 - g0 * qdot) / (lam * lam * lam);
            } else {
                step = adaptive_gl(
                    [&](double tt) {
                        const double expo = gl4(qt, tt, b); // J(t_{i+1}) - J(tt)
                        return expo > 690.0 ? 0.0 : std::exp(expo) * std::cosh(tt);
                    },
                    t[i], b, 1e-12);
            }
            const double dj = gl4(qt, t[i], b);
            w = (dj > 690.0 || dj < -690.0 ? 0.0 : w * std::exp(dj)) + step;
            d.fz[i + 1] = 2.0 * w / sigma2(z[i + 1]);
        }
    }

    // normalize on the stretched grid (trapezoid in t with dz = cosh t dt)
    double sum = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double wgt = (i == 0 || i == n) ? 0.5 : 1.0;
        sum += wgt * d.fz[i] * std::cosh(t[i]) * ht;
    }
    for (int i = 0; i <= n; ++i) d.fz[i] /= sum;
    d.current = zero_current ? 0.0 : 1.0 / sum;
    d.norm_error = 0.0;

    // angular view
    d.phi.resize(n + 1);
    d.fa.resize(n + 1);
    for (int i = 0; i <= n; ++i) {
        d.phi[i] = 2.0 * std::atan(z[i]);
        d.fa[i] = 0.5 * (1.0 + z[i] * z[i]) * d.fz[i];
    }
    d.fa_minus_pi = d.fa.front();
    d.fa_plus_pi = d.fa.back();
    return d;
}

} // namespace

DensityProfile stationary_density(const DisorderModel& m, int grid_size) {
    m.validate();
    if (m.zero_cov()) throw degenerate_diffusion("stationary_density: no noise at all");
    if (m.daa() > 0.0) return solve_circle(m, grid_size);
    if (m.means.alpha == 0.0 && m.means.u == 0.0 && m.duu() == 0.0 && m.dwu() == 0.0 &&
        m.dww() > 0.0 && m.means.w != 0.0) {
        // pure stretch drift: the state piles onto the attracting axis point
        DensityProfile d;
        d.point_mass = true;
        d.zero_current_branch = true;
        if (m.means.w < 0.0) {
            d.point_location = 0.0;
        } else {
            d.point_at_infinity = true;
        }
        return d;
    }
    return solve_line(m, grid_size);
}

double gamma_from_density(const DisorderModel& m, const DensityProfile& d) {
    const double al = m.means.alpha;
    if (d.point_mass) {
        if (d.point_at_infinity) return m.means.w; // growth along the expanding axis
        return -m.means.w + m.dau() + (al + 2.0 * m.daw()) * d.point_location;
    }
    double gamma = -m.means.w + m.dau();
    if (d.line_grid) {
        // symmetric truncation pairs the slowly decaying odd tails;
        // the grid is uniform in the stretched coordinate
        const size_t n = d.z.size();
        const double ht = std::asinh(d.z[1]) - std::asinh(d.z[0]);
        double i1 = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const double wgt = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
            i1 += wgt * d.z[i] * d.fz[i] * std::cosh(std::asinh(d.z[i])) * ht;
        }
        gamma += (al + 2.0 * m.daw()) * i1;
        return gamma;
    }
    const size_t n = d.phi.size();
    const double h = 2.0 * pi / double(n);
    SpectralView sv = spectral_derivative(d.fa);
    double i1 = 0.0, i2 = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double tn = std::tan(0.5 * d.phi[i]);
        i1 += tn * d.fa[i];
        i2 += tn * sv.deriv[i];
    }
    i1 *= h;
    i2 *= h;
    gamma += (al + 2.0 * m.daw()) * i1 + m.daa() * i2;
    return gamma;
}

cplx omega_fp(const DisorderModel& m, int grid_size) {
    DensityProfile d = stationary_density(m, grid_size);
    return cplx(gamma_from_density(m, d), pi * d.current);
}

double rice_residual(const DisorderModel& m, const DensityProfile& d) {
    // tail fit of the boundary combination over the last decade of |z|
    double lim_f = 0.0, lim_df = 0.0;
    if (d.line_grid) {
        const size_t n = d.z.size();
        const double zmax = d.z.back();
        double acc = 0.0, dacc = 0.0;
        int cnt = 0;
        for (size_t i = 0; i < n; ++i) {
            const double az = std::abs(d.z[i]);
            if (az >= 0.1 * zmax && az <= zmax) {
                acc += d.z[i] * d.z[i] * d.fz[i];
                // derivative combination vanishes with daa = 0
                ++cnt;
            }
        }
        lim_f = acc / std::max(1, cnt);
        lim_df = dacc;
    } else {
        const size_t n = d.phi.size();
        SpectralView sv = spectral_derivative(d.fa);
        const double zedge = std::tan(0.5 * (pi - pi / double(n)));
        double acc = 0.0, dacc = 0.0;
        int cnt = 0;
        for (size_t i = 0; i < n; ++i) {
            const double zz = std::tan(0.5 * d.phi[i]);
            if (std::abs(zz) >= 0.1 * zedge) {
                const double r = zz * zz / (1.0 + zz * zz);
                acc += 2.0 * d.fa[i] * r;
                dacc += 4.0 * sv.deriv[i] * r;
                ++cnt;
            }
        }
        lim_f = acc / std::max(1, cnt);
        lim_df = dacc / std::max(1, cnt);
    }
    // stationary-equation seam identity; the derivative term enters with half
    // the weight of the naive tail limit
    const double lhs = 0.5 * m.daa() * lim_df + (m.means.alpha + 2.0 * m.daw()) * lim_f;
    return std::abs(lhs - d.current);
}

double hilbert_residual(const DisorderModel& m, const DensityProfile& d, cplx omega,
                        const std::vector<cplx>& probes) {
    CoefficientSet cs = build_coefficients(m);
    auto transform = [&](cplx y) {
        cplx acc = 0.0;
        if (d.line_grid) {
            const size_t n = d.z.size();
            const double ht = std::asinh(d.z[1]) - std::asinh(d.z[0]);
            for (size_t i = 0; i < n; ++i) {
                const double wgt = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
                acc += wgt * d.fz[i] * std::cosh(std::asinh(d.z[i])) * ht / (y - d.z[i]);
            }
        } else {
            const size_t n = d.phi.size();
            const double h = 2.0 * pi / double(n);
            for (size_t i = 0; i < n; ++i)
                acc += d.fa[i] * h / (y - std::tan(0.5 * d.phi[i]));
        }
        return acc;
    };
    double worst = 0.0;
    for (cplx y : probes) {
        if (!(y.imag() < -0.099))
            throw std::domain_error("hilbert_residual: probes must satisfy Im y <= -0.1");
        const double h1 = 1e-3 * (1.0 + std::abs(y));
        auto der = [&](double hh) { return (transform(y + hh) - transform(y - hh)) / (2.0 * hh); };
        const cplx d1 = der(h1), d2 = der(0.5 * h1);
        const cplx fp = (4.0 * d2 - d1) / 3.0;
        const cplx f = transform(y);
        const cplx res = cs.q.eval(y) * fp + cs.r.eval(y) * f - cs.s.eval(y) - 2.0 * omega;
        worst = std::max(worst, std::abs(res));
    }
    return worst;
}

} // namespace lyap
