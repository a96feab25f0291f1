#include "lyap/monte_carlo.hpp"

#include "lyap/closed_form.hpp"
#include "lyap/model_maps.hpp"

#include <doctest.h>

#include <cmath>

using namespace lyap;

namespace {
constexpr double pi = 3.141592653589793238462643383279502884;

McConfig quick(long long steps, std::uint64_t seed) {
    McConfig cfg;
    cfg.n_steps = steps;
    cfg.n_replicas = 4;
    cfg.seed = seed;
    return cfg;
}
} // namespace

TEST_CASE("identity product grows not at all") {
    DisorderModel m; // everything zero
    McEstimate e = simulate_product(m, quick(10000, 7));
    CHECK(e.gamma_hat == 0.0);
    CHECK(e.j_hat == 0.0);
}

TEST_CASE("stretch drift with faint noise") {
    DisorderModel m = susy_model({0.0, 0.1, 0.0}, 1e-4);
    McEstimate e = simulate_product(m, quick(200000, 11));
    CHECK(std::abs(e.gamma_hat - 0.1) < 3.0 * std::max(e.gamma_err, 1e-4));
}

TEST_CASE("rotation drift sets the winding rate") {
    DisorderModel m = distance_model({0.2, -1e-3, 0.0}, 1e-6);
    McEstimate e = simulate_product(m, quick(200000, 13));
    CHECK(std::abs(e.j_hat - 0.2 / pi) < 1e-3);
}

TEST_CASE("zero-mean independent noise carries no current") {
    DisorderModel m;
    m.set_cov(0.3e-2, 0, 0, 0.5e-2, 0, 0.9e-2);
    McEstimate e = simulate_product(m, quick(400000, 17));
    CHECK(std::abs(e.j_hat) < 3.0 * e.j_err + 1e-4);
}

TEST_CASE("scaled-down vertical-drift model reproduces the exponent") {
    const double s = 1e-2;
    DisorderModel m = hyperbolic_bm_model(0.5).scaled(s);
    McEstimate e = simulate_product(m, quick(2000000, 19));
    CHECK(std::abs(e.gamma_hat / s - 0.25) < std::max(3.0 * e.gamma_err / s, 0.01));
}

TEST_CASE("in-band shear noise: both observables against the closed form") {
    const double s = 3e-2;
    DisorderModel base = scalar_model({0.5, 0.0, 0.1}, 0.4);
    DisorderModel m = base.scaled(s);
    const cplx target = s * omega_closed(base).omega;
    McEstimate e = simulate_product(m, quick(3000000, 23));
    CHECK(std::abs(e.gamma_hat - target.real()) < 4.0 * e.gamma_err);
    CHECK(std::abs(e.j_hat - target.imag() / pi) < 4.0 * e.j_err);
}

TEST_CASE("identical seeds give bit-identical estimates") {
    DisorderModel m;
    m.means = {0.1, 0.02, 0.05};
    m.set_cov(0.01, 0, 0, 0.02, 0, 0.03);
    McEstimate a = simulate_product(m, quick(50000, 99));
    McEstimate b = simulate_product(m, quick(50000, 99));
    CHECK(a.gamma_hat == b.gamma_hat);
    CHECK(a.j_hat == b.j_hat);
    CHECK(a.gamma_err == b.gamma_err);
}

TEST_CASE("renormalization cadence does not move the estimate") {
    DisorderModel m = susy_model({0.1, 0.05, 0.2}, 0.02);
    McConfig cfg = quick(400000, 31);
    cfg.renorm_interval = 1;
    McEstimate e1 = simulate_product(m, cfg);
    cfg.renorm_interval = 10;
    McEstimate e10 = simulate_product(m, cfg);
    cfg.renorm_interval = 100;
    McEstimate e100 = simulate_product(m, cfg);
    const double band = 3.0 * (e1.gamma_err + e10.gamma_err);
    CHECK(std::abs(e1.gamma_hat - e10.gamma_hat) < band);
    CHECK(std::abs(e10.gamma_hat - e100.gamma_hat) <
          3.0 * (e10.gamma_err + e100.gamma_err));
}

TEST_CASE("discrete products converge onto the continuum exponent") {
    // a model with order-one means has a visible discretization bias; shrink
    // the scale while growing the sample so the noise floor tracks the bias
    DisorderModel base = scalar_model({0.5, 0.0, 0.1}, 0.4);
    const double target = omega_closed(base).gamma();
    const double epss[3] = {0.3, 0.1, 0.03};
    const long long steps[3] = {400000, 3000000, 30000000};
    double prev = 1e9;
    for (int k = 0; k < 3; ++k) {
        const double eps = epss[k];
        DisorderModel m = base.scaled(eps * eps);
        McEstimate e = simulate_product(m, quick(steps[k], 37));
        const double err = std::abs(e.gamma_hat / (eps * eps) - target);
        CHECK(err < prev);
        prev = err;
    }
}

TEST_CASE("sampled angle histogram matches the solved density") {
    DisorderModel base;
    base.means = {0.3, 0.05, 0.1};
    base.set_cov(0.3, 0.02, -0.01, 0.5, 0.03, 0.9);
    const double s = 1e-2;
    DisorderModel m = base.scaled(s);

    McConfig cfg = quick(2000000, 41);
    DensityProfile emp = empirical_density(m, cfg, 128);
    DensityProfile ref = stationary_density(base, 2048);

    // Kolmogorov-Smirnov distance between the binned laws
    double ks = 0.0, ce = 0.0;
    const double h = 2.0 * pi / 128;
    size_t k = 0;
    double cr = 0.0;
    const double hr = 2.0 * pi / 2048;
    for (int i = 0; i < 128; ++i) {
        ce += emp.fa[i] * h;
        while (k < ref.phi.size() && ref.phi[k] < emp.phi[i] + 0.5 * h) {
            cr += ref.fa[k] * hr;
            ++k;
        }
        ks = std::max(ks, std::abs(ce - cr));
    }
    CHECK(ks < 0.02);
}

TEST_CASE("diffusion route: fixed point of the noise-free flow") {
    // drift only: the orbit settles at the stable rest point
    DisorderModel m;
    m.means = {0.1, 0.05, 0.3};
    m.cov[2][2] = 1e-12; // noise-free up to rounding
    McConfig cfg = quick(40000, 43);
    cfg.dt = 1e-3;
    SdeResult r = simulate_sde(m, cfg, 64);
    const cplx mu = mu_continuum(m.means);
    const double zplus = (m.means.w + mu.real()) / m.means.alpha;
    // density mass concentrates at the rest point
    double mode = 0.0, best = -1.0;
    for (size_t i = 0; i < r.density.phi.size(); ++i)
        if (r.density.fa[i] > best) {
            best = r.density.fa[i];
            mode = std::tan(0.5 * r.density.phi[i]);
        }
    CHECK(std::abs(mode - zplus) < 0.1);
}

TEST_CASE("diffusion route: vertical-drift exponent and white-noise current") {
    DisorderModel m = hyperbolic_bm_model(0.5).scaled(0.04);
    McConfig cfg = quick(500000, 47);
    cfg.dt = 0.05;
    SdeResult r = simulate_sde(m, cfg, 64);
    CHECK(std::abs(r.estimate.gamma_hat / 0.04 - 0.25) <
          std::max(3.0 * r.estimate.gamma_err / 0.04, 0.02));

    DisorderModel sc = scalar_model({0.5, 0.0, 0.1}, 0.4).scaled(0.03);
    McConfig cfg2 = quick(800000, 53);
    cfg2.dt = 0.03;
    SdeResult rs = simulate_sde(sc, cfg2, 64);
    const double jref = 0.03 * omega_closed(scalar_model({0.5, 0.0, 0.1}, 0.4)).current();
    CHECK(std::abs(rs.estimate.j_hat - jref) <
          std::max(3.0 * rs.estimate.j_err, 0.15 * jref));
}

TEST_CASE("configuration validation") {
    DisorderModel m = susy_model({0.1, 0.05, 0.2}, 0.02);
    McConfig cfg;
    cfg.n_steps = 10;
    CHECK_THROWS_AS((void)simulate_product(m, cfg), std::invalid_argument);
    cfg = McConfig{};
    cfg.renorm_interval = 0;
    CHECK_THROWS_AS((void)simulate_product(m, cfg), std::invalid_argument);
}
