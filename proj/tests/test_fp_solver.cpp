#include "lyap/fp_solver.hpp"

#include "lyap/closed_form.hpp"
#include "lyap/model_maps.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace lyap;

namespace {
constexpr double pi = 3.141592653589793238462643383279502884;
}

TEST_CASE("branch selection and basic profile invariants") {
    // zero-mean independent noise takes the zero-current branch
    DisorderModel ell;
    ell.set_cov(0.3, 0, 0, 0.5, 0, 0.9);
    DensityProfile d = stationary_density(ell, 1024);
    CHECK(d.zero_current_branch);
    CHECK(d.current == 0.0);
    double sum = 0.0;
    const double h = 2.0 * pi / 1024;
    for (double f : d.fa) {
        CHECK(f >= 0.0);
        sum += f * h;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(d.fa_minus_pi - d.fa_plus_pi) < 1e-8);

    // generic model with drift: current branch
    DisorderModel gen = ell;
    gen.means = {0.3, 0.05, 0.1};
    DensityProfile dg = stationary_density(gen, 1024);
    CHECK_FALSE(dg.zero_current_branch);
    CHECK(dg.current > 0.0);
    CHECK(std::abs(dg.fa_minus_pi - dg.fa_plus_pi) < 1e-8);
    for (double f : dg.fa) CHECK(f >= -1e-12);
}

TEST_CASE("boundary identity of the periodic solver") {
    DisorderModel gen;
    gen.means = {0.3, 0.05, 0.1};
    gen.set_cov(0.3, 0.02, -0.01, 0.5, 0.03, 0.9);
    DensityProfile d = stationary_density(gen, 2048);
    // seam form of the stationary equation (the flux derivative carries the
    // half factor)
    const double lhs = 2.0 * gen.daa() * d.dfa_plus_pi +
                       2.0 * (gen.means.alpha + 2.0 * gen.daw()) * d.fa_plus_pi;
    CHECK(lhs == doctest::Approx(d.current).epsilon(1e-6));
}

TEST_CASE("vertical-drift model: density against the algebraic kernel") {
    for (double eps : {0.5, 1.3}) {
        DisorderModel m = hyperbolic_bm_model(eps);
        DensityProfile d = stationary_density(m, 4096);
        REQUIRE(d.line_grid);
        CHECK(d.zero_current_branch);
        double worst = 0.0;
        for (size_t i = 0; i < d.z.size(); ++i)
            worst = std::max(worst,
                             std::abs(d.fz[i] - hyperbolic_bm_density(eps, d.z[i])));
        CHECK(worst < 1e-6);
        CHECK(gamma_from_density(m, d) == doctest::Approx(0.5 * eps).epsilon(1e-10));
    }
}

TEST_CASE("stretch-drift point concentration") {
    DisorderModel m = susy_model({0.0, -0.2, 0.0}, 0.4);
    DensityProfile d = stationary_density(m, 512);
    CHECK(gamma_from_density(m, d) == doctest::Approx(0.2).epsilon(1e-6));
    m = susy_model({0.0, 0.2, 0.0}, 0.4);
    d = stationary_density(m, 512);
    CHECK(gamma_from_density(m, d) == doctest::Approx(0.2).epsilon(1e-6));
}

TEST_CASE("shear-noise line solve inside the band") {
    DisorderModel m = scalar_model({0.5, 0.0, 0.1}, 0.4); // imaginary clean rate
    ScalingEvaluation closed = omega_closed(m);
    DensityProfile d = stationary_density(m, 4096);
    REQUIRE(d.line_grid);
    CHECK(d.current == doctest::Approx(closed.current()).epsilon(1e-5));
    CHECK(gamma_from_density(m, d) == doctest::Approx(closed.gamma()).epsilon(1e-5));
}

TEST_CASE("rotation-noise model: growth rate through the density") {
    DisorderModel m = distance_model({0.2, -0.15, 0.35}, 0.4);
    ScalingEvaluation closed = omega_closed(m);
    DensityProfile d = stationary_density(m, 4096);
    CHECK(gamma_from_density(m, d) == doctest::Approx(closed.gamma()).epsilon(1e-4));
    CHECK(d.current == doctest::Approx(closed.current()).epsilon(1e-4));
}

TEST_CASE("grid convergence toward the closed form") {
    DisorderModel m = distance_model({0.2, -0.15, 0.35}, 0.4);
    const double exact = omega_closed(m).gamma();
    double prev = -1.0;
    for (int n : {256, 512, 1024}) {
        DensityProfile d = stationary_density(m, n);
        const double err = std::abs(gamma_from_density(m, d) - exact);
        if (prev > 0.0 && prev > 1e-6) CHECK(err < prev / 2.0);
        prev = err;
    }
}

TEST_CASE("degenerate noise is rejected") {
    // stretch noise with nonzero shear mean: the line variance vanishes inside
    DisorderModel m = susy_model({0.1, 0.05, 0.4}, 0.3);
    CHECK_THROWS_AS((void)stationary_density(m, 512), degenerate_diffusion);
    DisorderModel none;
    none.means = {0.1, 0.0, 0.0};
    CHECK_THROWS_AS((void)stationary_density(none, 512), degenerate_diffusion);
}

TEST_CASE("tail identity links the density to the current") {
    // rotation-mean model without rotation noise: the tail prefactor is j/alpha
    DisorderModel m = scalar_model({0.5, 0.0, 0.1}, 0.4);
    DensityProfile d = stationary_density(m, 8192);
    REQUIRE(d.line_grid);
    // directly fit z^2 f over the outer decade
    const double zmax = d.z.back();
    double acc = 0.0;
    int cnt = 0;
    for (size_t i = 0; i < d.z.size(); ++i)
        if (std::abs(d.z[i]) > 0.1 * zmax) {
            acc += d.z[i] * d.z[i] * d.fz[i];
            ++cnt;
        }
    acc /= cnt;
    CHECK(acc == doctest::Approx(d.current / 0.5).epsilon(1e-4));
    CHECK(rice_residual(m, d) < 1e-4 * d.current / 0.5);

    // zero-mean independent noise: residual consistent with no current
    DisorderModel ell;
    ell.set_cov(0.3, 0, 0, 0.5, 0, 0.9);
    DensityProfile de = stationary_density(ell, 2048);
    CHECK(rice_residual(ell, de) < 1e-3);

    // generic model
    DisorderModel gen;
    gen.means = {0.3, 0.05, 0.1};
    gen.set_cov(0.3, 0.02, -0.01, 0.5, 0.03, 0.9);
    DensityProfile dgen = stationary_density(gen, 4096);
    CHECK(rice_residual(gen, dgen) < 1e-3);
}

TEST_CASE("transform identity at probe points") {
    DisorderModel m = scalar_model({0.5, 0.0, 0.1}, 0.4);
    DensityProfile d = stationary_density(m, 8192);
    const cplx omega = omega_closed(m).omega;
    const std::vector<cplx> probes{cplx(0.0, -0.5)};
    CHECK(hilbert_residual(m, d, omega, probes) < 1e-4);

    // far-field normalization of the transform: F ~ 1/y
    {
        // reuse the quadrature through the residual of the asymptotic value
        const cplx y(70.0, -71.0);
        cplx f = 0.0;
        const double ht = std::asinh(d.z[1]) - std::asinh(d.z[0]);
        for (size_t i = 0; i < d.z.size(); ++i) {
            const double w = (i == 0 || i + 1 == d.z.size()) ? 0.5 : 1.0;
            f += w * d.fz[i] * std::cosh(std::asinh(d.z[i])) * ht / (y - d.z[i]);
        }
        CHECK(std::abs(y * f - 1.0) < 0.02);
    }

    // sensitivity: shifting the exponent moves the residual linearly
    const double r0 = hilbert_residual(m, d, omega, probes);
    const double r1 = hilbert_residual(m, d, omega + 0.1, probes);
    CHECK(std::abs((r1 - r0) - 0.2) < 0.02);

    // periodic-solver profile
    DisorderModel gen;
    gen.means = {0.3, 0.05, 0.1};
    gen.set_cov(0.3, 0.02, -0.01, 0.5, 0.03, 0.9);
    DensityProfile dg = stationary_density(gen, 4096);
    const cplx og = omega_closed(gen).omega;
    const std::vector<cplx> pr{cplx(0.0, -0.5), cplx(0.8, -0.7), cplx(-1.2, -0.3)};
    CHECK(hilbert_residual(gen, dg, og, pr) < 1e-3);
}
