#include "lyap/monte_carlo.hpp"

#include <cmath>
#include <future>
#include <random>
#include <stdexcept>
#include <vector>

namespace lyap {

namespace {

constexpr double pi = 3.141592653589793238462643383279502884;

/// Deterministic per-replica stream: fixed engine plus explicit Box-Muller so
/// results do not depend on the standard library's distribution internals.
class GaussianStream {
public:
    GaussianStream(std::uint64_t seed, int replica)
        : eng_(seed * 0x9e3779b97f4a7c15ULL + 0x100000001b3ULL * (replica + 1)) {}

    double operator()() {
        if (have_) {
            have_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * pi * u2);
        have_ = true;
        return r * std::cos(2.0 * pi * u2);
    }

private:
    double uniform() {
        // (0,1): never returns 0
        return (double(eng_() >> 11) + 0.5) * 0x1.0p-53;
    }
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_ = false;
};

struct ReplicaResult {
    double gamma = 0.0;
    double j = 0.0;
};

struct Sampler {
    IwasawaParams means;
    std::array<std::array<double, 3>, 3> sqrt_cov;

    IwasawaParams draw(GaussianStream& g) const {
        const double x0 = g(), x1 = g(), x2 = g();
        IwasawaParams p;
        p.alpha = means.alpha + sqrt_cov[0][0] * x0 + sqrt_cov[0][1] * x1 + sqrt_cov[0][2] * x2;
        p.w = means.w + sqrt_cov[1][0] * x0 + sqrt_cov[1][1] * x1 + sqrt_cov[1][2] * x2;
        p.u = means.u + sqrt_cov[2][0] * x0 + sqrt_cov[2][1] * x1 + sqrt_cov[2][2] * x2;
        return p;
    }
};

double wrap_angle(double a) {
    while (a > pi) a -= 2.0 * pi;
    while (a <= -pi) a += 2.0 * pi;
    return a;
}

/// One product trajectory: log-norm growth plus projective winding.
ReplicaResult run_replica(const Sampler& s, const McConfig& cfg, int replica,
                          std::vector<double>* phi_samples, long long sample_stride) {
    GaussianStream g(cfg.seed, replica);
    // generic start direction: the vertical axis is invariant under the
    // triangular subgroup and would track the wrong exponent
    double v1 = 0.62, v2 = 1.0;
    double lognorm = -0.5 * std::log(v1 * v1 + v2 * v2);
    double lift = 0.0;
    double phi = 2.0 * std::atan2(v1, v2);
    const long long burn = (long long)(cfg.burn_in_fraction * cfg.n_steps);
    for (long long n = 0; n < cfg.n_steps; ++n) {
        const IwasawaParams p = s.draw(g);
        // apply shear, stretch, rotation in turn
        const double ew = std::exp(p.w);
        double a = v1 + p.u * v2, b = v2;
        a *= ew;
        b /= ew;
        const double c = std::cos(p.alpha), sn = std::sin(p.alpha);
        v1 = c * a - sn * b;
        v2 = sn * a + c * b;
        const double phi_new = 2.0 * std::atan2(v1, v2); // angle of z = v1/v2
        if (n >= burn) lift += wrap_angle(phi_new - phi);
        phi = phi_new;
        if ((n + 1) % cfg.renorm_interval == 0) {
            const double nr = std::sqrt(v1 * v1 + v2 * v2);
            lognorm += std::log(nr);
            v1 /= nr;
            v2 /= nr;
        }
        if (phi_samples && n >= burn && (n % sample_stride) == 0)
            phi_samples->push_back(wrap_angle(phi));
    }
    const double nr = std::sqrt(v1 * v1 + v2 * v2);
    lognorm += std::log(nr);
    ReplicaResult r;
    r.gamma = lognorm / double(cfg.n_steps);
    r.j = -lift / (2.0 * pi * double(cfg.n_steps - burn));
    return r;
}

McEstimate reduce(const std::vector<ReplicaResult>& reps, long long steps) {
    McEstimate e;
    const int nr = static_cast<int>(reps.size());
    for (const auto& r : reps) {
        e.gamma_hat += r.gamma;
        e.j_hat += r.j;
    }
    e.gamma_hat /= nr;
    e.j_hat /= nr;
    double vg = 0.0, vj = 0.0;
    for (const auto& r : reps) {
        vg += (r.gamma - e.gamma_hat) * (r.gamma - e.gamma_hat);
        vj += (r.j - e.j_hat) * (r.j - e.j_hat);
    }
    const double denom = double(nr) * double(std::max(1, nr - 1));
    e.gamma_err = std::sqrt(vg / denom);
    e.j_err = std::sqrt(vj / denom);
    e.effective_steps = steps * nr;
    return e;
}

std::vector<ReplicaResult> run_all(const DisorderModel& m, const McConfig& cfg) {
    Sampler s{m.means, m.cov_sqrt()};
    std::vector<std::future<ReplicaResult>> fut;
    fut.reserve(cfg.n_replicas);
    for (int r = 0; r < cfg.n_replicas; ++r)
        fut.push_back(std::async(std::launch::async, [&, r] {
            return run_replica(s, cfg, r, nullptr, 0);
        }));
    std::vector<ReplicaResult> reps;
    reps.reserve(cfg.n_replicas);
    for (auto& f : fut) reps.push_back(f.get());
    return reps;
}

} // namespace

void McConfig::validate() const {
    if (n_steps < 1000) throw std::invalid_argument("McConfig: n_steps must be >= 1000");
    if (renorm_interval < 1) throw std::invalid_argument("McConfig: renorm_interval must be >= 1");
    if (n_replicas < 2) throw std::invalid_argument("McConfig: need at least two replicas");
}

McEstimate simulate_product(const DisorderModel& m, const McConfig& cfg) {
    m.validate();
    cfg.validate();
    return reduce(run_all(m, cfg), cfg.n_steps);
}

McEstimate simulate_lyapunov(const DisorderModel& m, const McConfig& cfg) {
    return simulate_product(m, cfg);
}

McEstimate simulate_rotation_number(const DisorderModel& m, const McConfig& cfg) {
    return simulate_product(m, cfg);
}

DensityProfile empirical_density(const DisorderModel& m, const McConfig& cfg, int bins) {
    m.validate();
    cfg.validate();
    Sampler s{m.means, m.cov_sqrt()};
    const long long stride = 1;
    std::vector<std::vector<double>> samples(cfg.n_replicas);
    std::vector<std::future<ReplicaResult>> fut;
    for (int r = 0; r < cfg.n_replicas; ++r)
        fut.push_back(std::async(std::launch::async, [&, r] {
            return run_replica(s, cfg, r, &samples[r], stride);
        }));
    std::vector<ReplicaResult> reps;
    for (auto& f : fut) reps.push_back(f.get());

    DensityProfile d;
    const double h = 2.0 * pi / bins;
    d.phi.resize(bins);
    d.fa.assign(bins, 0.0);
    for (int i = 0; i < bins; ++i) d.phi[i] = -pi + (i + 0.5) * h;
    long long total = 0;
    for (const auto& v : samples) {
        total += static_cast<long long>(v.size());
        for (double phi : v) {
            int idx = static_cast<int>((phi + pi) / h);
            idx = std::min(std::max(idx, 0), bins - 1);
            d.fa[idx] += 1.0;
        }
    }
    for (int i = 0; i < bins; ++i) d.fa[i] /= double(total) * h;
    McEstimate e = reduce(reps, cfg.n_steps);
    d.current = e.j_hat;
    d.z.resize(bins);
    d.fz.resize(bins);
    for (int i = 0; i < bins; ++i) {
        d.z[i] = std::tan(0.5 * d.phi[i]);
        d.fz[i] = 2.0 * d.fa[i] / (1.0 + d.z[i] * d.z[i]);
    }
    return d;
}

namespace {

struct SdeReplica {
    double j = 0.0;
    double gamma = 0.0;
    std::vector<double> phis;
    bool unstable = false;
};

SdeReplica run_sde_replica(const DisorderModel& m, const McConfig& cfg, int replica,
                           long long sample_stride) {
    GaussianStream g(cfg.seed, replica);
    const auto sq = m.cov_sqrt();
    const double dt = cfg.dt, sdt = std::sqrt(dt);

    auto strat_drift = [&](double z) {
        auto gr = riccati_g(z);
        auto grp = riccati_g_prime(z);
        double quad = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j2 = 0; j2 < 3; ++j2) quad += grp[i] * m.cov[i][j2] * gr[j2];
        // full drift of the density equation minus the part the correlated
        // noise supplies through the corrector stage
        return drift_v(m, z) - 0.5 * quad;
    };
    auto hvec = [](double z) {
        const double r = 1.0 + z * z;
        return std::array<double, 3>{0.0, (z * z - 1.0) / r, z / r};
    };
    auto hvec_prime = [](double z) {
        const double r = 1.0 + z * z;
        return std::array<double, 3>{0.0, 4.0 * z / (r * r), (1.0 - z * z) / (r * r)};
    };
    auto s_drift = [&](double z) {
        auto gr = riccati_g(z);
        auto hp = hvec_prime(z);
        auto hv = hvec(z);
        auto grp = riccati_g_prime(z);
        // ordering correction for the pairs (alpha,w), (alpha,u), (w,u);
        // the parameter flows move the projective coordinate by -g
        const double corr = -0.5 * (m.daw() * (gr[0] * hp[1] - gr[1] * hp[0]) +
                                    m.dau() * (gr[0] * hp[2] - gr[2] * hp[0]) +
                                    m.dwu() * (gr[1] * hp[2] - gr[2] * hp[1]));
        (void)grp;
        return m.means.w * hv[1] + m.means.u * hv[2] + corr;
    };

    SdeReplica out;
    double z = 0.0, s = 0.0;
    double crossings = 0.0;
    const long long burn = (long long)(cfg.burn_in_fraction * cfg.n_steps);
    long long counted = 0;
    for (long long n = 0; n < cfg.n_steps; ++n) {
        const double x0 = g(), x1 = g(), x2 = g();
        double xi[3];
        for (int i = 0; i < 3; ++i)
            xi[i] = sq[i][0] * x0 + sq[i][1] * x1 + sq[i][2] * x2;
        auto noise_z = [&](double zz) {
            auto gr = riccati_g(zz);
            return -(gr[0] * xi[0] + gr[1] * xi[1] + gr[2] * xi[2]) * sdt;
        };
        auto noise_s = [&](double zz) {
            auto hv = hvec(zz);
            return (hv[1] * xi[1] + hv[2] * xi[2]) * sdt;
        };
        const double az = strat_drift(z), as = s_drift(z);
        const double zp = z + az * dt + noise_z(z);
        if (!std::isfinite(zp)) {
            out.unstable = true;
            return out;
        }
        const double znew = z + 0.5 * (az + strat_drift(zp)) * dt + 0.5 * (noise_z(z) + noise_z(zp));
        const double snew = s + 0.5 * (as + s_drift(zp)) * dt + 0.5 * (noise_s(z) + noise_s(zp));
        if (!std::isfinite(znew) || !std::isfinite(snew)) {
            out.unstable = true;
            return out;
        }
        z = znew;
        s = snew;
        if (z < -cfg.z_cap) {
            z = cfg.z_cap;
            if (n >= burn) crossings += 1.0;
        } else if (z > cfg.z_cap) {
            z = -cfg.z_cap;
            if (n >= burn) crossings -= 1.0;
        }
        if (n >= burn) {
            ++counted;
            if (sample_stride > 0 && (n % sample_stride) == 0)
                out.phis.push_back(2.0 * std::atan(z));
        }
    }
    out.j = crossings / (double(counted) * dt);
    out.gamma = s / (double(cfg.n_steps) * dt);
    return out;
}

} // namespace

SdeResult simulate_sde(const DisorderModel& m, const McConfig& cfg, int bins) {
    m.validate();
    cfg.validate();
    std::vector<std::future<SdeReplica>> fut;
    for (int r = 0; r < cfg.n_replicas; ++r)
        fut.push_back(std::async(std::launch::async,
                                 [&, r] { return run_sde_replica(m, cfg, r, 4); }));
    std::vector<SdeReplica> reps;
    for (auto& f : fut) reps.push_back(f.get());
    for (const auto& r : reps)
        if (r.unstable)
            throw std::runtime_error(
                "simulate_sde: trajectory diverged, reduce dt or rescale the model");

    SdeResult res;
    std::vector<ReplicaResult> rr(reps.size());
    long long total = 0;
    for (size_t i = 0; i < reps.size(); ++i) {
        rr[i].gamma = reps[i].gamma;
        rr[i].j = reps[i].j;
        total += static_cast<long long>(reps[i].phis.size());
    }
    res.estimate = reduce(rr, cfg.n_steps);

    const double h = 2.0 * pi / bins;
    res.density.phi.resize(bins);
    res.density.fa.assign(bins, 0.0);
    for (int i = 0; i < bins; ++i) res.density.phi[i] = -pi + (i + 0.5) * h;
    for (const auto& r : reps)
        for (double phi : r.phis) {
            int idx = static_cast<int>((phi + pi) / h);
            idx = std::min(std::max(idx, 0), bins - 1);
            res.density.fa[idx] += 1.0;
        }
    for (int i = 0; i < bins; ++i) res.density.fa[i] /= double(total) * h;
    res.density.current = res.estimate.j_hat;
    res.density.z.resize(bins);
    res.density.fz.resize(bins);
    for (int i = 0; i < bins; ++i) {
        res.density.z[i] = std::tan(0.5 * res.density.phi[i]);
        res.density.fz[i] = 2.0 * res.density.fa[i] / (1.0 + res.density.z[i] * res.density.z[i]);
    }
    return res;
}

} // namespace lyap
