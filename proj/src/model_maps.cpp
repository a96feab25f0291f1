#include "lyap/model_maps.hpp"

#include "lyap/specfun.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace lyap {

void ZdCovariances::validate() const {
    Eigen::Matrix4d m;
    m << aa, ab, ac, ad, ab, bb, bc, bd, ac, bc, cc, cd, ad, bd, cd, dd;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(m);
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if (es.eigenvalues().minCoeff() < -1e-12 * scale)
        throw std::domain_error("ZdCovariances: covariance matrix is not positive semi-definite");
}

ZdMapping zd_to_model(const ZdCovariances& z) {
    z.validate();
    ZdMapping out;
    DisorderModel& m = out.model;
    m.means.alpha = -z.ac;
    m.means.w = 0.25 * (-z.aa + 2.0 * z.cc + z.dd + 2.0 * z.bc);
    m.means.u = -z.ab - 2.0 * z.ac + z.cd;
    const double daa = z.cc;
    const double dww = 0.25 * (z.aa + z.dd - 2.0 * z.ad);
    const double duu = z.bb + z.cc + 2.0 * z.bc;
    const double daw = 0.5 * (z.ac - z.cd);
    const double dau = z.bc + z.cc;
    const double dwu = 0.5 * (z.ab + z.ac - z.bd - z.cd);
    m.set_cov(daa, daw, dau, dww, dwu, duu);
    out.gamma_offset = 0.25 * (z.aa + z.dd + 2.0 * z.bc);
    m.validate();
    return out;
}

ZdCovariances zd_example1(double sigma2) {
    ZdCovariances z;
    z.bb = z.cc = sigma2;
    return z;
}

ZdCovariances zd_example2(double sigma2) {
    ZdCovariances z;
    z.aa = z.bb = z.cc = z.dd = sigma2;
    return z;
}

QuantumMapping quantum_to_model(const QuantumModel& q) {
    if (!(q.k > 0.0) || !(q.ell > 0.0))
        throw std::domain_error("quantum_to_model: momentum and spacing must be positive");
    if (q.var_w < 0.0 || q.var_v < 0.0 || q.var_phase < 0.0)
        throw std::domain_error("quantum_to_model: negative variance");
    auto require = [](bool ok, const char* what) {
        if (!ok) throw std::domain_error(std::string("quantum_to_model: ") + what);
    };
    switch (q.flavor) {
        case QuantumFlavor::halperin:
            require(q.var_w == 0.0 && q.cov_wv == 0.0 && q.var_phase == 0.0 && q.mean_w == 0.0,
                    "delta-scatterer flavor admits only the delta-weight statistics");
            break;
        case QuantumFlavor::susy:
            require(q.var_v == 0.0 && q.cov_wv == 0.0 && q.var_phase == 0.0,
                    "stretch flavor admits only the stretch-weight variance");
            break;
        case QuantumFlavor::distance:
            require(q.var_w == 0.0 && q.var_v == 0.0 && q.cov_wv == 0.0 && q.var_phase > 0.0,
                    "phase flavor requires the phase variance alone");
            break;
        case QuantumFlavor::mixed:
            require(q.var_phase == 0.0, "mixed flavor carries no phase variance");
            require(q.cov_wv * q.cov_wv <= q.var_w * q.var_v + 1e-15 * q.var_w * q.var_v +
                                               1e-300,
                    "weight covariance exceeds the variances");
            break;
    }
    QuantumMapping out;
    DisorderModel& m = out.model;
    m.means.alpha = q.k * q.ell;
    m.means.w = q.mean_w;
    m.means.u = q.mean_v / q.k;
    const double duu = q.var_v / (q.k * q.k);
    const double dwu = q.cov_wv / q.k;
    m.set_cov(q.var_phase, 0.0, 0.0, q.var_w, dwu, duu);
    m.validate();
    out.energy_shift = dwu;
    return out;
}

DisorderModel hyperbolic_bm_model(double eps) {
    if (!(eps > 0.0)) throw std::domain_error("hyperbolic_bm_model: eps must be positive");
    DisorderModel m;
    m.means.w = -0.5 * eps;
    m.set_cov(0.0, 0.0, 0.0, 0.25, 0.0, 1.0);
    return m;
}

double hyperbolic_bm_density(double eps, double x) {
    const double norm =
        specfun::gamma(eps + 0.5) / (std::sqrt(3.141592653589793238462643383279502884) *
                                     specfun::gamma(eps));
    return norm * std::pow(1.0 + x * x, -(eps + 0.5));
}

} // namespace lyap
