#include "lyap/model.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace lyap {

namespace {

Eigen::Matrix3d to_eigen(const std::array<std::array<double, 3>, 3>& c) {
    Eigen::Matrix3d m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = c[i][j];
    return m;
}

/// Coordinates of a (near-)traceless matrix in the generator basis
/// X_alpha = [[0,-1],[1,0]], X_w = [[1,0],[0,-1]], X_u = [[0,1],[0,0]].
std::array<double, 3> algebra_coords(double p, double q, double r) {
    // matrix [[p, q], [r, -p]]
    return {r, p, q + r};
}

} // namespace

double DisorderModel::cov_scale() const {
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s = std::max(s, std::abs(cov[i][j]));
    return s;
}

bool DisorderModel::zero_cov(double tol) const { return cov_scale() <= tol; }

void DisorderModel::validate() const {
    const double scale = std::max(1.0, cov_scale());
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (std::abs(cov[i][j] - cov[j][i]) > 1e-14 * scale)
                throw std::domain_error("DisorderModel: covariance matrix is not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(to_eigen(cov));
    if (es.eigenvalues().minCoeff() < -1e-12 * scale)
        throw std::domain_error("DisorderModel: covariance matrix is not positive semi-definite");
}

std::array<std::array<double, 3>, 3> DisorderModel::cov_sqrt() const {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(to_eigen(cov));
    Eigen::Vector3d ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    Eigen::Matrix3d s = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
    std::array<std::array<double, 3>, 3> out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out[i][j] = s(i, j);
    return out;
}

DisorderModel DisorderModel::scaled(double s) const {
    DisorderModel m = *this;
    m.means.alpha *= s;
    m.means.w *= s;
    m.means.u *= s;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m.cov[i][j] *= s;
    return m;
}

DisorderModel DisorderModel::mirrored() const {
    DisorderModel m = *this;
    m.means.alpha = -means.alpha;
    m.means.u = -means.u;
    m.cov[0][1] = m.cov[1][0] = -cov[0][1];
    m.cov[1][2] = m.cov[2][1] = -cov[1][2];
    return m;
}

DisorderModel DisorderModel::conjugated(const Mat2& t) const {
    // Adjoint action on the generator basis.
    const Mat2 ti = t.inverse();
    Eigen::Matrix3d ad;
    const Mat2 basis[3] = {Mat2{0, -1, 1, 0}, Mat2{1, 0, 0, -1}, Mat2{0, 1, 0, 0}};
    for (int j = 0; j < 3; ++j) {
        Mat2 x = t * basis[j] * ti;
        auto c = algebra_coords(0.5 * (x.m11 - x.m22), x.m12, x.m21);
        for (int i = 0; i < 3; ++i) ad(i, j) = c[i];
    }
    // The mean parameters of the factorization differ from the drift of the
    // step logarithm by a covariance-bilinear correction; the adjoint map acts
    // on the logarithm chart.
    auto log_shift = [](const DisorderModel& m) {
        return Eigen::Vector3d(m.daw(), -0.5 * m.dau(), 2.0 * m.daw() + m.dwu());
    };
    Eigen::Vector3d mu(means.alpha, means.w, means.u);
    Eigen::Vector3d mu_log = mu + log_shift(*this);
    Eigen::Matrix3d sig = ad * to_eigen(cov) * ad.transpose();

    DisorderModel out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out.cov[i][j] = 0.5 * (sig(i, j) + sig(j, i));
    Eigen::Vector3d mu_new = ad * mu_log - log_shift(out);
    out.means = IwasawaParams{mu_new(0), mu_new(1), mu_new(2)};
    return out;
}

DisorderModel scalar_model(const IwasawaParams& means, double duu) {
    DisorderModel m;
    m.means = means;
    m.cov[2][2] = duu;
    return m;
}

DisorderModel susy_model(const IwasawaParams& means, double dww) {
    DisorderModel m;
    m.means = means;
    m.cov[1][1] = dww;
    return m;
}

DisorderModel distance_model(const IwasawaParams& means, double daa) {
    DisorderModel m;
    m.means = means;
    m.cov[0][0] = daa;
    return m;
}

std::array<double, 3> riccati_g(double z) { return {1.0 + z * z, -2.0 * z, -1.0}; }
std::array<double, 3> riccati_g_prime(double z) { return {2.0 * z, -2.0, 0.0}; }

std::array<double, 3> angular_g(double phi) {
    return {2.0, -2.0 * std::sin(phi), -(1.0 + std::cos(phi))};
}
std::array<double, 3> angular_g_prime(double phi) {
    return {0.0, -2.0 * std::cos(phi), std::sin(phi)};
}

namespace {

double quadratic_form(const DisorderModel& m, const std::array<double, 3>& a,
                      const std::array<double, 3>& b) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += a[i] * m.cov[i][j] * b[j];
    return s;
}

double drift_from(const DisorderModel& m, const std::array<double, 3>& g,
                  const std::array<double, 3>& gp) {
    // correlation vector (D_wu, -D_au, D_aw)
    const double c0 = m.dwu(), c1 = -m.dau(), c2 = m.daw();
    const std::array<double, 3> cross = {g[1] * gp[2] - g[2] * gp[1],
                                         g[2] * gp[0] - g[0] * gp[2],
                                         g[0] * gp[1] - g[1] * gp[0]};
    const double noise = 0.5 * (quadratic_form(m, gp, g) - (c0 * cross[0] + c1 * cross[1] + c2 * cross[2]));
    const double drift = m.means.alpha * g[0] + m.means.w * g[1] + m.means.u * g[2];
    return noise - drift;
}

} // namespace

double drift_v(const DisorderModel& m, double z) {
    return drift_from(m, riccati_g(z), riccati_g_prime(z));
}

double variance_sigma2(const DisorderModel& m, double z) {
    auto g = riccati_g(z);
    return quadratic_form(m, g, g);
}

double angular_drift(const DisorderModel& m, double phi) {
    return drift_from(m, angular_g(phi), angular_g_prime(phi));
}

double angular_variance(const DisorderModel& m, double phi) {
    auto g = angular_g(phi);
    return quadratic_form(m, g, g);
}

} // namespace lyap
