#pragma once

#include "lyap/model.hpp"

#include <string>
#include <vector>

namespace lyap {

/// Real polynomial in power basis, lowest degree first.
struct Poly {
    std::vector<double> c;

    int degree(double tol = 0.0) const;
    cplx eval(cplx y) const;
    double eval(double y) const;
    cplx deriv_eval(cplx y) const;
    Poly deriv() const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator*(double s, const Poly& a);
};

/// Coefficient polynomials of the transform equation Q F' + R F = S + 2 Omega.
/// Q is the complexified diffusion coefficient (degree <= 4), R = Q' - 2v
/// (degree <= 3) and S (degree <= 2); the subscript-0 parts are linear in the
/// means and the subscript-2 parts linear in the covariances.
struct CoefficientSet {
    DisorderModel model;
    Poly q;
    Poly r0, r2, r; // r = r0 + r2
    Poly s0, s2, s; // s = s0 + s2

    double v(double z) const { return drift_v(model, z); }
    double sigma2(double z) const { return variance_sigma2(model, z); }
};

CoefficientSet build_coefficients(const DisorderModel& m);

enum class ZeroLabel {
    disorder_free,   ///< all covariances vanish, Q identically zero
    one_quadruple,   ///< quadruple zero at infinity (constant Q)
    two_double,      ///< two double zeros (finite conjugate pair, or 0 and infinity)
    double_two_simple, ///< double zero at infinity plus a simple pair
    four_simple,     ///< four simple finite zeros in conjugate pairs
    degenerate_other ///< anything outside the generic table
};

std::string to_string(ZeroLabel label);

/// Zeros of Q counted with multiplicity, including zeros at infinity.
struct ZeroPattern {
    ZeroLabel label = ZeroLabel::degenerate_other;
    std::vector<cplx> zeros;            ///< finite zeros, one entry per multiplicity
    std::vector<int> multiplicities;    ///< grouped multiplicities of distinct finite zeros
    std::vector<cplx> distinct;         ///< distinct finite zeros matching multiplicities
    int multiplicity_at_infinity = 0;

    /// Labeled simple zeros y1..y4 (four_simple only): y1, y2 in the lower
    /// half-plane, y3 = conj(y2), y4 = conj(y1).
    std::array<cplx, 4> labeled{};
    bool has_labeling = false;
};

/// Finds the zeros of Q (companion-matrix eigenvalues plus Newton polish),
/// groups them with a relative clustering tolerance, and classifies the
/// pattern.  All-zero covariance returns the disorder-free marker.
ZeroPattern classify_zeros(const CoefficientSet& c);

/// Exponents a_i = R(y_i)/Q'(y_i) at the labeled simple zeros.  Requires the
/// four_simple pattern; checks sum(a_i) = 2.  Throws std::domain_error when a
/// zero is multiple or at infinity.
std::array<cplx, 4> exponents(const CoefficientSet& c, const ZeroPattern& z);

struct ZeroCurrentResult {
    bool zero_current = false;
    double residual = 0.0;  ///< |Im(a1 + a2)| for the generic pattern
    bool delegated = false; ///< verdict from the structural family, not the exponents
};

/// Tests the stationary-current condition Im(a1 + a2) = 0.  Degenerate
/// patterns are delegated to the structural family of the model.
ZeroCurrentResult zero_current_test(const DisorderModel& m, double tol = 1e-8);

} // namespace lyap
