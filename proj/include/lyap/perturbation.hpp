#pragma once

#include "lyap/model.hpp"

namespace lyap {

/// Partial sums of the small-covariance series of the complex exponent.
/// The series is asymptotic only; it requires a nonzero clean growth rate.
/// order selects how many correction orders are included (0, 2 or 4).
cplx omega_weak(const DisorderModel& m, int order);

/// Second-order coefficient alone.
cplx omega_weak_second(const DisorderModel& m);

/// Fourth-order coefficient alone.
cplx omega_weak_fourth(const DisorderModel& m);

/// Second-order correction valid for arbitrary (not small) mean parameters.
cplx omega2_general(const DisorderModel& m);

/// Number of covariance monomials carried by the fourth-order coefficient.
int omega4_monomial_count();

} // namespace lyap
