#ifndef DINT_EXPM_HPP
#define DINT_EXPM_HPP

#include "dint/types.hpp"

namespace dint {

/// Dense matrix exponential by Pade-13 scaling and squaring. Arguments with
/// 1-norm above 100 are evolved by time-splitting into unit-norm steps.
/// Throws ExpFailure when the result is not finite.
Matrix expm(const Matrix& a);

/// Exponential in factored form: exp(a) = exp(log_scale) * b with b kept
/// near unit size, so norms of strongly growing exponentials can be read in
/// log space without overflow.
struct ScaledExp {
  Matrix b;
  double log_scale = 0.0;
};
ScaledExp expm_scaled(const Matrix& a);

/// log of the spectral norm of exp(a), finite even when exp(a) overflows.
double log_norm_expm(const Matrix& a);

}  // namespace dint

#endif
