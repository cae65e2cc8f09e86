#pragma once

#include "eqstab/numeric.hpp"

namespace eqstab {

// Complex Gamma function, Lanczos approximation (g = 7, 9 coefficients) with
// the reflection formula for Re z < 1/2.
cplx gamma(cplx z);

// A logarithm of Gamma(z) (branch unspecified; exp(log_gamma(z)) == gamma(z)).
// Stays finite where gamma() would overflow.
cplx log_gamma(cplx z);

}  // namespace eqstab
