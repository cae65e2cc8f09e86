#pragma once

// Exponential growth fits: log Phi ~ m c s + a log r + b along a ray.

#include <span>

#include "eqstab/jackson_mp.hpp"

namespace eqstab {

struct AsymptoticFit {
  cplx c{0.0, 0.0};  // growth coefficient, compare with zeta_m^n
  cplx a{0.0, 0.0};  // log r coefficient
  cplx b{0.0, 0.0};
  int nearest_n = 0;
  cplx nearest{1.0, 0.0};
  double residual = 0.0;   // rms of the complex residual
  double rel_error = 0.0;  // |c - nearest| / |nearest|
};

// Samples need not be pre-unwrapped: imaginary parts are made continuous in r
// order. Needs >= 8 samples spanning a factor 2. Throws PoorFit when the
// residual exceeds 0.05 |m c r_max|.
AsymptoticFit asymptotic_fit(std::span<const double> r, std::span<const cplx> logmag, int m, double theta);

// Log of one fixed component of the solution attached to k (x) O(-shift) over
// a radius grid. The component is the largest one at the last radius.
std::vector<cplx> solution_log_samples(const JacksonEvaluator& ev, const KClass& k, int shift, double theta,
                                       std::span<const double> radii);

// limsup ln|Phi(k)| / r estimated as the max of Re(log)/r over the tail third
// of the grid; -inf for the zero class.
double growth_rate(const JacksonEvaluator& ev, const KClass& k, int shift, double theta,
                   std::span<const double> radii);

// Makes successive imaginary parts differ by less than pi.
void unwrap_imag(std::vector<cplx>& v);

}  // namespace eqstab
