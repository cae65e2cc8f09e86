#include "eqstab/gamma.hpp"

#include <array>

namespace eqstab {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// log Gamma(z) for Re z >= 1/2.
cplx log_gamma_right(cplx z) {
  z -= 1.0;
  cplx a = kLanczos[0];
  for (size_t k = 1; k < kLanczos.size(); ++k) a += kLanczos[k] / (z + static_cast<double>(k));
  const cplx t = z + kLanczosG + 0.5;
  return 0.5 * std::log(kTwoPi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

}  // namespace

cplx log_gamma(cplx z) {
  if (z.real() < 0.5) {
    // Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return std::log(kPi) - std::log(std::sin(kPi * z)) - log_gamma_right(1.0 - z);
  }
  return log_gamma_right(z);
}

cplx gamma(cplx z) {
  if (z.real() < 0.5) return kPi / (std::sin(kPi * z) * gamma(1.0 - z));
  return std::exp(log_gamma_right(z));
}

}  // namespace eqstab
