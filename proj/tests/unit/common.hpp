#pragma once

#include <doctest.h>

#include <random>

#include "eqstab/io.hpp"

namespace eqstab::test {

inline const Json& oracles() {
  static const Json j = read_json_file(EQSTAB_ORACLE_FILE);
  return j;
}

inline cplx cx(const Json& j) { return complex_from_json(j, "oracle"); }

inline double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Points with pairwise differences well away from the integers.
inline CVector random_z(std::mt19937_64& rng, int m, double min_margin = 0.05) {
  std::uniform_real_distribution<double> re(-0.5, 0.5), im(-0.3, 0.3);
  for (;;) {
    CVector z;
    for (int i = 0; i < m; ++i) z.emplace_back(re(rng), im(rng));
    bool ok = true;
    for (int i = 0; i < m && ok; ++i)
      for (int j = i + 1; j < m && ok; ++j) {
        const cplx d = z[i] - z[j];
        ok = std::abs(d - std::round(d.real())) > min_margin;
      }
    if (ok) return z;
  }
}

}  // namespace eqstab::test
