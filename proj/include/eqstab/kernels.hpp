#pragma once

// Data-parallel loops with OpenMP, each next to a plain serial twin that
// tests compare against.

#include <span>
#include <string>

#include "eqstab/jackson_mp.hpp"
#include "eqstab/mutation.hpp"

namespace eqstab {

using ChargeGrid = std::vector<std::vector<LogValue>>;  // [radius][class]

ChargeGrid charge_grid(const JacksonEvaluator& ev, const std::vector<KClass>& ks, int shift, double theta,
                       std::span<const double> radii);
ChargeGrid charge_grid_serial(const JacksonEvaluator& ev, const std::vector<KClass>& ks, int shift, double theta,
                              std::span<const double> radii);

struct SweepRow {
  double theta = 0.0;
  bool admissible = false;
  int initial_inversions = 0;
  int mutations = 0;
  bool strictly_sorted = false;  // final Im order strictly increasing
  long long determinant = 0;
  std::string error;
};

// Sorts the Beilinson collection (sector growth labels) at every angle.
std::vector<SweepRow> theta_sweep(int m, std::span<const double> thetas);
std::vector<SweepRow> theta_sweep_serial(int m, std::span<const double> thetas);
SweepRow sweep_one(int m, double theta);

// The first `count` admissible angles among (k + 1/2) / count, k = 0, 1, ...
// and then finer offsets if some are rejected.
std::vector<double> admissible_thetas(int m, int count);

}  // namespace eqstab
