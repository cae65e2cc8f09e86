#pragma once

// Fundamental solutions along a ray s = r e^{-2 pi i theta}: direct series,
// adaptive Dormand-Prince continuation, and the hybrid of the two.

#include <functional>
#include <string>

#include "eqstab/qde.hpp"

namespace eqstab {

struct SolutionFrame {
  int m = 0;
  double theta = 0.0;
  double r = 0.0;
  std::vector<int> labels;  // column k holds Phi^{labels[k]}
  std::vector<SolutionColumn> columns;
};

struct OdeConfig {
  double rtol = 1e-10;
  double min_step_rel = 1e-12;  // StepUnderflow below min_step_rel * r
  long max_steps = 2000000;
  // Test hook: replaces x*_q (fixed-point basis) when set.
  std::function<Eigen::MatrixXcd(const QPoint&)> operator_override;
};

struct OdeStats {
  long accepted = 0;
  long rejected = 0;
  long renormalizations = 0;
  double max_log_condition = 0.0;  // log10 cond of the direction matrix seen
};

// arg(e^{-i pi} zeta_m^n s) along the ray
double sector_argument(int m, int n, double theta);
// n/m - 1 < theta < n/m
bool sector_valid(int m, int n, double theta);

SolutionFrame series_frame(double theta, double r, const TorusParams& tp, const SeriesConfig& cfg,
                           const std::vector<int>& labels);
SolutionFrame ode_extend(const SolutionFrame& frame, double r_target, const TorusParams& tp, const OdeConfig& oc,
                         OdeStats* stats = nullptr);
// Series up to r0, ODE beyond; precision "mp" evaluates the series directly at r.
SolutionFrame fundamental_frame(double theta, double r, const TorusParams& tp, const SeriesConfig& cfg,
                                const std::vector<int>& labels, double r0 = 3.0, const OdeConfig& oc = {});

// QDE residual of column k by one-sided second-order differences in log r
// (two short ODE steps forward).
double frame_column_residual(const SolutionFrame& frame, int k, const TorusParams& tp, const OdeConfig& oc = {},
                             double dlog = 1e-4);

// Columns compared after removing a common complex scale per column; max over
// components of |a - b| / max|b|.
double frame_column_distance(const SolutionColumn& a, const SolutionColumn& b);

// log10 condition number of the matrix of column directions
double frame_log_condition(const SolutionFrame& frame);

// CSV rows: r, n, logmag_re, logmag_im, then Re/Im of each direction entry.
std::string frame_csv(const SolutionFrame& frame, bool header = true);

}  // namespace eqstab
