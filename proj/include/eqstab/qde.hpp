#pragma once

// Small quantum product of P^{m-1}, its differential equation in q, and the
// residue-series (Jackson) solutions in double / double-double precision.

#include <Eigen/Dense>
#include <functional>

#include "eqstab/numeric.hpp"
#include "eqstab/rings.hpp"

namespace eqstab {

enum class Precision { Double, DoubleDouble, Multi };

Precision parse_precision(std::string_view s);  // "double" | "dd" | "mp"
std::string_view precision_name(Precision p);

struct SeriesConfig {
  double tol = 1e-12;
  int max_terms = 500;
  Precision precision = Precision::Double;

  void validate() const;  // throws ConfigError
};

// A point q on the universal cover, stored through log q.
struct QPoint {
  cplx log_q{0.0, 0.0};

  cplx q() const { return std::exp(log_q); }
  static QPoint from_q(cplx q);  // principal log
  // q = s^m with s = r e^{-2 pi i theta}, log q = m (ln r - 2 pi i theta)
  static QPoint on_ray(int m, double r, double theta);
  QPoint shifted(cplx dlog) const { return {log_q + dlog}; }
};

// x *_q in the basis {1, x, ..., x^{m-1}}.
Eigen::MatrixXcd connection_matrix(const TorusParams& tp, cplx q);
// m * connection_matrix
Eigen::MatrixXcd euler_matrix(const TorusParams& tp, cplx q);
// Same operator in the fixed-point basis: z o v + (-1)^{m-1} q (int v) 1.
CohClass quantum_multiply_x(const CohClass& v, const TorusParams& tp, cplx q);
Eigen::MatrixXcd quantum_multiply_matrix(const TorusParams& tp, cplx q);

// Residue of the master function times the weight function at t = z_J + r,
// as a fixed-point class. J is 0-based.
CohClass jackson_term(int J, int r, const QPoint& q, const TorusParams& tp);
// Oracle for jackson_term: trapezoid quadrature on a circle around z_J + r.
CohClass jackson_term_quadrature(int J, int r, const QPoint& q, const TorusParams& tp,
                                 int nodes = 64, double radius = 0.05);

struct SeriesResult {
  CohClass value;
  double truncation = 0.0;  // max-norm of the last term kept
  int terms = 0;
};

// Partial sums until two consecutive terms drop below tol * running max.
// Throws NoConvergence at max_terms.
SeriesResult jackson_solution(int J, const QPoint& q, const TorusParams& tp, const SeriesConfig& cfg);

// sum_J exp(2 pi i n z_J) Phi_J
CohClass phi_power(int n, const QPoint& q, const TorusParams& tp, const SeriesConfig& cfg);
// [O(-n)] (x) 1^w  ->  exp(2 pi i <w,z>) Phi^n, extended linearly; with
// `shift` d the class is first tensored by O(-d).
CohClass phi_of_kclass(const KClass& k, const QPoint& q, const TorusParams& tp, const SeriesConfig& cfg,
                       int shift = 0);

// Relative residual max|(q d/dq - x*_q) f| / max|f|, with d/dlog q by central
// differences of step 1e-4 in log q.
double qde_residual(const std::function<CohClass(const QPoint&)>& f, const QPoint& q, const TorusParams& tp,
                    double step = 1e-4);

// A solution column stored as exp(logmag) * direction, max|direction| = 1.
struct SolutionColumn {
  CohClass direction;
  cplx logmag{0.0, 0.0};

  static SolutionColumn from_values(const CohClass& v);
  CohClass reconstruct() const;
  // log of component I; -inf real part if the component vanishes
  LogValue component_log(int I) const;
};

}  // namespace eqstab
