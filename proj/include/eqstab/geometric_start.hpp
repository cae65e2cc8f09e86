#pragma once

// Start-point scheduler for m = 3: picks delta so that the sorted objects sit
// in phases (j, j+1) near delta and the gap condition holds from delta on.
//
// Two sets of constants are reported. The literal ones transcribe the
// displayed formulas as written (u_j is already an imaginary part, so
// "Im u_j" is read as u_j); they cannot satisfy -1/2 < mu < 0 < mu' and are
// listed separately. The operative ones use mu' = min (eps/pi)(u_{i+1} - u_i),
// mu = -mu', a model slope of 3 u_j / pi and offsets pinned at delta'.

#include <optional>
#include <string>

#include "eqstab/io.hpp"
#include "eqstab/path.hpp"

namespace eqstab {

struct PlanCheck {
  std::string name;
  bool pass = false;
  double value = 0.0;  // the quantity tested
  std::string detail;
};

struct LiteralConstants {
  double eps = 0.0;
  double mu = 0.0;
  double mu_prime = 0.0;
  std::vector<double> beta;
  std::vector<std::string> violations;
};

struct GeometricStartPlan {
  std::vector<int> sigma;
  std::vector<double> u;
  double eps = 0.0;
  double mu = 0.0;
  double mu_prime = 0.0;
  double tau = 0.0;  // min(-mu/4, mu'/4)
  double delta_prime = 0.0;
  double delta = 0.0;
  std::vector<double> beta;          // model offsets: (3 delta' u_j + beta_j)/pi = 1/2 + j
  std::vector<double> phase_offset;  // added to the traced phases
  bool searched = false;             // delta' came from the e_j search
  std::optional<double> r_star;
  double tail_error = 0.0;           // max e_j on the tail beyond delta'
  std::vector<PlanCheck> checks;
  std::vector<std::string> violations;
  LiteralConstants literal;
  bool valid() const { return violations.empty(); }
};

// u_j = Im(zeta_3^{sigma_j} e^{-2 pi i theta})
std::vector<double> start_u(const std::vector<int>& sigma, double theta);
// min(0.1, pi / (48 max|u|)): keeps 6 eps |u_j| / pi <= 1/8
double start_eps(const std::vector<double>& u);
LiteralConstants literal_constants(const std::vector<double>& u, double eps, double delta_prime);

// sigma: growth labels of the sorted collection; trace over its objects on
// [r_min, r_max] and the provider that generated it (used for off-grid
// window samples, which are inserted into the trace).
GeometricStartPlan geometric_start_plan(const std::vector<int>& sigma, double theta, PhaseTrace& trace,
                                        const ChargeProvider& f);

// Z_j(r) = exp(i (3 r u_j + beta_j))
ChargeProvider linear_phase_model(const std::vector<int>& sigma, double theta, std::vector<double> beta);

// Throws PlanInfeasible with the first violation.
void require_feasible(const GeometricStartPlan& plan);

Json plan_json(const GeometricStartPlan& plan);

}  // namespace eqstab
