#include "eqstab/geometric_start.hpp"

#include <algorithm>
#include <cmath>

#include "eqstab/error.hpp"

namespace eqstab {

std::vector<double> start_u(const std::vector<int>& sigma, double theta) {
  std::vector<double> u;
  for (int s : sigma) u.push_back(ray_direction(3, s, theta).imag());
  return u;
}

double start_eps(const std::vector<double>& u) {
  double mx = 0.0;
  for (double v : u) mx = std::max(mx, std::abs(v));
  return mx > 0.0 ? std::min(0.1, kPi / (48.0 * mx)) : 0.1;
}

LiteralConstants literal_constants(const std::vector<double>& u, double eps, double delta_prime) {
  LiteralConstants lit;
  lit.eps = eps;
  const double k = eps / kPi;
  lit.mu_prime = std::min({k * u[1] - u[0], k * u[2] - u[1], u[0]});
  lit.mu = std::min({k * u[0] - u[1], k * u[1] - u[2], u[2]});
  lit.violations.push_back("Im(u_j) = 0 for real u_j; read as u_j, so the eps condition is the only nonvacuous use");
  if (!(lit.mu_prime > 0.0)) lit.violations.push_back("mu' > 0 fails: mu' = " + format_g17(lit.mu_prime));
  if (!(lit.mu_prime < 0.5)) lit.violations.push_back("mu' < 1/2 fails: mu' = " + format_g17(lit.mu_prime));
  if (!(lit.mu < 0.0)) lit.violations.push_back("mu < 0 fails: mu = " + format_g17(lit.mu));
  if (!(lit.mu > -0.5)) lit.violations.push_back("mu > -1/2 fails: mu = " + format_g17(lit.mu));
  for (size_t j = 0; j < u.size(); ++j) {
    // (1/pi) Im(u_j / delta') + beta_j = 1/2 + j with Im(u_j / delta') = 0
    const double b = 0.5 + static_cast<double>(j);
    lit.beta.push_back(b);
    const double at = (3.0 * delta_prime * u[j] + b) / kPi;
    if (std::abs(at - b) > 1e-12) {
      lit.violations.push_back("beta_" + std::to_string(j) + " puts the model phase at delta' at " + format_g17(at) +
                               ", not " + format_g17(b));
    }
  }
  return lit;
}

ChargeProvider linear_phase_model(const std::vector<int>& sigma, double theta, std::vector<double> beta) {
  const std::vector<double> u = start_u(sigma, theta);
  if (beta.size() != u.size()) throw Error(ErrorCode::DimensionMismatch, "one beta per object");
  return [u, beta](double r) {
    std::vector<LogValue> out(u.size());
    for (size_t j = 0; j < u.size(); ++j) out[j].log = {0.0, wrap_angle(3.0 * r * u[j] + beta[j])};
    return out;
  };
}

namespace {

double tail_error_at(const PhaseTrace& t, size_t k, const std::vector<double>& u) {
  double e = 0.0;
  for (size_t j = 0; j < u.size(); ++j) {
    for (size_t q = k + 1; q < t.size(); ++q) {
      const double model = 3.0 * (t.r[q] - t.r[k]) * u[j] / kPi;
      e = std::max(e, std::abs(t.phi[j][q] - t.phi[j][k] - model));
    }
  }
  return e;
}

void add_check(GeometricStartPlan& p, std::string name, bool pass, double value, std::string detail) {
  if (!pass) p.violations.push_back(name + ": " + detail);
  p.checks.push_back({std::move(name), pass, value, std::move(detail)});
}

}  // namespace

GeometricStartPlan geometric_start_plan(const std::vector<int>& sigma, double theta, PhaseTrace& trace,
                                        const ChargeProvider& f) {
  if (sigma.size() != 3 || trace.objects() != 3) {
    throw Error(ErrorCode::InvalidArgument, "geometric start is defined for m = 3 only");
  }
  if (!is_admissible(theta, 3).admissible) throw Error(ErrorCode::InvalidArgument, "theta is inadmissible");
  GeometricStartPlan p;
  p.sigma = sigma;
  p.u = start_u(sigma, theta);
  if (!(p.u[0] < p.u[1] && p.u[1] < p.u[2])) {
    throw Error(ErrorCode::InvalidArgument, "collection is not sorted by Im of its growth directions");
  }
  p.eps = start_eps(p.u);
  const double k = p.eps / kPi;
  p.mu_prime = k * std::min(p.u[1] - p.u[0], p.u[2] - p.u[1]);
  p.mu = -p.mu_prime;
  p.tau = std::min(-p.mu / 4.0, p.mu_prime / 4.0);

  double eps_worst = 0.0;
  for (double v : p.u) eps_worst = std::max(eps_worst, k * std::abs(v));
  add_check(p, "eps_bound", eps_worst < 0.25, eps_worst, "(eps/pi)|u_j| < 1/4");
  const bool mu_ok = -0.5 < p.mu && p.mu < 0.0 && 0.0 < p.mu_prime && p.mu_prime < 0.5;
  add_check(p, "mu_range", mu_ok, p.mu_prime, "-1/2 < mu < 0 < mu' < 1/2");

  // delta' search on the grid
  const double r0 = trace.r.front(), r1 = trace.r.back();
  const GapReport gap0 = gap_report(trace);
  p.r_star = gap0.r_star;
  std::optional<size_t> found;
  double best_err = std::numeric_limits<double>::infinity();
  size_t best_k = 0;
  for (size_t i = 0; i < trace.size(); ++i) {
    const double r = trace.r[i];
    if (r < r0 + 2.0 * p.eps || r > r0 + 0.5 * (r1 - r0)) continue;
    const double e = tail_error_at(trace, i, p.u);
    if (e < best_err) {
      best_err = e;
      best_k = i;
    }
    if (e < p.tau) {
      found = i;
      break;
    }
  }
  if (found) {
    p.searched = true;
    p.delta_prime = trace.r[*found];
    p.tail_error = tail_error_at(trace, *found, p.u);
  } else {
    p.searched = false;
    if (p.r_star) {
      p.delta_prime = std::max(*p.r_star, r0 + 2.0 * p.eps);
    } else if (std::isfinite(best_err)) {
      p.delta_prime = trace.r[best_k];
    } else {
      p.delta_prime = std::min(r1, r0 + 2.0 * p.eps);
    }
  }
  p.delta = p.delta_prime - p.eps;
  const size_t kd = trace_insert(trace, f, p.delta_prime);
  if (!found) p.tail_error = tail_error_at(trace, kd, p.u);
  add_check(p, "tail_bound", p.tail_error < p.tau, p.tail_error,
            found ? "e_j < min(-mu/4, mu'/4) beyond delta'"
                  : "no grid delta' has e_j < min(-mu/4, mu'/4) on the tail; delta' falls back to " +
                        std::string(p.r_star ? "R*" : "the best candidate"));

  // offsets: psi_j(delta') = 1/2 + j, model (3 r u_j + beta_j)/pi through the same point
  for (size_t j = 0; j < 3; ++j) {
    const double target = 0.5 + static_cast<double>(j);
    p.phase_offset.push_back(target - trace.phi[j][kd]);
    p.beta.push_back(kPi * target - 3.0 * p.delta_prime * p.u[j]);
  }
  p.literal = literal_constants(p.u, p.eps, p.delta_prime);

  // window samples on (delta - eps, delta + eps)
  for (int s = -4; s <= 4; ++s) {
    const double r = p.delta + p.eps * static_cast<double>(s) / 5.0;
    if (r > r0 && r < r1) trace_insert(trace, f, r);
  }
  if (p.delta <= r0) {
    add_check(p, "window_in_range", false, p.delta, "delta lies at or below the traced range");
  }
  auto psi = [&](size_t j, size_t i) { return trace.phi[j][i] + p.phase_offset[j]; };

  double win_margin = std::numeric_limits<double>::infinity();
  int win_samples = 0;
  for (size_t i = 0; i < trace.size(); ++i) {
    const double r = trace.r[i];
    if (!(r > p.delta - p.eps && r < p.delta + p.eps)) continue;
    ++win_samples;
    for (size_t j = 0; j < 3; ++j) {
      const double v = psi(j, i) - static_cast<double>(j);
      win_margin = std::min({win_margin, v, 1.0 - v});
    }
  }
  add_check(p, "window_phase", win_samples > 0 && win_margin > 0.0, win_margin,
            "phi_j in (j, j+1) on (delta - eps, delta + eps), " + std::to_string(win_samples) + " samples");

  const size_t kdel = trace_insert(trace, f, p.delta);
  double gap_at = 0.0;
  for (size_t j = 0; j < 2; ++j) gap_at = std::max(gap_at, std::abs(psi(j + 1, kdel) - psi(j, kdel)));
  add_check(p, "gap_below_one_at_delta", gap_at < 1.0, gap_at, "|phi_{j+1} - phi_j| < 1 at delta");

  double gap_beyond = std::numeric_limits<double>::infinity();
  int beyond = 0;
  for (size_t i = 0; i < trace.size(); ++i) {
    if (!(trace.r[i] > p.delta_prime + p.eps)) continue;
    ++beyond;
    for (size_t j = 0; j < 2; ++j) gap_beyond = std::min(gap_beyond, std::abs(psi(j + 1, i) - psi(j, i)));
  }
  add_check(p, "gap_above_one_beyond", beyond > 0 && gap_beyond > 1.0, gap_beyond,
            "|phi_{j+1} - phi_j| > 1 for r > delta' + eps, " + std::to_string(beyond) + " samples");

  double ceil_margin = std::numeric_limits<double>::infinity();
  double ceil_worst_r = 0.0;
  for (size_t i = 0; i < trace.size(); ++i) {
    if (trace.r[i] < p.delta) continue;
    for (size_t j = 0; j < 2; ++j) {
      const double mg = psi(j + 1, i) - std::ceil(psi(j, i));
      if (mg < ceil_margin) {
        ceil_margin = mg;
        ceil_worst_r = trace.r[i];
      }
    }
  }
  add_check(p, "ceiling_condition", ceil_margin > 0.0, ceil_margin,
            "ceil(phi_j) < phi_{j+1} on [delta, r_max]; worst at r = " + format_g17(ceil_worst_r));
  add_check(p, "delta_positive", p.delta > 0.0, p.delta, "delta > 0");
  return p;
}

void require_feasible(const GeometricStartPlan& plan) {
  if (!plan.violations.empty()) throw Error(ErrorCode::PlanInfeasible, plan.violations.front());
}

Json plan_json(const GeometricStartPlan& p) {
  Json checks = Json::array();
  for (const auto& c : p.checks) {
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"value", json_number(c.value)}, {"detail", c.detail}});
  }
  Json j;
  j["sigma"] = p.sigma;
  j["u"] = p.u;
  j["eps"] = p.eps;
  j["mu"] = p.mu;
  j["mu_prime"] = p.mu_prime;
  j["tau"] = p.tau;
  j["delta_prime"] = p.delta_prime;
  j["delta"] = p.delta;
  j["beta"] = p.beta;
  j["phase_offset"] = p.phase_offset;
  j["delta_prime_searched"] = p.searched;
  j["r_star"] = p.r_star ? Json(*p.r_star) : Json(nullptr);
  j["tail_error"] = json_number(p.tail_error);
  j["checks"] = checks;
  j["violations"] = p.violations;
  j["valid"] = p.valid();
  j["literal"] = {{"eps", p.literal.eps},
                  {"mu", p.literal.mu},
                  {"mu_prime", p.literal.mu_prime},
                  {"beta", p.literal.beta},
                  {"violations", p.literal.violations}};
  return j;
}

}  // namespace eqstab
