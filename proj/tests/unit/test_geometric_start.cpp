#include "common.hpp"
#include "eqstab/error.hpp"
#include "eqstab/geometric_start.hpp"

using namespace eqstab;

namespace {

const std::vector<int> kSigma{2, 0, 1};

GeometricStartPlan synthetic_plan(PhaseTrace* out = nullptr) {
  std::vector<double> beta;
  for (int j = 0; j < 3; ++j) beta.push_back(kPi * (0.5 + j));
  const ChargeProvider prov = linear_phase_model(kSigma, 0.05, beta);
  PhaseTrace t = phase_trace(prov, {"a", "b", "c"}, log_grid(1.0, 50.0, 256));
  GeometricStartPlan p = geometric_start_plan(kSigma, 0.05, t, prov);
  if (out) *out = t;
  return p;
}

}  // namespace

TEST_CASE("u and eps") {
  const auto u = start_u(kSigma, 0.05);
  REQUIRE(u.size() == 3);
  CHECK(u[0] < u[1]);
  CHECK(u[1] < u[2]);
  const double eps = start_eps(u);
  double umax = 0.0;
  for (double v : u) umax = std::max(umax, std::abs(v));
  CHECK(6.0 * eps * umax / kPi <= 0.125 + 1e-15);
  CHECK(eps <= 0.1);
}

TEST_CASE("synthetic linear-phase model passes every check") {
  PhaseTrace t;
  const GeometricStartPlan p = synthetic_plan(&t);
  CHECK(p.valid());
  for (const auto& c : p.checks) {
    INFO(c.name, " ", c.detail);
    CHECK(c.pass);
  }
  CHECK(p.delta > 0.0);
  CHECK(p.mu < 0.0);
  CHECK(p.mu > -0.5);
  CHECK(p.mu_prime > 0.0);
  CHECK(p.tau == doctest::Approx(std::min(-p.mu / 4, p.mu_prime / 4)));
  CHECK_NOTHROW(require_feasible(p));
}

TEST_CASE("literal constants are flagged") {
  const GeometricStartPlan p = synthetic_plan();
  CHECK_FALSE(p.literal.violations.empty());
}

TEST_CASE("plan json carries the checks") {
  const Json j = plan_json(synthetic_plan());
  CHECK(j.contains("checks"));
  CHECK(j.contains("violations"));
  CHECK(j["violations"].empty());
}

TEST_CASE("broken model is reported, not patched") {
  // phases frozen: nothing separates, the gap never opens
  ChargeProvider flat = [](double) {
    std::vector<LogValue> v(3);
    for (auto& x : v) x.log = {0.0, 0.3};
    return v;
  };
  PhaseTrace t = phase_trace(flat, {"a", "b", "c"}, log_grid(1.0, 50.0, 64));
  const GeometricStartPlan p = geometric_start_plan(kSigma, 0.05, t, flat);
  CHECK_FALSE(p.valid());
  CHECK_THROWS_AS(require_feasible(p), Error);
}
