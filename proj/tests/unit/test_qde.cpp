#include "common.hpp"
#include "eqstab/asymptotics.hpp"
#include "eqstab/error.hpp"
#include "eqstab/frame.hpp"
#include "eqstab/jackson_mp.hpp"
#include "eqstab/path.hpp"
#include "eqstab/qde.hpp"

#include <Eigen/Eigenvalues>

using namespace eqstab;
using eqstab::test::cx;
using eqstab::test::rel_err;

namespace {

double max_rel(const CohClass& a, const CohClass& b) {
  double e = 0.0, n = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    e = std::max(e, std::abs(a[i] - b[i]));
    n = std::max(n, std::abs(b[i]));
  }
  return e / n;
}

TorusParams torus_from(const Json& zs) {
  CVector z;
  for (const auto& v : zs) z.push_back(cx(v));
  return make_torus_params(static_cast<int>(z.size()), z);
}

}  // namespace

TEST_CASE("series solutions match the contour-integral oracle") {
  for (const auto& row : test::oracles()["series"]) {
    const auto tp = torus_from(row["z"]);
    const QPoint q = QPoint::from_q(cx(row["q"]));
    const int J = row["J"];
    CohClass want;
    for (const auto& v : row["phi"]) want.values.push_back(cx(v));
    for (Precision p : {Precision::Double, Precision::DoubleDouble}) {
      SeriesConfig cfg{1e-14, 500, p};
      CHECK(max_rel(jackson_solution(J, q, tp, cfg).value, want) < 1e-11);
    }
    JacksonEvaluator ev(tp);
    CHECK(max_rel(ev.fixed_point_solution(ev.table(q), J), want) < 1e-12);
  }
}

TEST_CASE("closed-form residue equals quadrature") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int m = 2; m <= 3; ++m) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto tp = make_torus_params(m, test::random_z(rng, m));
      const QPoint q = QPoint::from_q({5.0 * u(rng), 5.0 * u(rng)});
      for (int J = 0; J < m; ++J)
        for (int r = 0; r <= 5; ++r)
          CHECK(max_rel(jackson_term(J, r, q, tp), jackson_term_quadrature(J, r, q, tp)) < 1e-8);
    }
  }
}

TEST_CASE("jackson_term index checks") {
  const auto tp = make_torus_params(2, {0.1, 0.4});
  CHECK_THROWS_AS(jackson_term(2, 0, QPoint::from_q(1.0), tp), Error);
  CHECK_THROWS_AS(jackson_term(0, -1, QPoint::from_q(1.0), tp), Error);
}

TEST_CASE("series solves the quantum differential equation") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ang(0.0, kTwoPi), rad(0.5, 10.0);
  for (int m = 2; m <= 3; ++m) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto tp = make_torus_params(m, test::random_z(rng, m));
      const QPoint q = QPoint::from_q(std::polar(rad(rng), ang(rng)));
      SeriesConfig cfg{1e-14, 500, Precision::DoubleDouble};
      for (int J = 0; J < m; ++J) {
        auto fn = [&](const QPoint& p) { return jackson_solution(J, p, tp, cfg).value; };
        CHECK(qde_residual(fn, q, tp) < 1e-6);
      }
    }
  }
}

TEST_CASE("quantum multiplication eigenvalues are roots of prod(l - z) - q") {
  for (const auto& row : test::oracles()["quantum_eigenvalues"]) {
    CVector z;
    for (const auto& v : row["z"]) z.emplace_back(v.get<double>());
    const auto tp = make_torus_params(static_cast<int>(z.size()), z);
    const cplx q = cx(row["q"]);
    for (const auto& mat : {connection_matrix(tp, q), quantum_multiply_matrix(tp, q)}) {
      Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(mat);
      for (const auto& want : row["eigenvalues"]) {
        double best = 1e9;
        for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
          best = std::min(best, std::abs(es.eigenvalues()(k) - cx(want)));
        CHECK(best < 1e-10);
      }
    }
  }
}

TEST_CASE("fixed-point quantum product agrees with the matrix") {
  const auto tp = make_torus_params(3, {0.1, cplx(0.37, 0.2), -0.45});
  const cplx q(2.0, 1.0);
  const CohClass v{{1.0, cplx(0.0, 2.0), -0.5}};
  const CohClass a = quantum_multiply_x(v, tp, q);
  const Eigen::MatrixXcd mat = quantum_multiply_matrix(tp, q);
  for (int i = 0; i < 3; ++i) {
    cplx s = 0.0;
    for (int j = 0; j < 3; ++j) s += mat(i, j) * v[static_cast<size_t>(j)];
    CHECK(std::abs(s - a[static_cast<size_t>(i)]) < 1e-12);
  }
}

TEST_CASE("central charges match high-precision oracle") {
  const auto tp = make_torus_params(3, {0.1, 0.37, -0.45});
  JacksonEvaluator ev(tp);
  for (const auto& row : test::oracles()["central_charge"]) {
    const double r = row["r"];
    const int j = row["j"];
    const LogValue z = ev.central_charge(ev.table(QPoint::on_ray(3, r, 0.05)), KClass::line(3, j), 3);
    CHECK(z.log_abs() == doctest::Approx(row["log_abs"].get<double>()).epsilon(1e-10));
    CHECK(std::abs(wrap_angle(z.arg() - row["arg"].get<double>())) < 1e-8);
  }
}

TEST_CASE("double precision central charge agrees with mp where it is well conditioned") {
  const auto tp = make_torus_params(3, {0.1, 0.37, -0.45});
  JacksonEvaluator ev(tp);
  SeriesConfig cfg{1e-14, 500, Precision::DoubleDouble};
  const LogValue a = central_charge(KClass::line(3, 0), 3.0, 0.05, tp, cfg, 3);
  const LogValue b = central_charge(KClass::line(3, 0), 3.0, 0.05, tp, cfg, 3, &ev);
  CHECK(a.log_abs() == doctest::Approx(b.log_abs()).epsilon(1e-8));
}

TEST_CASE("series frame and ODE continuation agree") {
  const auto tp = make_torus_params(3, {0.1, 0.37, -0.45});
  SeriesConfig cfg{1e-14, 500, Precision::DoubleDouble};
  const std::vector<int> labels{3, 2, 1};
  const SolutionFrame hyb = fundamental_frame(0.05, 2.5, tp, cfg, labels, 1.0);
  const SolutionFrame dir = series_frame(0.05, 2.5, tp, cfg, labels);
  for (size_t k = 0; k < 3; ++k) CHECK(frame_column_distance(hyb.columns[k], dir.columns[k]) < 1e-6);
  CHECK(frame_column_residual(dir, 0, tp) < 1e-5);
  CHECK(frame_log_condition(dir) < 12.0);
}

TEST_CASE("solution columns reconstruct") {
  const CohClass v{{cplx(1e200, 1.0), cplx(-3.0, 2e199), 0.0}};
  const SolutionColumn c = SolutionColumn::from_values(v);
  const CohClass back = c.reconstruct();
  CHECK(rel_err(back[0], v[0]) < 1e-13);
  CHECK(c.component_log(2).is_zero());
}

TEST_CASE("sector bookkeeping") {
  CHECK(sector_shift(3, 0.05) == 3);
  CHECK(beilinson_growth(3, 0.05) == std::vector<int>{0, 2, 1});
  CHECK(sector_valid(3, 1, 0.05));
  CHECK_FALSE(sector_valid(3, 0, 0.05));
}

TEST_CASE("growth coefficients of the in-sector solutions") {
  const auto tp = make_torus_params(3, {0.1, 0.37, -0.45});
  JacksonEvaluator ev(tp);
  const auto radii = log_grid(20.0, 50.0, 128);
  for (int n = 0; n <= 3; ++n) {
    const auto s = solution_log_samples(ev, KClass::line(3, -n), 0, 0.05, radii);
    const AsymptoticFit fit = asymptotic_fit(radii, s, 3, 0.05);
    CHECK(fit.nearest_n == n % 3);
    CHECK(fit.rel_error < 0.01);
  }
}

TEST_CASE("fit rejects short grids") {
  const std::vector<double> r{1, 2, 3};
  const std::vector<cplx> y{0, 0, 0};
  CHECK_THROWS_AS(asymptotic_fit(r, y, 3, 0.05), Error);
}
