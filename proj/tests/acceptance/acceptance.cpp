// One PASS/FAIL line per acceptance criterion. Exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "cli_support.hpp"
#include "eqstab/asymptotics.hpp"
#include "eqstab/error.hpp"
#include "eqstab/geometric_start.hpp"
#include "eqstab/group.hpp"
#include "eqstab/kernels.hpp"
#include "eqstab/path.hpp"
#include "eqstab/qde.hpp"

using namespace eqstab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

CVector random_z(std::mt19937_64& rng, int m) {
  std::uniform_real_distribution<double> re(-0.5, 0.5), im(-0.3, 0.3);
  for (;;) {
    CVector z;
    for (int i = 0; i < m; ++i) z.emplace_back(re(rng), im(rng));
    try {
      if (make_torus_params(m, z).margin > 0.05) return z;
    } catch (const Error&) {
    }
  }
}

cplx random_q(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ang(0.0, kTwoPi), rad(0.5, 10.0);
  return std::polar(rad(rng), ang(rng));
}

std::string g(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

double max_rel(const CohClass& a, const CohClass& b) {
  double e = 0.0, n = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    e = std::max(e, std::abs(a[i] - b[i]));
    n = std::max(n, std::abs(b[i]));
  }
  return e / n;
}

Outcome qde_solutions() {
  std::mt19937_64 rng(101);
  double worst = 0.0;
  SeriesConfig cfg{1e-14, 500, Precision::DoubleDouble};
  for (int m = 2; m <= 3; ++m) {
    for (int t = 0; t < 5; ++t) {
      const auto tp = make_torus_params(m, random_z(rng, m));
      const QPoint q = QPoint::from_q(random_q(rng));
      for (int J = 0; J < m; ++J) {
        auto fn = [&](const QPoint& p) { return jackson_solution(J, p, tp, cfg).value; };
        worst = std::max(worst, qde_residual(fn, q, tp));
      }
    }
  }
  return {worst <= 1e-6, "max relative residual " + g(worst) + " (tol 1e-6)"};
}

Outcome residue_oracle() {
  std::mt19937_64 rng(202);
  double worst = 0.0;
  for (int m = 2; m <= 3; ++m) {
    for (int t = 0; t < 5; ++t) {
      const auto tp = make_torus_params(m, random_z(rng, m));
      const QPoint q = QPoint::from_q(random_q(rng));
      for (int J = 0; J < m; ++J)
        for (int r = 0; r <= 5; ++r)
          worst = std::max(worst, max_rel(jackson_term(J, r, q, tp), jackson_term_quadrature(J, r, q, tp)));
    }
  }
  return {worst <= 1e-8, "max relative error " + g(worst) + " (tol 1e-8)"};
}

Outcome asymptotics() {
  const auto tp = make_torus_params(3, {0.1, 0.37, -0.45});
  JacksonEvaluator ev(tp);
  const auto radii = log_grid(20.0, 50.0, 128);
  bool ok = true;
  std::ostringstream d;
  for (int n = 0; n <= 3; ++n) {
    const auto s = solution_log_samples(ev, KClass::line(3, -n), 0, 0.05, radii);
    const AsymptoticFit fit = asymptotic_fit(radii, s, 3, 0.05);
    const double err = std::abs(fit.c - root_of_unity(3, n % 3));
    ok = ok && err < 0.01;
    d << "n=" << n << ": " << g(err) << " ";
  }
  d << "(rel. deviation from zeta^(n mod 3), tol 1e-2)";
  return {ok, d.str()};
}

Outcome mutation_sorting() {
  Collection c = beilinson_collection(3);
  set_growth(c, beilinson_growth(3, 0.05));
  const SortResult s = sort_collection(c, 0.05);
  bool ok = s.steps.size() == 1 && s.steps[0].side == 'R' && s.steps[0].position == 0;
  ok = ok && s.sorted.objects[1].kclass == KClass::line(3, 0) - 3 * KClass::line(3, 1);
  for (size_t i = 0; i + 1 < 3; ++i)
    ok = ok && growth_direction(3, s.sigma[i], 0.05).imag() < growth_direction(3, s.sigma[i + 1], 0.05).imag();
  ok = ok && std::llabs(verify_exceptional(s.sorted).determinant) == 1;
  for (size_t k = 1; k < s.inversions.size(); ++k) ok = ok && s.inversions[k] < s.inversions[k - 1];
  int worst = 0, bad = 0;
  const auto rows = theta_sweep(3, admissible_thetas(3, 100));
  for (const auto& r : rows) {
    worst = std::max(worst, r.mutations);
    if (!r.error.empty() || !r.strictly_sorted || r.mutations > 3 || std::llabs(r.determinant) != 1) ++bad;
  }
  ok = ok && bad == 0 && rows.size() == 100;
  return {ok, "one R at 0 -> [O]-3[O(1)]; sweep of " + std::to_string(rows.size()) + " angles, max " +
                  std::to_string(worst) + " mutations, " + std::to_string(bad) + " bad"};
}

struct PathSetup {
  PathConfig pc;
  SortResult sort;
  ChargeProvider prov;
};

PathSetup path_setup(double r_min) {
  PathSetup p;
  p.pc.m = 3;
  p.pc.theta = 0.05;
  p.pc.r_min = r_min;
  p.pc.r_max = 50.0;
  p.pc.tp = make_torus_params(3, {0.1, 0.37, -0.45});
  Collection c = beilinson_collection(3);
  set_growth(c, beilinson_growth(3, 0.05));
  p.sort = sort_collection(c, 0.05);
  p.prov = collection_charges(p.sort.sorted, p.pc);
  return p;
}

std::vector<std::string> labels(const Collection& c) {
  std::vector<std::string> out;
  for (const auto& o : c.objects) out.push_back(o.label);
  return out;
}

Outcome path_diagnostics() {
  const PathSetup p = path_setup(5.0);
  const auto coarse = log_grid(5.0, 50.0, 256), fine = log_grid(5.0, 50.0, 512);
  const PhaseTrace a = phase_trace(p.prov, labels(p.sort.sorted), coarse);
  const PhaseTrace b = phase_trace(p.prov, labels(p.sort.sorted), fine);
  const GapReport ga = gap_report(a), gb = gap_report(b);
  std::ostringstream d;
  bool ok = ga.r_star && gb.r_star;
  if (ok) {
    // stable: within one coarse cell
    const double cell = *ga.r_star * (coarse[1] / coarse[0] - 1.0);
    const bool stable = std::abs(*ga.r_star - *gb.r_star) <= cell;
    ok = stable;
    d << "R* = " << g(*ga.r_star) << " / " << g(*gb.r_star) << " (256 / 512 samples)";
  } else {
    d << "R* missing";
  }
  double worst = 0.0;
  for (size_t i = 0; i < a.objects(); ++i)
    for (size_t j = i + 1; j < a.objects(); ++j) {
      const EstimatorResult e =
          quasi_convergence_estimator(a, j, i, 3, 0.05, p.sort.sigma[j], p.sort.sigma[i]);
      worst = std::max(worst, e.tail_error);
    }
  ok = ok && worst <= 1e-2;
  d << "; estimator tail error at r=50 " << g(worst) << " (tol 1e-2)";
  return {ok, d.str()};
}

Outcome geometric_start() {
  const std::vector<int> sigma{2, 0, 1};
  std::vector<double> beta;
  for (int j = 0; j < 3; ++j) beta.push_back(kPi * (0.5 + j));
  const ChargeProvider model = linear_phase_model(sigma, 0.05, beta);
  PhaseTrace ts = phase_trace(model, {"a", "b", "c"}, log_grid(1.0, 50.0, 256));
  const GeometricStartPlan syn = geometric_start_plan(sigma, 0.05, ts, model);
  bool syn_ok = syn.valid();
  for (const auto& c : syn.checks) syn_ok = syn_ok && c.pass;

  const PathSetup p = path_setup(1.0);
  PhaseTrace tr = phase_trace(p.prov, labels(p.sort.sorted), log_grid(1.0, 50.0, 256));
  const GeometricStartPlan real = geometric_start_plan(p.sort.sigma, 0.05, tr, p.prov);
  size_t failing = 0;
  for (const auto& c : real.checks) failing += c.pass ? 0 : 1;
  const bool enumerated = failing == real.violations.size();
  const bool ok = syn_ok && real.delta > 0.0 && enumerated;
  return {ok, "synthetic " + std::string(syn_ok ? "all checks pass" : "has failures") + "; real delta = " +
                  g(real.delta) + ", " + std::to_string(real.violations.size()) + " violation(s) listed, " +
                  std::to_string(real.literal.violations.size()) + " literal-constant issue(s)"};
}

Outcome euler_identities() {
  std::mt19937_64 rng(303);
  double worst = 0.0;
  for (int m = 2; m <= 4; ++m)
    for (int t = 0; t < 10; ++t) {
      const auto tp = make_torus_params(m, random_z(rng, m));
      worst = std::max(worst, std::abs(integrate(coh_unit(tp), tp)));
      CVector top(static_cast<size_t>(m), 0.0);
      top.back() = 1.0;
      const double sign = (m - 1) % 2 == 0 ? 1.0 : -1.0;
      worst = std::max(worst, std::abs(integrate(coh_from_poly(top, tp), tp) - sign));
    }
  int bad = 0;
  for (int m = 2; m <= 4; ++m)
    for (int a = -3; a <= 3; ++a)
      for (int d = -4; d <= 4; ++d) {
        // binom(d + m - 1, m - 1) read as a polynomial in d
        long long num = 1, den = 1;
        for (int k = 1; k <= m - 1; ++k) {
          num *= d + k;
          den *= k;
        }
        const long long want = num / den;
        if (euler_pairing_limit(KClass::line(m, a), KClass::line(m, a + d)) != want) ++bad;
      }
  return {worst <= 1e-10 && bad == 0,
          "max identity error " + g(worst) + " (tol 1e-10); " + std::to_string(bad) + " binomial mismatches"};
}

Outcome group_induction() {
  const FiniteGroupData z3 = bundled_group("Z3");
  const GHomReport rep = verify_g_sod_projective(z3, {3.0, 0.0, 0.0}, 3, 2);
  bool ok = rep.ok();
  // oracle: weights of the degree-d monomials in the dual coordinates
  for (int d = 0; d <= 2; ++d)
    for (int p = 0; p < 3; ++p)
      for (int q = 0; q < 3; ++q) {
        long long count = 0;
        for (int a = 0; a <= d; ++a)
          for (int b = 0; a + b <= d; ++b) {
            const int c = d - a - b;
            const int weight = ((-(0 * a + 1 * b + 2 * c)) % 3 + 3) % 3;
            count += (q + weight) % 3 == p ? 1 : 0;
          }
        ok = ok && rep.hom[static_cast<size_t>(d)][static_cast<size_t>(p)][static_cast<size_t>(q)] == count;
        const long long expect = d == 0 ? (p == q ? 1 : 0) : d;
        ok = ok && count == expect;
      }
  std::vector<int> id{0, 1, 2};
  std::vector<Block> blocks;
  for (int i = 0; i < 3; ++i) blocks.push_back({"O(" + std::to_string(i) + ")", 1, {z3, id}, true});
  const size_t nobj = induced_collection(z3, blocks).size();
  ok = ok && nobj == 9;

  std::mt19937_64 rng(404);
  std::normal_distribution<double> nd;
  double worst = 0.0;
  for (const auto& name : bundled_group_names()) {
    const FiniteGroupData gr = bundled_group(name);
    const auto subs = bundled_subgroups(name);
    for (int t = 0; t < 50; ++t) {
      const Subgroup& s = subs[static_cast<size_t>(t) % subs.size()];
      ClassFunction chi, psi;
      for (int c = 0; c < s.h.classes(); ++c) chi.emplace_back(nd(rng), nd(rng));
      for (int c = 0; c < gr.classes(); ++c) psi.emplace_back(nd(rng), nd(rng));
      const cplx lhs = inner_product(gr, induced_character(gr, s, chi), psi);
      const cplx rhs = inner_product(s.h, chi, restrict_character(s, psi));
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  ok = ok && worst <= 1e-9;
  return {ok, std::to_string(nobj) + " induced objects; Hom0 matrices match monomial count; Frobenius max error " +
                  g(worst) + " over " + std::to_string(bundled_group_names().size()) + " groups x 50 pairs"};
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const std::vector<std::pair<std::string, std::string>> runs{
      {"qde-check", "qde_check_m3.json"},         {"path-run", "path_run_m3.json"},
      {"geometric-start", "geometric_start_m3.json"}, {"induce", "induce_s3_p2.json"},
      {"mutate", "mutate_m3_fit.json"}};
  int same = 0, total = 0;
  for (const auto& [cmd, cfg] : runs) {
    std::map<std::string, std::string> out[2];
    for (int k = 0; k < 2; ++k) {
      const fs::path dir = test::scratch_dir("accept_" + std::to_string(k));
      test::run_cli(cmd + " --config " + test::config(cfg) + " --out " + dir.string() + " --seed 3", dir);
      for (const auto& e : fs::directory_iterator(dir))
        if (e.path().filename() != "cli.log") out[k][e.path().filename().string()] = test::slurp(e.path());
    }
    ++total;
    if (!out[0].empty() && out[0] == out[1]) ++same;
  }
  return {same == total, std::to_string(same) + "/" + std::to_string(total) + " commands byte-identical on rerun"};
}

}  // namespace

int main() {
  struct Criterion {
    std::string name;
    double budget;  // seconds
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all{
      {"qde_solution_check", 30, qde_solutions},   {"residue_oracle", 10, residue_oracle},
      {"asymptotics", 60, asymptotics},            {"mutation_sorting", 10, mutation_sorting},
      {"path_diagnostics", 120, path_diagnostics}, {"geometric_start", 120, geometric_start},
      {"euler_localization", 10, euler_identities}, {"group_induction", 10, group_induction},
      {"determinism", 120, determinism}};
  int failed = 0;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget) {
      o.pass = false;
      o.detail += "; over time budget";
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s  %-20s %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", c.name.c_str(), o.detail.c_str(), secs);
  }
  std::printf("%d/%zu criteria pass\n", static_cast<int>(all.size()) - failed, all.size());
  return failed == 0 ? 0 : 1;
}
