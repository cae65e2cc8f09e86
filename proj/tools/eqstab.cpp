// eqstab: batch driver. Exit codes: 0 pass, 1 domain failure, 2 usage/config error.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <random>

#include "eqstab/asymptotics.hpp"
#include "eqstab/error.hpp"
#include "eqstab/frame.hpp"
#include "eqstab/geometric_start.hpp"
#include "eqstab/group.hpp"
#include "eqstab/io.hpp"
#include "eqstab/mutation.hpp"
#include "eqstab/path.hpp"

namespace fs = std::filesystem;
using namespace eqstab;

namespace {

struct Flags {
  std::string config;
  std::string out = "out";
  std::string s_convention;
  std::string precision;
  std::optional<long long> seed;
};

struct Run {
  Json cfg;  // resolved
  fs::path cfg_dir;
  fs::path out;
  std::string hash;
};

[[noreturn]] void config_fail(const std::string& s) { throw Error(ErrorCode::ConfigError, s); }

template <class T>
T need(const Json& j, const char* key) {
  if (!j.contains(key)) config_fail(std::string("missing key '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    config_fail(std::string("bad type for '") + key + "'");
  }
}

template <class T>
T opt(const Json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    config_fail(std::string("bad type for '") + key + "'");
  }
}

Run resolve(const Flags& f, const std::string& command, const Json& defaults) {
  Run run;
  Json raw = read_json_file(f.config);
  if (!raw.is_object()) config_fail("config must be a JSON object");
  if (raw.contains("command") && raw["command"] != command) {
    config_fail("config is for '" + raw["command"].get<std::string>() + "', not '" + command + "'");
  }
  Json cfg = defaults;
  for (auto& [k, v] : raw.items()) cfg[k] = v;
  cfg["command"] = command;
  if (!f.s_convention.empty()) cfg["s_convention"] = f.s_convention;
  if (!f.precision.empty()) cfg["precision"] = f.precision;
  if (f.seed) cfg["seed"] = *f.seed;
  const std::string conv = opt<std::string>(cfg, "s_convention", "half");
  if (conv != "half" && conv != "direct") config_fail("s_convention must be half or direct");
  cfg["s_convention"] = conv;
  if (cfg.contains("precision")) parse_precision(cfg["precision"].get<std::string>());
  cfg["tool_version"] = std::string(kToolVersion);
  run.cfg = cfg;
  run.cfg_dir = fs::path(f.config).parent_path();
  run.out = f.out;
  run.hash = manifest_hash(cfg);
  return run;
}

SConvention conv_of(const Json& cfg) {
  return cfg["s_convention"] == "direct" ? SConvention::Direct : SConvention::Half;
}

TorusParams torus_of(const Json& cfg) {
  const int m = need<int>(cfg, "m");
  if (m < 2 || m > 8) config_fail("m must be in [2, 8]");
  CVector z;
  if (cfg.contains("z")) {
    for (const auto& v : cfg["z"]) z.push_back(complex_from_json(v, "z"));
  } else if (cfg.contains("s")) {
    CVector s;
    for (const auto& v : cfg["s"]) s.push_back(complex_from_json(v, "s"));
    z = z_from_s(s, conv_of(cfg));
  } else {
    config_fail("need 'z' or 's'");
  }
  if (static_cast<int>(z.size()) != m) config_fail("z must have m entries");
  return make_torus_params(m, z);  // OmegaViolation here is a config error
}

CVector s_tuple(const TorusParams& tp, SConvention conv) {
  CVector s = tp.z;
  if (conv == SConvention::Half) {
    for (auto& v : s) v *= 2.0;
  }
  return s;
}

Json stamp(Json j, const Run& run) {
  j["manifest_hash"] = run.hash;
  j["manifest"] = run.cfg;
  return j;
}

void write_json(const Run& run, const std::string& name, const Json& j) {
  write_atomic(run.out / name, dump_json(stamp(j, run)));
}

void write_csv(const Run& run, const std::string& name, const std::string& body) {
  write_atomic(run.out / name, "# manifest_hash=" + run.hash + "\n" + body);
}

Json kclass_json(const KClass& k) {
  const KClass t = k.trimmed();
  return {{"offset", t.offset()}, {"coeffs", t.coeffs()}, {"twist", t.twist()}};
}

Json collection_json(const Collection& c) {
  Json objs = Json::array();
  for (const auto& o : c.objects) {
    objs.push_back({{"label", o.label},
                    {"kclass", kclass_json(o.kclass)},
                    {"solution_coefficients", o.solcoef},
                    {"solution_lowest_power", c.sol_lo},
                    {"growth", o.growth ? Json(*o.growth) : Json(nullptr)}});
  }
  return objs;
}

Json steps_json(const std::vector<MutationStep>& steps) {
  Json a = Json::array();
  for (const auto& s : steps) a.push_back({{"position", s.position}, {"side", std::string(1, s.side)}, {"chi", s.chi}});
  return a;
}

// ---------------------------------------------------------------- qde-check

int cmd_qde_check(const Flags& f) {
  const Run run = resolve(f, "qde-check", {{"precision", "double"}, {"seed", 1}});
  const Json& c = run.cfg;
  std::vector<TorusParams> tps;
  if (c.contains("random_z")) {
    const int count = need<int>(c["random_z"], "count");
    const int m = need<int>(c, "m");
    std::mt19937_64 rng(static_cast<std::uint64_t>(need<long long>(c, "seed")));
    std::uniform_real_distribution<double> re(-0.5, 0.5), im(-0.3, 0.3);
    while (static_cast<int>(tps.size()) < count) {
      CVector z;
      for (int i = 0; i < m; ++i) z.emplace_back(re(rng), im(rng));
      try {
        TorusParams tp = make_torus_params(m, z);
        if (tp.margin > 0.02) tps.push_back(tp);
      } catch (const Error&) {
      }
    }
  } else {
    tps.push_back(torus_of(c));
  }
  std::vector<QPoint> qs;
  for (const auto& v : need<Json>(c, "q_points")) qs.push_back(QPoint::from_q(complex_from_json(v, "q_points")));
  if (qs.empty()) config_fail("q_points is empty");
  const Json res_cfg = opt<Json>(c, "residue", Json::object());
  const int max_r = opt<int>(res_cfg, "max_r", 5);
  const double res_tol = opt<double>(res_cfg, "tol", 1e-8);
  const double resid_tol = opt<double>(c, "residual_tol", 1e-6);
  const Json ode_cfg = opt<Json>(c, "ode", Json::object());
  const double theta = opt<double>(ode_cfg, "theta", 0.05);
  const double r0 = opt<double>(ode_cfg, "r0", 1.0), r1 = opt<double>(ode_cfg, "r1", 2.5);
  const double ode_tol = opt<double>(ode_cfg, "tol", 1e-6);
  SeriesConfig sc;
  sc.tol = opt<double>(c, "series_tol", 1e-12);
  sc.max_terms = opt<int>(c, "max_terms", 500);
  sc.precision = parse_precision(c["precision"].get<std::string>());
  if (sc.precision == Precision::Multi) sc.precision = Precision::DoubleDouble;  // series suites run in dd
  sc.validate();

  double worst_res = 0.0, worst_resid = 0.0, worst_ode = 0.0;
  for (const auto& tp : tps) {
    for (const auto& q : qs) {
      for (int J = 0; J < tp.m; ++J) {
        for (int r = 0; r <= max_r; ++r) {
          const CohClass a = jackson_term(J, r, q, tp), b = jackson_term_quadrature(J, r, q, tp);
          double e = 0.0, n = 0.0;
          for (int I = 0; I < tp.m; ++I) {
            e = std::max(e, std::abs(a[static_cast<size_t>(I)] - b[static_cast<size_t>(I)]));
            n = std::max(n, std::abs(b[static_cast<size_t>(I)]));
          }
          worst_res = std::max(worst_res, e / n);
        }
        auto fn = [&](const QPoint& p) { return jackson_solution(J, p, tp, sc).value; };
        worst_resid = std::max(worst_resid, qde_residual(fn, q, tp));
      }
    }
    std::vector<int> labels;
    const int d = sector_shift(tp.m, theta);
    for (int j = 0; j < tp.m; ++j) labels.push_back(d - j);
    const SolutionFrame hyb = fundamental_frame(theta, r1, tp, sc, labels, r0);
    const SolutionFrame dir = series_frame(theta, r1, tp, sc, labels);
    for (int k = 0; k < tp.m; ++k) {
      worst_ode = std::max(worst_ode, frame_column_distance(hyb.columns[static_cast<size_t>(k)],
                                                            dir.columns[static_cast<size_t>(k)]));
    }
  }
  auto suite = [](double err, double tol) {
    return Json{{"pass", err <= tol}, {"max_error", json_number(err)}, {"tol", tol},
                {"margin", json_number(err > 0 ? tol / err : std::numeric_limits<double>::infinity())}};
  };
  Json rep;
  rep["torus_points"] = static_cast<int>(tps.size());
  rep["q_points"] = static_cast<int>(qs.size());
  rep["suites"] = {{"residue_vs_quadrature", suite(worst_res, res_tol)},
                   {"qde_residual", suite(worst_resid, resid_tol)},
                   {"series_vs_ode", suite(worst_ode, ode_tol)}};
  const bool pass = worst_res <= res_tol && worst_resid <= resid_tol && worst_ode <= ode_tol;
  rep["pass"] = pass;
  write_json(run, "qde_check.json", rep);
  std::cout << "qde-check: residue " << format_g17(worst_res) << ", residual " << format_g17(worst_resid)
            << ", series-vs-ode " << format_g17(worst_ode) << (pass ? "  PASS" : "  FAIL") << "\n";
  return pass ? 0 : 1;
}

// ---------------------------------------------------------------- shared path setup

struct Sorted {
  Collection base;
  SortResult sort;
};

Sorted sorted_beilinson(int m, double theta) {
  const Admissibility adm = is_admissible(theta, m);
  if (!adm.admissible) {
    throw Error(ErrorCode::InvalidArgument, "theta = " + format_g17(theta) + " is inadmissible (margin " +
                                                format_g17(adm.margin) + ")");
  }
  Sorted s;
  s.base = beilinson_collection(m);
  set_growth(s.base, beilinson_growth(m, theta));
  s.sort = sort_collection(s.base, theta);
  return s;
}

PathConfig path_config(const Json& c, const TorusParams& tp) {
  PathConfig pc;
  pc.m = tp.m;
  pc.tp = tp;
  pc.theta = need<double>(c, "theta");
  pc.r_min = opt<double>(c, "r_min", 5.0);
  pc.r_max = opt<double>(c, "r_max", 50.0);
  pc.samples = opt<int>(c, "samples", 256);
  pc.conv = conv_of(c);
  pc.series.precision = parse_precision(c["precision"].get<std::string>());
  pc.series.tol = opt<double>(c, "series_tol", 1e-12);
  pc.validate();
  return pc;
}

std::vector<std::string> labels_of(const Collection& c) {
  std::vector<std::string> l;
  for (const auto& o : c.objects) l.push_back(o.label);
  return l;
}

// ---------------------------------------------------------------- path-run

int cmd_path_run(const Flags& f) {
  const Run run = resolve(f, "path-run", {{"precision", "mp"}, {"samples", 256}});
  const TorusParams tp = torus_of(run.cfg);
  const PathConfig pc = path_config(run.cfg, tp);
  const Sorted s = sorted_beilinson(pc.m, pc.theta);
  const Collection& sc = s.sort.sorted;
  const ChargeProvider prov = collection_charges(sc, pc);
  const auto grid = log_grid(pc.r_min, pc.r_max, pc.samples);
  const PhaseTrace tr = phase_trace(prov, labels_of(sc), grid);
  const GapReport gap = gap_report(tr);

  Json summary;
  summary["m"] = pc.m;
  summary["theta"] = pc.theta;
  summary["sector_shift"] = sector_shift(pc.m, pc.theta);
  summary["initial_growth"] = beilinson_growth(pc.m, pc.theta);
  summary["mutations"] = steps_json(s.sort.steps);
  summary["inversions"] = s.sort.inversions;
  summary["sigma"] = s.sort.sigma;
  summary["sorted_collection"] = collection_json(sc);
  summary["warnings"] = sc.warnings;
  summary["grid_samples"] = static_cast<int>(tr.size());
  summary["refinement_points"] = tr.inserted;
  summary["r_star"] = gap.r_star ? Json(*gap.r_star) : Json(nullptr);
  double worst_margin = std::numeric_limits<double>::infinity();
  if (gap.index) {
    for (size_t k = *gap.index; k < gap.rows.size(); ++k) worst_margin = std::min(worst_margin, gap.rows[k].margin);
  }
  summary["gap_margin_beyond_r_star"] = json_number(gap.index ? worst_margin : 0.0);
  try {
    const GluingData g = gluing_data(tr, pc.r_max);
    summary["gluing"] = {{"r", g.r}, {"p", g.p}, {"shifted_phase", g.shifted_phase}, {"descriptor", g.descriptor}};
  } catch (const Error& e) {
    summary["gluing"] = {{"error", e.what()}};
  }
  Json est = Json::array();
  std::string est_csv = "r,e,f,re,im\n";
  for (size_t i = 0; i < tr.objects(); ++i) {
    for (size_t j = i + 1; j < tr.objects(); ++j) {
      const EstimatorResult er =
          quasi_convergence_estimator(tr, j, i, pc.m, pc.theta, s.sort.sigma[j], s.sort.sigma[i]);
      est.push_back({{"e", tr.labels[j]},
                     {"f", tr.labels[i]},
                     {"tail", complex_to_json(er.tail)},
                     {"predicted", complex_to_json(er.predicted)},
                     {"tail_error", er.tail_error}});
      for (size_t k = 0; k < tr.size(); ++k) {
        est_csv += format_g17(tr.r[k]) + "," + tr.labels[j] + "," + tr.labels[i] + "," +
                   format_g17(er.values[k].real()) + "," + format_g17(er.values[k].imag()) + "\n";
      }
    }
  }
  summary["estimator"] = est;
  const CVector st = s_tuple(tp, pc.conv);
  const SupportRatio sr = support_ratio(sc, tr, tp, st);
  summary["support_ratio_log_max"] = json_number(sr.log_c_max);
  std::string sup_csv = "r,log_c\n";
  for (size_t k = 0; k < tr.size(); ++k) sup_csv += format_g17(tr.r[k]) + "," + format_g17(sr.log_c[k]) + "\n";

  write_csv(run, "trace.csv", trace_csv(tr));
  write_csv(run, "estimator.csv", est_csv);
  write_csv(run, "support.csv", sup_csv);
  write_json(run, "summary.json", summary);
  std::cout << "path-run: " << s.sort.steps.size() << " mutation(s), R* = "
            << (gap.r_star ? format_g17(*gap.r_star) : std::string("none")) << "\n";
  return 0;
}

// ---------------------------------------------------------------- geometric-start

int cmd_geometric_start(const Flags& f) {
  const Run run = resolve(f, "geometric-start", {{"precision", "mp"}, {"samples", 256}, {"synthetic", false}});
  if (need<int>(run.cfg, "m") != 3) config_fail("m=3 only");
  const bool synthetic = opt<bool>(run.cfg, "synthetic", false);
  const TorusParams tp = synthetic && !run.cfg.contains("z") && !run.cfg.contains("s")
                             ? make_torus_params(3, {0.1, 0.37, -0.45})
                             : torus_of(run.cfg);
  const PathConfig pc = path_config(run.cfg, tp);
  const Sorted s = sorted_beilinson(3, pc.theta);
  const Collection& sc = s.sort.sorted;
  ChargeProvider prov;
  if (synthetic) {
    std::vector<double> beta;
    for (int j = 0; j < 3; ++j) beta.push_back(kPi * (0.5 + j));
    prov = linear_phase_model(s.sort.sigma, pc.theta, beta);
  } else {
    prov = collection_charges(sc, pc);
  }
  const auto grid = log_grid(pc.r_min, pc.r_max, pc.samples);
  PhaseTrace tr = phase_trace(prov, labels_of(sc), grid);
  const GeometricStartPlan plan = geometric_start_plan(s.sort.sigma, pc.theta, tr, prov);
  Json j = plan_json(plan);
  j["synthetic"] = synthetic;
  j["labels"] = tr.labels;
  write_json(run, "plan.json", j);
  write_csv(run, "plan_trace.csv", trace_csv(tr));
  std::cout << "geometric-start: delta = " << format_g17(plan.delta) << ", " << plan.violations.size()
            << " violation(s), " << plan.literal.violations.size() << " literal-constant issue(s)\n";
  return 0;
}

// ---------------------------------------------------------------- induce

FiniteGroupData group_of(const Run& run) {
  if (run.cfg.contains("group_file")) {
    fs::path p = need<std::string>(run.cfg, "group_file");
    if (p.is_relative()) p = run.cfg_dir / p;
    return load_group(p);
  }
  return bundled_group(need<std::string>(run.cfg, "group"));
}

int cmd_induce(const Flags& f) {
  const Run run = resolve(f, "induce", Json::object());
  const FiniteGroupData g = group_of(run);
  const int m = need<int>(run.cfg, "m");
  const int maxdeg = opt<int>(run.cfg, "maxdeg", m - 1);
  ClassFunction chi_v;
  for (const auto& v : need<Json>(run.cfg, "chi_v")) chi_v.push_back(complex_from_json(v, "chi_v"));
  if (static_cast<int>(chi_v.size()) != g.classes()) config_fail("chi_v needs one value per class");

  std::vector<int> id(static_cast<size_t>(g.classes()));
  for (int i = 0; i < g.classes(); ++i) id[static_cast<size_t>(i)] = i;
  std::vector<Block> blocks;
  if (run.cfg.contains("blocks")) {
    for (const auto& b : run.cfg["blocks"]) {
      Block bl;
      bl.label = need<std::string>(b, "label");
      bl.orbit_length = opt<int>(b, "orbit_length", 1);
      bl.lift_assumed = opt<bool>(b, "lift_assumed", true);
      const std::string st = opt<std::string>(b, "stabilizer", "G");
      if (st == "G") {
        bl.stabilizer = {g, id};
      } else {
        bl.stabilizer = {bundled_group(st), need<std::vector<int>>(b, "fusion")};
      }
      blocks.push_back(std::move(bl));
    }
  } else {
    for (int i = 0; i < m; ++i) blocks.push_back({i == 0 ? "O" : "O(" + std::to_string(i) + ")", 1, {g, id}, true});
  }
  const long long expected = opt<long long>(run.cfg, "expected_rank", static_cast<long long>(m) * g.irreps());

  const GHomReport rep = verify_g_sod_projective(g, chi_v, m, maxdeg);
  const auto objs = induced_collection(g, blocks);
  const RankReport rank = block_rank_check(blocks, expected);

  Json out;
  out["group"] = g.name;
  out["order"] = g.order;
  out["m"] = m;
  Json hom = Json::array();
  for (size_t d = 0; d < rep.hom.size(); ++d) hom.push_back({{"degree", static_cast<int>(d)}, {"hom0", rep.hom[d]}});
  out["hom0"] = hom;
  out["backward_homs"] = rep.backward;
  out["higher_ext"] = rep.higher_ext;
  Json list = Json::array();
  for (const auto& o : objs) {
    Json ind = Json::array();
    for (const cplx& v : o.induced) ind.push_back(complex_to_json(v));
    list.push_back({{"block", o.block},
                    {"irrep", o.irrep},
                    {"label", o.label},
                    {"lift_assumed", blocks[static_cast<size_t>(o.block)].lift_assumed},
                    {"induced_character", ind}});
  }
  out["induced_collection"] = list;
  out["rank"] = {{"total", rank.total}, {"expected", rank.expected}, {"match", rank.match}};
  out["violations"] = rep.violations;
  write_json(run, "induce.json", out);
  std::cout << "induce: " << objs.size() << " induced objects, rank " << rank.total << "/" << rank.expected << ", "
            << rep.violations.size() << " violation(s)\n";
  require_pattern(rep);
  return rank.match ? 0 : 1;
}

// ---------------------------------------------------------------- mutate

int cmd_mutate(const Flags& f) {
  const Run run = resolve(f, "mutate", {{"growth", "sector"}, {"precision", "mp"}});
  const int m = need<int>(run.cfg, "m");
  const double theta = need<double>(run.cfg, "theta");
  const Admissibility adm = is_admissible(theta, m);
  if (!adm.admissible) {
    throw Error(ErrorCode::InvalidArgument, "theta = " + format_g17(theta) + " is inadmissible (margin " +
                                                format_g17(adm.margin) + ")");
  }
  Collection c = beilinson_collection(m);
  const Json& gr = run.cfg["growth"];
  Json fits = Json::array();
  if (gr.is_array()) {
    set_growth(c, gr.get<std::vector<int>>());
  } else if (gr == "sector") {
    set_growth(c, beilinson_growth(m, theta));
  } else if (gr == "fit") {
    const TorusParams tp = torus_of(run.cfg);
    JacksonEvaluator ev(tp);
    const auto radii = log_grid(opt<double>(run.cfg, "fit_r_min", 20.0), opt<double>(run.cfg, "fit_r_max", 50.0),
                                opt<int>(run.cfg, "fit_samples", 128));
    std::vector<cplx> cs;
    for (const auto& o : c.objects) {
      const auto samples = solution_log_samples(ev, o.kclass, sector_shift(m, theta), theta, radii);
      const AsymptoticFit fit = asymptotic_fit(radii, samples, m, theta);
      cs.push_back(fit.c);
      fits.push_back({{"label", o.label}, {"c", complex_to_json(fit.c)}, {"nearest", fit.nearest_n},
                      {"rel_error", fit.rel_error}});
    }
    assign_growth(c, cs);
  } else {
    config_fail("growth must be \"sector\", \"fit\" or a list of indices");
  }
  const SortResult s = sort_collection(c, theta);
  const ExceptionalReport ex = verify_exceptional(s.sorted);
  Json out;
  out["m"] = m;
  out["theta"] = theta;
  out["admissibility_margin"] = adm.margin;
  out["initial_collection"] = collection_json(c);
  out["fits"] = fits;
  out["sorted_collection"] = collection_json(s.sorted);
  out["sigma"] = s.sigma;
  out["mutations"] = steps_json(s.steps);
  out["inversions"] = s.inversions;
  out["warnings"] = s.sorted.warnings;
  out["exceptional"] = {{"clean", ex.clean}, {"determinant", ex.determinant}, {"violations", ex.violations}};
  write_json(run, "collection.json", out);
  std::cout << "mutate: " << s.steps.size() << " mutation(s), |det| = " << std::llabs(ex.determinant) << "\n";
  return ex.clean ? 0 : 1;
}

int cmd_export_groups(const std::string& dir) {
  for (const auto& name : bundled_group_names()) {
    write_atomic(fs::path(dir) / (name + ".json"), dump_json(group_to_json(bundled_group(name))));
  }
  std::cout << "wrote " << bundled_group_names().size() << " group files to " << dir << "\n";
  return 0;
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::ConfigError ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

// Config resolution errors (including OmegaViolation from a bad z) exit with 2.
int with_config(const Flags& f, int (*cmd)(const Flags&)) {
  try {
    const Json raw = read_json_file(f.config);
    (void)raw;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return guarded([&] {
    try {
      return cmd(f);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::OmegaViolation || e.code() == ErrorCode::ConfigError) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
      }
      throw;
    }
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"eqstab: equivariant quantum cohomology stability-path laboratory"};
  app.require_subcommand(1);
  Flags flags;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", flags.config, "JSON config file")->required();
    sub->add_option("--out", flags.out, "output directory");
    sub->add_option("--s-convention", flags.s_convention, "half | direct")
        ->check(CLI::IsMember({"half", "direct"}));
    sub->add_option("--precision", flags.precision, "double | dd | mp")->check(CLI::IsMember({"double", "dd", "mp"}));
    sub->add_option("--seed", flags.seed, "seed for randomized suites");
  };
  struct Entry {
    const char* name;
    const char* help;
    int (*fn)(const Flags&);
  };
  const Entry entries[] = {
      {"qde-check", "residue, residual and series-vs-ODE suites", cmd_qde_check},
      {"path-run", "sort, trace phases, gap/gluing/estimator/support diagnostics", cmd_path_run},
      {"geometric-start", "m = 3 start-point plan", cmd_geometric_start},
      {"induce", "G-equivariant Hom multiplicities and induced collection", cmd_induce},
      {"mutate", "sort the Beilinson collection by mutations", cmd_mutate},
  };
  int rc = 0;
  for (const auto& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    add_common(sub);
    sub->callback([&, fn = e.fn] { rc = with_config(flags, fn); });
  }
  std::string group_dir = "data/groups";
  CLI::App* eg = app.add_subcommand("export-groups", "write the bundled character tables as JSON");
  eg->add_option("--out", group_dir, "directory");
  eg->callback([&] { rc = guarded([&] { return cmd_export_groups(group_dir); }); });
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return rc;
}
