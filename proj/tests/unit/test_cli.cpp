#include "cli_support.hpp"
#include "common.hpp"

using namespace eqstab;
using namespace eqstab::test;

namespace {

void write_file(const fs::path& p, const std::string& s) {
  std::ofstream out(p);
  out << s;
}

// every output file of a run, name -> bytes
std::map<std::string, std::string> outputs(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().filename() == "cli.log") continue;
    out[e.path().filename().string()] = slurp(e.path());
  }
  return out;
}

}  // namespace

TEST_CASE("qde-check passes on the m=2 config") {
  const auto d = scratch_dir("qde2");
  const auto r = run_cli("qde-check --config " + config("qde_check_m2.json") + " --out " + d.string(), d);
  CHECK(r.code == 0);
  const Json j = read_json_file(d / "qde_check.json");
  CHECK(j["pass"] == true);
  CHECK(j.contains("manifest_hash"));
}

TEST_CASE("Omega violation exits 2") {
  const auto d = scratch_dir("badz");
  const auto r = run_cli("qde-check --config " + config("qde_check_bad_z.json") + " --out " + d.string(), d);
  CHECK(r.code == 2);
  CHECK(r.output.find("OmegaViolation") != std::string::npos);
}

TEST_CASE("loosened tolerance keeps the pass set") {
  const auto d = scratch_dir("loose");
  Json c = read_json_file(config("qde_check_m2.json"));
  c["residual_tol"] = 1e-3;
  c["residue"]["tol"] = 1e-5;
  write_file(d / "loose.json", c.dump());
  const auto r = run_cli("qde-check --config " + (d / "loose.json").string() + " --out " + (d / "o").string(), d);
  CHECK(r.code == 0);
  const Json j = read_json_file(d / "o" / "qde_check.json");
  for (const auto& [k, v] : j["suites"].items()) CHECK(v["pass"] == true);
}

TEST_CASE("inadmissible angle exits 1") {
  const auto d = scratch_dir("inadm");
  const auto r = run_cli("path-run --config " + config("path_run_inadmissible.json") + " --out " + d.string(), d);
  CHECK(r.code == 1);
  CHECK(r.output.find("inadmissible") != std::string::npos);
}

TEST_CASE("geometric-start refuses m=4") {
  const auto d = scratch_dir("gs4");
  const auto r = run_cli("geometric-start --config " + config("geometric_start_m4.json") + " --out " + d.string(), d);
  CHECK(r.code == 2);
  CHECK(r.output.find("m=3 only") != std::string::npos);
}

TEST_CASE("malformed character table exits 2") {
  const auto d = scratch_dir("badgroup");
  Json g = read_json_file(std::string(EQSTAB_SOURCE_DIR) + "/data/groups/Z3.json");
  g["chartable"][1][1] = Json::array({1.0, 0.0});
  write_file(d / "bad.json", g.dump());
  Json c = read_json_file(config("induce_z3_p2.json"));
  c["group_file"] = (d / "bad.json").string();
  write_file(d / "cfg.json", c.dump());
  const auto r = run_cli("induce --config " + (d / "cfg.json").string() + " --out " + (d / "o").string(), d);
  CHECK(r.code == 2);
}

TEST_CASE("usage errors exit 2") {
  const auto d = scratch_dir("usage");
  CHECK(run_cli("qde-check", d).code == 2);
  CHECK(run_cli("qde-check --config " + (d / "missing.json").string(), d).code == 2);
  CHECK(run_cli("qde-check --config " + config("qde_check_m2.json") + " --precision quad", d).code == 2);
  CHECK(run_cli("frobnicate", d).code == 2);
}

TEST_CASE("induce outputs") {
  const auto d = scratch_dir("induce");
  CHECK(run_cli("induce --config " + config("induce_z3_p2.json") + " --out " + d.string(), d).code == 0);
  const Json j = read_json_file(d / "induce.json");
  CHECK(j["induced_collection"].size() == 9);
  CHECK(j["hom0"][1]["hom0"] == Json::parse("[[1,1,1],[1,1,1],[1,1,1]]"));
  const auto s = scratch_dir("induce_s3");
  CHECK(run_cli("induce --config " + config("induce_s3_p2.json") + " --out " + s.string(), s).code == 0);
  CHECK(read_json_file(s / "induce.json")["violations"].empty());
}

TEST_CASE("path-run outputs") {
  const auto d = scratch_dir("path2");
  CHECK(run_cli("path-run --config " + config("path_run_m2.json") + " --out " + d.string(), d).code == 0);
  const Json s = read_json_file(d / "summary.json");
  const std::string csv = slurp(d / "trace.csv");
  CHECK(csv.rfind("# manifest_hash=" + s["manifest_hash"].get<std::string>() + "\n", 0) == 0);
  const long rows = std::count(csv.begin(), csv.end(), '\n') - 2;
  CHECK(rows == 2 * s["grid_samples"].get<long>());
}

TEST_CASE("mutate reports one right mutation") {
  const auto d = scratch_dir("mutate");
  CHECK(run_cli("mutate --config " + config("mutate_m3.json") + " --out " + d.string(), d).code == 0);
  const Json j = read_json_file(d / "collection.json");
  REQUIRE(j["mutations"].size() == 1);
  CHECK(j["exceptional"]["clean"] == true);
}

TEST_CASE("every output file carries the manifest hash") {
  const auto d = scratch_dir("hash");
  CHECK(run_cli("path-run --config " + config("path_run_m2.json") + " --out " + d.string(), d).code == 0);
  const std::string h = read_json_file(d / "summary.json")["manifest_hash"];
  for (const auto& [name, bytes] : outputs(d)) {
    INFO(name);
    CHECK(bytes.find(h) != std::string::npos);
  }
}

TEST_CASE("reruns are byte identical") {
  const std::vector<std::pair<std::string, std::string>> runs{
      {"qde-check", "qde_check_m3.json"}, {"path-run", "path_run_m2.json"},
      {"geometric-start", "geometric_start_synthetic.json"}, {"induce", "induce_s3_p2.json"},
      {"mutate", "mutate_m3.json"}};
  for (const auto& [cmd, cfg] : runs) {
    const auto a = scratch_dir("det_a"), b = scratch_dir("det_b");
    CHECK(run_cli(cmd + " --config " + config(cfg) + " --out " + a.string() + " --seed 7", a).code == 0);
    CHECK(run_cli(cmd + " --config " + config(cfg) + " --out " + b.string() + " --seed 7", b).code == 0);
    INFO(cmd);
    CHECK(outputs(a) == outputs(b));
  }
}

TEST_CASE("seed drives the random torus points") {
  const auto d = scratch_dir("seed");
  Json c = read_json_file(config("qde_check_m3.json"));
  c.erase("z");
  c["random_z"] = {{"count", 2}};
  write_file(d / "rz.json", c.dump());
  auto hash = [&](int seed, const std::string& tag) {
    const auto o = d / tag;
    CHECK(run_cli("qde-check --config " + (d / "rz.json").string() + " --out " + o.string() + " --seed " +
                      std::to_string(seed), d).code == 0);
    return slurp(o / "qde_check.json");
  };
  const std::string a = hash(1, "a"), b = hash(1, "b"), c2 = hash(2, "c");
  CHECK(a == b);
  CHECK(a != c2);
}
