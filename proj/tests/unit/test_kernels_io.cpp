#include "common.hpp"
#include "eqstab/error.hpp"
#include "eqstab/io.hpp"
#include "eqstab/kernels.hpp"
#include "eqstab/path.hpp"

#include <fstream>

using namespace eqstab;

TEST_CASE("charge grid: OpenMP equals serial") {
  const auto tp = make_torus_params(3, {0.1, 0.37, -0.45});
  JacksonEvaluator ev(tp);
  std::vector<KClass> ks{KClass::line(3, 1), KClass::line(3, 0) - 3 * KClass::line(3, 1), KClass::line(3, 2)};
  const auto radii = log_grid(5.0, 30.0, 12);
  const ChargeGrid a = charge_grid(ev, ks, 3, 0.05, radii);
  const ChargeGrid b = charge_grid_serial(ev, ks, 3, 0.05, radii);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < ks.size(); ++j) CHECK(a[i][j].log == b[i][j].log);
}

TEST_CASE("theta sweep: OpenMP equals serial") {
  const auto thetas = admissible_thetas(4, 50);
  const auto a = theta_sweep(4, thetas);
  const auto b = theta_sweep_serial(4, thetas);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].theta == b[i].theta);
    CHECK(a[i].mutations == b[i].mutations);
    CHECK(a[i].determinant == b[i].determinant);
  }
}

TEST_CASE("admissible angles are admissible and distinct") {
  const auto t = admissible_thetas(3, 100);
  for (size_t i = 0; i < t.size(); ++i) {
    CHECK(is_admissible(t[i], 3).admissible);
    if (i > 0) CHECK(t[i] != t[i - 1]);
  }
}

TEST_CASE("number formatting") {
  CHECK(format_g17(0.1) == "0.10000000000000001");
  CHECK(format_g17(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_g17(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("FNV-1a reference values") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(hex64(0xabcULL) == "0000000000000abc");
}

TEST_CASE("manifest hash ignores key order") {
  const Json a = Json::parse(R"({"m": 3, "theta": 0.05})");
  const Json b = Json::parse(R"({"theta": 0.05, "m": 3})");
  CHECK(manifest_hash(a) == manifest_hash(b));
  CHECK(manifest_hash(a) != manifest_hash(Json::parse(R"({"m": 2, "theta": 0.05})")));
}

TEST_CASE("json helpers") {
  CHECK(complex_from_json(Json::parse("[1, 2]"), "x") == cplx(1, 2));
  CHECK(complex_from_json(Json(0.5), "x") == cplx(0.5));
  CHECK_THROWS_AS(complex_from_json(Json("a"), "x"), Error);
  const std::string s = dump_json(Json{{"v", json_number(std::nan(""))}});
  CHECK(s.find("\"nan\"") != std::string::npos);
  CHECK(s.back() == '\n');
}

TEST_CASE("atomic write and read back") {
  const auto dir = std::filesystem::temp_directory_path() / "eqstab_io_test";
  std::filesystem::create_directories(dir);
  const auto p = dir / "x.json";
  write_atomic(p, "{\"a\": 1}\n");
  CHECK(read_json_file(p)["a"] == 1);
  CHECK_THROWS_AS(read_json_file(dir / "missing.json"), Error);
  std::filesystem::remove_all(dir);
}
