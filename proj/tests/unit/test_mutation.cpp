#include "common.hpp"
#include "eqstab/error.hpp"
#include "eqstab/kernels.hpp"
#include "eqstab/mutation.hpp"
#include "eqstab/path.hpp"

using namespace eqstab;

TEST_CASE("Beilinson collection and Gram matrix") {
  const Collection c = beilinson_collection(3);
  REQUIRE(c.objects.size() == 3);
  CHECK(c.sol_lo == -2);
  const auto g = euler_gram(3, {0, 1, 2});
  CHECK(g[0] == std::vector<long long>{1, 3, 6});
  CHECK(g[1] == std::vector<long long>{0, 1, 3});
  CHECK(g[2] == std::vector<long long>{0, 0, 1});
  CHECK(std::llabs(verify_exceptional(c).determinant) == 1);
}

TEST_CASE("right mutation of (O, O(1)) is O - 3 O(1)") {
  const Collection c = beilinson_collection(3);
  const Collection r = right_mutation(c, 0);
  CHECK(r.objects[0].label == "O(1)");
  CHECK(r.objects[1].kclass == KClass::line(3, 0) - 3 * KClass::line(3, 1));
  REQUIRE(r.log.size() == 1);
  CHECK(r.log[0].chi == 3);
  CHECK(r.log[0].side == 'R');
}

TEST_CASE("left then right mutation is the identity on K-classes") {
  const Collection c = beilinson_collection(3);
  for (int j = 0; j < 2; ++j) {
    const Collection back = right_mutation(left_mutation(c, j), j);
    for (size_t i = 0; i < 3; ++i) CHECK(back.objects[i].kclass == c.objects[i].kclass);
  }
}

TEST_CASE("mutations keep the collection exceptional") {
  Collection c = beilinson_collection(4);
  std::mt19937_64 rng(3);
  for (int step = 0; step < 12; ++step) {
    const int j = static_cast<int>(rng() % 3);
    c = (rng() % 2) ? right_mutation(c, j) : left_mutation(c, j);
    const ExceptionalReport rep = verify_exceptional(c);
    CHECK(rep.clean);
    CHECK(std::llabs(rep.determinant) == 1);
  }
}

TEST_CASE("mutation position is checked") {
  CHECK_THROWS_AS(right_mutation(beilinson_collection(3), 2), Error);
}

TEST_CASE("sorting at theta = 0.05") {
  Collection c = beilinson_collection(3);
  set_growth(c, beilinson_growth(3, 0.05));
  const SortResult s = sort_collection(c, 0.05);
  REQUIRE(s.steps.size() == 1);
  CHECK(s.steps[0].side == 'R');
  CHECK(s.steps[0].position == 0);
  CHECK(s.sorted.objects[1].kclass == KClass::line(3, 0) - 3 * KClass::line(3, 1));
  CHECK(s.sigma == std::vector<int>{2, 0, 1});
  CHECK(inversion_count(s.sorted, 0.05) == 0);
  for (size_t k = 1; k < s.inversions.size(); ++k) CHECK(s.inversions[k] < s.inversions[k - 1]);
  CHECK(std::llabs(verify_exceptional(s.sorted).determinant) == 1);
  for (size_t i = 0; i + 1 < 3; ++i)
    CHECK(growth_direction(3, s.sigma[i], 0.05).imag() < growth_direction(3, s.sigma[i + 1], 0.05).imag());
}

TEST_CASE("admissibility") {
  CHECK_FALSE(is_admissible(0.0, 3).admissible);
  CHECK(is_admissible(0.05, 3).admissible);
  CHECK_FALSE(is_admissible(0.25, 2).admissible);
}

TEST_CASE("growth assignment") {
  Collection c = beilinson_collection(3);
  std::vector<cplx> fitted{root_of_unity(3, 0) * 1.001, root_of_unity(3, 2), root_of_unity(3, 1) * 0.99};
  CHECK(assign_growth(c, fitted) == std::vector<int>{0, 2, 1});
  Collection d = beilinson_collection(3);
  std::vector<cplx> clash{1.0, 1.0, root_of_unity(3, 1)};
  CHECK_THROWS_AS(assign_growth(d, clash), Error);
}

TEST_CASE("integer determinant") {
  CHECK(integer_determinant({{2, 1}, {7, 4}}) == 1);
  CHECK(integer_determinant({{1, 2, 3}, {4, 5, 6}, {7, 8, 10}}) == -3);
  CHECK(integer_determinant({{0, 1}, {1, 0}}) == -1);
}

TEST_CASE("theta sweep over admissible angles") {
  for (int m = 2; m <= 5; ++m) {
    const auto thetas = admissible_thetas(m, 100);
    REQUIRE(thetas.size() == 100);
    const auto rows = theta_sweep(m, thetas);
    for (const auto& row : rows) {
      CHECK(row.admissible);
      CHECK(row.error.empty());
      CHECK(row.strictly_sorted);
      CHECK(row.mutations <= m * (m - 1) / 2);
      CHECK(row.mutations == row.initial_inversions);
      CHECK(std::llabs(row.determinant) == 1);
    }
  }
}
