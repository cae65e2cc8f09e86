#pragma once

// Exceptional collections on P^{m-1} at the level of K-classes, mutations,
// and the inversion-sorting algorithm along an admissible ray.

#include <optional>
#include <string>
#include <vector>

#include "eqstab/rings.hpp"

namespace eqstab {

inline constexpr double kAdmissibleMargin = 1e-6;

struct ExcObject {
  KClass kclass;
  // coefficients over Phi^n for n = sol_lo .. sol_lo + size - 1 ([O(-n)] -> Phi^n)
  std::vector<long long> solcoef;
  std::string label;
  std::optional<int> growth;  // index n of zeta_m^n
};

struct MutationStep {
  int position = 0;
  char side = 'R';  // 'R' right, 'L' left
  long long chi = 0;
};

struct Collection {
  int m = 0;
  int sol_lo = 0;
  std::vector<ExcObject> objects;
  std::vector<MutationStep> log;
  std::vector<std::string> warnings;
};

// Solution coefficients of a K-class over Phi^{sol_lo ..}; the class must be
// untwisted and inside the window.
std::vector<long long> solution_coefficients(const KClass& k, int sol_lo, int count);

// O, O(1), ..., O(m-1)
Collection beilinson_collection(int m);

// G_ab = binom(b - a + m - 1, m - 1) for the given line-bundle offsets.
std::vector<std::vector<long long>> euler_gram(int m, const std::vector<int>& offsets);

Collection right_mutation(const Collection& c, int j);
Collection left_mutation(const Collection& c, int j);

struct Admissibility {
  bool admissible = false;
  double margin = 0.0;
};
// Distinct real parts and distinct imaginary parts of e^{-2 pi i theta} zeta_m^n;
// margins below 1e-6 count as inadmissible.
Admissibility is_admissible(double theta, int m);

// e^{-2 pi i theta} zeta_m^n
cplx growth_direction(int m, int n, double theta);

// sigma(i) = nearest root index of each fitted coefficient; throws
// GrowthCollision unless sigma is a bijection.
std::vector<int> assign_growth(Collection& c, const std::vector<cplx>& fitted);
// Assigns the labels directly (already known directions).
void set_growth(Collection& c, const std::vector<int>& sigma);

int inversion_count(const Collection& c, double theta);

struct SortResult {
  Collection sorted;
  std::vector<int> sigma;
  std::vector<MutationStep> steps;
  std::vector<int> inversions;  // before the first step and after every step
};
// Throws NonTermination after m^2 iterations or if an inversion count fails to drop.
SortResult sort_collection(const Collection& c, double theta);

struct ExceptionalReport {
  bool clean = true;
  std::vector<std::string> violations;
  long long determinant = 0;
  bool square = true;
};
ExceptionalReport verify_exceptional(const Collection& c);

// Integer matrix of line-bundle coefficients (rows = objects) over the degree
// range spanned by the collection.
std::vector<std::vector<long long>> beilinson_matrix(const Collection& c, int* lo_degree = nullptr);
long long integer_determinant(std::vector<std::vector<long long>> a);

}  // namespace eqstab
