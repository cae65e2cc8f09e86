#pragma once

// Equivariant cohomology and K-theory of P^{m-1} at a numeric parameter point.
// Cohomology classes live in the fixed-point basis: value J is the restriction
// to the J-th torus fixed point.

#include <span>
#include <utility>
#include <vector>

#include "eqstab/numeric.hpp"

namespace eqstab {

inline constexpr double kOmegaTolerance = 1e-9;
inline constexpr double kVandermondeCondLimit = 1e12;

struct TorusParams {
  int m = 0;
  CVector z;
  double margin = 0.0;  // min over i != j of dist(z_i - z_j, Z)
};

// Throws OmegaViolation / InvalidArgument / DimensionMismatch.
TorusParams make_torus_params(int m, const CVector& z);

enum class SConvention { Half, Direct };

// Maps a stability tuple s to the numeric z-point: z = s/2 (half) or z = s.
CVector z_from_s(std::span<const cplx> s, SConvention conv);

struct CohClass {
  CVector values;

  size_t size() const { return values.size(); }
  cplx operator[](size_t j) const { return values[j]; }
};

CohClass coh_unit(const TorusParams& tp);
CohClass coh_from_poly(std::span<const cplx> coeffs, const TorusParams& tp);
// Throws IllConditioned when the Vandermonde condition number exceeds 1e12.
CVector coh_to_poly(const CohClass& c, const TorusParams& tp);
double vandermonde_condition(const TorusParams& tp);

CohClass coh_mul(const CohClass& a, const CohClass& b);
CohClass coh_add(const CohClass& a, const CohClass& b);
CohClass coh_scale(const CohClass& a, cplx s);

// 1 / prod_{i != J}(z_i - z_J), the localization weight of pt_J.
CVector localization_weights(const TorusParams& tp);
cplx integrate(const CohClass& c, const TorusParams& tp);
// Same integral computed from polynomial coefficients via complete homogeneous
// symmetric polynomials: int x^k = (-1)^{m-1} h_{k-m+1}(z).
cplx integrate_poly(std::span<const cplx> coeffs, const TorusParams& tp);
CVector complete_homogeneous(const CVector& z, int max_degree);
CVector elementary_symmetric(const CVector& z);  // e_0..e_m

// Equivariant K-class sum_k c_k [O(offset + k)] (x) 1^twist.
class KClass {
 public:
  KClass() = default;
  KClass(int m, int offset, std::vector<long long> coeffs, std::vector<int> twist = {});

  static KClass line(int m, int n);  // O(n)
  static KClass zero(int m);

  int m() const { return m_; }
  int offset() const { return offset_; }
  const std::vector<long long>& coeffs() const { return coeffs_; }
  const std::vector<int>& twist() const { return twist_; }
  // coefficient of O(n)
  long long coefficient(int n) const;
  bool is_zero() const;

  KClass twisted(std::span<const int> w) const;
  // (x) O(d): shifts every line bundle degree by d.
  KClass tensor_line(int d) const;
  // Drops leading/trailing zero coefficients (zero class keeps offset 0).
  KClass trimmed() const;

  friend KClass operator+(const KClass& a, const KClass& b);
  friend KClass operator-(const KClass& a, const KClass& b);
  friend KClass operator*(long long s, const KClass& a);
  friend bool operator==(const KClass& a, const KClass& b);

 private:
  int m_ = 0;
  int offset_ = 0;
  std::vector<long long> coeffs_;
  std::vector<int> twist_;  // size m
};

CohClass chern_character(const KClass& k, const TorusParams& tp);
// exp(2 pi i <w, z>)
cplx twist_character(std::span<const int> w, const TorusParams& tp);

// chi^T via the K-theoretic fixed-point formula.
cplx euler_pairing(const KClass& a, const KClass& b, const TorusParams& tp);
// binom(d + m - 1, m - 1) as a polynomial in d.
long long binom_poly(long long d, int m);
// Non-equivariant limit of euler_pairing (twists ignored).
long long euler_pairing_limit(const KClass& a, const KClass& b);

// Laurent polynomial in T_1..T_m: terms (exponent vector, coefficient).
struct LaurentPoly {
  std::vector<std::pair<std::vector<int>, cplx>> terms;
};

// Ring map T_i -> exp(i pi s_i).
cplx ev_k(const LaurentPoly& p, std::span<const cplx> s);

// sum_i |exp(i pi k_i . s)| * ||alpha_i||_2 over the pieces T^{k_i} alpha_i;
// for a single KClass the twist plays the role of k.
double knorm(const KClass& a, std::span<const cplx> s);
double knorm(const std::vector<std::pair<std::vector<int>, KClass>>& pieces, std::span<const cplx> s);

}  // namespace eqstab
