#pragma once

// Arbitrary-precision evaluation of the residue series. Recessive solution
// combinations at large |q| are differences of terms that are e^{2 m |s|}
// times larger than the result, so the working precision is picked per point
// from a double-precision magnitude sweep.

#include <map>
#include <memory>
#include <mutex>

#include "eqstab/mp_complex.hpp"
#include "eqstab/qde.hpp"

namespace eqstab {

// S[J][I] = sum_r term(J, I, r), stored row-major as s[J * m + I].
struct SeriesTable {
  int m = 0;
  mpfr_prec_t bits = 0;
  int terms = 0;  // longest of the m series
  QPoint q;
  std::vector<mp::Complex> s;

  const mp::Complex& at(int J, int I) const { return s[static_cast<size_t>(J * m + I)]; }
};

struct PrecisionPlan {
  mpfr_prec_t bits = 0;
  std::vector<int> terms;  // per J
  double log_peak = 0.0;   // natural log of the largest term
  double log_floor = 0.0;  // smallest result magnitude resolved
};

class JacksonEvaluator {
 public:
  // weight_log_bound: natural-log allowance for the combination weights
  // |Ch_J|; negative picks a default covering degrees |n| <= 3m.
  explicit JacksonEvaluator(TorusParams tp, double weight_log_bound = -1.0, int extra_bits = 64);

  const TorusParams& params() const { return tp_; }
  PrecisionPlan plan(const QPoint& q) const;
  SeriesTable table(const QPoint& q) const;
  SeriesTable table(const QPoint& q, const PrecisionPlan& p) const;

  // v_I = sum_J w_J S[J][I] with w = Ch(k (x) O(-shift)) computed in MP.
  std::vector<mp::Complex> combine(const SeriesTable& t, const KClass& k, int shift) const;
  SolutionColumn column(const SeriesTable& t, const KClass& k, int shift) const;
  // int^T of the combination, as a logarithm.
  LogValue central_charge(const SeriesTable& t, const KClass& k, int shift) const;
  LogValue integral(const std::vector<mp::Complex>& v, mpfr_prec_t bits) const;
  // Phi_J restricted to the fixed points, rounded to double.
  CohClass fixed_point_solution(const SeriesTable& t, int J) const;

  static SolutionColumn to_column(const std::vector<mp::Complex>& v);

 private:
  struct Constants {
    mpfr_prec_t bits = 0;
    std::vector<mp::Complex> z;          // z_i
    std::vector<mp::Complex> b0_static;  // e^{i pi sum z} prod_{i != J} Gamma(z_i - z_J)
    std::vector<mp::Complex> loc;        // 1 / prod_{i != I}(z_i - z_I)
  };
  std::shared_ptr<const Constants> constants(mpfr_prec_t bits) const;

  TorusParams tp_;
  double weight_log_bound_;
  int extra_bits_;
  mutable std::mutex mu_;
  mutable std::map<mpfr_prec_t, std::shared_ptr<const Constants>> cache_;
};

}  // namespace eqstab
