#include "eqstab/jackson_mp.hpp"

#include <algorithm>
#include <cmath>

#include "eqstab/error.hpp"
#include "eqstab/gamma.hpp"

namespace eqstab {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

mpfr_prec_t round_bits(double bits) {
  const long b = static_cast<long>(std::ceil(std::max(bits, 64.0) / 64.0)) * 64;
  return static_cast<mpfr_prec_t>(b);
}

// i * a
mp::Complex times_i(const mp::Complex& a) {
  mp::Complex out(a.prec());
  mpfr_neg(out.re.get(), a.im.get(), MPFR_RNDN);
  mpfr_set(out.im.get(), a.re.get(), MPFR_RNDN);
  return out;
}

// exp(2 pi i c) for MP c
mp::Complex exp_2pi_i(const mp::Complex& c) {
  mp::Complex t = times_i(c);
  t *= 2.0;
  return mp::exp(mp::pi_times(t));
}

}  // namespace

JacksonEvaluator::JacksonEvaluator(TorusParams tp, double weight_log_bound, int extra_bits)
    : tp_(std::move(tp)), weight_log_bound_(weight_log_bound), extra_bits_(extra_bits) {
  if (weight_log_bound_ < 0.0) {
    double im = 0.0;
    for (const cplx& z : tp_.z) im = std::max(im, std::abs(z.imag()));
    weight_log_bound_ = kTwoPi * 4.0 * tp_.m * im + 12.0;
  }
}

PrecisionPlan JacksonEvaluator::plan(const QPoint& q) const {
  const int m = tp_.m;
  const cplx L = q.log_q - kI * kPi * static_cast<double>(m);
  cplx sz = 0.0;
  for (const cplx& z : tp_.z) sz += z;
  const double abs_s = std::exp(q.log_q.real() / m);
  double log_loc = 0.0;
  {
    const CVector loc = localization_weights(tp_);
    for (const cplx& w : loc) log_loc = std::max(log_loc, std::log(std::abs(w)));
  }

  PrecisionPlan p;
  p.log_floor = -static_cast<double>(m) * abs_s - weight_log_bound_ - 20.0;
  p.log_peak = -std::numeric_limits<double>::infinity();
  p.terms.assign(static_cast<size_t>(m), 0);
  const double guard = kLn2 * static_cast<double>(extra_bits_ + 16);
  const int hard_cap = 200000;
  for (int J = 0; J < m; ++J) {
    const cplx zj = tp_.z[static_cast<size_t>(J)];
    double lb = (kI * kPi * sz + zj * L).real();
    for (int i = 0; i < m; ++i) {
      if (i != J) lb += log_gamma(tp_.z[static_cast<size_t>(i)] - zj).real();
    }
    int r = 0;
    for (;; ++r) {
      const double rr = static_cast<double>(r);
      double lw = 0.0;
      double lden = std::log(rr + 1.0);
      for (int i = 0; i < m; ++i) {
        const cplx f = tp_.z[static_cast<size_t>(i)] - zj - rr;
        lw += std::log(std::max(1.0, std::abs(f)));
        if (i != J) lden += std::log(std::abs(f - 1.0));
      }
      const double lt = lb + lw;
      p.log_peak = std::max(p.log_peak, lt);
      const double lratio = L.real() - lden;
      if (r >= 2 && lratio < -kLn2 && lt < p.log_floor - guard) break;
      if (r > hard_cap) throw Error(ErrorCode::NoConvergence, "residue series term count exceeds cap");
      lb += lratio;
    }
    p.terms[static_cast<size_t>(J)] = r + 1;
  }
  const int tmax = *std::max_element(p.terms.begin(), p.terms.end());
  const double span = p.log_peak + weight_log_bound_ + log_loc - p.log_floor;
  p.bits = round_bits(span / kLn2 + extra_bits_ + std::log2(static_cast<double>(tmax * m) + 1.0) + 53.0);
  return p;
}

std::shared_ptr<const JacksonEvaluator::Constants> JacksonEvaluator::constants(mpfr_prec_t bits) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(bits);
    if (it != cache_.end()) return it->second;
  }
  const int m = tp_.m;
  auto c = std::make_shared<Constants>();
  c->bits = bits;
  for (const cplx& z : tp_.z) c->z.emplace_back(z, bits);
  mp::Complex sz(bits);
  for (const auto& z : c->z) sz += z;
  const mp::Complex pre = mp::exp(mp::pi_times(times_i(sz)));
  const mp::BernoulliTable table(bits, mp::bernoulli_terms_for(bits));
  for (int J = 0; J < m; ++J) {
    mp::Complex b = pre;
    mp::Complex den(cplx{1.0, 0.0}, bits);
    for (int i = 0; i < m; ++i) {
      if (i == J) continue;
      const mp::Complex d = c->z[static_cast<size_t>(i)] - c->z[static_cast<size_t>(J)];
      b *= mp::gamma(d, table);
      den *= d;
    }
    c->b0_static.push_back(std::move(b));
    // den here is prod_{i != J}(z_i - z_J)
    c->loc.push_back(mp::reciprocal(den));
  }
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = cache_.emplace(bits, std::move(c));
  (void)inserted;
  return it->second;
}

SeriesTable JacksonEvaluator::table(const QPoint& q) const { return table(q, plan(q)); }

SeriesTable JacksonEvaluator::table(const QPoint& q, const PrecisionPlan& p) const {
  const int m = tp_.m;
  const mpfr_prec_t bits = p.bits;
  const auto c = constants(bits);

  SeriesTable t;
  t.m = m;
  t.bits = bits;
  t.q = q;
  t.terms = *std::max_element(p.terms.begin(), p.terms.end());
  t.s.reserve(static_cast<size_t>(m * m));
  for (int k = 0; k < m * m; ++k) t.s.emplace_back(bits);

  // L = log q - i pi m
  mp::Complex L(q.log_q, bits);
  {
    mp::Real pim(bits);
    mpfr_const_pi(pim.get(), MPFR_RNDN);
    mpfr_mul_si(pim.get(), pim.get(), m, MPFR_RNDN);
    mpfr_sub(L.im.get(), L.im.get(), pim.get(), MPFR_RNDN);
  }
  mp::Complex ratio_num = mp::exp(L);
  mpfr_neg(ratio_num.re.get(), ratio_num.re.get(), MPFR_RNDN);
  mpfr_neg(ratio_num.im.get(), ratio_num.im.get(), MPFR_RNDN);

  std::vector<mp::Complex> f, d, prefix, suffix;
  for (int i = 0; i < m; ++i) {
    f.emplace_back(bits);
    d.emplace_back(bits);
  }
  for (int i = 0; i <= m; ++i) {
    prefix.emplace_back(bits);
    suffix.emplace_back(bits);
  }
  mp::Complex tmp(bits), w(bits), den(bits), fm1(bits);

  for (int J = 0; J < m; ++J) {
    const size_t uj = static_cast<size_t>(J);
    mp::Complex b = c->b0_static[uj] * mp::exp(c->z[uj] * L);
    for (int i = 0; i < m; ++i) d[static_cast<size_t>(i)] = c->z[static_cast<size_t>(i)] - c->z[uj];
    const int nterms = p.terms[uj];
    for (int r = 0; r < nterms; ++r) {
      for (int i = 0; i < m; ++i) {
        const size_t ui = static_cast<size_t>(i);
        mpfr_sub_ui(f[ui].re.get(), d[ui].re.get(), static_cast<unsigned long>(r), MPFR_RNDN);
        mpfr_set(f[ui].im.get(), d[ui].im.get(), MPFR_RNDN);
      }
      // W_I = prod_{i != I} f_i via prefix and suffix products
      mpfr_set_ui(prefix[0].re.get(), 1, MPFR_RNDN);
      mpfr_set_ui(prefix[0].im.get(), 0, MPFR_RNDN);
      for (int i = 0; i < m; ++i) mp::mul_into(prefix[static_cast<size_t>(i + 1)], prefix[static_cast<size_t>(i)], f[static_cast<size_t>(i)]);
      mpfr_set_ui(suffix[static_cast<size_t>(m)].re.get(), 1, MPFR_RNDN);
      mpfr_set_ui(suffix[static_cast<size_t>(m)].im.get(), 0, MPFR_RNDN);
      for (int i = m - 1; i >= 0; --i) mp::mul_into(suffix[static_cast<size_t>(i)], suffix[static_cast<size_t>(i + 1)], f[static_cast<size_t>(i)]);
      for (int I = 0; I < m; ++I) {
        const size_t uI = static_cast<size_t>(I);
        mp::mul_into(w, prefix[uI], suffix[uI + 1]);
        mp::fma_into(t.s[uj * static_cast<size_t>(m) + uI], b, w, tmp);
      }
      // b <- b * (-e^L) / ((r+1) prod_{i != J}(f_i - 1))
      mpfr_set_ui(den.re.get(), static_cast<unsigned long>(r + 1), MPFR_RNDN);
      mpfr_set_ui(den.im.get(), 0, MPFR_RNDN);
      for (int i = 0; i < m; ++i) {
        if (i == J) continue;
        const size_t ui = static_cast<size_t>(i);
        mpfr_sub_ui(fm1.re.get(), f[ui].re.get(), 1, MPFR_RNDN);
        mpfr_set(fm1.im.get(), f[ui].im.get(), MPFR_RNDN);
        mp::mul_into(tmp, den, fm1);
        std::swap(den, tmp);
      }
      mp::mul_into(tmp, b, ratio_num);
      b = tmp / den;
    }
  }
  return t;
}

std::vector<mp::Complex> JacksonEvaluator::combine(const SeriesTable& t, const KClass& k, int shift) const {
  if (k.m() != tp_.m) throw Error(ErrorCode::DimensionMismatch, "KClass m differs from torus");
  const int m = tp_.m;
  const mpfr_prec_t bits = t.bits;
  const auto c = constants(bits);
  // twist character exp(2 pi i <w, z>)
  mp::Complex wz(bits);
  for (int i = 0; i < m; ++i) {
    const int wi = k.twist()[static_cast<size_t>(i)];
    if (wi != 0) wz += c->z[static_cast<size_t>(i)] * static_cast<double>(wi);
  }
  const mp::Complex tw = exp_2pi_i(wz);

  std::vector<mp::Complex> v;
  for (int I = 0; I < m; ++I) v.emplace_back(bits);
  mp::Complex tmp(bits);
  for (int J = 0; J < m; ++J) {
    mp::Complex wJ(bits);
    for (size_t s = 0; s < k.coeffs().size(); ++s) {
      const long long coef = k.coeffs()[s];
      if (coef == 0) continue;
      const double n = static_cast<double>(k.offset() + static_cast<int>(s) - shift);
      // O(n) at pt_J: exp(-2 pi i n z_J)
      mp::Complex e = exp_2pi_i(c->z[static_cast<size_t>(J)] * (-n));
      e *= static_cast<double>(coef);
      wJ += e;
    }
    if (wJ.is_zero()) continue;
    wJ *= tw;
    for (int I = 0; I < m; ++I) mp::fma_into(v[static_cast<size_t>(I)], wJ, t.at(J, I), tmp);
  }
  return v;
}

SolutionColumn JacksonEvaluator::to_column(const std::vector<mp::Complex>& v) {
  SolutionColumn col;
  col.direction.values.assign(v.size(), 0.0);
  size_t best = 0;
  double best_log = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < v.size(); ++i) {
    const LogValue l = mp::to_log(v[i]);
    if (!l.is_zero() && l.log_abs() > best_log) {
      best_log = l.log_abs();
      best = i;
    }
  }
  if (std::isinf(best_log)) {
    col.logmag = {-std::numeric_limits<double>::infinity(), 0.0};
    return col;
  }
  col.logmag = mp::to_log(v[best]).log;
  for (size_t i = 0; i < v.size(); ++i) col.direction.values[i] = mp::to_cplx(v[i] / v[best]);
  col.direction.values[best] = 1.0;
  return col;
}

SolutionColumn JacksonEvaluator::column(const SeriesTable& t, const KClass& k, int shift) const {
  return to_column(combine(t, k, shift));
}

LogValue JacksonEvaluator::integral(const std::vector<mp::Complex>& v, mpfr_prec_t bits) const {
  const auto c = constants(bits);
  mp::Complex acc(bits), tmp(bits);
  for (int I = 0; I < tp_.m; ++I) mp::fma_into(acc, v[static_cast<size_t>(I)], c->loc[static_cast<size_t>(I)], tmp);
  return mp::to_log(acc);
}

LogValue JacksonEvaluator::central_charge(const SeriesTable& t, const KClass& k, int shift) const {
  return integral(combine(t, k, shift), t.bits);
}

CohClass JacksonEvaluator::fixed_point_solution(const SeriesTable& t, int J) const {
  if (J < 0 || J >= tp_.m) throw Error(ErrorCode::IndexOutOfRange, "fixed-point index out of range");
  CohClass out{CVector(static_cast<size_t>(tp_.m))};
  for (int I = 0; I < tp_.m; ++I) out.values[static_cast<size_t>(I)] = mp::to_cplx(t.at(J, I));
  return out;
}

}  // namespace eqstab
