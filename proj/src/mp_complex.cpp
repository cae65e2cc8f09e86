#include "eqstab/mp_complex.hpp"

#include <cmath>
#include <algorithm>
#include <climits>
#include <utility>
#include <cstring>

namespace eqstab::mp {

// ---- Real ----

Real::Real(mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
}

Real::Real(double v, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_d(v_, v, MPFR_RNDN);
}

Real::Real(const Real& other) {
  mpfr_init2(v_, other.prec());
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

// Moves steal the limb pointer; the source is left dead and only destroyed.
Real::Real(Real&& other) noexcept {
  std::memcpy(static_cast<void*>(v_), static_cast<const void*>(other.v_), sizeof(mpfr_t));
  live_ = other.live_;
  other.live_ = false;
}

Real& Real::operator=(const Real& other) {
  if (this == &other) return *this;
  if (!live_) {
    mpfr_init2(v_, other.prec());
    live_ = true;
  } else if (prec() != other.prec()) {
    mpfr_set_prec(v_, other.prec());
  }
  mpfr_set(v_, other.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this == &other) return *this;
  if (live_) mpfr_clear(v_);
  std::memcpy(static_cast<void*>(v_), static_cast<const void*>(other.v_), sizeof(mpfr_t));
  live_ = other.live_;
  other.live_ = false;
  return *this;
}

Real::~Real() {
  if (live_) mpfr_clear(v_);
}

// ---- Complex ----

Complex& Complex::operator+=(const Complex& b) {
  mpfr_add(re.get(), re.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(im.get(), im.get(), b.im.get(), MPFR_RNDN);
  return *this;
}

Complex& Complex::operator-=(const Complex& b) {
  mpfr_sub(re.get(), re.get(), b.re.get(), MPFR_RNDN);
  mpfr_sub(im.get(), im.get(), b.im.get(), MPFR_RNDN);
  return *this;
}

Complex& Complex::operator*=(const Complex& b) {
  Complex out(prec());
  mul_into(out, *this, b);
  *this = std::move(out);
  return *this;
}

Complex& Complex::operator*=(double b) {
  mpfr_mul_d(re.get(), re.get(), b, MPFR_RNDN);
  mpfr_mul_d(im.get(), im.get(), b, MPFR_RNDN);
  return *this;
}

void mul_into(Complex& out, const Complex& a, const Complex& b) {
  mpfr_fmms(out.re.get(), a.re.get(), b.re.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_fmma(out.im.get(), a.re.get(), b.im.get(), a.im.get(), b.re.get(), MPFR_RNDN);
}

void fma_into(Complex& acc, const Complex& a, const Complex& b, Complex& tmp) {
  mul_into(tmp, a, b);
  acc += tmp;
}

Complex operator+(const Complex& a, const Complex& b) {
  Complex out(a);
  out += b;
  return out;
}

Complex operator-(const Complex& a, const Complex& b) {
  Complex out(a);
  out -= b;
  return out;
}

Complex operator*(const Complex& a, const Complex& b) {
  Complex out(a.prec());
  mul_into(out, a, b);
  return out;
}

Complex operator*(const Complex& a, double b) {
  Complex out(a);
  out *= b;
  return out;
}

Complex operator/(const Complex& a, const Complex& b) {
  const mpfr_prec_t p = a.prec();
  Real den(p);
  mpfr_fmma(den.get(), b.re.get(), b.re.get(), b.im.get(), b.im.get(), MPFR_RNDN);
  Complex out(p);
  mpfr_fmma(out.re.get(), a.re.get(), b.re.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_fmms(out.im.get(), a.im.get(), b.re.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_div(out.re.get(), out.re.get(), den.get(), MPFR_RNDN);
  mpfr_div(out.im.get(), out.im.get(), den.get(), MPFR_RNDN);
  return out;
}

Complex reciprocal(const Complex& a) {
  Complex one(cplx{1.0, 0.0}, a.prec());
  return one / a;
}

Complex exp(const Complex& a) {
  const mpfr_prec_t p = a.prec();
  Real mag(p), s(p), c(p);
  mpfr_exp(mag.get(), a.re.get(), MPFR_RNDN);
  mpfr_sin_cos(s.get(), c.get(), a.im.get(), MPFR_RNDN);
  Complex out(p);
  mpfr_mul(out.re.get(), mag.get(), c.get(), MPFR_RNDN);
  mpfr_mul(out.im.get(), mag.get(), s.get(), MPFR_RNDN);
  return out;
}

Complex log(const Complex& a) {
  const mpfr_prec_t p = a.prec();
  Complex out(p);
  mpfr_hypot(out.re.get(), a.re.get(), a.im.get(), MPFR_RNDN);
  mpfr_log(out.re.get(), out.re.get(), MPFR_RNDN);
  mpfr_atan2(out.im.get(), a.im.get(), a.re.get(), MPFR_RNDN);
  return out;
}

Complex pi_times(const Complex& a) {
  const mpfr_prec_t p = a.prec();
  Real pi(p);
  mpfr_const_pi(pi.get(), MPFR_RNDN);
  Complex out(p);
  mpfr_mul(out.re.get(), a.re.get(), pi.get(), MPFR_RNDN);
  mpfr_mul(out.im.get(), a.im.get(), pi.get(), MPFR_RNDN);
  return out;
}

cplx to_cplx(const Complex& a) { return {a.re.to_double(), a.im.to_double()}; }

LogValue to_log(const Complex& a) {
  if (a.is_zero()) return LogValue{};
  Complex l = log(a);
  return LogValue{to_cplx(l)};
}

// ---- Gamma ----

namespace {

// |w| needed before the Stirling remainder drops below 2^-prec.
double stirling_radius(mpfr_prec_t prec) { return 0.12 * static_cast<double>(prec) + 12.0; }

}  // namespace

int bernoulli_terms_for(mpfr_prec_t prec) {
  return static_cast<int>(std::ceil(kPi * stirling_radius(prec))) + 8;
}

BernoulliTable::BernoulliTable(mpfr_prec_t prec, int count) : prec_(prec) {
  // B_2k = (-1)^{k+1} 2 (2k)! zeta(2k) / (2 pi)^{2k}
  const mpfr_prec_t wp = prec + 32;
  Real two_pi(wp), fac(wp), z(wp), pw(wp);
  mpfr_const_pi(two_pi.get(), MPFR_RNDN);
  mpfr_mul_ui(two_pi.get(), two_pi.get(), 2, MPFR_RNDN);
  b2k_.reserve(static_cast<size_t>(count));
  for (int k = 1; k <= count; ++k) {
    const unsigned long n = 2UL * static_cast<unsigned long>(k);
    mpfr_fac_ui(fac.get(), n, MPFR_RNDN);
    mpfr_zeta_ui(z.get(), n, MPFR_RNDN);
    mpfr_pow_ui(pw.get(), two_pi.get(), n, MPFR_RNDN);
    Real b(prec);
    mpfr_mul(b.get(), fac.get(), z.get(), MPFR_RNDN);
    mpfr_div(b.get(), b.get(), pw.get(), MPFR_RNDN);
    mpfr_mul_ui(b.get(), b.get(), 2, MPFR_RNDN);
    if (k % 2 == 0) mpfr_neg(b.get(), b.get(), MPFR_RNDN);
    b2k_.push_back(std::move(b));
  }
}

Complex gamma(const Complex& w, const BernoulliTable& table) {
  const mpfr_prec_t p = table.prec();
  const double radius = stirling_radius(p);
  const double re_w = w.re.to_double();
  const long shift = re_w >= radius ? 0 : static_cast<long>(std::ceil(radius - re_w));

  // shifted argument x = w + shift, and product w (w+1) ... (w+shift-1)
  Complex x(p);
  mpfr_set(x.re.get(), w.re.get(), MPFR_RNDN);
  mpfr_set(x.im.get(), w.im.get(), MPFR_RNDN);
  Complex prod(cplx{1.0, 0.0}, p), tmp(p);
  for (long k = 0; k < shift; ++k) {
    mul_into(tmp, prod, x);
    std::swap(prod, tmp);
    mpfr_add_ui(x.re.get(), x.re.get(), 1, MPFR_RNDN);
  }

  // log Gamma(x) = (x - 1/2) log x - x + log(2 pi)/2 + sum B_2k / (2k (2k-1) x^{2k-1})
  Complex lx = log(x);
  Complex xm = x;
  mpfr_sub_d(xm.re.get(), xm.re.get(), 0.5, MPFR_RNDN);
  Complex lg = xm * lx;
  lg -= x;
  Real half_log_2pi(p);
  mpfr_const_pi(half_log_2pi.get(), MPFR_RNDN);
  mpfr_mul_ui(half_log_2pi.get(), half_log_2pi.get(), 2, MPFR_RNDN);
  mpfr_log(half_log_2pi.get(), half_log_2pi.get(), MPFR_RNDN);
  mpfr_div_ui(half_log_2pi.get(), half_log_2pi.get(), 2, MPFR_RNDN);
  mpfr_add(lg.re.get(), lg.re.get(), half_log_2pi.get(), MPFR_RNDN);

  const Complex inv_x = reciprocal(x);
  const Complex inv_x2 = inv_x * inv_x;
  Complex pw = inv_x;  // x^{-(2k-1)}
  Complex term(p);
  const double cutoff = -static_cast<double>(p) - 16.0;  // log2 threshold
  for (int k = 1; k <= table.size(); ++k) {
    const unsigned long d = static_cast<unsigned long>(2 * k) * static_cast<unsigned long>(2 * k - 1);
    mpfr_mul(term.re.get(), pw.re.get(), table.b2k(k).get(), MPFR_RNDN);
    mpfr_mul(term.im.get(), pw.im.get(), table.b2k(k).get(), MPFR_RNDN);
    mpfr_div_ui(term.re.get(), term.re.get(), d, MPFR_RNDN);
    mpfr_div_ui(term.im.get(), term.im.get(), d, MPFR_RNDN);
    lg += term;
    const long e = std::max(mpfr_zero_p(term.re.get()) ? LONG_MIN / 2 : mpfr_get_exp(term.re.get()),
                            mpfr_zero_p(term.im.get()) ? LONG_MIN / 2 : mpfr_get_exp(term.im.get()));
    if (static_cast<double>(e) < cutoff) break;
    mul_into(tmp, pw, inv_x2);
    std::swap(pw, tmp);
  }
  Complex g = exp(lg);
  if (shift == 0) return g;
  return g / prod;
}

}  // namespace eqstab::mp
