#pragma once

// Minimal RAII layer over MPFR for complex arithmetic at a caller-chosen
// binary precision. Only what the residue series needs.

#include <mpfr.h>

#include <vector>

#include "eqstab/numeric.hpp"

namespace eqstab::mp {

class Real {
 public:
  explicit Real(mpfr_prec_t prec);
  Real(double v, mpfr_prec_t prec);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

 private:
  mpfr_t v_;
  bool live_ = true;
};

class Complex {
 public:
  explicit Complex(mpfr_prec_t prec) : re(prec), im(prec) {}
  Complex(cplx v, mpfr_prec_t prec) : re(v.real(), prec), im(v.imag(), prec) {}

  mpfr_prec_t prec() const { return re.prec(); }
  bool is_zero() const { return mpfr_zero_p(re.get()) && mpfr_zero_p(im.get()); }

  Complex& operator+=(const Complex& b);
  Complex& operator-=(const Complex& b);
  Complex& operator*=(const Complex& b);
  Complex& operator*=(double b);

  Real re;
  Real im;
};

Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, double b);

// out = a * b without allocating; out must not alias a or b.
void mul_into(Complex& out, const Complex& a, const Complex& b);
// acc += a * b; tmp is scratch of the same precision.
void fma_into(Complex& acc, const Complex& a, const Complex& b, Complex& tmp);

Complex exp(const Complex& a);
Complex log(const Complex& a);  // principal branch
Complex pi_times(const Complex& a);
Complex reciprocal(const Complex& a);

cplx to_cplx(const Complex& a);
// log|a| + i arg a, evaluated without leaving MPFR range.
LogValue to_log(const Complex& a);

// Even-index Bernoulli numbers B_2..B_{2K} at a fixed precision.
class BernoulliTable {
 public:
  BernoulliTable(mpfr_prec_t prec, int count);
  mpfr_prec_t prec() const { return prec_; }
  int size() const { return static_cast<int>(b2k_.size()); }
  const Real& b2k(int k) const { return b2k_[static_cast<size_t>(k - 1)]; }

 private:
  mpfr_prec_t prec_;
  std::vector<Real> b2k_;
};

// Number of Bernoulli terms the gamma routine wants at this precision.
int bernoulli_terms_for(mpfr_prec_t prec);

// Gamma(w) for w off the nonpositive integers: upward shift to
// Re w >= c*prec, Stirling series, then divide out the shift product.
Complex gamma(const Complex& w, const BernoulliTable& table);

}  // namespace eqstab::mp
