#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

namespace eqstab {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

inline cplx expi(double angle) { return {std::cos(angle), std::sin(angle)}; }

// m-th root of unity zeta_m^n.
inline cplx root_of_unity(int m, int n) { return expi(kTwoPi * static_cast<double>(n) / m); }

// Direction e^{-2 pi i theta} zeta_m^n of the n-th exponential along a ray.
inline cplx ray_direction(int m, int n, double theta) {
  return expi(kTwoPi * (static_cast<double>(n) / m - theta));
}

inline int positive_mod(int a, int m) {
  int r = a % m;
  return r < 0 ? r + m : r;
}

// Wraps an angle into (-pi, pi].
inline double wrap_angle(double a) {
  double w = std::remainder(a, kTwoPi);
  if (w <= -kPi) w += kTwoPi;
  return w;
}

double max_norm(std::span<const cplx> v);

// A nonzero complex number stored as its logarithm; survives magnitudes far
// outside double range. The imaginary part is an argument on some branch.
struct LogValue {
  cplx log{-std::numeric_limits<double>::infinity(), 0.0};

  static LogValue from(cplx value);
  bool is_zero() const { return std::isinf(log.real()) && log.real() < 0; }
  double log_abs() const { return log.real(); }
  double arg() const { return log.imag(); }
  // exp(log); overflows to inf for huge magnitudes.
  cplx value() const;
};

// Compensated complex summation (Neumaier variant of Kahan).
class CompensatedSum {
 public:
  void add(cplx x);
  cplx result() const { return sum_ + comp_; }

 private:
  cplx sum_{0.0, 0.0};
  cplx comp_{0.0, 0.0};
};

// Double-double real number: value = hi + lo with |lo| <= ulp(hi)/2.
struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  DoubleDouble() = default;
  DoubleDouble(double h) : hi(h), lo(0.0) {}  // NOLINT(google-explicit-constructor)
  DoubleDouble(double h, double l) : hi(h), lo(l) {}

  friend DoubleDouble operator+(DoubleDouble a, DoubleDouble b);
  friend DoubleDouble operator*(DoubleDouble a, DoubleDouble b);
  double to_double() const { return hi + lo; }
};

// Complex accumulator in double-double precision.
class DoubleDoubleSum {
 public:
  void add(cplx x);
  cplx result() const { return {re_.to_double(), im_.to_double()}; }

 private:
  DoubleDouble re_;
  DoubleDouble im_;
};

// Log-spaced grid of `count` points from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, int count);

}  // namespace eqstab
