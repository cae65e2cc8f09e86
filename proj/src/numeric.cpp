#include "eqstab/numeric.hpp"

#include <algorithm>

#include "eqstab/error.hpp"

namespace eqstab {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::OmegaViolation: return "OmegaViolation";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::StepUnderflow: return "StepUnderflow";
    case ErrorCode::PoorFit: return "PoorFit";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::GrowthCollision: return "GrowthCollision";
    case ErrorCode::NonTermination: return "NonTermination";
    case ErrorCode::UnwrapFailure: return "UnwrapFailure";
    case ErrorCode::GapViolation: return "GapViolation";
    case ErrorCode::PlanInfeasible: return "PlanInfeasible";
    case ErrorCode::MissingPowerMap: return "MissingPowerMap";
    case ErrorCode::NonIntegral: return "NonIntegral";
    case ErrorCode::BadFusion: return "BadFusion";
    case ErrorCode::PatternViolation: return "PatternViolation";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

double max_norm(std::span<const cplx> v) {
  double m = 0.0;
  for (const cplx& x : v) m = std::max(m, std::abs(x));
  return m;
}

LogValue LogValue::from(cplx value) {
  LogValue out;
  if (value != cplx{0.0, 0.0}) out.log = std::log(value);
  return out;
}

cplx LogValue::value() const {
  if (is_zero()) return {0.0, 0.0};
  return std::exp(log);
}

void CompensatedSum::add(cplx x) {
  auto step = [](double& s, double& c, double v) {
    double t = s + v;
    if (std::abs(s) >= std::abs(v)) {
      c += (s - t) + v;
    } else {
      c += (v - t) + s;
    }
    s = t;
  };
  double sr = sum_.real(), si = sum_.imag();
  double cr = comp_.real(), ci = comp_.imag();
  step(sr, cr, x.real());
  step(si, ci, x.imag());
  sum_ = {sr, si};
  comp_ = {cr, ci};
}

namespace {

inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  double bb = s - a;
  e = (a - (s - bb)) + (b - bb);
}

}  // namespace

DoubleDouble operator+(DoubleDouble a, DoubleDouble b) {
  double s, e;
  two_sum(a.hi, b.hi, s, e);
  e += a.lo + b.lo;
  double hi, lo;
  two_sum(s, e, hi, lo);
  return {hi, lo};
}

DoubleDouble operator*(DoubleDouble a, DoubleDouble b) {
  double p = a.hi * b.hi;
  double e = std::fma(a.hi, b.hi, -p);
  e += a.hi * b.lo + a.lo * b.hi;
  double hi, lo;
  two_sum(p, e, hi, lo);
  return {hi, lo};
}

void DoubleDoubleSum::add(cplx x) {
  re_ = re_ + DoubleDouble(x.real());
  im_ = im_ + DoubleDouble(x.imag());
}

std::vector<double> log_grid(double lo, double hi, int count) {
  if (count < 2 || !(lo > 0.0) || !(hi > lo)) {
    throw Error(ErrorCode::InvalidArgument, "log_grid needs 0 < lo < hi and count >= 2");
  }
  std::vector<double> g(static_cast<size_t>(count));
  const double a = std::log(lo), b = std::log(hi);
  for (int k = 0; k < count; ++k) {
    g[static_cast<size_t>(k)] = std::exp(a + (b - a) * k / (count - 1));
  }
  g.front() = lo;
  g.back() = hi;
  return g;
}

}  // namespace eqstab
