#include "eqstab/rings.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <string>

#include "eqstab/error.hpp"

namespace eqstab {

namespace {

double distance_to_integer(cplx d) {
  return std::abs(d - std::round(d.real()));
}

void check_same_size(const CohClass& a, const CohClass& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "classes of length " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
  }
}

void check_owner(const CohClass& c, const TorusParams& tp) {
  if (static_cast<int>(c.size()) != tp.m) {
    throw Error(ErrorCode::DimensionMismatch,
                "class of length " + std::to_string(c.size()) + " at m = " + std::to_string(tp.m));
  }
}

Eigen::MatrixXcd vandermonde(const TorusParams& tp) {
  Eigen::MatrixXcd v(tp.m, tp.m);
  for (int j = 0; j < tp.m; ++j) {
    cplx p = 1.0;
    for (int k = 0; k < tp.m; ++k) {
      v(j, k) = p;
      p *= tp.z[static_cast<size_t>(j)];
    }
  }
  return v;
}

}  // namespace

TorusParams make_torus_params(int m, const CVector& z) {
  if (m < 2) throw Error(ErrorCode::InvalidArgument, "m must be at least 2");
  if (static_cast<int>(z.size()) != m) {
    throw Error(ErrorCode::DimensionMismatch,
                "expected " + std::to_string(m) + " parameters, got " + std::to_string(z.size()));
  }
  TorusParams tp{m, z, std::numeric_limits<double>::infinity()};
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const double d = distance_to_integer(z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)]);
      if (d <= kOmegaTolerance) {
        throw Error(ErrorCode::OmegaViolation, "z_" + std::to_string(i + 1) + " - z_" +
                                                   std::to_string(j + 1) + " is an integer");
      }
      tp.margin = std::min(tp.margin, d);
    }
  }
  return tp;
}

CVector z_from_s(std::span<const cplx> s, SConvention conv) {
  CVector z(s.begin(), s.end());
  if (conv == SConvention::Half) {
    for (auto& v : z) v *= 0.5;
  }
  return z;
}

CohClass coh_unit(const TorusParams& tp) { return {CVector(static_cast<size_t>(tp.m), 1.0)}; }

CohClass coh_from_poly(std::span<const cplx> coeffs, const TorusParams& tp) {
  CohClass out{CVector(static_cast<size_t>(tp.m))};
  for (int j = 0; j < tp.m; ++j) {
    cplx acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * tp.z[static_cast<size_t>(j)] + *it;
    out.values[static_cast<size_t>(j)] = acc;
  }
  return out;
}

double vandermonde_condition(const TorusParams& tp) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(vandermonde(tp));
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smin;
}

CVector coh_to_poly(const CohClass& c, const TorusParams& tp) {
  check_owner(c, tp);
  const Eigen::MatrixXcd v = vandermonde(tp);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(v, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cond = sv(sv.size() - 1) == 0.0 ? std::numeric_limits<double>::infinity()
                                                : sv(0) / sv(sv.size() - 1);
  if (cond > kVandermondeCondLimit) {
    throw Error(ErrorCode::IllConditioned, "Vandermonde condition " + std::to_string(cond));
  }
  Eigen::VectorXcd rhs(tp.m);
  for (int j = 0; j < tp.m; ++j) rhs(j) = c.values[static_cast<size_t>(j)];
  const Eigen::VectorXcd sol = v.colPivHouseholderQr().solve(rhs);
  return CVector(sol.data(), sol.data() + sol.size());
}

CohClass coh_mul(const CohClass& a, const CohClass& b) {
  check_same_size(a, b);
  CohClass out = a;
  for (size_t j = 0; j < a.size(); ++j) out.values[j] *= b.values[j];
  return out;
}

CohClass coh_add(const CohClass& a, const CohClass& b) {
  check_same_size(a, b);
  CohClass out = a;
  for (size_t j = 0; j < a.size(); ++j) out.values[j] += b.values[j];
  return out;
}

CohClass coh_scale(const CohClass& a, cplx s) {
  CohClass out = a;
  for (auto& v : out.values) v *= s;
  return out;
}

CVector localization_weights(const TorusParams& tp) {
  CVector w(static_cast<size_t>(tp.m));
  for (int j = 0; j < tp.m; ++j) {
    cplx den = 1.0;
    for (int i = 0; i < tp.m; ++i) {
      if (i != j) den *= tp.z[static_cast<size_t>(i)] - tp.z[static_cast<size_t>(j)];
    }
    w[static_cast<size_t>(j)] = 1.0 / den;
  }
  return w;
}

cplx integrate(const CohClass& c, const TorusParams& tp) {
  check_owner(c, tp);
  const CVector w = localization_weights(tp);
  CompensatedSum acc;
  for (int j = 0; j < tp.m; ++j) acc.add(c.values[static_cast<size_t>(j)] * w[static_cast<size_t>(j)]);
  return acc.result();
}

CVector elementary_symmetric(const CVector& z) {
  CVector e(z.size() + 1, 0.0);
  e[0] = 1.0;
  for (size_t i = 0; i < z.size(); ++i) {
    for (size_t k = i + 1; k >= 1; --k) e[k] += e[k - 1] * z[i];
  }
  return e;
}

CVector complete_homogeneous(const CVector& z, int max_degree) {
  // h_k(z_1..z_n) = h_k(z_1..z_{n-1}) + z_n h_{k-1}(z_1..z_n)
  CVector h(static_cast<size_t>(std::max(max_degree, 0) + 1), 0.0);
  h[0] = 1.0;
  for (const cplx& zi : z) {
    for (size_t k = 1; k < h.size(); ++k) h[k] += zi * h[k - 1];
  }
  return h;
}

cplx integrate_poly(std::span<const cplx> coeffs, const TorusParams& tp) {
  const int top = static_cast<int>(coeffs.size()) - tp.m;
  if (top < 0) return 0.0;
  const CVector h = complete_homogeneous(tp.z, top);
  const double sign = (tp.m - 1) % 2 == 0 ? 1.0 : -1.0;
  cplx acc = 0.0;
  for (int k = tp.m - 1; k < static_cast<int>(coeffs.size()); ++k) {
    acc += coeffs[static_cast<size_t>(k)] * h[static_cast<size_t>(k - tp.m + 1)];
  }
  return sign * acc;
}

// ---- KClass ----

KClass::KClass(int m, int offset, std::vector<long long> coeffs, std::vector<int> twist)
    : m_(m), offset_(offset), coeffs_(std::move(coeffs)), twist_(std::move(twist)) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "KClass needs m >= 1");
  if (twist_.empty()) twist_.assign(static_cast<size_t>(m), 0);
  if (static_cast<int>(twist_.size()) != m) {
    throw Error(ErrorCode::DimensionMismatch, "twist must have length m");
  }
}

KClass KClass::line(int m, int n) { return KClass(m, n, {1}); }
KClass KClass::zero(int m) { return KClass(m, 0, {}); }

long long KClass::coefficient(int n) const {
  const int k = n - offset_;
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0;
  return coeffs_[static_cast<size_t>(k)];
}

bool KClass::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](long long c) { return c == 0; });
}

KClass KClass::twisted(std::span<const int> w) const {
  if (static_cast<int>(w.size()) != m_) throw Error(ErrorCode::DimensionMismatch, "twist length");
  KClass out = *this;
  for (int i = 0; i < m_; ++i) out.twist_[static_cast<size_t>(i)] += w[static_cast<size_t>(i)];
  return out;
}

KClass KClass::tensor_line(int d) const {
  KClass out = *this;
  out.offset_ += d;
  return out;
}

KClass KClass::trimmed() const {
  size_t lo = 0, hi = coeffs_.size();
  while (lo < hi && coeffs_[lo] == 0) ++lo;
  while (hi > lo && coeffs_[hi - 1] == 0) --hi;
  if (lo == hi) return KClass(m_, 0, {}, twist_);
  return KClass(m_, offset_ + static_cast<int>(lo),
                std::vector<long long>(coeffs_.begin() + static_cast<long>(lo),
                                       coeffs_.begin() + static_cast<long>(hi)),
                twist_);
}

namespace {

KClass combine(const KClass& a, const KClass& b, long long sb) {
  if (a.m() != b.m()) throw Error(ErrorCode::DimensionMismatch, "KClass m differs");
  if (a.is_zero()) {
    KClass out = b;
    return sb * out;
  }
  if (b.is_zero()) return a;
  if (a.twist() != b.twist()) {
    throw Error(ErrorCode::InvalidArgument, "adding K-classes with different twists");
  }
  const int lo = std::min(a.offset(), b.offset());
  const int hi = std::max(a.offset() + static_cast<int>(a.coeffs().size()),
                          b.offset() + static_cast<int>(b.coeffs().size()));
  std::vector<long long> c(static_cast<size_t>(hi - lo));
  for (int n = lo; n < hi; ++n) c[static_cast<size_t>(n - lo)] = a.coefficient(n) + sb * b.coefficient(n);
  return KClass(a.m(), lo, std::move(c), a.twist()).trimmed();
}

}  // namespace

KClass operator+(const KClass& a, const KClass& b) { return combine(a, b, 1); }
KClass operator-(const KClass& a, const KClass& b) { return combine(a, b, -1); }

KClass operator*(long long s, const KClass& a) {
  KClass out = a;
  for (auto& c : out.coeffs_) c *= s;
  return out.trimmed();
}

bool operator==(const KClass& a, const KClass& b) {
  const KClass x = a.trimmed(), y = b.trimmed();
  if (x.m_ != y.m_) return false;
  if (x.is_zero() && y.is_zero()) return true;
  return x.offset_ == y.offset_ && x.coeffs_ == y.coeffs_ && x.twist_ == y.twist_;
}

cplx twist_character(std::span<const int> w, const TorusParams& tp) {
  cplx dot = 0.0;
  for (size_t i = 0; i < w.size(); ++i) dot += static_cast<double>(w[i]) * tp.z[i];
  return std::exp(kTwoPi * kI * dot);
}

CohClass chern_character(const KClass& k, const TorusParams& tp) {
  if (k.m() != tp.m) throw Error(ErrorCode::DimensionMismatch, "KClass m differs from torus");
  const cplx tw = twist_character(k.twist(), tp);
  CohClass out{CVector(static_cast<size_t>(tp.m), 0.0)};
  for (int j = 0; j < tp.m; ++j) {
    const cplx zj = tp.z[static_cast<size_t>(j)];
    CompensatedSum acc;
    for (size_t t = 0; t < k.coeffs().size(); ++t) {
      if (k.coeffs()[t] == 0) continue;
      const double n = static_cast<double>(k.offset() + static_cast<int>(t));
      acc.add(static_cast<double>(k.coeffs()[t]) * std::exp(-kTwoPi * kI * n * zj));
    }
    out.values[static_cast<size_t>(j)] = acc.result() * tw;
  }
  return out;
}

cplx euler_pairing(const KClass& a, const KClass& b, const TorusParams& tp) {
  // chi(E, F) = sum_J Ch(E^dual)_J Ch(F)_J / prod_{i != J}(1 - exp(2 pi i (z_J - z_i)))
  const CohClass cb = chern_character(b, tp);
  const cplx tw_a = twist_character(a.twist(), tp);
  CompensatedSum acc;
  for (int j = 0; j < tp.m; ++j) {
    const cplx zj = tp.z[static_cast<size_t>(j)];
    cplx da = 0.0;
    for (size_t t = 0; t < a.coeffs().size(); ++t) {
      const double n = static_cast<double>(a.offset() + static_cast<int>(t));
      da += static_cast<double>(a.coeffs()[t]) * std::exp(kTwoPi * kI * n * zj);
    }
    da /= tw_a;
    cplx den = 1.0;
    for (int i = 0; i < tp.m; ++i) {
      if (i != j) den *= 1.0 - std::exp(kTwoPi * kI * (zj - tp.z[static_cast<size_t>(i)]));
    }
    acc.add(da * cb.values[static_cast<size_t>(j)] / den);
  }
  return acc.result();
}

long long binom_poly(long long d, int m) {
  // prod_{k=1}^{m-1} (d + k) / (m-1)!, exact in integers
  long long num = 1;
  long long den = 1;
  for (int k = 1; k <= m - 1; ++k) {
    num *= d + k;
    den *= k;
  }
  return num / den;
}

long long euler_pairing_limit(const KClass& a, const KClass& b) {
  if (a.m() != b.m()) throw Error(ErrorCode::DimensionMismatch, "KClass m differs");
  long long acc = 0;
  for (size_t s = 0; s < a.coeffs().size(); ++s) {
    if (a.coeffs()[s] == 0) continue;
    for (size_t t = 0; t < b.coeffs().size(); ++t) {
      if (b.coeffs()[t] == 0) continue;
      const long long d = (b.offset() + static_cast<long long>(t)) - (a.offset() + static_cast<long long>(s));
      acc += a.coeffs()[s] * b.coeffs()[t] * binom_poly(d, a.m());
    }
  }
  return acc;
}

cplx ev_k(const LaurentPoly& p, std::span<const cplx> s) {
  cplx acc = 0.0;
  for (const auto& [k, c] : p.terms) {
    if (k.size() != s.size()) throw Error(ErrorCode::DimensionMismatch, "exponent length");
    cplx dot = 0.0;
    for (size_t i = 0; i < k.size(); ++i) dot += static_cast<double>(k[i]) * s[i];
    acc += c * std::exp(kPi * kI * dot);
  }
  return acc;
}

namespace {

double coeff_norm(const KClass& a) {
  double acc = 0.0;
  for (long long c : a.coeffs()) acc += static_cast<double>(c) * static_cast<double>(c);
  return std::sqrt(acc);
}

double twist_scale(std::span<const int> k, std::span<const cplx> s) {
  if (k.size() != s.size()) throw Error(ErrorCode::DimensionMismatch, "exponent length");
  cplx dot = 0.0;
  for (size_t i = 0; i < k.size(); ++i) dot += static_cast<double>(k[i]) * s[i];
  return std::abs(std::exp(kPi * kI * dot));
}

}  // namespace

double knorm(const KClass& a, std::span<const cplx> s) {
  return twist_scale(a.twist(), s) * coeff_norm(a);
}

double knorm(const std::vector<std::pair<std::vector<int>, KClass>>& pieces, std::span<const cplx> s) {
  double acc = 0.0;
  for (const auto& [k, alpha] : pieces) acc += twist_scale(k, s) * coeff_norm(alpha);
  return acc;
}

}  // namespace eqstab
