#include "eqstab/qde.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "eqstab/error.hpp"
#include "eqstab/gamma.hpp"
#include "eqstab/jackson_mp.hpp"

namespace eqstab {

Precision parse_precision(std::string_view s) {
  if (s == "double") return Precision::Double;
  if (s == "dd") return Precision::DoubleDouble;
  if (s == "mp") return Precision::Multi;
  throw Error(ErrorCode::ConfigError, "unknown precision '" + std::string(s) + "'");
}

std::string_view precision_name(Precision p) {
  switch (p) {
    case Precision::Double: return "double";
    case Precision::DoubleDouble: return "dd";
    case Precision::Multi: return "mp";
  }
  return "double";
}

void SeriesConfig::validate() const {
  if (!(tol > 0.0 && tol < 1.0)) throw Error(ErrorCode::ConfigError, "series tolerance must lie in (0,1)");
  if (max_terms < 10) throw Error(ErrorCode::ConfigError, "max_terms must be at least 10");
}

QPoint QPoint::from_q(cplx q) { return {std::log(q)}; }

QPoint QPoint::on_ray(int m, double r, double theta) {
  return {static_cast<double>(m) * cplx{std::log(r), -kTwoPi * theta}};
}

Eigen::MatrixXcd connection_matrix(const TorusParams& tp, cplx q) {
  const int m = tp.m;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(m, m);
  for (int k = 1; k < m; ++k) a(k, k - 1) = 1.0;
  // x^m = q + sum_i (-1)^{i-1} e_i x^{m-i}
  const CVector e = elementary_symmetric(tp.z);
  for (int i = 1; i <= m; ++i) {
    const double sign = (i - 1) % 2 == 0 ? 1.0 : -1.0;
    a(m - i, m - 1) += sign * e[static_cast<size_t>(i)];
  }
  a(0, m - 1) += q;
  return a;
}

Eigen::MatrixXcd euler_matrix(const TorusParams& tp, cplx q) {
  return static_cast<double>(tp.m) * connection_matrix(tp, q);
}

CohClass quantum_multiply_x(const CohClass& v, const TorusParams& tp, cplx q) {
  const cplx corr = ((tp.m - 1) % 2 == 0 ? 1.0 : -1.0) * q * integrate(v, tp);
  CohClass out = v;
  for (int j = 0; j < tp.m; ++j) {
    out.values[static_cast<size_t>(j)] = tp.z[static_cast<size_t>(j)] * v.values[static_cast<size_t>(j)] + corr;
  }
  return out;
}

Eigen::MatrixXcd quantum_multiply_matrix(const TorusParams& tp, cplx q) {
  const int m = tp.m;
  const CVector w = localization_weights(tp);
  const cplx sq = ((m - 1) % 2 == 0 ? 1.0 : -1.0) * q;
  Eigen::MatrixXcd a(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) a(i, j) = sq * w[static_cast<size_t>(j)];
    a(i, i) += tp.z[static_cast<size_t>(i)];
  }
  return a;
}

namespace {

void check_index(int J, int m) {
  if (J < 0 || J >= m) {
    throw Error(ErrorCode::IndexOutOfRange, "fixed-point index " + std::to_string(J) + " outside 0.." +
                                                std::to_string(m - 1));
  }
}

cplx sum_z(const TorusParams& tp) {
  cplx s = 0.0;
  for (const cplx& z : tp.z) s += z;
  return s;
}

// L = log q - i pi m; the master function carries exp(t L).
cplx master_exponent(const QPoint& q, int m) { return q.log_q - kI * kPi * static_cast<double>(m); }

}  // namespace

CohClass jackson_term(int J, int r, const QPoint& q, const TorusParams& tp) {
  check_index(J, tp.m);
  if (r < 0) throw Error(ErrorCode::InvalidArgument, "residue index must be nonnegative");
  const size_t uj = static_cast<size_t>(J);
  const cplx L = master_exponent(q, tp.m);
  const double rr = static_cast<double>(r);
  // -Res_{t = z_J + r} Gamma(z_J - t) = (-1)^r / r!
  cplx lb = kI * kPi * sum_z(tp) + (tp.z[uj] + rr) * L - std::lgamma(rr + 1.0) + kI * kPi * rr;
  for (int i = 0; i < tp.m; ++i) {
    if (i != J) lb += log_gamma(tp.z[static_cast<size_t>(i)] - tp.z[uj] - rr);
  }
  const cplx b = std::exp(lb);
  CohClass out{CVector(static_cast<size_t>(tp.m))};
  for (int I = 0; I < tp.m; ++I) {
    cplx w = 1.0;
    for (int i = 0; i < tp.m; ++i) {
      if (i != I) w *= tp.z[static_cast<size_t>(i)] - tp.z[uj] - rr;
    }
    out.values[static_cast<size_t>(I)] = b * w;
  }
  return out;
}

CohClass jackson_term_quadrature(int J, int r, const QPoint& q, const TorusParams& tp, int nodes, double radius) {
  check_index(J, tp.m);
  const cplx L = master_exponent(q, tp.m);
  const cplx t0 = tp.z[static_cast<size_t>(J)] + static_cast<double>(r);
  const cplx pre = kI * kPi * sum_z(tp);
  CVector acc(static_cast<size_t>(tp.m), 0.0);
  for (int k = 0; k < nodes; ++k) {
    const cplx e = expi(kTwoPi * k / nodes);
    const cplx t = t0 + radius * e;
    cplx lphi = pre + t * L;
    for (int i = 0; i < tp.m; ++i) lphi += log_gamma(tp.z[static_cast<size_t>(i)] - t);
    const cplx phi = std::exp(lphi);
    for (int I = 0; I < tp.m; ++I) {
      cplx w = 1.0;
      for (int i = 0; i < tp.m; ++i) {
        if (i != I) w *= tp.z[static_cast<size_t>(i)] - t;
      }
      acc[static_cast<size_t>(I)] += phi * w * radius * e;
    }
  }
  // -(1 / 2 pi i) contour integral, dt = i radius e dalpha
  for (auto& v : acc) v *= -1.0 / static_cast<double>(nodes);
  return {acc};
}

namespace {

template <class Acc>
SeriesResult sum_series(int J, const QPoint& q, const TorusParams& tp, const SeriesConfig& cfg) {
  const int m = tp.m;
  const size_t uj = static_cast<size_t>(J);
  const cplx L = master_exponent(q, m);
  const cplx ratio_num = -std::exp(L);
  cplx lb0 = kI * kPi * sum_z(tp) + tp.z[uj] * L;
  for (int i = 0; i < m; ++i) {
    if (i != J) lb0 += log_gamma(tp.z[static_cast<size_t>(i)] - tp.z[uj]);
  }
  cplx b = std::exp(lb0);
  std::vector<Acc> acc(static_cast<size_t>(m));
  CVector f(static_cast<size_t>(m));
  double running_max = 0.0;
  int quiet = 0;
  SeriesResult res;
  for (int r = 0; r < cfg.max_terms; ++r) {
    const double rr = static_cast<double>(r);
    for (int i = 0; i < m; ++i) f[static_cast<size_t>(i)] = tp.z[static_cast<size_t>(i)] - tp.z[uj] - rr;
    double term_max = 0.0;
    for (int I = 0; I < m; ++I) {
      cplx w = 1.0;
      for (int i = 0; i < m; ++i) {
        if (i != I) w *= f[static_cast<size_t>(i)];
      }
      const cplx t = b * w;
      acc[static_cast<size_t>(I)].add(t);
      term_max = std::max(term_max, std::abs(t));
    }
    running_max = std::max(running_max, term_max);
    res.truncation = term_max;
    res.terms = r + 1;
    quiet = term_max < cfg.tol * running_max ? quiet + 1 : 0;
    if (quiet >= 2) {
      res.value.values.resize(static_cast<size_t>(m));
      for (int I = 0; I < m; ++I) res.value.values[static_cast<size_t>(I)] = acc[static_cast<size_t>(I)].result();
      return res;
    }
    // b_{r+1} / b_r = -e^L / (r+1) / prod_{i != J}(z_i - z_J - r - 1)
    cplx den = rr + 1.0;
    for (int i = 0; i < m; ++i) {
      if (i != J) den *= f[static_cast<size_t>(i)] - 1.0;
    }
    b *= ratio_num / den;
  }
  throw Error(ErrorCode::NoConvergence, "Jackson series needs more than " + std::to_string(cfg.max_terms) +
                                            " terms at |q| = " + std::to_string(std::abs(q.q())));
}

}  // namespace

SeriesResult jackson_solution(int J, const QPoint& q, const TorusParams& tp, const SeriesConfig& cfg) {
  check_index(J, tp.m);
  cfg.validate();
  switch (cfg.precision) {
    case Precision::Double: return sum_series<CompensatedSum>(J, q, tp, cfg);
    case Precision::DoubleDouble: return sum_series<DoubleDoubleSum>(J, q, tp, cfg);
    case Precision::Multi: {
      JacksonEvaluator ev(tp);
      const SeriesTable tab = ev.table(q);
      SeriesResult res;
      res.value = ev.fixed_point_solution(tab, J);
      res.terms = tab.terms;
      return res;
    }
  }
  return {};
}

CohClass phi_of_kclass(const KClass& k, const QPoint& q, const TorusParams& tp, const SeriesConfig& cfg,
                       int shift) {
  if (cfg.precision == Precision::Multi) {
    JacksonEvaluator ev(tp);
    return ev.column(ev.table(q), k, shift).reconstruct();
  }
  // weights Ch(k (x) O(-shift)) at pt_J
  const CohClass w = chern_character(k.tensor_line(-shift), tp);
  CohClass out{CVector(static_cast<size_t>(tp.m), 0.0)};
  for (int J = 0; J < tp.m; ++J) {
    if (w.values[static_cast<size_t>(J)] == cplx{0.0, 0.0}) continue;
    const SeriesResult s = jackson_solution(J, q, tp, cfg);
    for (int I = 0; I < tp.m; ++I) {
      out.values[static_cast<size_t>(I)] += w.values[static_cast<size_t>(J)] * s.value.values[static_cast<size_t>(I)];
    }
  }
  return out;
}

CohClass phi_power(int n, const QPoint& q, const TorusParams& tp, const SeriesConfig& cfg) {
  return phi_of_kclass(KClass::line(tp.m, -n), q, tp, cfg);
}

double qde_residual(const std::function<CohClass(const QPoint&)>& f, const QPoint& q, const TorusParams& tp,
                    double step) {
  const CohClass f0 = f(q);
  const CohClass fp = f(q.shifted(step));
  const CohClass fm = f(q.shifted(-step));
  const CohClass xf = quantum_multiply_x(f0, tp, q.q());
  double num = 0.0;
  for (int I = 0; I < tp.m; ++I) {
    const size_t u = static_cast<size_t>(I);
    const cplx d = (fp.values[u] - fm.values[u]) / (2.0 * step);
    num = std::max(num, std::abs(d - xf.values[u]));
  }
  const double den = max_norm(f0.values);
  return den == 0.0 ? num : num / den;
}

SolutionColumn SolutionColumn::from_values(const CohClass& v) {
  SolutionColumn col;
  size_t best = 0;
  double bmax = -1.0;
  for (size_t i = 0; i < v.size(); ++i) {
    if (std::abs(v.values[i]) > bmax) {
      bmax = std::abs(v.values[i]);
      best = i;
    }
  }
  if (bmax <= 0.0) {
    col.direction = {CVector(v.size(), 0.0)};
    col.logmag = {-std::numeric_limits<double>::infinity(), 0.0};
    return col;
  }
  const cplx pivot = v.values[best];
  col.logmag = std::log(pivot);
  col.direction = coh_scale(v, 1.0 / pivot);
  col.direction.values[best] = 1.0;
  return col;
}

CohClass SolutionColumn::reconstruct() const { return coh_scale(direction, std::exp(logmag)); }

LogValue SolutionColumn::component_log(int I) const {
  const cplx d = direction.values[static_cast<size_t>(I)];
  if (d == cplx{0.0, 0.0} || std::isinf(logmag.real())) return LogValue{};
  return LogValue{logmag + std::log(d)};
}

}  // namespace eqstab
