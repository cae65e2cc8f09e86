#include "eqstab/frame.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cstdio>
#include <sstream>

#include "eqstab/error.hpp"
#include "eqstab/jackson_mp.hpp"

namespace eqstab {

double sector_argument(int m, int n, double theta) {
  return kTwoPi * static_cast<double>(n) / m - kPi - kTwoPi * theta;
}

bool sector_valid(int m, int n, double theta) {
  const double x = static_cast<double>(n) / m;
  return x - 1.0 < theta && theta < x;
}

SolutionFrame series_frame(double theta, double r, const TorusParams& tp, const SeriesConfig& cfg,
                           const std::vector<int>& labels) {
  if (!(r > 0.0)) throw Error(ErrorCode::InvalidArgument, "frame radius must be positive");
  SolutionFrame f{tp.m, theta, r, labels, {}};
  const QPoint q = QPoint::on_ray(tp.m, r, theta);
  if (cfg.precision == Precision::Multi) {
    JacksonEvaluator ev(tp);
    const SeriesTable t = ev.table(q);
    for (int n : labels) f.columns.push_back(ev.column(t, KClass::line(tp.m, -n), 0));
    return f;
  }
  // one series per fixed point, reused by every label
  std::vector<CohClass> phi;
  for (int J = 0; J < tp.m; ++J) phi.push_back(jackson_solution(J, q, tp, cfg).value);
  for (int n : labels) {
    CohClass v{CVector(static_cast<size_t>(tp.m), 0.0)};
    for (int J = 0; J < tp.m; ++J) {
      const cplx w = std::exp(kTwoPi * kI * static_cast<double>(n) * tp.z[static_cast<size_t>(J)]);
      for (int I = 0; I < tp.m; ++I) v.values[static_cast<size_t>(I)] += w * phi[static_cast<size_t>(J)][static_cast<size_t>(I)];
    }
    f.columns.push_back(SolutionColumn::from_values(v));
  }
  return f;
}

namespace {

// Dormand-Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695, e4 = b4 - 393.0 / 640,
                 e5 = b5 - (-92097.0 / 339200), e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

struct RayOde {
  const TorusParams& tp;
  double theta;
  const OdeConfig& oc;

  Eigen::MatrixXcd rhs(double r, const Eigen::MatrixXcd& y) const {
    const QPoint q = QPoint::on_ray(tp.m, r, theta);
    const Eigen::MatrixXcd a = oc.operator_override ? oc.operator_override(q) : quantum_multiply_matrix(tp, q.q());
    return (static_cast<double>(tp.m) / r) * (a * y);
  }
};

void renormalize_column(Eigen::MatrixXcd& y, std::vector<cplx>& logmag, int k, bool force, OdeStats* stats) {
  Eigen::Index best = 0;
  double nm = 0.0;
  for (Eigen::Index i = 0; i < y.rows(); ++i) {
    const double a = std::abs(y(i, k));
    if (a > nm) {
      nm = a;
      best = i;
    }
  }
  if (nm == 0.0) return;
  if (!force && nm >= 1e-2 && nm <= 1e2) return;
  const cplx pivot = y(best, k);
  y.col(k) /= pivot;
  y(best, k) = 1.0;
  logmag[static_cast<size_t>(k)] += std::log(pivot);
  if (stats) ++stats->renormalizations;
}

double log_condition(const Eigen::MatrixXcd& y) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(y);
  const auto& s = svd.singularValues();
  if (s(s.size() - 1) == 0.0) return std::numeric_limits<double>::infinity();
  return std::log10(s(0) / s(s.size() - 1));
}

}  // namespace

SolutionFrame ode_extend(const SolutionFrame& frame, double r_target, const TorusParams& tp, const OdeConfig& oc,
                         OdeStats* stats) {
  if (!(r_target > frame.r)) throw Error(ErrorCode::InvalidArgument, "ode_extend needs r_target > frame radius");
  const int m = tp.m;
  const int ncol = static_cast<int>(frame.columns.size());
  Eigen::MatrixXcd y(m, ncol);
  std::vector<cplx> logmag(static_cast<size_t>(ncol));
  for (int k = 0; k < ncol; ++k) {
    const auto& col = frame.columns[static_cast<size_t>(k)];
    if (static_cast<int>(col.direction.size()) != m) throw Error(ErrorCode::DimensionMismatch, "frame column size");
    for (int i = 0; i < m; ++i) y(i, k) = col.direction[static_cast<size_t>(i)];
    logmag[static_cast<size_t>(k)] = col.logmag;
  }

  const RayOde ode{tp, frame.theta, oc};
  double r = frame.r;
  double h = std::min(0.05 * r, r_target - r);
  long steps = 0;
  OdeStats local;
  OdeStats* st = stats ? stats : &local;
  Eigen::MatrixXcd k1 = ode.rhs(r, y);
  while (r < r_target) {
    if (++steps > oc.max_steps) throw Error(ErrorCode::NoConvergence, "ODE step budget exhausted");
    h = std::min(h, r_target - r);
    const Eigen::MatrixXcd k2 = ode.rhs(r + c2 * h, y + h * (a21 * k1));
    const Eigen::MatrixXcd k3 = ode.rhs(r + c3 * h, y + h * (a31 * k1 + a32 * k2));
    const Eigen::MatrixXcd k4 = ode.rhs(r + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Eigen::MatrixXcd k5 = ode.rhs(r + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Eigen::MatrixXcd k6 = ode.rhs(r + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Eigen::MatrixXcd ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Eigen::MatrixXcd k7 = ode.rhs(r + h, ynew);
    const Eigen::MatrixXcd err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    // error measured per column relative to that column's scale
    double enorm = 0.0;
    for (int k = 0; k < ncol; ++k) {
      const double scale = oc.rtol * std::max(y.col(k).cwiseAbs().maxCoeff(), ynew.col(k).cwiseAbs().maxCoeff());
      if (scale == 0.0) continue;
      enorm = std::max(enorm, err.col(k).cwiseAbs().maxCoeff() / scale);
    }
    if (!std::isfinite(enorm)) enorm = 1e10;
    if (enorm <= 1.0) {
      r += h;
      if (r_target - r <= 1e-13 * r_target) r = r_target;
      y = ynew;
      ++st->accepted;
      bool renorm = false;
      for (int k = 0; k < ncol; ++k) {
        const double nm = y.col(k).cwiseAbs().maxCoeff();
        if (nm < 1e-2 || nm > 1e2) {
          renormalize_column(y, logmag, k, false, st);
          renorm = true;
        }
      }
      k1 = renorm ? ode.rhs(r, y) : k7;
      if (st->accepted % 64 == 0) st->max_log_condition = std::max(st->max_log_condition, log_condition(y));
    } else {
      ++st->rejected;
    }
    const double fac = enorm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(enorm, -0.2), 0.2, 5.0);
    h *= fac;
    if (r < r_target && h < oc.min_step_rel * r) {
      throw Error(ErrorCode::StepUnderflow, "adaptive step " + std::to_string(h) + " at r = " + std::to_string(r));
    }
  }
  st->max_log_condition = std::max(st->max_log_condition, log_condition(y));

  SolutionFrame out{frame.m, frame.theta, r_target, frame.labels, {}};
  for (int k = 0; k < ncol; ++k) {
    renormalize_column(y, logmag, k, true, nullptr);
    SolutionColumn col;
    col.direction.values.assign(y.col(k).data(), y.col(k).data() + m);
    col.logmag = logmag[static_cast<size_t>(k)];
    out.columns.push_back(std::move(col));
  }
  return out;
}

SolutionFrame fundamental_frame(double theta, double r, const TorusParams& tp, const SeriesConfig& cfg,
                                const std::vector<int>& labels, double r0, const OdeConfig& oc) {
  if (!(r > 0.0)) throw Error(ErrorCode::InvalidArgument, "frame radius must be positive");
  if (cfg.precision == Precision::Multi || r <= r0) return series_frame(theta, r, tp, cfg, labels);
  return ode_extend(series_frame(theta, r0, tp, cfg, labels), r, tp, oc);
}

double frame_column_residual(const SolutionFrame& frame, int k, const TorusParams& tp, const OdeConfig& oc,
                             double dlog) {
  if (k < 0 || k >= static_cast<int>(frame.columns.size())) throw Error(ErrorCode::IndexOutOfRange, "column");
  SolutionFrame single = frame;
  single.columns = {frame.columns[static_cast<size_t>(k)]};
  single.labels = {frame.labels.empty() ? 0 : frame.labels[static_cast<size_t>(k)]};
  const SolutionFrame f1 = ode_extend(single, frame.r * std::exp(dlog), tp, oc);
  const SolutionFrame f2 = ode_extend(f1, frame.r * std::exp(2.0 * dlog), tp, oc);
  const cplx l0 = single.columns[0].logmag;
  const CohClass& d0 = single.columns[0].direction;
  const cplx s1 = std::exp(f1.columns[0].logmag - l0);
  const cplx s2 = std::exp(f2.columns[0].logmag - l0);
  const QPoint q = QPoint::on_ray(tp.m, frame.r, frame.theta);
  const Eigen::MatrixXcd a = oc.operator_override ? oc.operator_override(q) : quantum_multiply_matrix(tp, q.q());
  Eigen::VectorXcd dv(tp.m);
  for (int I = 0; I < tp.m; ++I) dv(I) = d0[static_cast<size_t>(I)];
  const Eigen::VectorXcd xf = a * dv;
  double num = 0.0;
  for (int I = 0; I < tp.m; ++I) {
    const size_t u = static_cast<size_t>(I);
    // q d/dq = (1/m) d/dlog r
    const cplx deriv = (-3.0 * d0[u] + 4.0 * s1 * f1.columns[0].direction[u] - s2 * f2.columns[0].direction[u]) /
                       (2.0 * dlog * tp.m);
    num = std::max(num, std::abs(deriv - xf(I)));
  }
  return num / max_norm(d0.values);
}

double frame_column_distance(const SolutionColumn& a, const SolutionColumn& b) {
  const cplx scale = std::exp(a.logmag - b.logmag);
  double num = 0.0;
  for (size_t i = 0; i < a.direction.size(); ++i) {
    num = std::max(num, std::abs(scale * a.direction[i] - b.direction[i]));
  }
  return num / max_norm(b.direction.values);
}

double frame_log_condition(const SolutionFrame& frame) {
  const int m = frame.m;
  Eigen::MatrixXcd y(m, static_cast<Eigen::Index>(frame.columns.size()));
  for (size_t k = 0; k < frame.columns.size(); ++k) {
    for (int i = 0; i < m; ++i) y(i, static_cast<Eigen::Index>(k)) = frame.columns[k].direction[static_cast<size_t>(i)];
  }
  return log_condition(y);
}

std::string frame_csv(const SolutionFrame& frame, bool header) {
  std::ostringstream os;
  char buf[64];
  if (header) {
    os << "r,n,logmag_re,logmag_im";
    for (int i = 0; i < frame.m; ++i) os << ",dir" << i << "_re,dir" << i << "_im";
    os << "\n";
  }
  auto put = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    os << buf;
  };
  for (size_t k = 0; k < frame.columns.size(); ++k) {
    const auto& c = frame.columns[k];
    put(frame.r);
    os << "," << (frame.labels.empty() ? 0 : frame.labels[k]) << ",";
    put(c.logmag.real());
    os << ",";
    put(c.logmag.imag());
    for (const cplx& v : c.direction.values) {
      os << ",";
      put(v.real());
      os << ",";
      put(v.imag());
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace eqstab
