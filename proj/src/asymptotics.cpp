#include "eqstab/asymptotics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <numeric>

#include "eqstab/error.hpp"

namespace eqstab {

void unwrap_imag(std::vector<cplx>& v) {
  for (size_t k = 1; k < v.size(); ++k) {
    const double d = v[k].imag() - v[k - 1].imag();
    const double w = wrap_angle(d);
    v[k] = {v[k].real(), v[k - 1].imag() + w};
  }
}

AsymptoticFit asymptotic_fit(std::span<const double> r, std::span<const cplx> logmag, int m, double theta) {
  if (r.size() != logmag.size()) throw Error(ErrorCode::DimensionMismatch, "radius/log sample counts differ");
  if (r.size() < 8) throw Error(ErrorCode::InvalidArgument, "asymptotic fit needs at least 8 samples");
  std::vector<size_t> order(r.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return r[a] < r[b]; });
  const double rmin = r[order.front()], rmax = r[order.back()];
  if (!(rmin > 0.0) || rmax < 2.0 * rmin) {
    throw Error(ErrorCode::InvalidArgument, "asymptotic fit needs radii spanning a factor of 2");
  }
  std::vector<cplx> y;
  for (size_t i : order) y.push_back(logmag[i]);
  unwrap_imag(y);

  const Eigen::Index n = static_cast<Eigen::Index>(y.size());
  const cplx dir = static_cast<double>(m) * expi(-kTwoPi * theta);
  Eigen::MatrixXcd a(n, 3);
  Eigen::VectorXcd rhs(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double rk = r[order[static_cast<size_t>(k)]];
    a(k, 0) = dir * rk;
    a(k, 1) = std::log(rk);
    a(k, 2) = 1.0;
    rhs(k) = y[static_cast<size_t>(k)];
  }
  const Eigen::VectorXcd sol = a.colPivHouseholderQr().solve(rhs);
  AsymptoticFit fit;
  fit.c = sol(0);
  fit.a = sol(1);
  fit.b = sol(2);
  fit.residual = std::sqrt((a * sol - rhs).squaredNorm() / static_cast<double>(n));
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < m; ++k) {
    const double d = std::abs(fit.c - root_of_unity(m, k));
    if (d < best) {
      best = d;
      fit.nearest_n = k;
    }
  }
  fit.nearest = root_of_unity(m, fit.nearest_n);
  fit.rel_error = best;
  if (fit.residual > 0.05 * std::abs(static_cast<double>(m) * fit.c * rmax)) {
    throw Error(ErrorCode::PoorFit, "fit residual " + std::to_string(fit.residual) + " against scale " +
                                        std::to_string(std::abs(static_cast<double>(m) * fit.c * rmax)));
  }
  return fit;
}

std::vector<cplx> solution_log_samples(const JacksonEvaluator& ev, const KClass& k, int shift, double theta,
                                       std::span<const double> radii) {
  const int m = ev.params().m;
  std::vector<SolutionColumn> cols;
  cols.reserve(radii.size());
  for (double r : radii) cols.push_back(ev.column(ev.table(QPoint::on_ray(m, r, theta)), k, shift));
  // reference component: largest at the outermost radius
  size_t last = 0;
  for (size_t i = 1; i < radii.size(); ++i) {
    if (radii[i] > radii[last]) last = i;
  }
  int ref = 0;
  double best = -1.0;
  for (int I = 0; I < m; ++I) {
    const double a = std::abs(cols[last].direction[static_cast<size_t>(I)]);
    if (a > best) {
      best = a;
      ref = I;
    }
  }
  std::vector<cplx> out;
  out.reserve(cols.size());
  for (const auto& c : cols) out.push_back(c.component_log(ref).log);
  return out;
}

double growth_rate(const JacksonEvaluator& ev, const KClass& k, int shift, double theta,
                   std::span<const double> radii) {
  if (k.is_zero()) return -std::numeric_limits<double>::infinity();
  for (size_t i = 1; i < radii.size(); ++i) {
    if (!(radii[i] > radii[i - 1])) throw Error(ErrorCode::InvalidArgument, "radius grid must increase");
  }
  const int m = ev.params().m;
  const size_t start = radii.size() - std::max<size_t>(1, radii.size() / 3);
  double rate = -std::numeric_limits<double>::infinity();
  for (size_t i = start; i < radii.size(); ++i) {
    const SolutionColumn c = ev.column(ev.table(QPoint::on_ray(m, radii[i], theta)), k, shift);
    rate = std::max(rate, c.logmag.real() / radii[i]);
  }
  return rate;
}

}  // namespace eqstab
