#include "eqstab/kernels.hpp"

#include <exception>

#include "eqstab/error.hpp"
#include "eqstab/path.hpp"

namespace eqstab {

namespace {

std::vector<LogValue> charges_at(const JacksonEvaluator& ev, const std::vector<KClass>& ks, int shift, double theta,
                                 double r) {
  const SeriesTable t = ev.table(QPoint::on_ray(ev.params().m, r, theta));
  std::vector<LogValue> out;
  out.reserve(ks.size());
  for (const auto& k : ks) out.push_back(ev.central_charge(t, k, shift));
  return out;
}

}  // namespace

ChargeGrid charge_grid(const JacksonEvaluator& ev, const std::vector<KClass>& ks, int shift, double theta,
                       std::span<const double> radii) {
  ChargeGrid out(radii.size());
  const long n = static_cast<long>(radii.size());
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      out[static_cast<size_t>(i)] = charges_at(ev, ks, shift, theta, radii[static_cast<size_t>(i)]);
    } catch (...) {
#pragma omp critical(eqstab_grid_err)
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  return out;
}

ChargeGrid charge_grid_serial(const JacksonEvaluator& ev, const std::vector<KClass>& ks, int shift, double theta,
                              std::span<const double> radii) {
  ChargeGrid out;
  out.reserve(radii.size());
  for (double r : radii) out.push_back(charges_at(ev, ks, shift, theta, r));
  return out;
}

SweepRow sweep_one(int m, double theta) {
  SweepRow row;
  row.theta = theta;
  row.admissible = is_admissible(theta, m).admissible;
  if (!row.admissible) return row;
  try {
    Collection c = beilinson_collection(m);
    set_growth(c, beilinson_growth(m, theta));
    const SortResult s = sort_collection(c, theta);
    row.initial_inversions = s.inversions.front();
    row.mutations = static_cast<int>(s.steps.size());
    row.strictly_sorted = true;
    for (size_t j = 0; j + 1 < s.sigma.size(); ++j) {
      if (!(growth_direction(m, s.sigma[j], theta).imag() < growth_direction(m, s.sigma[j + 1], theta).imag())) {
        row.strictly_sorted = false;
      }
    }
    row.determinant = integer_determinant(beilinson_matrix(s.sorted));
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

std::vector<SweepRow> theta_sweep(int m, std::span<const double> thetas) {
  std::vector<SweepRow> out(thetas.size());
  const long n = static_cast<long>(thetas.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[static_cast<size_t>(i)] = sweep_one(m, thetas[static_cast<size_t>(i)]);
  return out;
}

std::vector<SweepRow> theta_sweep_serial(int m, std::span<const double> thetas) {
  std::vector<SweepRow> out;
  out.reserve(thetas.size());
  for (double t : thetas) out.push_back(sweep_one(m, t));
  return out;
}

std::vector<double> admissible_thetas(int m, int count) {
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "count must be positive");
  std::vector<double> out;
  for (int k = 0; k < count; ++k) {
    double t = (k + 0.5) / count;
    for (int tries = 0; !is_admissible(t, m).admissible; ++tries) {
      if (tries > 16) throw Error(ErrorCode::InvalidArgument, "no admissible angle near " + std::to_string(t));
      t += 0.25 / count / (tries + 1);
    }
    out.push_back(t);
  }
  return out;
}

}  // namespace eqstab
