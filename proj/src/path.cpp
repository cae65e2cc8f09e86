#include "eqstab/path.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>

#include "eqstab/error.hpp"
#include "eqstab/io.hpp"

namespace eqstab {

void PathConfig::validate() const {
  if (m < 2) throw Error(ErrorCode::ConfigError, "m must be at least 2");
  if (tp.m != m) throw Error(ErrorCode::ConfigError, "torus dimension differs from m");
  if (!(r_min > 0.0) || !(r_max > r_min)) throw Error(ErrorCode::ConfigError, "need 0 < r_min < r_max");
  if (samples < 16) throw Error(ErrorCode::ConfigError, "samples must be at least 16");
  series.validate();
}

int sector_shift(int m, double theta) {
  return static_cast<int>(std::ceil(static_cast<double>(m) * theta)) + m - 1;
}

std::vector<int> beilinson_growth(int m, double theta) {
  const int d = sector_shift(m, theta);
  std::vector<int> out;
  for (int j = 0; j < m; ++j) out.push_back(positive_mod(d - j, m));
  return out;
}

LogValue central_charge(const KClass& k, double r, double theta, const TorusParams& tp, const SeriesConfig& cfg,
                        int shift, const JacksonEvaluator* ev) {
  const QPoint q = QPoint::on_ray(tp.m, r, theta);
  if (ev) return ev->central_charge(ev->table(q), k, shift);
  if (cfg.precision == Precision::Multi) {
    JacksonEvaluator local(tp);
    return local.central_charge(local.table(q), k, shift);
  }
  return LogValue::from(integrate(phi_of_kclass(k, q, tp, cfg, shift), tp));
}

ChargeProvider collection_charges(const Collection& c, const PathConfig& cfg) {
  std::vector<KClass> ks;
  for (const auto& o : c.objects) ks.push_back(o.kclass);
  const int d = sector_shift(cfg.m, cfg.theta);
  std::shared_ptr<JacksonEvaluator> ev;
  if (cfg.series.precision == Precision::Multi) ev = std::make_shared<JacksonEvaluator>(cfg.tp);
  return [ks, d, ev, cfg](double r) {
    std::vector<LogValue> out;
    out.reserve(ks.size());
    if (ev) {
      const SeriesTable t = ev->table(QPoint::on_ray(cfg.m, r, cfg.theta));
      for (const auto& k : ks) out.push_back(ev->central_charge(t, k, d));
    } else {
      for (const auto& k : ks) out.push_back(central_charge(k, r, cfg.theta, cfg.tp, cfg.series, d));
    }
    return out;
  };
}

namespace {

struct Sample {
  double r = 0.0;
  std::vector<cplx> lz;  // unwrapped
};

void check_nonzero(const std::vector<LogValue>& v, double r) {
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero() || !std::isfinite(v[i].log.real())) {
      throw Error(ErrorCode::UnwrapFailure, "Z of object " + std::to_string(i) + " vanishes or is not finite at r = " +
                                                format_g17(r));
    }
  }
}

Sample unwrap_from(const Sample& a, double rb, const std::vector<LogValue>& vb) {
  Sample s{rb, {}};
  for (size_t i = 0; i < vb.size(); ++i) {
    const double im = a.lz[i].imag() + wrap_angle(vb[i].arg() - a.lz[i].imag());
    s.lz.emplace_back(vb[i].log_abs(), im);
  }
  return s;
}

bool jumps_ok(const Sample& a, const std::vector<LogValue>& vb) {
  for (size_t i = 0; i < vb.size(); ++i) {
    if (std::abs(wrap_angle(vb[i].arg() - a.lz[i].imag())) >= 0.5 * kPi) return false;
  }
  return true;
}

// Appends the samples in (a.r, rb], ending with rb.
void refine(const ChargeProvider& f, const Sample& a, double rb, const std::vector<LogValue>& vb, int depth,
            std::vector<Sample>& out) {
  if (jumps_ok(a, vb)) {
    out.push_back(unwrap_from(a, rb, vb));
    return;
  }
  if (depth >= kMaxUnwrapDepth) {
    throw Error(ErrorCode::UnwrapFailure, "phase jump persists after 2^12 subdivisions near r = " + format_g17(rb) +
                                              " (Z passes near zero?)");
  }
  const double rm = 0.5 * (a.r + rb);
  const auto vm = f(rm);
  check_nonzero(vm, rm);
  refine(f, a, rm, vm, depth + 1, out);
  const Sample left = out.back();
  refine(f, left, rb, vb, depth + 1, out);
}

void fill_derived(PhaseTrace& t) {
  const size_t n = t.objects();
  t.phi.assign(n, {});
  t.p.assign(n, {});
  for (size_t i = 0; i < n; ++i) {
    for (const cplx& lz : t.log_z[i]) {
      const double ph = lz.imag() / kPi;
      t.phi[i].push_back(ph);
      t.p[i].push_back(gluing_shift(ph));
    }
  }
}

}  // namespace

PhaseTrace phase_trace(const ChargeProvider& f, std::vector<std::string> labels, std::span<const double> radii,
                       bool parallel) {
  if (radii.size() < 2) throw Error(ErrorCode::InvalidArgument, "phase trace needs at least two radii");
  std::vector<double> r(radii.begin(), radii.end());
  std::sort(r.begin(), r.end());
  for (size_t k = 1; k < r.size(); ++k) {
    if (!(r[k] > r[k - 1])) throw Error(ErrorCode::InvalidArgument, "duplicate radius in grid");
  }
  const long n = static_cast<long>(r.size());
  std::vector<std::vector<LogValue>> vals(r.size());
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long k = 0; k < n; ++k) {
    try {
      vals[static_cast<size_t>(k)] = f(r[static_cast<size_t>(k)]);
    } catch (...) {
#pragma omp critical(eqstab_trace_err)
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  for (size_t k = 0; k < r.size(); ++k) {
    if (vals[k].size() != labels.size()) throw Error(ErrorCode::DimensionMismatch, "provider/label count differ");
    check_nonzero(vals[k], r[k]);
  }

  std::vector<Sample> seq;
  Sample first{r[0], {}};
  for (const auto& v : vals[0]) first.lz.emplace_back(v.log_abs(), wrap_angle(v.arg()));
  seq.push_back(first);
  for (size_t k = 1; k < r.size(); ++k) {
    const Sample a = seq.back();
    refine(f, a, r[k], vals[k], 0, seq);
  }

  PhaseTrace t;
  t.labels = std::move(labels);
  t.log_z.assign(t.labels.size(), {});
  for (const auto& s : seq) {
    t.r.push_back(s.r);
    for (size_t i = 0; i < s.lz.size(); ++i) t.log_z[i].push_back(s.lz[i]);
  }
  t.inserted = static_cast<int>(seq.size() - r.size());
  fill_derived(t);
  return t;
}

size_t trace_insert(PhaseTrace& t, const ChargeProvider& f, double r) {
  if (t.size() == 0 || r < t.r.front() || r > t.r.back()) {
    throw Error(ErrorCode::InvalidArgument, "insert radius outside the traced range");
  }
  const auto it = std::lower_bound(t.r.begin(), t.r.end(), r);
  size_t k = static_cast<size_t>(it - t.r.begin());
  if (k < t.size() && std::abs(t.r[k] - r) <= 1e-14 * r) return k;
  const size_t lo = k - 1, hi = k;  // r_lo < r < r_hi
  const size_t n = t.objects();

  Sample a{t.r[lo], {}};
  for (size_t i = 0; i < n; ++i) a.lz.push_back(t.log_z[i][lo]);
  std::vector<Sample> seq;
  const auto vr = f(r);
  check_nonzero(vr, r);
  refine(f, a, r, vr, 0, seq);
  const size_t at = seq.size() - 1;

  std::vector<LogValue> vhi(n);
  for (size_t i = 0; i < n; ++i) vhi[i].log = t.log_z[i][hi];
  const Sample mid = seq.back();
  refine(f, mid, t.r[hi], vhi, 0, seq);
  for (size_t i = 0; i < n; ++i) {
    if (std::abs(seq.back().lz[i].imag() - t.log_z[i][hi].imag()) > 1e-9 * (1.0 + std::abs(t.log_z[i][hi].imag()))) {
      throw Error(ErrorCode::UnwrapFailure, "inserted point disagrees with the existing branch near r = " +
                                                format_g17(r));
    }
  }
  seq.pop_back();
  for (size_t s = 0; s < seq.size(); ++s) {
    t.r.insert(t.r.begin() + static_cast<long>(hi + s), seq[s].r);
    for (size_t i = 0; i < n; ++i) t.log_z[i].insert(t.log_z[i].begin() + static_cast<long>(hi + s), seq[s].lz[i]);
  }
  t.inserted += static_cast<int>(seq.size());
  fill_derived(t);
  return hi + at;
}

int gluing_shift(double phi) { return 1 - static_cast<int>(std::ceil(phi)); }

GapReport gap_report(const PhaseTrace& t) {
  GapReport rep;
  for (size_t k = 0; k < t.size(); ++k) {
    GapRow row{t.r[k], true, std::numeric_limits<double>::infinity()};
    for (size_t i = 0; i + 1 < t.objects(); ++i) {
      const double mg = t.phi[i + 1][k] - std::ceil(t.phi[i][k]);
      row.margin = std::min(row.margin, mg);
    }
    row.ok = row.margin > 0.0;
    rep.rows.push_back(row);
  }
  size_t k = rep.rows.size();
  while (k > 0 && rep.rows[k - 1].ok) --k;
  if (k < rep.rows.size()) {
    rep.index = k;
    rep.r_star = rep.rows[k].r;
  }
  return rep;
}

GluingData gluing_data(const PhaseTrace& t, double r) {
  if (t.size() == 0) throw Error(ErrorCode::InvalidArgument, "empty trace");
  size_t k = 0;
  for (size_t j = 1; j < t.size(); ++j) {
    if (std::abs(t.r[j] - r) < std::abs(t.r[k] - r)) k = j;
  }
  for (size_t i = 0; i + 1 < t.objects(); ++i) {
    if (!(std::ceil(t.phi[i][k]) < t.phi[i + 1][k])) {
      throw Error(ErrorCode::GapViolation, "ceil(phi_" + std::to_string(i) + ") >= phi_" + std::to_string(i + 1) +
                                               " at r = " + format_g17(t.r[k]));
    }
  }
  GluingData g;
  g.r = t.r[k];
  std::ostringstream desc;
  desc << "<";
  for (size_t i = 0; i < t.objects(); ++i) {
    const int p = gluing_shift(t.phi[i][k]);
    g.p.push_back(p);
    g.shifted_phase.push_back(t.phi[i][k] + p);
    if (i) desc << ", ";
    desc << t.labels[i] << " (x) Rep(T)[" << p << "]";
  }
  desc << ">";
  g.descriptor = desc.str();
  return g;
}

EstimatorResult estimator_from_log(std::span<const cplx> l) {
  EstimatorResult res;
  for (const cplx& x : l) res.values.push_back(x / (1.0 + std::abs(x)));
  if (!res.values.empty()) res.tail = res.values.back();
  return res;
}

EstimatorResult quasi_convergence_estimator(const PhaseTrace& t, size_t e, size_t f, int m, double theta, int sigma_e,
                                            int sigma_f) {
  std::vector<cplx> l;
  for (size_t k = 0; k < t.size(); ++k) l.push_back(t.log_z[e][k] - t.log_z[f][k]);
  EstimatorResult res = estimator_from_log(l);
  const cplx dir = ray_direction(m, sigma_e, theta) - ray_direction(m, sigma_f, theta);
  res.predicted = std::abs(dir) > 0.0 ? dir / std::abs(dir) : cplx{0.0, 0.0};
  res.tail_error = std::abs(res.tail - res.predicted);
  return res;
}

std::vector<std::vector<int>> default_twists(int m) {
  std::vector<std::vector<int>> w{std::vector<int>(static_cast<size_t>(m), 0)};
  for (int i = 0; i < m; ++i) {
    for (int sgn : {1, -1}) {
      std::vector<int> v(static_cast<size_t>(m), 0);
      v[static_cast<size_t>(i)] = sgn;
      w.push_back(v);
    }
  }
  return w;
}

SupportRatio support_ratio(const Collection& c, const PhaseTrace& t, const TorusParams& tp, std::span<const cplx> s,
                           std::vector<std::vector<int>> twists) {
  if (twists.empty()) twists = default_twists(c.m);
  if (c.objects.size() != t.objects()) throw Error(ErrorCode::DimensionMismatch, "collection and trace differ");
  SupportRatio out;
  out.log_c_max = -std::numeric_limits<double>::infinity();
  for (size_t k = 0; k < t.size(); ++k) {
    double best = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < c.objects.size(); ++i) {
      for (const auto& w : twists) {
        const double num = knorm(c.objects[i].kclass.twisted(w), s);
        if (!(num > 0.0)) continue;
        // |Z(E (x) 1^w)| = |exp(2 pi i <w, z>)| |Z(E)|
        double wz = 0.0;
        for (size_t a = 0; a < w.size(); ++a) wz += static_cast<double>(w[a]) * tp.z[a].imag();
        const double log_abs_z = t.log_mass(i, k) - kTwoPi * wz;
        best = std::max(best, std::log(num) - log_abs_z);
      }
    }
    out.log_c.push_back(best);
    out.c.push_back(std::exp(best));
    out.log_c_max = std::max(out.log_c_max, best);
  }
  return out;
}

std::string trace_csv(const PhaseTrace& t) {
  std::string s = "r,label,re_z,im_z,log_abs_z,phi,p\n";
  for (size_t k = 0; k < t.size(); ++k) {
    for (size_t i = 0; i < t.objects(); ++i) {
      const cplx z = t.z(i, k);
      s += format_g17(t.r[k]) + "," + t.labels[i] + "," + format_g17(z.real()) + "," + format_g17(z.imag()) + "," +
           format_g17(t.log_mass(i, k)) + "," + format_g17(t.phi[i][k]) + "," + std::to_string(t.p[i][k]) + "\n";
    }
  }
  return s;
}

}  // namespace eqstab
