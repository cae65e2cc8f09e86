#pragma once

// Central charges along a ray t = r e^{-2 pi i theta}, continuous phases,
// the gap condition, gluing shifts and the pairwise growth diagnostics.

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "eqstab/jackson_mp.hpp"
#include "eqstab/mutation.hpp"

namespace eqstab {

struct PathConfig {
  int m = 3;
  double theta = 0.05;
  double r_min = 5.0;
  double r_max = 50.0;
  int samples = 256;
  TorusParams tp;
  SConvention conv = SConvention::Half;
  SeriesConfig series{1e-12, 500, Precision::Multi};
  void validate() const;  // ConfigError
};

// ceil(m theta) + m - 1: Phi_{k (x) O(-d)} keeps O, ..., O(m-1) inside the
// sectors where the leading asymptotics hold.
int sector_shift(int m, double theta);
// growth index (d - j) mod m of O(j)
std::vector<int> beilinson_growth(int m, double theta);

// Z(k) at radius r as a logarithm. Uses ev when given (multiprecision),
// otherwise the double / double-double series.
LogValue central_charge(const KClass& k, double r, double theta, const TorusParams& tp, const SeriesConfig& cfg,
                        int shift, const JacksonEvaluator* ev = nullptr);

// radius -> log Z of every traced object
using ChargeProvider = std::function<std::vector<LogValue>(double)>;
// Provider for the objects of c; owns its evaluator. Thread safe.
ChargeProvider collection_charges(const Collection& c, const PathConfig& cfg);

struct PhaseTrace {
  std::vector<std::string> labels;
  std::vector<double> r;
  // per object, per sample: log Z with the imaginary part unwrapped (= pi phi)
  std::vector<std::vector<cplx>> log_z;
  std::vector<std::vector<double>> phi;
  std::vector<std::vector<int>> p;  // 1 - ceil(phi)
  int inserted = 0;                 // points added by refinement

  size_t objects() const { return log_z.size(); }
  size_t size() const { return r.size(); }
  double log_mass(size_t i, size_t k) const { return log_z[i][k].real(); }
  // M e^{i pi phi}; overflows for huge masses
  cplx z(size_t i, size_t k) const { return std::exp(log_z[i][k]); }
};

inline constexpr int kMaxUnwrapDepth = 12;

// Evaluates the grid (in parallel when parallel = true), then bisects every
// interval until all phase jumps are below 1/2. The branch at the smallest
// radius is the principal one. Throws UnwrapFailure past 2^12 subdivisions.
PhaseTrace phase_trace(const ChargeProvider& f, std::vector<std::string> labels, std::span<const double> radii,
                       bool parallel = true);
// Adds radius r (with refinement around it) to an existing trace; returns its index.
size_t trace_insert(PhaseTrace& t, const ChargeProvider& f, double r);

struct GapRow {
  double r = 0.0;
  bool ok = false;
  double margin = 0.0;  // min_i phi_{i+1} - ceil(phi_i)
};
struct GapReport {
  std::optional<double> r_star;
  std::optional<size_t> index;
  std::vector<GapRow> rows;
};
GapReport gap_report(const PhaseTrace& t);

struct GluingData {
  double r = 0.0;
  std::vector<int> p;
  std::vector<double> shifted_phase;  // phi + p in (0, 1]
  std::string descriptor;
};
// Uses the grid sample nearest to r. Throws GapViolation when the condition
// fails there.
GluingData gluing_data(const PhaseTrace& t, double r);
int gluing_shift(double phi);

struct EstimatorResult {
  std::vector<cplx> values;  // l / (1 + |l|)
  cplx tail{0.0, 0.0};
  cplx predicted{0.0, 0.0};  // unit direction; zero if E and F grow alike
  double tail_error = 0.0;   // |tail - predicted|
};
EstimatorResult estimator_from_log(std::span<const cplx> l);
// l = log Z_E - log Z_F with unwrapped phases; predicted direction from the
// growth labels of the two objects.
EstimatorResult quasi_convergence_estimator(const PhaseTrace& t, size_t e, size_t f, int m, double theta, int sigma_e,
                                            int sigma_f);

struct SupportRatio {
  std::vector<double> log_c;  // ln C(r)
  std::vector<double> c;      // C(r); may be inf/0 when out of range
  double log_c_max = 0.0;
};
// Twists default to {0, +-e_i}. s is the evaluation tuple.
SupportRatio support_ratio(const Collection& c, const PhaseTrace& t, const TorusParams& tp, std::span<const cplx> s,
                           std::vector<std::vector<int>> twists = {});
std::vector<std::vector<int>> default_twists(int m);

// CSV rows r, label, re_z, im_z, log_abs_z, phi, p
std::string trace_csv(const PhaseTrace& t);

}  // namespace eqstab
