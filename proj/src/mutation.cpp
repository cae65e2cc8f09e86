#include "eqstab/mutation.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <set>

#include "eqstab/error.hpp"

namespace eqstab {

std::vector<long long> solution_coefficients(const KClass& k, int sol_lo, int count) {
  std::vector<long long> out(static_cast<size_t>(count), 0);
  for (size_t t = 0; t < k.coeffs().size(); ++t) {
    if (k.coeffs()[t] == 0) continue;
    const int n = -(k.offset() + static_cast<int>(t));
    const int idx = n - sol_lo;
    if (idx < 0 || idx >= count) {
      throw Error(ErrorCode::IndexOutOfRange, "K-class degree outside the solution window");
    }
    out[static_cast<size_t>(idx)] = k.coeffs()[t];
  }
  return out;
}

Collection beilinson_collection(int m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "m must be positive");
  Collection c;
  c.m = m;
  c.sol_lo = -(m - 1);
  for (int j = 0; j < m; ++j) {
    ExcObject e;
    e.kclass = KClass::line(m, j);
    e.solcoef = solution_coefficients(e.kclass, c.sol_lo, m);
    e.label = j == 0 ? "O" : "O(" + std::to_string(j) + ")";
    c.objects.push_back(std::move(e));
  }
  return c;
}

std::vector<std::vector<long long>> euler_gram(int m, const std::vector<int>& offsets) {
  std::vector<std::vector<long long>> g(offsets.size(), std::vector<long long>(offsets.size()));
  for (size_t a = 0; a < offsets.size(); ++a) {
    for (size_t b = 0; b < offsets.size(); ++b) g[a][b] = binom_poly(offsets[b] - offsets[a], m);
  }
  return g;
}

namespace {

void check_position(const Collection& c, int j) {
  if (j < 0 || j + 1 >= static_cast<int>(c.objects.size())) {
    throw Error(ErrorCode::IndexOutOfRange, "mutation position " + std::to_string(j) + " for a collection of " +
                                                std::to_string(c.objects.size()));
  }
}

std::vector<long long> axpy(const std::vector<long long>& x, long long a, const std::vector<long long>& y) {
  std::vector<long long> out = x;
  for (size_t i = 0; i < out.size(); ++i) out[i] -= a * y[i];
  return out;
}

void note_chi(Collection& c, long long chi, int j) {
  if (chi < 0) {
    c.warnings.push_back("negative chi " + std::to_string(chi) + " at position " + std::to_string(j) +
                         "; strongness may have failed");
  }
}

}  // namespace

Collection right_mutation(const Collection& c, int j) {
  check_position(c, j);
  Collection out = c;
  const ExcObject& e = c.objects[static_cast<size_t>(j)];
  const ExcObject& f = c.objects[static_cast<size_t>(j + 1)];
  const long long chi = euler_pairing_limit(e.kclass, f.kclass);
  note_chi(out, chi, j);
  // (E, F) -> (F, R), [R] = [E] - chi [F]
  ExcObject r;
  r.kclass = e.kclass - chi * f.kclass;
  r.solcoef = axpy(e.solcoef, chi, f.solcoef);
  r.label = "R_{" + f.label + "}(" + e.label + ")";
  r.growth = e.growth;
  out.objects[static_cast<size_t>(j)] = f;
  out.objects[static_cast<size_t>(j + 1)] = std::move(r);
  out.log.push_back({j, 'R', chi});
  return out;
}

Collection left_mutation(const Collection& c, int j) {
  check_position(c, j);
  Collection out = c;
  const ExcObject& e = c.objects[static_cast<size_t>(j)];
  const ExcObject& f = c.objects[static_cast<size_t>(j + 1)];
  const long long chi = euler_pairing_limit(e.kclass, f.kclass);
  note_chi(out, chi, j);
  // (E, F) -> (L, E), [L] = [F] - chi [E]
  ExcObject l;
  l.kclass = f.kclass - chi * e.kclass;
  l.solcoef = axpy(f.solcoef, chi, e.solcoef);
  l.label = "L_{" + e.label + "}(" + f.label + ")";
  l.growth = f.growth;
  out.objects[static_cast<size_t>(j)] = std::move(l);
  out.objects[static_cast<size_t>(j + 1)] = e;
  out.log.push_back({j, 'L', chi});
  return out;
}

cplx growth_direction(int m, int n, double theta) { return ray_direction(m, n, theta); }

Admissibility is_admissible(double theta, int m) {
  std::vector<cplx> d;
  for (int n = 0; n < m; ++n) d.push_back(growth_direction(m, n, theta));
  double margin = std::numeric_limits<double>::infinity();
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      margin = std::min(margin, std::abs(d[static_cast<size_t>(a)].imag() - d[static_cast<size_t>(b)].imag()));
      margin = std::min(margin, std::abs(d[static_cast<size_t>(a)].real() - d[static_cast<size_t>(b)].real()));
    }
  }
  return {margin > kAdmissibleMargin, margin};
}

void set_growth(Collection& c, const std::vector<int>& sigma) {
  if (sigma.size() != c.objects.size()) throw Error(ErrorCode::DimensionMismatch, "one label per object");
  for (size_t i = 0; i < sigma.size(); ++i) c.objects[i].growth = positive_mod(sigma[i], c.m);
}

std::vector<int> assign_growth(Collection& c, const std::vector<cplx>& fitted) {
  if (fitted.size() != c.objects.size()) throw Error(ErrorCode::DimensionMismatch, "one fit per object");
  std::vector<int> sigma;
  std::set<int> seen;
  for (const cplx& f : fitted) {
    int best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (int n = 0; n < c.m; ++n) {
      const double d = std::abs(f - root_of_unity(c.m, n));
      if (d < bd) {
        bd = d;
        best = n;
      }
    }
    if (!seen.insert(best).second) {
      throw Error(ErrorCode::GrowthCollision, "two objects fit zeta^" + std::to_string(best));
    }
    sigma.push_back(best);
  }
  set_growth(c, sigma);
  return sigma;
}

namespace {

double im_key(const Collection& c, size_t i, double theta) {
  const auto& g = c.objects[i].growth;
  if (!g) throw Error(ErrorCode::InvalidArgument, "object " + c.objects[i].label + " has no growth label");
  return growth_direction(c.m, *g, theta).imag();
}

double re_key(const Collection& c, size_t i, double theta) {
  return growth_direction(c.m, *c.objects[i].growth, theta).real();
}

}  // namespace

int inversion_count(const Collection& c, double theta) {
  int inv = 0;
  for (size_t i = 0; i < c.objects.size(); ++i) {
    for (size_t j = i + 1; j < c.objects.size(); ++j) {
      if (im_key(c, i, theta) > im_key(c, j, theta)) ++inv;
    }
  }
  return inv;
}

SortResult sort_collection(const Collection& c, double theta) {
  const Admissibility adm = is_admissible(theta, c.m);
  if (!adm.admissible) {
    throw Error(ErrorCode::InvalidArgument, "theta = " + std::to_string(theta) + " is inadmissible (margin " +
                                                std::to_string(adm.margin) + ")");
  }
  SortResult res;
  res.sorted = c;
  int inv = inversion_count(res.sorted, theta);
  res.inversions.push_back(inv);
  const int guard = c.m * c.m;
  for (int it = 0; inv > 0; ++it) {
    if (it >= guard) throw Error(ErrorCode::NonTermination, "sorting exceeded m^2 iterations");
    size_t j = 0;
    while (im_key(res.sorted, j, theta) < im_key(res.sorted, j + 1, theta)) ++j;
    const int pos = static_cast<int>(j);
    if (re_key(res.sorted, j, theta) > re_key(res.sorted, j + 1, theta)) {
      res.sorted = right_mutation(res.sorted, pos);
    } else {
      res.sorted = left_mutation(res.sorted, pos);
    }
    res.steps.push_back(res.sorted.log.back());
    const int next = inversion_count(res.sorted, theta);
    if (next >= inv) throw Error(ErrorCode::NonTermination, "inversion count did not decrease");
    inv = next;
    res.inversions.push_back(inv);
  }
  for (const auto& o : res.sorted.objects) res.sigma.push_back(*o.growth);
  return res;
}

std::vector<std::vector<long long>> beilinson_matrix(const Collection& c, int* lo_degree) {
  int lo = std::numeric_limits<int>::max(), hi = std::numeric_limits<int>::min();
  for (const auto& o : c.objects) {
    const KClass k = o.kclass.trimmed();
    if (k.is_zero()) continue;
    lo = std::min(lo, k.offset());
    hi = std::max(hi, k.offset() + static_cast<int>(k.coeffs().size()) - 1);
  }
  if (lo > hi) {
    lo = 0;
    hi = -1;
  }
  if (lo_degree) *lo_degree = lo;
  std::vector<std::vector<long long>> a;
  for (const auto& o : c.objects) {
    std::vector<long long> row;
    for (int n = lo; n <= hi; ++n) row.push_back(o.kclass.coefficient(n));
    a.push_back(std::move(row));
  }
  return a;
}

long long integer_determinant(std::vector<std::vector<long long>> a) {
  // fraction-free Bareiss elimination
  const size_t n = a.size();
  if (n == 0) return 1;
  std::vector<std::vector<__int128>> b(n, std::vector<__int128>(n));
  for (size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw Error(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
    for (size_t j = 0; j < n; ++j) b[i][j] = a[i][j];
  }
  int sign = 1;
  __int128 prev = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (b[k][k] == 0) {
      size_t p = k + 1;
      while (p < n && b[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(b[k], b[p]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) b[i][j] = (b[i][j] * b[k][k] - b[i][k] * b[k][j]) / prev;
    }
    prev = b[k][k];
  }
  return sign * static_cast<long long>(b[n - 1][n - 1]);
}

ExceptionalReport verify_exceptional(const Collection& c) {
  ExceptionalReport rep;
  const size_t n = c.objects.size();
  for (size_t i = 0; i < n; ++i) {
    const long long d = euler_pairing_limit(c.objects[i].kclass, c.objects[i].kclass);
    if (d != 1) {
      rep.violations.push_back("chi(" + c.objects[i].label + ", " + c.objects[i].label + ") = " + std::to_string(d));
    }
    for (size_t j = i + 1; j < n; ++j) {
      const long long v = euler_pairing_limit(c.objects[j].kclass, c.objects[i].kclass);
      if (v != 0) {
        rep.violations.push_back("chi(" + c.objects[j].label + ", " + c.objects[i].label + ") = " + std::to_string(v));
      }
    }
    const auto expect = solution_coefficients(c.objects[i].kclass, c.sol_lo, static_cast<int>(c.objects[i].solcoef.size()));
    if (expect != c.objects[i].solcoef) {
      rep.violations.push_back("solution coefficients of " + c.objects[i].label + " out of step with its K-class");
    }
  }
  const auto a = beilinson_matrix(c);
  rep.square = a.empty() || a.front().size() == a.size();
  if (!rep.square) {
    rep.violations.push_back("coefficient matrix is not square");
  } else {
    rep.determinant = integer_determinant(a);
    if (std::llabs(rep.determinant) != 1) rep.violations.push_back("|det| = " + std::to_string(std::llabs(rep.determinant)));
  }
  rep.clean = rep.violations.empty();
  return rep;
}

}  // namespace eqstab
