#include "eqstab/group.hpp"

#include <cmath>

#include "eqstab/error.hpp"
#include "eqstab/rings.hpp"

namespace eqstab {

int FiniteGroupData::power_class(int c, int j) const {
  const auto& pm = powermaps.at(static_cast<size_t>(c));
  if (pm.empty()) throw Error(ErrorCode::MissingPowerMap, name + ": no power map for class " + std::to_string(c));
  return pm[static_cast<size_t>(positive_mod(j, static_cast<int>(pm.size())))];
}

void FiniteGroupData::validate() const {
  const int k = classes();
  auto bad = [&](const std::string& s) { throw Error(ErrorCode::ConfigError, name + ": " + s); };
  if (k == 0) bad("no classes");
  long long total = 0;
  for (int s : class_sizes) {
    if (s <= 0) bad("class sizes must be positive");
    total += s;
  }
  if (total != order) bad("class sizes sum to " + std::to_string(total) + ", order is " + std::to_string(order));
  if (class_sizes[0] != 1) bad("class 0 must be the identity");
  if (static_cast<int>(powermaps.size()) != k) bad("one power map per class");
  for (int c = 0; c < k; ++c) {
    const auto& pm = powermaps[static_cast<size_t>(c)];
    if (pm.empty()) continue;  // reported lazily as MissingPowerMap
    for (int v : pm) {
      if (v < 0 || v >= k) bad("power map entry out of range");
    }
    if (pm[0] != 0) bad("g^0 must be the identity class");
    if (pm.size() > 1 && pm[1] != c) bad("g^1 must be the class itself");
    if (pm.size() == 1 && c != 0) bad("only the identity has order 1");
    if (order % static_cast<int>(pm.size()) != 0) bad("element order does not divide |G|");
  }
  if (irreps() != k) bad("character table must be square");
  for (const auto& row : chartable) {
    if (static_cast<int>(row.size()) != k) bad("character table row length");
  }
  for (int p = 0; p < k; ++p) {
    for (int q = 0; q < k; ++q) {
      const cplx ip = inner_product(*this, chartable[static_cast<size_t>(p)], chartable[static_cast<size_t>(q)]);
      const double want = p == q ? 1.0 : 0.0;
      if (std::abs(ip - want) > 1e-9) {
        bad("row orthogonality fails for (" + std::to_string(p) + ", " + std::to_string(q) + ")");
      }
    }
  }
}

FiniteGroupData group_from_json(const Json& j) {
  FiniteGroupData g;
  try {
    g.name = j.value("name", std::string("group"));
    g.order = j.at("order").get<int>();
    for (const auto& c : j.at("classes")) {
      g.class_sizes.push_back(c.at("size").get<int>());
      g.powermaps.push_back(c.value("powermap", std::vector<int>{}));
    }
    for (const auto& row : j.at("chartable")) {
      std::vector<cplx> r;
      for (const auto& v : row) r.push_back(complex_from_json(v, "character value"));
      g.chartable.push_back(std::move(r));
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("group data: ") + e.what());
  }
  g.validate();
  return g;
}

Json group_to_json(const FiniteGroupData& g) {
  Json classes = Json::array();
  for (int c = 0; c < g.classes(); ++c) {
    classes.push_back({{"size", g.class_sizes[static_cast<size_t>(c)]}, {"powermap", g.powermaps[static_cast<size_t>(c)]}});
  }
  Json table = Json::array();
  for (const auto& row : g.chartable) {
    Json r = Json::array();
    for (const cplx& v : row) {
      // exact zeros keep the files readable
      auto snap = [](double x) { return std::abs(2.0 * x - std::round(2.0 * x)) < 1e-12 ? std::round(2.0 * x) / 2.0 + 0.0 : x; };
      const double re = snap(v.real());
      const double im = snap(v.imag());
      if (im == 0.0) {
        r.push_back(re);
      } else {
        r.push_back(Json::array({re, im}));
      }
    }
    table.push_back(r);
  }
  return {{"name", g.name}, {"order", g.order}, {"classes", classes}, {"chartable", table}};
}

FiniteGroupData load_group(const std::filesystem::path& path) { return group_from_json(read_json_file(path)); }

void validate_fusion(const FiniteGroupData& g, const Subgroup& s) {
  const auto& h = s.h;
  if (static_cast<int>(s.fusion.size()) != h.classes()) throw Error(ErrorCode::BadFusion, "fusion map length");
  if (h.order <= 0 || g.order % h.order != 0) throw Error(ErrorCode::BadFusion, "|H| does not divide |G|");
  std::vector<long long> hit(static_cast<size_t>(g.classes()), 0);
  for (int c = 0; c < h.classes(); ++c) {
    const int t = s.fusion[static_cast<size_t>(c)];
    if (t < 0 || t >= g.classes()) throw Error(ErrorCode::BadFusion, "fusion target out of range");
    hit[static_cast<size_t>(t)] += h.class_sizes[static_cast<size_t>(c)];
  }
  if (s.fusion[0] != 0) throw Error(ErrorCode::BadFusion, "identity must fuse to the identity");
  for (int t = 0; t < g.classes(); ++t) {
    if (hit[static_cast<size_t>(t)] > g.class_sizes[static_cast<size_t>(t)]) {
      throw Error(ErrorCode::BadFusion, "more elements of H fuse into class " + std::to_string(t) + " than it has");
    }
  }
  // element orders and power maps have to commute with the fusion
  for (int c = 0; c < h.classes(); ++c) {
    const int t = s.fusion[static_cast<size_t>(c)];
    const auto& ph = h.powermaps[static_cast<size_t>(c)];
    if (ph.size() != g.powermaps[static_cast<size_t>(t)].size()) {
      throw Error(ErrorCode::BadFusion, "class " + std::to_string(c) + " of H changes element order under fusion");
    }
    for (size_t j = 0; j < ph.size(); ++j) {
      if (s.fusion[static_cast<size_t>(ph[j])] != g.power_class(t, static_cast<int>(j))) {
        throw Error(ErrorCode::BadFusion, "fusion does not commute with power maps at class " + std::to_string(c));
      }
    }
  }
}

ClassFunction dual_character(const ClassFunction& chi) {
  ClassFunction out;
  for (const cplx& v : chi) out.push_back(std::conj(v));
  return out;
}

ClassFunction sym_power_character(const FiniteGroupData& g, const ClassFunction& chi_dual, int k) {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "negative symmetric power");
  const int nc = g.classes();
  if (static_cast<int>(chi_dual.size()) != nc) throw Error(ErrorCode::DimensionMismatch, "class function length");
  std::vector<ClassFunction> s{ClassFunction(static_cast<size_t>(nc), 1.0)};
  for (int n = 1; n <= k; ++n) {
    ClassFunction next(static_cast<size_t>(nc), 0.0);
    for (int c = 0; c < nc; ++c) {
      cplx acc = 0.0;
      for (int j = 1; j <= n; ++j) {
        acc += chi_dual[static_cast<size_t>(g.power_class(c, j))] * s[static_cast<size_t>(n - j)][static_cast<size_t>(c)];
      }
      next[static_cast<size_t>(c)] = acc / static_cast<double>(n);
    }
    s.push_back(std::move(next));
  }
  return s.back();
}

ClassFunction product(const ClassFunction& a, const ClassFunction& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "class function length");
  ClassFunction out(a.size());
  for (size_t c = 0; c < a.size(); ++c) out[c] = a[c] * b[c];
  return out;
}

cplx inner_product(const FiniteGroupData& g, const ClassFunction& a, const ClassFunction& b) {
  if (static_cast<int>(a.size()) != g.classes() || static_cast<int>(b.size()) != g.classes()) {
    throw Error(ErrorCode::DimensionMismatch, "class function length");
  }
  CompensatedSum acc;
  for (int c = 0; c < g.classes(); ++c) {
    acc.add(static_cast<double>(g.class_sizes[static_cast<size_t>(c)]) * a[static_cast<size_t>(c)] *
            std::conj(b[static_cast<size_t>(c)]));
  }
  return acc.result() / static_cast<double>(g.order);
}

long long mult(const FiniteGroupData& g, const ClassFunction& a, const ClassFunction& b) {
  const cplx v = inner_product(g, a, b);
  const double r = std::round(v.real());
  if (std::abs(v - cplx(r, 0.0)) > 1e-6) {
    throw Error(ErrorCode::NonIntegral, "inner product " + format_g17(v.real()) + " + " + format_g17(v.imag()) + "i");
  }
  return static_cast<long long>(r);
}

ClassFunction regular_character(const FiniteGroupData& g) {
  ClassFunction out(static_cast<size_t>(g.classes()), 0.0);
  out[0] = static_cast<double>(g.order);
  return out;
}

ClassFunction induced_character(const FiniteGroupData& g, const Subgroup& s, const ClassFunction& chi) {
  validate_fusion(g, s);
  if (static_cast<int>(chi.size()) != s.h.classes()) throw Error(ErrorCode::DimensionMismatch, "class function length");
  ClassFunction out(static_cast<size_t>(g.classes()), 0.0);
  const double index = static_cast<double>(g.order) / static_cast<double>(s.h.order);
  for (int c = 0; c < s.h.classes(); ++c) {
    const size_t t = static_cast<size_t>(s.fusion[static_cast<size_t>(c)]);
    out[t] += static_cast<double>(s.h.class_sizes[static_cast<size_t>(c)]) * chi[static_cast<size_t>(c)];
  }
  for (int t = 0; t < g.classes(); ++t) out[static_cast<size_t>(t)] *= index / g.class_sizes[static_cast<size_t>(t)];
  return out;
}

ClassFunction restrict_character(const Subgroup& s, const ClassFunction& psi) {
  ClassFunction out;
  for (int t : s.fusion) out.push_back(psi.at(static_cast<size_t>(t)));
  return out;
}

std::vector<InducedObject> induced_collection(const FiniteGroupData& g, const std::vector<Block>& blocks) {
  std::vector<InducedObject> out;
  for (size_t b = 0; b < blocks.size(); ++b) {
    const Block& bl = blocks[b];
    if (static_cast<long long>(bl.orbit_length) * bl.stabilizer.h.order != g.order) {
      throw Error(ErrorCode::InvalidArgument, "block " + bl.label + ": orbit length * |H| != |G|");
    }
    for (int p = 0; p < bl.stabilizer.h.irreps(); ++p) {
      InducedObject o;
      o.block = static_cast<int>(b);
      o.irrep = p;
      o.label = "Ind(" + bl.label + " (x) V_" + std::to_string(p) + ")";
      o.induced = induced_character(g, bl.stabilizer, bl.stabilizer.h.character(p));
      out.push_back(std::move(o));
    }
  }
  return out;
}

GHomReport verify_g_sod_projective(const FiniteGroupData& g, const ClassFunction& chi_v, int m, int maxdeg) {
  if (static_cast<int>(chi_v.size()) != g.classes()) throw Error(ErrorCode::DimensionMismatch, "chi_V length");
  if (std::abs(chi_v[0] - cplx(m, 0.0)) > 1e-9) {
    throw Error(ErrorCode::InvalidArgument, "chi_V(1) must equal m = " + std::to_string(m));
  }
  if (maxdeg < m - 1) throw Error(ErrorCode::InvalidArgument, "maxdeg must be at least m - 1");
  GHomReport rep;
  rep.m = m;
  rep.maxdeg = maxdeg;
  const ClassFunction dual = dual_character(chi_v);
  const int k = g.irreps();
  for (int d = 0; d <= maxdeg; ++d) {
    const ClassFunction sd = sym_power_character(g, dual, d);
    std::vector<std::vector<long long>> h(static_cast<size_t>(k), std::vector<long long>(static_cast<size_t>(k)));
    for (int p = 0; p < k; ++p) {
      for (int q = 0; q < k; ++q) {
        const long long v = mult(g, product(sd, g.character(q)), g.character(p));
        h[static_cast<size_t>(p)][static_cast<size_t>(q)] = v;
        if (v < 0) {
          rep.violations.push_back("negative multiplicity at (d=" + std::to_string(d) + ", p=" + std::to_string(p) +
                                   ", q=" + std::to_string(q) + ")");
        }
        if (d == 0 && v != (p == q ? 1 : 0)) {
          rep.violations.push_back("(i=j, p=" + std::to_string(p) + ", q=" + std::to_string(q) +
                                   ") hom0 = " + std::to_string(v) + ", expected delta_pq");
        }
      }
      // dimension count
      long long lhs = 0;
      for (int q = 0; q < k; ++q) {
        lhs += h[static_cast<size_t>(p)][static_cast<size_t>(q)] * std::llround(g.chartable[static_cast<size_t>(q)][0].real());
      }
      const long long rhs = binom_poly(d, m) * std::llround(g.chartable[static_cast<size_t>(p)][0].real());
      if (lhs != rhs) {
        rep.violations.push_back("dimension count fails at (d=" + std::to_string(d) + ", p=" + std::to_string(p) + ")");
      }
    }
    rep.hom.push_back(std::move(h));
  }
  return rep;
}

void require_pattern(const GHomReport& r) {
  if (r.ok()) return;
  std::string s;
  for (const auto& v : r.violations) s += (s.empty() ? "" : "; ") + v;
  throw Error(ErrorCode::PatternViolation, s);
}

RankReport block_rank_check(const std::vector<Block>& blocks, long long expected) {
  RankReport r;
  for (const auto& b : blocks) r.total += b.stabilizer.h.irreps();
  r.expected = expected;
  r.match = r.total == expected;
  return r;
}

}  // namespace eqstab
