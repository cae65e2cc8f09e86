#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "eqstab/error.hpp"
#include "eqstab/group.hpp"

namespace eqstab {

namespace {

std::vector<int> rotation_powermap(int n, int k, const std::function<int(int)>& cls) {
  const int ord = n / std::gcd(n, positive_mod(k, n) == 0 ? n : positive_mod(k, n));
  std::vector<int> pm;
  for (int j = 0; j < ord; ++j) pm.push_back(cls(positive_mod(k * j, n)));
  return pm;
}

}  // namespace

FiniteGroupData trivial_group() {
  FiniteGroupData g;
  g.name = "1";
  g.order = 1;
  g.class_sizes = {1};
  g.powermaps = {{0}};
  g.chartable = {{1.0}};
  return g;
}

FiniteGroupData cyclic_group(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "cyclic group order must be positive");
  if (n == 1) return trivial_group();
  FiniteGroupData g;
  g.name = "Z" + std::to_string(n);
  g.order = n;
  auto cls = [](int e) { return e; };
  for (int k = 0; k < n; ++k) {
    g.class_sizes.push_back(1);
    g.powermaps.push_back(rotation_powermap(n, k, cls));
  }
  for (int p = 0; p < n; ++p) {
    std::vector<cplx> row;
    for (int k = 0; k < n; ++k) row.push_back(root_of_unity(n, p * k));
    g.chartable.push_back(std::move(row));
  }
  return g;
}

FiniteGroupData dihedral_group(int n) {
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "dihedral group needs n >= 3");
  FiniteGroupData g;
  g.name = "D" + std::to_string(n);
  g.order = 2 * n;
  const bool even = n % 2 == 0;
  const int half = n / 2;
  // classes: identity, [r^{n/2}], r^{+-k} for k = 1 .. ceil(n/2) - 1, reflections (one or two classes)
  const int first_pair = even ? 2 : 1;
  const int pairs = even ? half - 1 : half;
  auto rot_class = [=](int e) {
    e = positive_mod(e, n);
    const int k = std::min(e, n - e);
    if (k == 0) return 0;
    if (even && k == half) return 1;
    return first_pair + k - 1;
  };
  g.class_sizes.push_back(1);
  g.powermaps.push_back({0});
  if (even) {
    g.class_sizes.push_back(1);
    g.powermaps.push_back(rotation_powermap(n, half, rot_class));
  }
  for (int k = 1; k <= pairs; ++k) {
    g.class_sizes.push_back(2);
    g.powermaps.push_back(rotation_powermap(n, k, rot_class));
  }
  const int refl = static_cast<int>(g.class_sizes.size());
  if (even) {
    g.class_sizes.insert(g.class_sizes.end(), {half, half});
    g.powermaps.push_back({0, refl});
    g.powermaps.push_back({0, refl + 1});
  } else {
    g.class_sizes.push_back(n);
    g.powermaps.push_back({0, refl});
  }
  const int nc = static_cast<int>(g.class_sizes.size());
  // representative rotation exponent per rotation class
  std::vector<int> rep_exp(static_cast<size_t>(refl), 0);
  if (even) rep_exp[1] = half;
  for (int k = 1; k <= pairs; ++k) rep_exp[static_cast<size_t>(first_pair + k - 1)] = k;

  auto linear = [&](int a, int b) {
    std::vector<cplx> row(static_cast<size_t>(nc));
    for (int c = 0; c < refl; ++c) row[static_cast<size_t>(c)] = (rep_exp[static_cast<size_t>(c)] % 2 != 0 && a < 0) ? -1.0 : 1.0;
    row[static_cast<size_t>(refl)] = b;
    if (even) row[static_cast<size_t>(refl + 1)] = b * a;
    return row;
  };
  g.chartable.push_back(linear(1, 1));
  g.chartable.push_back(linear(1, -1));
  if (even) {
    g.chartable.push_back(linear(-1, 1));
    g.chartable.push_back(linear(-1, -1));
  }
  for (int h = 1; h <= pairs; ++h) {
    std::vector<cplx> row(static_cast<size_t>(nc), 0.0);
    for (int c = 0; c < refl; ++c) {
      row[static_cast<size_t>(c)] = 2.0 * std::cos(kTwoPi * h * rep_exp[static_cast<size_t>(c)] / n);
    }
    g.chartable.push_back(std::move(row));
  }
  return g;
}

std::vector<std::string> bundled_group_names() {
  std::vector<std::string> names;
  for (int n = 2; n <= 12; ++n) names.push_back("Z" + std::to_string(n));
  names.push_back("S3");
  for (int n = 3; n <= 6; ++n) names.push_back("D" + std::to_string(n));
  return names;
}

FiniteGroupData bundled_group(const std::string& name) {
  if (name == "1") return trivial_group();
  if (name == "S3") {
    FiniteGroupData g = dihedral_group(3);
    g.name = "S3";
    return g;
  }
  if (name.size() > 1 && (name[0] == 'Z' || name[0] == 'D')) {
    int n = 0;
    try {
      n = std::stoi(name.substr(1));
    } catch (const std::exception&) {
      n = 0;
    }
    if (name[0] == 'Z' && n >= 2 && n <= 12) return cyclic_group(n);
    if (name[0] == 'D' && n >= 3 && n <= 6) return dihedral_group(n);
  }
  throw Error(ErrorCode::ConfigError, "unknown bundled group '" + name + "'");
}

std::vector<Subgroup> bundled_subgroups(const std::string& name) {
  const FiniteGroupData g = bundled_group(name);
  std::vector<Subgroup> out;
  std::vector<int> id(static_cast<size_t>(g.classes()));
  std::iota(id.begin(), id.end(), 0);
  out.push_back({g, id});
  if (g.order == 1) return out;
  out.push_back({trivial_group(), {0}});
  if (name[0] == 'Z') {
    const int n = g.order;
    for (int d = 2; d < n; ++d) {
      if (n % d != 0) continue;
      Subgroup s{cyclic_group(d), {}};
      for (int k = 0; k < d; ++k) s.fusion.push_back(k * (n / d));
      out.push_back(std::move(s));
    }
  } else {
    // rotation subgroup C_n inside D_n
    const int n = g.order / 2;
    const bool even = n % 2 == 0;
    Subgroup s{cyclic_group(n), {}};
    for (int e = 0; e < n; ++e) {
      const int k = std::min(e, n - e);
      s.fusion.push_back(k == 0 ? 0 : (even && k == n / 2) ? 1 : (even ? 2 : 1) + k - 1);
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace eqstab
