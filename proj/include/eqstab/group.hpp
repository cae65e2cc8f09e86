#pragma once

// Character-level bookkeeping for finite groups acting linearly on P(V):
// symmetric-power characters, induction along class fusion, Hom^0
// multiplicities between O(i) (x) V_p, and block counts.

#include <filesystem>
#include <string>

#include "eqstab/io.hpp"

namespace eqstab {

using ClassFunction = std::vector<cplx>;

struct FiniteGroupData {
  std::string name;
  int order = 0;
  std::vector<int> class_sizes;
  // powermaps[c][j mod len] = class of g^j for g in class c; len = order of g
  std::vector<std::vector<int>> powermaps;
  std::vector<std::vector<cplx>> chartable;  // [irrep][class]; class 0 is the identity

  int classes() const { return static_cast<int>(class_sizes.size()); }
  int irreps() const { return static_cast<int>(chartable.size()); }
  int power_class(int c, int j) const;  // MissingPowerMap
  ClassFunction character(int p) const { return chartable[static_cast<size_t>(p)]; }
  // Throws ConfigError on inconsistent sizes, power maps or failed orthogonality.
  void validate() const;
};

FiniteGroupData group_from_json(const Json& j);
Json group_to_json(const FiniteGroupData& g);
FiniteGroupData load_group(const std::filesystem::path& path);

struct Subgroup {
  FiniteGroupData h;
  std::vector<int> fusion;  // class of H -> class of G
};
// BadFusion unless the fusion map is consistent with the class sizes.
void validate_fusion(const FiniteGroupData& g, const Subgroup& s);

ClassFunction dual_character(const ClassFunction& chi);
// Character of Sym^k from the character of the dual space (Newton recursion).
ClassFunction sym_power_character(const FiniteGroupData& g, const ClassFunction& chi_dual, int k);
ClassFunction product(const ClassFunction& a, const ClassFunction& b);
// (1/|G|) sum_c |c| a(c) conj(b(c)), unrounded
cplx inner_product(const FiniteGroupData& g, const ClassFunction& a, const ClassFunction& b);
// Rounded inner product; NonIntegral when farther than 1e-6 from an integer.
long long mult(const FiniteGroupData& g, const ClassFunction& a, const ClassFunction& b);
ClassFunction regular_character(const FiniteGroupData& g);
ClassFunction induced_character(const FiniteGroupData& g, const Subgroup& s, const ClassFunction& chi);
ClassFunction restrict_character(const Subgroup& s, const ClassFunction& psi);

struct Block {
  std::string label;
  int orbit_length = 1;
  Subgroup stabilizer;
  bool lift_assumed = true;  // equivariant lift of the block leader taken as given
};

struct InducedObject {
  int block = 0;
  int irrep = 0;  // irrep of the stabilizer
  std::string label;
  ClassFunction induced;  // Ind_H^G of that irrep
};
// Block-major, irreps of each stabilizer in table order. InvalidArgument when
// orbit_length * |H| != |G|.
std::vector<InducedObject> induced_collection(const FiniteGroupData& g, const std::vector<Block>& blocks);

struct GHomReport {
  int m = 0;
  int maxdeg = 0;
  // hom[d][p][q] = dim Hom_G(O (x) V_p, O(d) (x) V_q) = mult(chi_{S^d V*} chi_q, chi_p)
  std::vector<std::vector<std::vector<long long>>> hom;
  std::vector<std::string> violations;
  std::string backward = "zero (structural: Hom(O(j), O(i)) = 0 for i < j)";
  std::string higher_ext = "assumed (Beilinson)";
  bool ok() const { return violations.empty(); }
};
GHomReport verify_g_sod_projective(const FiniteGroupData& g, const ClassFunction& chi_v, int m, int maxdeg);
// Throws PatternViolation with the recorded offenders.
void require_pattern(const GHomReport& r);

struct RankReport {
  long long total = 0;
  long long expected = 0;
  bool match = false;
};
RankReport block_rank_check(const std::vector<Block>& blocks, long long expected);

// Z/n, D_n (order 2n) and S3, built from closed forms.
FiniteGroupData cyclic_group(int n);
FiniteGroupData dihedral_group(int n);
FiniteGroupData trivial_group();
std::vector<std::string> bundled_group_names();
FiniteGroupData bundled_group(const std::string& name);  // ConfigError if unknown
// Identity, trivial subgroup and (where present) rotation / cyclic subgroups.
std::vector<Subgroup> bundled_subgroups(const std::string& name);

}  // namespace eqstab
