#ifndef BRNR_GROUP_HPP
#define BRNR_GROUP_HPP

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "common.hpp"
#include "matrix.hpp"

namespace brnr {

using Elt = int;

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Finite group on 0..n-1 with 0 the identity. Groups of order <= table_cap
// carry a full multiplication table; larger permutation groups multiply by
// composing stored permutations.
class FiniteGroup {
 public:
  static constexpr int kTableCap = 4096;

  static GroupPtr from_table(const std::vector<std::vector<Elt>>& table);
  // for tables associative by construction (products, fiber products):
  // identity/inverse checks only, no associativity sweep
  static GroupPtr from_table_trusted(const std::vector<std::vector<Elt>>& table);
  static GroupPtr from_permutations(int degree, const std::vector<std::vector<Elt>>& generators,
                                    int order_cap = 20000);
  static GroupPtr trivial();
  static GroupPtr cyclic(int n);
  static GroupPtr abelian(const std::vector<int>& factors);  // direct sum of cyclics

  int order() const { return n_; }
  Elt mult(Elt a, Elt b) const {
    if (!table_.empty()) return table_[size_t(a) * n_ + b];
    return mult_slow(a, b);
  }
  Elt inv(Elt a) const { return inv_[a]; }
  Elt conj(Elt g, Elt x) const { return mult(mult(g, x), inv(g)); }  // g x g^{-1}
  Elt power(Elt a, i64 k) const;
  int element_order(Elt a) const;
  int exponent() const;
  bool is_abelian() const;

  // Deterministic small generating set (greedy by element index).
  const std::vector<Elt>& generators() const;

  // Breadth-first factorization over generators(): every non-identity g has
  // g = gen[parent_gen[g]] * parent_elt[g] with parent_elt shorter.
  struct BfsTree {
    std::vector<int> parent_gen;  // index into generators(), -1 for identity/generators
    std::vector<Elt> parent_elt;
  };
  const BfsTree& bfs_tree() const;

  uint64_t hash() const;

  // exhaustive checks for order <= 512, sampled above; throws with witnesses
  void validate() const;

 private:
  friend GroupPtr product_group(const std::vector<std::vector<Elt>>& table);
  friend GroupPtr table_group_impl(const std::vector<std::vector<Elt>>& table, bool trusted);
  FiniteGroup() = default;
  Elt mult_slow(Elt a, Elt b) const;

  int n_ = 0;
  std::vector<Elt> table_;  // n*n, row-major, may be empty for big perm groups
  std::vector<Elt> inv_;
  int degree_ = 0;
  std::vector<std::vector<Elt>> elt_perm_;  // per element, when perm-backed
  std::vector<Elt> perm_index_;             // hash helper: sorted perm order -> element

  mutable std::once_flag gens_once_, bfs_once_, hash_once_, abel_once_, exp_once_;
  mutable std::vector<Elt> gens_;
  mutable BfsTree bfs_;
  mutable uint64_t hash_ = 0;
  mutable bool abelian_ = false;
  mutable int exponent_ = 0;
};

struct Subgroup {
  GroupPtr parent;
  std::vector<Elt> members;  // sorted, contains 0

  int order() const { return int(members.size()); }
  bool contains(Elt g) const;
  bool is_normal() const;
  bool is_abelian() const;
  uint64_t hash() const;
};

struct GroupHom {
  GroupPtr source, target;
  std::vector<Elt> images;

  Elt operator()(Elt g) const { return images[g]; }
  void validate() const;  // hom property + identity
  bool is_surjective() const;
  std::vector<Elt> kernel() const;  // sorted member list
};

GroupHom identity_hom(const GroupPtr& g);
GroupHom compose(const GroupHom& second, const GroupHom& first);  // second after first

// --- subgroup machinery ---

Subgroup whole_group(const GroupPtr& g);
Subgroup trivial_subgroup(const GroupPtr& g);
Subgroup generated_subgroup(const GroupPtr& g, const std::vector<Elt>& gens);
Subgroup conjugate_subgroup(const Subgroup& h, Elt g);
Subgroup normalizer(const Subgroup& h);
Subgroup center(const GroupPtr& g);

// every subgroup, sorted by (order, lexicographic members); memoized in
// memory by group hash
std::vector<Subgroup> all_subgroups(const GroupPtr& g, int order_cap);
// cache plumbing for the persistent layer
std::shared_ptr<const std::vector<std::vector<Elt>>> subgroup_cache_peek(uint64_t ghash);
void subgroup_cache_store(uint64_t ghash, std::vector<std::vector<Elt>> members);

struct SubgroupClass {
  Subgroup representative;
  int class_size = 1;
};
std::vector<SubgroupClass> subgroups_up_to_conjugacy(const GroupPtr& g, int order_cap);

enum class SubgroupKind { Trivial, Cyclic, Bicyclic, AbelianHigherRank, Nonabelian };
SubgroupKind classify_subgroup(const Subgroup& h);
const char* subgroup_kind_name(SubgroupKind k);

// Relabels a subgroup as a standalone group; embed maps new indices back.
struct SubgroupGroup {
  GroupPtr group;
  GroupHom embed;  // group -> parent
};
SubgroupGroup subgroup_as_group(const Subgroup& h);

struct QuotientResult {
  GroupPtr group;
  GroupHom projection;
};
QuotientResult quotient_by_normal(const GroupPtr& g, const Subgroup& n);

struct SemidirectResult {
  GroupPtr group;
  GroupHom embed_f;    // F -> E
  GroupHom projection;  // E -> Gamma
  GroupHom section;     // Gamma -> E, projection . section = id
};
// action: for each element of gamma, an automorphism of f given as an image map
SemidirectResult semidirect_product(const GroupPtr& f, const GroupPtr& gamma,
                                    const std::vector<std::vector<Elt>>& action);
SemidirectResult direct_product(const GroupPtr& f, const GroupPtr& gamma);

// central product of a and b along an identification of central subgroups:
// quotient of a x b by the graph of z_a -> z_b (both cyclic of equal order).
GroupPtr central_product(const GroupPtr& a, Elt za, const GroupPtr& b, Elt zb);

// Invariant factors and explicit coordinates of an abelian group.
struct AbelianStructure {
  std::vector<i64> factors;                // d_1 | d_2 | ... (no 1s)
  std::vector<Elt> gens;                   // one per factor
  std::vector<std::vector<i64>> coords;    // per element, length = factors.size()
};
AbelianStructure abelian_structure(const GroupPtr& a);

// All automorphisms of a small group, as image maps on all elements;
// deterministic order. Intended for catalog action enumeration.
std::vector<std::vector<Elt>> automorphisms(const GroupPtr& g, size_t limit = 200000);

}  // namespace brnr

#endif
