#ifndef BRNR_GMODULE_HPP
#define BRNR_GMODULE_HPP

#include "group.hpp"

namespace brnr {

// Finite abelian coefficient module (+) Z/d_i with a group acting by integer
// matrices; entry (i,j) of each action matrix is kept reduced mod d_i.
class GModule {
 public:
  GModule() = default;
  GModule(GroupPtr group, std::vector<i64> factors, std::vector<Mat> action);

  const GroupPtr& group() const { return group_; }
  const std::vector<i64>& factors() const { return factors_; }
  int rank() const { return int(factors_.size()); }
  i64 exponent() const { return factors_.empty() ? 1 : factors_.back(); }
  const Mat& act(Elt g) const { return action_[g]; }
  uint64_t hash() const { return hash_; }

  std::vector<i64> zero() const { return std::vector<i64>(rank(), 0); }
  std::vector<i64> reduce(std::vector<i64> v) const;
  std::vector<i64> add(const std::vector<i64>& a, const std::vector<i64>& b) const;
  std::vector<i64> sub(const std::vector<i64>& a, const std::vector<i64>& b) const;
  std::vector<i64> neg(const std::vector<i64>& a) const;
  std::vector<i64> apply(Elt g, const std::vector<i64>& v) const;
  bool is_zero(const std::vector<i64>& v) const;

  // exhaustive action checks for |G| <= 64, sampled above; automorphism check
  void validate() const;

 private:
  GroupPtr group_;
  std::vector<i64> factors_;
  std::vector<Mat> action_;
  uint64_t hash_ = 0;
};

GModule trivial_module(const GroupPtr& g, const std::vector<i64>& factors);

// rank-1 module Z/n with gamma acting through a multiplicative character into
// (Z/n)^*, given as the value at every element of gamma.
GModule mu_module(i64 n, const GroupPtr& gamma, const std::vector<i64>& character);

// module over the source of f, acting through f
GModule pull_back_module(const GModule& m, const GroupHom& f);

// module over the subgroup presented as its own group
GModule restrict_module(const GModule& m, const SubgroupGroup& h);

// induced module along embed: H -> G, coordinates indexed coset-major over the
// minimal left transversal
GModule induced_module(const GModule& m_over_h, const GroupHom& embed);

// Hom(A, Z/n) with the contragredient action twisted by the character:
// (gamma.psi)(a) = chi(gamma) * psi(gamma^{-1} a).
// action_on_a: image map per element of gamma (automorphisms of A).
GModule dual_module(const GroupPtr& a, i64 n, const GroupPtr& gamma,
                    const std::vector<std::vector<Elt>>& action_on_a,
                    const std::vector<i64>& character);

// coordinate module of an abelian group (used by dual_module's tests)
GModule coordinate_module(const GroupPtr& a, const GroupPtr& gamma,
                          const std::vector<std::vector<Elt>>& action_on_a);

}  // namespace brnr

#endif
