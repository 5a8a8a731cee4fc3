#ifndef BRNR_COHOMOLOGY_HPP
#define BRNR_COHOMOLOGY_HPP

#include <functional>
#include <memory>
#include <optional>

#include "gmodule.hpp"

namespace brnr {

// Normalized inhomogeneous cochain with dense value table; tuples containing
// the identity are implicitly zero and not stored.
struct Cochain {
  int degree = 0;
  GroupPtr group;
  int rank = 0;
  std::vector<i64> v;  // deg 0: r; deg 1: (n-1)*r; deg 2: (n-1)^2*r

  static Cochain zero(const GroupPtr& g, int rank, int degree);

  i64* at0() { return v.data(); }
  const i64* at0() const { return v.data(); }
  i64* at1(Elt g) { return v.data() + size_t(g - 1) * rank; }
  const i64* at1(Elt g) const { return v.data() + size_t(g - 1) * rank; }
  i64* at2(Elt g, Elt h) {
    int n1 = group->order() - 1;
    return v.data() + (size_t(g - 1) * n1 + (h - 1)) * rank;
  }
  const i64* at2(Elt g, Elt h) const {
    int n1 = group->order() - 1;
    return v.data() + (size_t(g - 1) * n1 + (h - 1)) * rank;
  }
  // value with identity handling, as a fresh vector
  std::vector<i64> value1(Elt g) const;
  std::vector<i64> value2(Elt g, Elt h) const;
};

Cochain cochain_add(const GModule& m, const Cochain& a, const Cochain& b);
Cochain cochain_sub(const GModule& m, const Cochain& a, const Cochain& b);
Cochain cochain_scale(const GModule& m, const Cochain& a, i64 k);

// coboundary of a cochain (degree 0 -> 1 or 1 -> 2)
Cochain coboundary(const GModule& m, const Cochain& c);
// delta of a degree-2 cochain evaluated at one triple
std::vector<i64> delta2_at(const GModule& m, const Cochain& c, Elt g, Elt h, Elt k);

class CohomologyGroup;
using CohomologyPtr = std::shared_ptr<const CohomologyGroup>;

struct CohomologyClass {
  CohomologyPtr parent;
  std::vector<i64> coords;
  Cochain rep;
  bool is_zero() const;
};

// H^i(G, M) for i <= 2, with representative cocycles and a membership solver.
class CohomologyGroup : public std::enable_shared_from_this<CohomologyGroup> {
 public:
  GroupPtr group;
  GModule module;
  int degree = 0;
  std::vector<i64> factors;     // invariant factors > 1
  std::vector<Cochain> basis;   // one representative per factor

  i64 order() const;

  bool is_cocycle(const Cochain& c) const;
  // coordinates of a cocycle's class w.r.t. basis; throws NotACocycle
  std::vector<i64> class_coords(const Cochain& c) const;
  // witness u with delta(u) = c when the class is trivial (degree 1 or 2)
  std::optional<Cochain> coboundary_witness(const Cochain& c) const;
  Cochain representative(const std::vector<i64>& coords) const;
  CohomologyClass cls(const std::vector<i64>& coords) const;
  CohomologyClass cls_of(const Cochain& cocycle) const;
  CohomologyClass zero_class() const;

  SubgroupLat full_subgroup() const { return SubgroupLat::full(factors); }
  SubgroupLat zero_subgroup() const { return SubgroupLat::zero(factors); }

  // --- construction internals (used by the builder) ---
  struct Reduced {
    std::vector<i64> moduli;  // per reduced unknown
    Mat klat;                 // HNF basis of the cocycle lattice
    Mat u;                    // transform: u * (klat coords) -> diagonal
    std::vector<i64> all_factors;  // length = moduli.size()
    std::vector<int> positions;    // indices with factor > 1
  } red;
  std::vector<i64> reduce_vector(const Cochain& c) const;  // generator-pair values
  Cochain expand_vector(const std::vector<i64>& z) const;  // cocycle from reduced vector
};

// main entry; cached by (group hash, module hash, degree)
CohomologyPtr cohomology_group(const GroupPtr& g, const GModule& m, int degree,
                               const Config& cfg = Config());
void clear_cohomology_cache();

// Solve delta(u) = c for a degree-2 cocycle given through a value callback;
// only pairs with a generator first argument are consulted, so callers can
// supply lazily pulled-back cocycles on large groups.
std::optional<Cochain> trivialize_values(
    const GroupPtr& g, const GModule& m,
    const std::function<std::vector<i64>(Elt, Elt)>& cval);

// independent small-size route through the dense bar matrices
struct DenseCohomology {
  std::vector<i64> factors;
};
DenseCohomology cohomology_group_dense(const GroupPtr& g, const GModule& m, int degree,
                                       const Config& cfg = Config());

// matrix of delta^i: C^i -> C^{i+1} on normalized cochains; rows and columns
// ordered by tuple lexicographic order, then coordinate; row i carries the
// modulus of its target coordinate
struct BarMatrix {
  Mat mat;
  std::vector<i64> row_moduli, col_moduli;
};
BarMatrix coboundary_matrix(const GroupPtr& g, const GModule& m, int degree,
                            const Config& cfg = Config());

// cochain-level maps
Cochain restrict_cochain(const Cochain& c, const SubgroupGroup& h);
Cochain inflate_cochain(const Cochain& c, const GroupHom& p);
Cochain corestrict_cochain(const GModule& big, const Cochain& c_on_h, const SubgroupGroup& h);
// pullback along an arbitrary hom (used for sections and quotient maps)
Cochain pullback_cochain(const Cochain& c, const GroupHom& f);

// class-level maps; the target cohomology group is supplied by the caller
CohomologyClass restrict_class(const CohomologyClass& a, const SubgroupGroup& h,
                               const CohomologyPtr& target);
CohomologyClass inflate_class(const CohomologyClass& a, const GroupHom& p,
                              const CohomologyPtr& target);
CohomologyClass corestrict_class(const CohomologyClass& a_on_h, const SubgroupGroup& h,
                                 const CohomologyPtr& target);

}  // namespace brnr

#endif
