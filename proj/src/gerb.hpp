#ifndef BRNR_GERB_HPP
#define BRNR_GERB_HPP

#include <optional>

#include "cohomology.hpp"

namespace brnr {

// A finite gerb: extension 1 -> F -> E -> Gamma -> 1 with an optional
// homomorphic section of pi (present iff the gerb is split).
struct Gerb {
  GroupPtr E;
  Subgroup F;  // normal subgroup of E, the kernel of pi
  GroupPtr Gamma;
  GroupHom pi;  // E -> Gamma, surjective
  std::optional<GroupHom> section;
  bool essentially_real = false;

  bool split() const { return section.has_value(); }
  uint64_t hash() const;
};

Gerb gerb_from_split(const GroupPtr& f, const GroupPtr& gamma,
                     const std::vector<std::vector<Elt>>& action,
                     bool essentially_real = false);

// non-split gerbs are first class: a section is searched and attached if found
Gerb gerb_from_explicit(const GroupPtr& e, const Subgroup& f, const GroupHom& pi,
                        bool essentially_real = false, int section_search_cap = 1 << 22);

// all homomorphic sections of pi, by generator-image search with propagation
std::vector<GroupHom> enumerate_sections(const Gerb& g, i64 cap = i64(1) << 22);

// coefficient data: a module on Gamma together with its pullback to E
struct GerbCoeff {
  GModule on_gamma;
  GModule on_e;
};
GerbCoeff make_mu_coeff(const Gerb& g, i64 n, const std::vector<i64>& character_on_gamma);
GerbCoeff make_coeff(const Gerb& g, const GModule& on_gamma);

// family descriptors from the Sha^2 definition
enum class IntersectKind { Ab, Bic, Cyc };  // x: D cap F abelian / bicyclic / cyclic
enum class ImageKind { Scyc, Zero };        // y: pi(D) strictly procyclic / trivial
const char* intersect_kind_name(IntersectKind x);
const char* image_kind_name(ImageKind y);

// finite-level model of a closed subgroup with strictly procyclic image:
// A <= F together with the image e in E of the topological generator
struct ProcyclicPair {
  Subgroup A;  // subgroup of E contained in F
  Elt e;       // element of N_E(A)
};

struct Family {
  IntersectKind x;
  ImageKind y;
  std::vector<Subgroup> subgroups;    // y = 0 members (subgroups of F, E-conjugacy reps)
  std::vector<ProcyclicPair> pairs;   // y = scyc members
};
Family enumerate_family(const Gerb& g, IntersectKind x, ImageKind y, const Config& cfg);

}  // namespace brnr

#endif
