#ifndef BRNR_CATALOG_HPP
#define BRNR_CATALOG_HPP

#include "jsonio.hpp"

namespace brnr {

struct CatalogGroup {
  std::string name;
  GroupPtr group;
};

// built-in families: abelian, dihedral, quaternion, semidihedral, symmetric,
// alternating, extraspecial, central-products, central64
std::vector<CatalogGroup> family_groups(const std::string& family, int max_order);

std::vector<std::pair<std::string, GroupPtr>> gamma_catalog();

// all homomorphisms gamma -> Aut(f) up to Aut(f)-conjugacy, trivial first;
// falls back to the trivial action when Aut(f) is larger than max_aut
std::vector<std::vector<std::vector<Elt>>> enumerate_actions(const GroupPtr& f,
                                                             const GroupPtr& gamma,
                                                             size_t max_aut = 1000);

// all characters gamma -> (Z/n)^*, trivial first
std::vector<std::vector<i64>> enumerate_characters(const GroupPtr& gamma, i64 n);

struct CatalogGerb {
  std::string name;
  Gerb gerb;
  GerbCoeff coeff;
};

struct CatalogSpec {
  int max_e = 96;
  int abelian_max = 16;
  int dihedral_max = 32;
  bool quaternion = true;
  bool symmetric = true;
  bool extraspecial = true;
  bool central_products = true;
  std::vector<std::string> gammas = {"1", "Z2", "Z3", "Z4", "V4", "S3"};
  std::vector<i64> mu_ns = {2, 3, 4, 6};
  bool mu_f_order = true;  // additionally n = |F| (when >= 2)
  bool nonsplit = true;
  size_t max_aut = 1000;
  bool all_characters = true;
  size_t max_gerbs = 0;  // 0 = unbounded
};

std::vector<CatalogGerb> catalog_gerbs(const CatalogSpec& spec, const Config& cfg);

// persistent cache: one JSON file per key, written atomically, key-verified
class FileCache {
 public:
  FileCache() = default;
  explicit FileCache(std::string dir);
  bool enabled() const { return !dir_.empty(); }
  std::optional<json> get(const std::string& key) const;
  void put(const std::string& key, const json& value) const;

 private:
  std::string dir_;
};

// disk-backed wrapper around cohomology_group: caches solver data for small
// reduced dimensions, subgroup cohomology being the main repeat customer
CohomologyPtr cohomology_group_cached(const GroupPtr& g, const GModule& m, int degree,
                                      const Config& cfg, const FileCache& cache);

}  // namespace brnr

#endif
