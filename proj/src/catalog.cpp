#include "catalog.hpp"

#include <algorithm>
#include <filesystem>
#include <functional>
#include <fstream>
#include <atomic>
#include <random>
#include <set>

#include <unistd.h>

namespace brnr {

namespace {

GroupPtr dihedral(int m) {  // order 2m
  std::vector<Elt> rot(m), refl(m);
  for (int i = 0; i < m; i++) {
    rot[i] = (i + 1) % m;
    refl[i] = (m - i) % m;
  }
  return FiniteGroup::from_permutations(m, {rot, refl});
}

GroupPtr generalized_quaternion(int order) {  // order = 2^k >= 8
  int m = order / 2;  // <a> has order m, b^2 = a^{m/2}, b a b^{-1} = a^{-1}
  int n = order;
  std::vector<std::vector<Elt>> t(n, std::vector<Elt>(n));
  auto code = [&](int i, int eps) { return Elt(eps * m + mod_floor(i, m)); };
  for (int i = 0; i < m; i++)
    for (int j = 0; j < m; j++) {
      t[code(i, 0)][code(j, 0)] = code(i + j, 0);
      t[code(i, 0)][code(j, 1)] = code(i + j, 1);          // a^i (a^j b) = a^{i+j} b
      t[code(i, 1)][code(j, 0)] = code(i - j, 1);          // (a^i b) a^j = a^{i-j} b
      t[code(i, 1)][code(j, 1)] = code(i - j + m / 2, 0);  // (a^i b)(a^j b) = a^{i-j} b^2
    }
  return FiniteGroup::from_table(t);
}

GroupPtr semidihedral(int order) {  // order = 2^k >= 16
  int m = order / 2;
  i64 r = m / 2 - 1;  // b a b^-1 = a^r with r^2 = 1 mod m
  auto zm = FiniteGroup::cyclic(m);
  auto z2 = FiniteGroup::cyclic(2);
  std::vector<std::vector<Elt>> action(2);
  action[0].resize(m);
  action[1].resize(m);
  for (int x = 0; x < m; x++) {
    action[0][x] = x;
    action[1][x] = Elt(mod_floor(r * x, m));
  }
  return semidirect_product(zm, z2, action).group;
}

GroupPtr heisenberg3() {  // extraspecial 3^3 of exponent 3
  int n = 27;
  auto code = [](int a, int b, int c) { return (a * 3 + b) * 3 + c; };
  std::vector<std::vector<Elt>> t(n, std::vector<Elt>(n));
  for (int a = 0; a < 3; a++)
    for (int b = 0; b < 3; b++)
      for (int c = 0; c < 3; c++)
        for (int a2 = 0; a2 < 3; a2++)
          for (int b2 = 0; b2 < 3; b2++)
            for (int c2 = 0; c2 < 3; c2++)
              t[code(a, b, c)][code(a2, b2, c2)] =
                  code((a + a2) % 3, (b + b2) % 3, (c + c2 + a * b2) % 3);
  return FiniteGroup::from_table(t);
}

GroupPtr m27() {  // extraspecial 3^3 of exponent 9: Z/9 x| Z/3 by x -> 4x
  auto z9 = FiniteGroup::cyclic(9);
  auto z3 = FiniteGroup::cyclic(3);
  std::vector<std::vector<Elt>> action(3);
  for (int i = 0; i < 3; i++) {
    action[i].resize(9);
    i64 mult = mod_pow(4, i, 9);
    for (int x = 0; x < 9; x++) action[i][x] = Elt(x * mult % 9);
  }
  return semidirect_product(z9, z3, action).group;
}

GroupPtr symmetric4() {
  return FiniteGroup::from_permutations(4, {{1, 2, 3, 0}, {1, 0, 2, 3}});
}
GroupPtr alternating4() {
  return FiniteGroup::from_permutations(4, {{1, 2, 0, 3}, {1, 0, 3, 2}});
}
GroupPtr symmetric3() {
  return FiniteGroup::from_permutations(3, {{1, 0, 2}, {1, 2, 0}});
}

Elt central_involution(const GroupPtr& g) {
  auto z = center(g);
  for (Elt x : z.members)
    if (g->element_order(x) == 2) return x;
  fail(Err::Internal, "no central involution");
}

std::vector<CatalogGroup> central64_sample() {
  // central extensions 1 -> (Z/2)^2 -> G -> (Z/2)^4 -> 1 given by a pair of
  // bilinear forms; a fixed seeded sample, reported by the exploratory scan
  std::vector<CatalogGroup> out;
  std::mt19937 rng(0xb0601u);
  for (int trial = 0; trial < 6; trial++) {
    uint32_t b1 = rng(), b2 = rng();
    auto bil = [&](uint32_t bits, int v, int w) {
      int acc = 0;
      for (int i = 0; i < 4; i++)
        for (int j = 0; j < 4; j++)
          if ((bits >> (i * 4 + j)) & 1) acc ^= ((v >> i) & 1) & ((w >> j) & 1);
      return acc;
    };
    int n = 64;
    std::vector<std::vector<Elt>> t(n, std::vector<Elt>(n));
    auto code = [](int z, int v) { return z * 16 + v; };
    for (int z = 0; z < 4; z++)
      for (int v = 0; v < 16; v++)
        for (int z2 = 0; z2 < 4; z2++)
          for (int v2 = 0; v2 < 16; v2++) {
            int zz = z ^ z2 ^ (bil(b1, v, v2) | (bil(b2, v, v2) << 1));
            t[code(z, v)][code(z2, v2)] = code(zz, v ^ v2);
          }
    out.push_back({"central64_" + std::to_string(trial), FiniteGroup::from_table(t)});
  }
  return out;
}

}  // namespace

std::vector<CatalogGroup> family_groups(const std::string& family, int max_order) {
  std::vector<CatalogGroup> out;
  if (family == "abelian") {
    // invariant factor chains d1 | d2 | ... with product <= max_order
    std::vector<std::vector<int>> chains;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int prod, int last) {
      if (!cur.empty()) chains.push_back(cur);
      for (int d = std::max(2, last); prod * d <= max_order; d++) {
        if (last > 0 && d % last != 0) continue;
        cur.push_back(d);
        rec(prod * d, d);
        cur.pop_back();
      }
    };
    rec(1, 0);
    for (auto& ch : chains) {
      std::string name = "abelian";
      for (int d : ch) name += "_" + std::to_string(d);
      out.push_back({name, FiniteGroup::abelian(ch)});
    }
  } else if (family == "dihedral") {
    for (int m = 3; 2 * m <= max_order; m++)
      out.push_back({"D" + std::to_string(m), dihedral(m)});
  } else if (family == "quaternion") {
    for (int o = 8; o <= max_order; o *= 2)
      out.push_back({"Q" + std::to_string(o), generalized_quaternion(o)});
  } else if (family == "semidihedral") {
    for (int o = 16; o <= max_order; o *= 2)
      out.push_back({"SD" + std::to_string(o), semidihedral(o)});
  } else if (family == "symmetric") {
    if (max_order >= 6) out.push_back({"S3", symmetric3()});
    if (max_order >= 24) out.push_back({"S4", symmetric4()});
  } else if (family == "alternating") {
    if (max_order >= 12) out.push_back({"A4", alternating4()});
  } else if (family == "extraspecial") {
    if (max_order >= 8) {
      out.push_back({"D4", dihedral(4)});
      out.push_back({"Q8", generalized_quaternion(8)});
    }
    if (max_order >= 27) {
      out.push_back({"He3", heisenberg3()});
      out.push_back({"M27", m27()});
    }
  } else if (family == "central-products") {
    if (max_order >= 16) {
      auto d4 = dihedral(4);
      auto z4 = FiniteGroup::cyclic(4);
      out.push_back({"D4oZ4", central_product(d4, central_involution(d4), z4, 2)});
    }
    if (max_order >= 32) {
      auto d4 = dihedral(4);
      auto q8 = generalized_quaternion(8);
      out.push_back(
          {"D4oD4", central_product(d4, central_involution(d4), d4, central_involution(d4))});
      out.push_back(
          {"D4oQ8", central_product(d4, central_involution(d4), q8, central_involution(q8))});
      out.push_back(
          {"Q8oQ8", central_product(q8, central_involution(q8), q8, central_involution(q8))});
    }
  } else if (family == "central64") {
    if (max_order >= 64) out = central64_sample();
  } else {
    fail(Err::SchemaViolation, "unknown catalog family '" + family + "'");
  }
  return out;
}

std::vector<std::pair<std::string, GroupPtr>> gamma_catalog() {
  return {
      {"1", FiniteGroup::trivial()},
      {"Z2", FiniteGroup::cyclic(2)},
      {"Z3", FiniteGroup::cyclic(3)},
      {"Z4", FiniteGroup::cyclic(4)},
      {"V4", FiniteGroup::abelian({2, 2})},
      {"S3", symmetric3()},
  };
}

std::vector<std::vector<std::vector<Elt>>> enumerate_actions(const GroupPtr& f,
                                                             const GroupPtr& gamma,
                                                             size_t max_aut) {
  std::vector<std::vector<std::vector<Elt>>> out;
  std::vector<std::vector<Elt>> trivial(gamma->order());
  for (auto& a : trivial) {
    a.resize(f->order());
    for (Elt x = 0; x < f->order(); x++) a[x] = x;
  }
  out.push_back(trivial);
  if (gamma->order() == 1 || f->order() == 1) return out;
  std::vector<std::vector<Elt>> auts;
  try {
    auts = automorphisms(f);
  } catch (const Error&) {
    return out;  // search too large: trivial action only
  }
  if (auts.size() > max_aut || auts.size() <= 1) return out;
  int na = int(auts.size());
  std::map<std::vector<Elt>, int> aidx;
  for (int i = 0; i < na; i++) aidx[auts[i]] = i;
  auto acompose = [&](int a, int b) {  // (a.b)(x) = a[b[x]]
    std::vector<Elt> r(f->order());
    for (Elt x = 0; x < f->order(); x++) r[x] = auts[a][auts[b][x]];
    return aidx.at(r);
  };
  // orders of automorphisms
  std::vector<int> aorder(na, 1);
  int id = aidx.at(trivial[0]);
  for (int i = 0; i < na; i++) {
    int cur = i, o = 1;
    while (cur != id) {
      cur = acompose(cur, i);
      o++;
    }
    aorder[i] = o;
  }
  const auto& S = gamma->generators();
  int k = int(S.size());
  std::vector<std::vector<int>> cand(k);
  for (int i = 0; i < k; i++) {
    int so = gamma->element_order(S[i]);
    for (int a = 0; a < na; a++)
      if (so % aorder[a] == 0) cand[i].push_back(a);
  }
  const auto& T = gamma->bfs_tree();
  std::vector<Elt> order;
  {
    std::vector<char> seen(gamma->order(), 0);
    seen[0] = 1;
    std::vector<Elt> queue{0};
    for (size_t head = 0; head < queue.size(); head++)
      for (Elt s : S) {
        Elt g = gamma->mult(s, queue[head]);
        if (!seen[g]) {
          seen[g] = 1;
          queue.push_back(g);
        }
      }
    order = queue;
  }
  std::vector<int> gen_index(gamma->order(), -1);
  for (int i = 0; i < k; i++) gen_index[S[i]] = i;
  std::set<std::vector<int>> seen_canonical;
  std::vector<size_t> pick(k, 0);
  for (;;) {
    std::vector<int> img(gamma->order(), id);
    for (int i = 0; i < k; i++) img[S[i]] = cand[i][pick[i]];
    bool ok = true;
    for (Elt g : order) {
      if (g == 0 || gen_index[g] >= 0) continue;
      img[g] = acompose(img[S[T.parent_gen[g]]], img[T.parent_elt[g]]);
    }
    for (int i = 0; i < k && ok; i++)
      for (Elt b = 0; b < gamma->order(); b++)
        if (img[gamma->mult(S[i], b)] != acompose(img[S[i]], img[b])) {
          ok = false;
          break;
        }
    if (ok) {
      // canonical form under Aut(f)-conjugacy
      std::vector<int> best;
      for (int a = 0; a < na; a++) {
        // inverse of a
        int ainv = a;
        while (acompose(ainv, a) != id) ainv = acompose(ainv, a);
        std::vector<int> conj(gamma->order());
        for (Elt c = 0; c < gamma->order(); c++) conj[c] = acompose(a, acompose(img[c], ainv));
        if (best.empty() || conj < best) best = conj;
      }
      if (seen_canonical.insert(best).second) {
        bool is_trivial = true;
        for (int v : img)
          if (v != id) is_trivial = false;
        if (!is_trivial) {
          std::vector<std::vector<Elt>> action(gamma->order());
          for (Elt c = 0; c < gamma->order(); c++) action[c] = auts[img[c]];
          out.push_back(std::move(action));
        }
      }
    }
    int c = 0;
    while (c < k) {
      if (++pick[c] < cand[c].size()) break;
      pick[c] = 0;
      c++;
    }
    if (c == k) break;
  }
  return out;
}

std::vector<std::vector<i64>> enumerate_characters(const GroupPtr& gamma, i64 n) {
  std::vector<std::vector<i64>> out;
  std::vector<i64> units;
  for (i64 u = 1; u < n; u++)
    if (gcd_i64(u, n) == 1) units.push_back(u);
  if (gamma->order() == 1) {
    out.push_back({1});
    return out;
  }
  const auto& S = gamma->generators();
  int k = int(S.size());
  std::vector<std::vector<i64>> cand(k);
  for (int i = 0; i < k; i++) {
    int so = gamma->element_order(S[i]);
    for (i64 u : units)
      if (mod_pow(u, so, n) == 1 % n) cand[i].push_back(u);
  }
  const auto& T = gamma->bfs_tree();
  std::vector<Elt> order;
  {
    std::vector<char> seen(gamma->order(), 0);
    seen[0] = 1;
    std::vector<Elt> queue{0};
    for (size_t head = 0; head < queue.size(); head++)
      for (Elt s : S) {
        Elt g = gamma->mult(s, queue[head]);
        if (!seen[g]) {
          seen[g] = 1;
          queue.push_back(g);
        }
      }
    order = queue;
  }
  std::vector<int> gen_index(gamma->order(), -1);
  for (int i = 0; i < k; i++) gen_index[S[i]] = i;
  std::set<std::vector<i64>> seen_chi;
  std::vector<size_t> pick(k, 0);
  for (;;) {
    std::vector<i64> chi(gamma->order(), 1);
    for (int i = 0; i < k; i++) chi[S[i]] = cand[i][pick[i]];
    for (Elt g : order) {
      if (g == 0 || gen_index[g] >= 0) continue;
      chi[g] = chi[S[T.parent_gen[g]]] * chi[T.parent_elt[g]] % n;
    }
    bool ok = true;
    for (int i = 0; i < k && ok; i++)
      for (Elt b = 0; b < gamma->order(); b++)
        if (chi[gamma->mult(S[i], b)] != chi[S[i]] * chi[b] % n) {
          ok = false;
          break;
        }
    if (ok && seen_chi.insert(chi).second) out.push_back(chi);
    int c = 0;
    while (c < k) {
      if (++pick[c] < cand[c].size()) break;
      pick[c] = 0;
      c++;
    }
    if (c == k) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// identify whether q is isomorphic to one of the catalog gamma types
std::string gamma_type_of(const GroupPtr& q) {
  int n = q->order();
  if (n == 1) return "1";
  if (n == 2) return "Z2";
  if (n == 3) return "Z3";
  if (n == 4) return q->exponent() == 4 ? "Z4" : "V4";
  if (n == 6) return q->is_abelian() ? "" : "S3";
  return "";
}

}  // namespace

std::vector<CatalogGerb> catalog_gerbs(const CatalogSpec& spec, const Config& cfg) {
  std::vector<CatalogGerb> out;
  std::set<std::pair<uint64_t, uint64_t>> seen;  // (gerb hash, module hash)
  auto add = [&](const std::string& name, const Gerb& g, i64 n, const std::vector<i64>& chi) {
    if (g.E->order() > spec.max_e) return;
    if (spec.max_gerbs && out.size() >= spec.max_gerbs) return;
    GerbCoeff coeff = make_mu_coeff(g, n, chi);
    auto key = std::make_pair(g.hash(), coeff.on_e.hash());
    if (!seen.insert(key).second) return;
    out.push_back({name, g, std::move(coeff)});
  };
  auto mu_list = [&](const GroupPtr& f) {
    std::vector<i64> ns = spec.mu_ns;
    if (spec.mu_f_order && f->order() >= 2) ns.push_back(f->order());
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    return ns;
  };
  // split gerbs
  std::vector<CatalogGroup> fs;
  for (auto family : {"abelian", "dihedral", "quaternion", "semidihedral", "symmetric",
                      "alternating", "extraspecial", "central-products"}) {
    int cap = spec.max_e;
    if (std::string(family) == "abelian") cap = spec.abelian_max;
    if (std::string(family) == "dihedral") cap = spec.dihedral_max;
    if (std::string(family) == "quaternion" || std::string(family) == "semidihedral") {
      if (!spec.quaternion) continue;
      cap = 32;
    }
    if ((std::string(family) == "symmetric" || std::string(family) == "alternating") &&
        !spec.symmetric)
      continue;
    if (std::string(family) == "extraspecial" && !spec.extraspecial) continue;
    if (std::string(family) == "central-products" && !spec.central_products) continue;
    for (auto& cg : family_groups(family, cap)) fs.push_back(cg);
  }
  {
    std::set<uint64_t> gseen;
    std::vector<CatalogGroup> dedup;
    for (auto& f : fs)
      if (gseen.insert(f.group->hash()).second) dedup.push_back(f);
    fs = std::move(dedup);
  }
  // combination tiers: the full action/character/mu sweep is affordable for
  // small gerbs; larger ones keep a deterministic representative subset so
  // the suites stay within their budgets
  auto tier_limits = [&](int eorder, size_t& max_actions, size_t& max_chars,
                         std::vector<i64>& ns, i64 forder) {
    if (eorder <= 40) return;  // tier A: everything
    if (eorder <= 64) {        // tier B
      max_actions = 3;
      max_chars = 2;
      ns.clear();
      for (i64 n : {2, 3, 4, 6}) ns.push_back(n);
      if (forder >= 2 && forder <= 16) ns.push_back(forder);
      std::sort(ns.begin(), ns.end());
      ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
      return;
    }
    max_actions = 2;  // tier C
    max_chars = 1;
    ns = {2, 3};
  };
  for (auto& [gname, gamma] : gamma_catalog()) {
    if (std::find(spec.gammas.begin(), spec.gammas.end(), gname) == spec.gammas.end()) continue;
    for (auto& fg : fs) {
      int eorder = fg.group->order() * gamma->order();
      if (eorder > spec.max_e) continue;
      auto actions = enumerate_actions(fg.group, gamma, spec.max_aut);
      size_t max_actions = actions.size(), max_chars = SIZE_MAX;
      std::vector<i64> ns = mu_list(fg.group);
      tier_limits(eorder, max_actions, max_chars, ns, fg.group->order());
      for (size_t ai = 0; ai < actions.size() && ai < max_actions; ai++) {
        Gerb g = gerb_from_split(fg.group, gamma, actions[ai]);
        for (i64 n : ns) {
          auto chis = spec.all_characters ? enumerate_characters(gamma, n)
                                          : std::vector<std::vector<i64>>{
                                                std::vector<i64>(gamma->order(), 1)};
          for (size_t ci = 0; ci < chis.size() && ci < max_chars; ci++)
            add(fg.name + ":" + gname + ":a" + std::to_string(ai) + ":mu" + std::to_string(n),
                g, n, chis[ci]);
        }
      }
    }
  }
  // non-split gerbs: normal subgroups of catalog groups with small quotients
  if (spec.nonsplit) {
    for (auto& eg : fs) {
      if (eg.group->order() > spec.max_e) continue;
      for (auto& cls : subgroups_up_to_conjugacy(eg.group, cfg.group_order_cap)) {
        const Subgroup& f = cls.representative;
        if (f.order() == 1 || f.order() == eg.group->order()) continue;
        if (!f.is_normal()) continue;
        auto quo = quotient_by_normal(eg.group, f);
        if (gamma_type_of(quo.group).empty()) continue;
        Gerb g;
        try {
          g = gerb_from_explicit(eg.group, f, quo.projection);
        } catch (const Error&) {
          continue;
        }
        if (g.split()) continue;  // split covers come from the split path
        auto fgrp = subgroup_as_group(f);
        size_t max_actions = SIZE_MAX, max_chars = SIZE_MAX;
        std::vector<i64> ns = mu_list(fgrp.group);
        tier_limits(eg.group->order(), max_actions, max_chars, ns, fgrp.group->order());
        for (i64 n : ns) {
          auto chis = spec.all_characters
                          ? enumerate_characters(g.Gamma, n)
                          : std::vector<std::vector<i64>>{
                                std::vector<i64>(g.Gamma->order(), 1)};
          for (size_t ci = 0; ci < chis.size() && ci < max_chars; ci++)
            add(eg.name + "/F" + std::to_string(f.order()) + ":mu" + std::to_string(n), g, n,
                chis[ci]);
        }
      }
    }
  }
  return out;
}

FileCache::FileCache(std::string dir) : dir_(std::move(dir)) {
  if (!dir_.empty()) std::filesystem::create_directories(dir_);
}

std::optional<json> FileCache::get(const std::string& key) const {
  if (dir_.empty()) return std::nullopt;
  std::filesystem::path p = std::filesystem::path(dir_) / (key + ".json");
  std::ifstream in(p);
  if (!in) return std::nullopt;
  json j;
  try {
    in >> j;
  } catch (...) {
    return std::nullopt;  // corrupt: treated as a miss, recomputed
  }
  if (!j.is_object() || !j.contains("key") || j.at("key") != key || !j.contains("value"))
    return std::nullopt;
  return j.at("value");
}

void FileCache::put(const std::string& key, const json& value) const {
  if (dir_.empty()) return;
  json j{{"key", key}, {"value", value}};
  std::filesystem::path dir(dir_);
  static std::atomic<unsigned> counter{0};
  std::filesystem::path tmp = dir / (key + ".tmp" + std::to_string(::getpid()) + "." +
                                     std::to_string(counter.fetch_add(1)));
  std::filesystem::path fin = dir / (key + ".json");
  {
    std::ofstream out(tmp);
    out << j.dump(1);
  }
  std::filesystem::rename(tmp, fin);
}

namespace {

json mat_to_json(const Mat& m) {
  return json{{"r", m.r}, {"c", m.c}, {"a", m.a}};
}
Mat mat_from_json(const json& j) {
  Mat m(j.at("r").get<int>(), j.at("c").get<int>());
  m.a = j.at("a").get<std::vector<i64>>();
  return m;
}

}  // namespace

CohomologyPtr cohomology_group_cached(const GroupPtr& g, const GModule& m, int degree,
                                      const Config& cfg, const FileCache& cache) {
  if (!cache.enabled()) return cohomology_group(g, m, degree, cfg);
  std::string key = "h" + std::to_string(degree) + "-" + hex_u64(g->hash()) + "-" +
                    hex_u64(m.hash());
  if (auto hit = cache.get(key)) {
    auto H = std::make_shared<CohomologyGroup>();
    H->group = g;
    H->module = m;
    H->degree = degree;
    H->factors = hit->at("factors").get<std::vector<i64>>();
    H->red.moduli = hit->at("moduli").get<std::vector<i64>>();
    H->red.klat = mat_from_json(hit->at("klat"));
    H->red.u = mat_from_json(hit->at("u"));
    H->red.all_factors = hit->at("allFactors").get<std::vector<i64>>();
    H->red.positions = hit->at("positions").get<std::vector<int>>();
    for (auto& z : hit->at("basis")) H->basis.push_back(H->expand_vector(z.get<std::vector<i64>>()));
    return H;
  }
  CohomologyPtr H = cohomology_group(g, m, degree, cfg);
  if (int(H->red.moduli.size()) <= 256) {
    json j;
    j["factors"] = H->factors;
    j["moduli"] = H->red.moduli;
    j["klat"] = mat_to_json(H->red.klat);
    j["u"] = mat_to_json(H->red.u);
    j["allFactors"] = H->red.all_factors;
    j["positions"] = H->red.positions;
    json basis = json::array();
    for (auto& b : H->basis) basis.push_back(H->reduce_vector(b));
    j["basis"] = std::move(basis);
    cache.put(key, j);
  }
  return H;
}

}  // namespace brnr
