#include "group.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace brnr {

namespace {

std::string elt3(Elt a, Elt b, Elt c) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

}  // namespace

GroupPtr product_group(const std::vector<std::vector<Elt>>& table);  // fwd (friend)
GroupPtr table_group_impl(const std::vector<std::vector<Elt>>& table, bool trusted);

Elt FiniteGroup::mult_slow(Elt a, Elt b) const {
  // compose permutations: (a then b)(x) = perm_b[perm_a[x]]
  const auto& pa = elt_perm_[a];
  const auto& pb = elt_perm_[b];
  std::vector<Elt> pc(degree_);
  for (int x = 0; x < degree_; x++) pc[x] = pb[pa[x]];
  // binary search in perm_index_ (elements sorted by permutation vector)
  int lo = 0, hi = n_ - 1;
  while (lo <= hi) {
    int mid = (lo + hi) / 2;
    const auto& pm = elt_perm_[perm_index_[mid]];
    if (pm == pc) return perm_index_[mid];
    if (pm < pc)
      lo = mid + 1;
    else
      hi = mid - 1;
  }
  fail(Err::Internal, "product not in closure");
}

Elt FiniteGroup::power(Elt a, i64 k) const {
  int o = element_order(a);
  k = mod_floor(k, o);
  Elt acc = 0;
  while (k-- > 0) acc = mult(acc, a);
  return acc;
}

int FiniteGroup::element_order(Elt a) const {
  int o = 1;
  Elt x = a;
  while (x != 0) {
    x = mult(x, a);
    o++;
  }
  return o;
}

int FiniteGroup::exponent() const {
  std::call_once(exp_once_, [&] {
    i64 e = 1;
    for (Elt a = 0; a < n_; a++) e = lcm_i64(e, element_order(a));
    exponent_ = int(e);
  });
  return exponent_;
}

bool FiniteGroup::is_abelian() const {
  std::call_once(abel_once_, [&] {
    abelian_ = true;
    for (Elt a = 0; a < n_ && abelian_; a++)
      for (Elt b = a + 1; b < n_; b++)
        if (mult(a, b) != mult(b, a)) {
          abelian_ = false;
          break;
        }
  });
  return abelian_;
}

const std::vector<Elt>& FiniteGroup::generators() const {
  std::call_once(gens_once_, [&] {
    std::vector<char> in(n_, 0);
    in[0] = 1;
    int covered = 1;
    while (covered < n_) {
      Elt pick = -1;
      for (Elt g = 1; g < n_; g++)
        if (!in[g]) {
          pick = g;
          break;
        }
      gens_.push_back(pick);
      std::fill(in.begin(), in.end(), 0);
      in[0] = 1;
      covered = 1;
      std::vector<Elt> queue{0};
      for (size_t head = 0; head < queue.size(); head++) {
        Elt x = queue[head];
        for (Elt s : gens_) {
          Elt y = mult(x, s);
          if (!in[y]) {
            in[y] = 1;
            covered++;
            queue.push_back(y);
          }
        }
      }
    }
  });
  return gens_;
}

const FiniteGroup::BfsTree& FiniteGroup::bfs_tree() const {
  std::call_once(bfs_once_, [&] {
    const auto& S = generators();
    bfs_.parent_gen.assign(n_, -1);
    bfs_.parent_elt.assign(n_, 0);
    std::vector<char> seen(n_, 0);
    seen[0] = 1;
    std::vector<Elt> queue{0};
    size_t head = 0;
    while (head < queue.size()) {
      Elt w = queue[head++];
      for (int si = 0; si < int(S.size()); si++) {
        Elt g = mult(S[si], w);  // g = s * w, left extension
        if (!seen[g]) {
          seen[g] = 1;
          bfs_.parent_gen[g] = si;
          bfs_.parent_elt[g] = w;
          queue.push_back(g);
        }
      }
    }
    for (Elt g = 0; g < n_; g++)
      if (!seen[g]) fail(Err::Internal, "generators do not generate");
  });
  return bfs_;
}

uint64_t FiniteGroup::hash() const {
  std::call_once(hash_once_, [&] {
    Fnv f;
    f.u64(uint64_t(n_));
    if (!table_.empty()) {
      f.vec(table_);
    } else {
      f.u64(uint64_t(degree_));
      for (const auto& p : elt_perm_) f.vec(p);
    }
    hash_ = f.h;
  });
  return hash_;
}

void FiniteGroup::validate() const {
  for (Elt a = 0; a < n_; a++) {
    if (mult(0, a) != a || mult(a, 0) != a)
      fail(Err::NoIdentity, "element 0 is not an identity at " + std::to_string(a));
    if (mult(a, inv_[a]) != 0 || mult(inv_[a], a) != 0)
      fail(Err::NoInverse, "no two-sided inverse for element " + std::to_string(a));
  }
  if (n_ <= 512) {
    for (Elt a = 0; a < n_; a++)
      for (Elt b = 0; b < n_; b++)
        for (Elt c = 0; c < n_; c++)
          if (mult(mult(a, b), c) != mult(a, mult(b, c)))
            fail(Err::NotAssociative, "witness triple " + elt3(a, b, c));
  } else {
    std::mt19937 rng(0xb12a5u);
    for (int t = 0; t < 20000; t++) {
      Elt a = Elt(rng() % n_), b = Elt(rng() % n_), c = Elt(rng() % n_);
      if (mult(mult(a, b), c) != mult(a, mult(b, c)))
        fail(Err::NotAssociative, "witness triple " + elt3(a, b, c));
    }
  }
}

GroupPtr FiniteGroup::from_table(const std::vector<std::vector<Elt>>& table) {
  return table_group_impl(table, /*trusted=*/false);
}

GroupPtr FiniteGroup::from_table_trusted(const std::vector<std::vector<Elt>>& table) {
  return table_group_impl(table, /*trusted=*/true);
}

GroupPtr table_group_impl(const std::vector<std::vector<Elt>>& table, bool trusted) {
  int n = int(table.size());
  if (n == 0) fail(Err::SchemaViolation, "empty multiplication table");
  for (auto& row : table) {
    if (int(row.size()) != n) fail(Err::SchemaViolation, "multiplication table is not square");
    for (Elt v : row)
      if (v < 0 || v >= n) fail(Err::SchemaViolation, "table entry out of range");
  }
  // locate identity
  Elt e = -1;
  for (Elt cand = 0; cand < n && e < 0; cand++) {
    bool ok = true;
    for (Elt a = 0; a < n && ok; a++)
      if (table[cand][a] != a || table[a][cand] != a) ok = false;
    if (ok) e = cand;
  }
  if (e < 0) fail(Err::NoIdentity, "no two-sided identity element");
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->n_ = n;
  g->table_.assign(size_t(n) * n, 0);
  auto relabel = [&](Elt x) { return x == e ? 0 : (x == 0 ? e : x); };
  for (Elt a = 0; a < n; a++)
    for (Elt b = 0; b < n; b++)
      g->table_[size_t(relabel(a)) * n + relabel(b)] = relabel(table[a][b]);
  g->inv_.assign(n, -1);
  for (Elt a = 0; a < n; a++) {
    for (Elt b = 0; b < n; b++)
      if (g->table_[size_t(a) * n + b] == 0 && g->table_[size_t(b) * n + a] == 0) {
        g->inv_[a] = b;
        break;
      }
    if (g->inv_[a] < 0) fail(Err::NoInverse, "no inverse for element " + std::to_string(a));
  }
  if (trusted) {
    for (Elt a = 0; a < n; a++)
      if (g->mult(0, a) != a || g->mult(a, 0) != a)
        fail(Err::NoIdentity, "element 0 is not an identity at " + std::to_string(a));
  } else {
    g->validate();
  }
  return g;
}

GroupPtr FiniteGroup::from_permutations(int degree, const std::vector<std::vector<Elt>>& generators,
                                        int order_cap) {
  if (degree <= 0) fail(Err::SchemaViolation, "degree must be positive");
  for (auto& p : generators) {
    if (int(p.size()) != degree) fail(Err::NotAPermutation, "length differs from degree");
    std::vector<char> seen(degree, 0);
    for (Elt v : p) {
      if (v < 0 || v >= degree || seen[v]) fail(Err::NotAPermutation, "not a bijection");
      seen[v] = 1;
    }
  }
  // BFS closure from the identity, right multiplication, generators in order
  std::vector<std::vector<Elt>> elems;
  std::map<std::vector<Elt>, Elt> index;
  std::vector<Elt> idp(degree);
  for (int i = 0; i < degree; i++) idp[i] = i;
  elems.push_back(idp);
  index[idp] = 0;
  for (size_t head = 0; head < elems.size(); head++) {
    std::vector<Elt> cur = elems[head];
    for (auto& gperm : generators) {
      std::vector<Elt> nxt(degree);
      for (int x = 0; x < degree; x++) nxt[x] = gperm[cur[x]];  // cur then g
      if (!index.count(nxt)) {
        if (int(elems.size()) >= order_cap)
          fail(Err::OrderLimitExceeded,
               "closure exceeds cap " + std::to_string(order_cap));
        index[nxt] = Elt(elems.size());
        elems.push_back(nxt);
      }
    }
  }
  int n = int(elems.size());
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->n_ = n;
  g->degree_ = degree;
  g->elt_perm_ = elems;
  g->perm_index_.resize(n);
  {
    std::vector<Elt> order(n);
    for (int i = 0; i < n; i++) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](Elt a, Elt b) { return elems[a] < elems[b]; });
    g->perm_index_ = order;
  }
  if (n <= kTableCap) {
    g->table_.assign(size_t(n) * n, 0);
    for (Elt a = 0; a < n; a++)
      for (Elt b = 0; b < n; b++) {
        std::vector<Elt> pc(degree);
        for (int x = 0; x < degree; x++) pc[x] = elems[b][elems[a][x]];
        g->table_[size_t(a) * n + b] = index.at(pc);
      }
  }
  g->inv_.assign(n, -1);
  for (Elt a = 0; a < n; a++) {
    std::vector<Elt> ip(degree);
    for (int x = 0; x < degree; x++) ip[elems[a][x]] = x;
    g->inv_[a] = index.at(ip);
  }
  g->validate();
  return g;
}

GroupPtr product_group(const std::vector<std::vector<Elt>>& table) {
  // internal: table already has identity at 0 and is known valid by construction
  int n = int(table.size());
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->n_ = n;
  g->table_.assign(size_t(n) * n, 0);
  for (Elt a = 0; a < n; a++)
    for (Elt b = 0; b < n; b++) g->table_[size_t(a) * n + b] = table[a][b];
  g->inv_.assign(n, -1);
  for (Elt a = 0; a < n; a++)
    for (Elt b = 0; b < n; b++)
      if (table[a][b] == 0 && table[b][a] == 0) {
        g->inv_[a] = b;
        break;
      }
  for (Elt a = 0; a < n; a++)
    if (g->inv_[a] < 0) fail(Err::NoInverse, "no inverse for element " + std::to_string(a));
  g->validate();
  return g;
}

GroupPtr FiniteGroup::trivial() { return cyclic(1); }

GroupPtr FiniteGroup::cyclic(int n) {
  if (n <= 0) fail(Err::SchemaViolation, "cyclic order must be positive");
  std::vector<std::vector<Elt>> t(n, std::vector<Elt>(n));
  for (int a = 0; a < n; a++)
    for (int b = 0; b < n; b++) t[a][b] = (a + b) % n;
  return product_group(t);
}

GroupPtr FiniteGroup::abelian(const std::vector<int>& factors) {
  GroupPtr g = cyclic(1);
  for (int d : factors) {
    auto p = direct_product(g, cyclic(d));
    g = p.group;
  }
  return g;
}

bool Subgroup::contains(Elt g) const {
  return std::binary_search(members.begin(), members.end(), g);
}

bool Subgroup::is_normal() const {
  const auto& G = *parent;
  for (Elt g = 0; g < G.order(); g++)
    for (Elt h : members)
      if (!contains(G.conj(g, h))) return false;
  return true;
}

bool Subgroup::is_abelian() const {
  const auto& G = *parent;
  for (Elt a : members)
    for (Elt b : members)
      if (G.mult(a, b) != G.mult(b, a)) return false;
  return true;
}

uint64_t Subgroup::hash() const {
  Fnv f;
  f.u64(parent->hash());
  f.vec(members);
  return f.h;
}

void GroupHom::validate() const {
  if (int(images.size()) != source->order()) fail(Err::SchemaViolation, "hom image size");
  if (images[0] != 0) fail(Err::SchemaViolation, "hom does not fix the identity");
  for (Elt v : images)
    if (v < 0 || v >= target->order()) fail(Err::SchemaViolation, "hom image out of range");
  for (Elt a = 0; a < source->order(); a++)
    for (Elt b = 0; b < source->order(); b++)
      if (images[source->mult(a, b)] != target->mult(images[a], images[b]))
        fail(Err::SchemaViolation,
             "not a homomorphism at pair (" + std::to_string(a) + "," + std::to_string(b) + ")");
}

bool GroupHom::is_surjective() const {
  std::vector<char> hit(target->order(), 0);
  int c = 0;
  for (Elt v : images)
    if (!hit[v]) {
      hit[v] = 1;
      c++;
    }
  return c == target->order();
}

std::vector<Elt> GroupHom::kernel() const {
  std::vector<Elt> k;
  for (Elt a = 0; a < source->order(); a++)
    if (images[a] == 0) k.push_back(a);
  return k;
}

GroupHom identity_hom(const GroupPtr& g) {
  GroupHom h;
  h.source = g;
  h.target = g;
  h.images.resize(g->order());
  for (Elt a = 0; a < g->order(); a++) h.images[a] = a;
  return h;
}

GroupHom compose(const GroupHom& second, const GroupHom& first) {
  if (first.target->hash() != second.source->hash())
    fail(Err::TargetMismatch, "hom composition mismatch");
  GroupHom h;
  h.source = first.source;
  h.target = second.target;
  h.images.resize(first.images.size());
  for (size_t i = 0; i < first.images.size(); i++) h.images[i] = second.images[first.images[i]];
  return h;
}

Subgroup whole_group(const GroupPtr& g) {
  Subgroup s;
  s.parent = g;
  s.members.resize(g->order());
  for (Elt a = 0; a < g->order(); a++) s.members[a] = a;
  return s;
}

Subgroup trivial_subgroup(const GroupPtr& g) {
  Subgroup s;
  s.parent = g;
  s.members = {0};
  return s;
}

Subgroup generated_subgroup(const GroupPtr& g, const std::vector<Elt>& gens) {
  std::vector<char> in(g->order(), 0);
  in[0] = 1;
  std::vector<Elt> queue{0};
  for (Elt x : gens)
    if (!in[x]) {
      in[x] = 1;
      queue.push_back(x);
    }
  for (size_t head = 0; head < queue.size(); head++) {
    Elt x = queue[head];
    for (Elt y : gens) {
      Elt z = g->mult(x, y);
      if (!in[z]) {
        in[z] = 1;
        queue.push_back(z);
      }
      z = g->mult(y, x);
      if (!in[z]) {
        in[z] = 1;
        queue.push_back(z);
      }
    }
  }
  Subgroup s;
  s.parent = g;
  for (Elt a = 0; a < g->order(); a++)
    if (in[a]) s.members.push_back(a);
  return s;
}

Subgroup conjugate_subgroup(const Subgroup& h, Elt g) {
  Subgroup s;
  s.parent = h.parent;
  s.members.reserve(h.members.size());
  for (Elt x : h.members) s.members.push_back(h.parent->conj(g, x));
  std::sort(s.members.begin(), s.members.end());
  return s;
}

Subgroup normalizer(const Subgroup& h) {
  const auto& G = *h.parent;
  Subgroup s;
  s.parent = h.parent;
  for (Elt g = 0; g < G.order(); g++) {
    bool ok = true;
    for (Elt x : h.members)
      if (!h.contains(G.conj(g, x))) {
        ok = false;
        break;
      }
    if (ok) s.members.push_back(g);
  }
  return s;
}

Subgroup center(const GroupPtr& g) {
  Subgroup s;
  s.parent = g;
  for (Elt a = 0; a < g->order(); a++) {
    bool ok = true;
    for (Elt b = 0; b < g->order() && ok; b++)
      if (g->mult(a, b) != g->mult(b, a)) ok = false;
    if (ok) s.members.push_back(a);
  }
  return s;
}

namespace {
std::mutex g_subs_mutex;
std::map<uint64_t, std::shared_ptr<const std::vector<std::vector<Elt>>>> g_subs_cache;
}  // namespace

std::shared_ptr<const std::vector<std::vector<Elt>>> subgroup_cache_peek(uint64_t ghash) {
  std::lock_guard lk(g_subs_mutex);
  auto it = g_subs_cache.find(ghash);
  return it == g_subs_cache.end() ? nullptr : it->second;
}

void subgroup_cache_store(uint64_t ghash, std::vector<std::vector<Elt>> members) {
  std::lock_guard lk(g_subs_mutex);
  g_subs_cache.emplace(ghash,
                       std::make_shared<const std::vector<std::vector<Elt>>>(std::move(members)));
}

std::vector<Subgroup> all_subgroups(const GroupPtr& g, int order_cap) {
  if (g->order() > order_cap)
    fail(Err::OrderLimitExceeded, "subgroup enumeration beyond cap " + std::to_string(order_cap));
  {
    std::lock_guard lk(g_subs_mutex);
    auto it = g_subs_cache.find(g->hash());
    if (it != g_subs_cache.end()) {
      std::vector<Subgroup> out;
      out.reserve(it->second->size());
      for (auto& m : *it->second) {
        Subgroup s;
        s.parent = g;
        s.members = m;
        out.push_back(std::move(s));
      }
      return out;
    }
  }
  std::set<std::vector<Elt>> seen;
  std::vector<std::vector<Elt>> list;
  std::vector<Elt> triv{0};
  seen.insert(triv);
  list.push_back(triv);
  for (size_t head = 0; head < list.size(); head++) {
    std::vector<Elt> base = list[head];
    for (Elt x = 1; x < g->order(); x++) {
      if (std::binary_search(base.begin(), base.end(), x)) continue;
      std::vector<Elt> gens = base;
      gens.push_back(x);
      Subgroup k = generated_subgroup(g, gens);
      if (seen.insert(k.members).second) list.push_back(k.members);
    }
  }
  std::vector<Subgroup> out;
  out.reserve(list.size());
  for (auto& m : list) {
    Subgroup s;
    s.parent = g;
    s.members = std::move(m);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
    return a.members < b.members;
  });
  {
    auto store = std::make_shared<std::vector<std::vector<Elt>>>();
    store->reserve(out.size());
    for (auto& s : out) store->push_back(s.members);
    std::lock_guard lk(g_subs_mutex);
    g_subs_cache.emplace(g->hash(), std::move(store));
  }
  return out;
}

std::vector<SubgroupClass> subgroups_up_to_conjugacy(const GroupPtr& g, int order_cap) {
  auto subs = all_subgroups(g, order_cap);
  std::map<std::vector<Elt>, int> idx;
  for (int i = 0; i < int(subs.size()); i++) idx[subs[i].members] = i;
  std::vector<char> used(subs.size(), 0);
  std::vector<SubgroupClass> classes;
  for (size_t i = 0; i < subs.size(); i++) {
    if (used[i]) continue;
    std::set<std::vector<Elt>> orbit;
    for (Elt c = 0; c < g->order(); c++) orbit.insert(conjugate_subgroup(subs[i], c).members);
    SubgroupClass cl;
    cl.representative.parent = g;
    cl.representative.members = *orbit.begin();  // lexicographically smallest
    cl.class_size = int(orbit.size());
    for (auto& m : orbit) used[idx.at(m)] = 1;
    classes.push_back(std::move(cl));
  }
  std::sort(classes.begin(), classes.end(), [](const SubgroupClass& a, const SubgroupClass& b) {
    if (a.representative.members.size() != b.representative.members.size())
      return a.representative.members.size() < b.representative.members.size();
    return a.representative.members < b.representative.members;
  });
  return classes;
}

SubgroupGroup subgroup_as_group(const Subgroup& h) {
  int m = h.order();
  std::vector<int> pos(h.parent->order(), -1);
  for (int i = 0; i < m; i++) pos[h.members[i]] = i;
  std::vector<std::vector<Elt>> t(m, std::vector<Elt>(m));
  for (int i = 0; i < m; i++)
    for (int j = 0; j < m; j++) {
      Elt p = h.parent->mult(h.members[i], h.members[j]);
      if (pos[p] < 0) fail(Err::Internal, "subgroup not closed");
      t[i][j] = pos[p];
    }
  SubgroupGroup out;
  out.group = product_group(t);  // members sorted, 0 first: identity stays at 0
  out.embed.source = out.group;
  out.embed.target = h.parent;
  out.embed.images = h.members;
  return out;
}

QuotientResult quotient_by_normal(const GroupPtr& g, const Subgroup& n) {
  // witness-checked normality
  for (Elt c = 0; c < g->order(); c++)
    for (Elt x : n.members)
      if (!n.contains(g->conj(c, x)))
        fail(Err::NotNormal, "conjugation witness (" + std::to_string(c) + "," +
                                 std::to_string(x) + ")");
  int order = g->order();
  std::vector<int> coset(order, -1);
  std::vector<Elt> reps;
  for (Elt a = 0; a < order; a++) {
    if (coset[a] >= 0) continue;
    int id = int(reps.size());
    reps.push_back(a);  // minimal element of the coset, scan order guarantees it
    for (Elt x : n.members) coset[g->mult(x, a)] = id;  // left coset Na... use two-sided: N normal
    for (Elt x : n.members) coset[g->mult(a, x)] = id;
  }
  int q = int(reps.size());
  std::vector<std::vector<Elt>> t(q, std::vector<Elt>(q));
  for (int i = 0; i < q; i++)
    for (int j = 0; j < q; j++) t[i][j] = coset[g->mult(reps[i], reps[j])];
  QuotientResult out;
  out.group = product_group(t);
  out.projection.source = g;
  out.projection.target = out.group;
  out.projection.images.assign(order, 0);
  for (Elt a = 0; a < order; a++) out.projection.images[a] = coset[a];
  out.projection.validate();
  return out;
}

SemidirectResult semidirect_product(const GroupPtr& f, const GroupPtr& gamma,
                                    const std::vector<std::vector<Elt>>& action) {
  int nf = f->order(), ng = gamma->order();
  if (int(action.size()) != ng) fail(Err::SchemaViolation, "action size != |Gamma|");
  for (auto& a : action) {
    if (int(a.size()) != nf) fail(Err::SchemaViolation, "automorphism size != |F|");
    std::vector<char> seen(nf, 0);
    for (Elt v : a) {
      if (v < 0 || v >= nf || seen[v]) fail(Err::ActionNotHomomorphic, "image not a bijection");
      seen[v] = 1;
    }
    if (a[0] != 0) fail(Err::ActionNotHomomorphic, "automorphism moves the identity");
    for (Elt x = 0; x < nf; x++)
      for (Elt y = 0; y < nf; y++)
        if (a[f->mult(x, y)] != f->mult(a[x], a[y]))
          fail(Err::ActionNotHomomorphic,
               "image map not multiplicative at (" + std::to_string(x) + "," + std::to_string(y) +
                   ")");
  }
  for (Elt c = 0; c < ng; c++)
    for (Elt d = 0; d < ng; d++) {
      Elt cd = gamma->mult(c, d);
      for (Elt x = 0; x < nf; x++)
        if (action[cd][x] != action[c][action[d][x]])
          fail(Err::ActionNotHomomorphic,
               "action not a homomorphism at pair (" + std::to_string(c) + "," +
                   std::to_string(d) + ")");
    }
  int n = nf * ng;
  auto code = [&](Elt x, Elt c) { return x * ng + c; };
  std::vector<std::vector<Elt>> t(n, std::vector<Elt>(n));
  for (Elt x = 0; x < nf; x++)
    for (Elt c = 0; c < ng; c++)
      for (Elt y = 0; y < nf; y++)
        for (Elt d = 0; d < ng; d++)
          t[code(x, c)][code(y, d)] = code(f->mult(x, action[c][y]), gamma->mult(c, d));
  SemidirectResult out;
  out.group = product_group(t);
  out.embed_f.source = f;
  out.embed_f.target = out.group;
  out.embed_f.images.resize(nf);
  for (Elt x = 0; x < nf; x++) out.embed_f.images[x] = code(x, 0);
  out.projection.source = out.group;
  out.projection.target = gamma;
  out.projection.images.resize(n);
  for (Elt x = 0; x < nf; x++)
    for (Elt c = 0; c < ng; c++) out.projection.images[code(x, c)] = c;
  out.section.source = gamma;
  out.section.target = out.group;
  out.section.images.resize(ng);
  for (Elt c = 0; c < ng; c++) out.section.images[c] = code(0, c);
  out.embed_f.validate();
  out.projection.validate();
  out.section.validate();
  return out;
}

SemidirectResult direct_product(const GroupPtr& f, const GroupPtr& gamma) {
  std::vector<std::vector<Elt>> triv(gamma->order());
  for (auto& a : triv) {
    a.resize(f->order());
    for (Elt x = 0; x < f->order(); x++) a[x] = x;
  }
  return semidirect_product(f, gamma, triv);
}

GroupPtr central_product(const GroupPtr& a, Elt za, const GroupPtr& b, Elt zb) {
  int oa = a->element_order(za), ob = b->element_order(zb);
  if (oa != ob) fail(Err::SchemaViolation, "central product orders differ");
  if (!center(a).contains(za) || !center(b).contains(zb))
    fail(Err::SchemaViolation, "central product elements must be central");
  auto prod = direct_product(a, b);
  // diagonal subgroup generated by (za, zb^{-1}); pair coding is x*|B| + y
  Elt g = za * b->order() + b->inv(zb);
  Subgroup n = generated_subgroup(prod.group, {g});
  return quotient_by_normal(prod.group, n).group;
}

AbelianStructure abelian_structure(const GroupPtr& a) {
  if (!a->is_abelian()) fail(Err::NotAbelian, "abelian structure of a nonabelian group");
  AbelianStructure st;
  int n = a->order();
  if (n == 1) return st;
  const auto& gens = a->generators();
  int k = int(gens.size());
  // coordinates of every element over the greedy generators, via BFS
  std::vector<std::vector<i64>> vcoord(n);
  std::vector<char> seen(n, 0);
  seen[0] = 1;
  vcoord[0].assign(k, 0);
  std::vector<Elt> queue{0};
  for (size_t head = 0; head < queue.size(); head++) {
    Elt x = queue[head];
    for (int i = 0; i < k; i++) {
      Elt y = a->mult(x, gens[i]);
      if (!seen[y]) {
        seen[y] = 1;
        vcoord[y] = vcoord[x];
        vcoord[y][i]++;
        queue.push_back(y);
      }
    }
  }
  // kernel lattice of Z^k -> A: edge defects + generator orders
  std::vector<std::vector<i64>> rel;
  for (int i = 0; i < k; i++) {
    std::vector<i64> r(k, 0);
    r[i] = a->element_order(gens[i]);
    rel.push_back(r);
  }
  for (Elt x = 0; x < n; x++)
    for (int i = 0; i < k; i++) {
      Elt y = a->mult(x, gens[i]);
      std::vector<i64> r(k, 0);
      bool nz = false;
      for (int j = 0; j < k; j++) {
        r[j] = vcoord[x][j] + (j == i ? 1 : 0) - vcoord[y][j];
        if (r[j] != 0) nz = true;
      }
      if (nz) rel.push_back(std::move(r));
    }
  i64 nstar = a->exponent();
  Mat cols(k, int(rel.size()));
  for (int j = 0; j < int(rel.size()); j++)
    for (int i = 0; i < k; i++) cols.at(i, j) = rel[j][i];
  LatticeSnf q = snf_lattice(cols, nstar);
  // new generators: products of old gens by Uinv columns
  std::vector<int> keep;
  for (int i = 0; i < k; i++)
    if (q.factors[i] > 1) keep.push_back(i);
  for (int idx : keep) {
    st.factors.push_back(q.factors[idx]);
    Elt gnew = 0;
    for (int t = 0; t < k; t++) {
      i64 e = mod_floor(q.Uinv.at(t, idx), a->element_order(gens[t]));
      for (i64 rep = 0; rep < e; rep++) gnew = a->mult(gnew, gens[t]);
    }
    st.gens.push_back(gnew);
  }
  // sort so factors form the ascending chain (snf_lattice already ascending)
  st.coords.assign(n, std::vector<i64>(keep.size(), 0));
  for (Elt x = 0; x < n; x++) {
    for (size_t c = 0; c < keep.size(); c++) {
      i64 acc = 0;
      for (int t = 0; t < k; t++) acc += q.U.at(keep[c], t) * vcoord[x][t];
      st.coords[x][c] = mod_floor(acc, st.factors[c]);
    }
  }
  // verification: coordinates reconstruct each element
  i64 total = 1;
  for (i64 f : st.factors) total = ck_mul(total, f);
  if (total != n) fail(Err::Internal, "abelian structure order mismatch");
  for (Elt x = 0; x < n; x++) {
    Elt rec = 0;
    for (size_t c = 0; c < keep.size(); c++)
      for (i64 rep = 0; rep < st.coords[x][c]; rep++) rec = a->mult(rec, st.gens[c]);
    if (rec != x) fail(Err::Internal, "abelian coordinates do not reconstruct");
  }
  return st;
}

SubgroupKind classify_subgroup(const Subgroup& h) {
  if (h.order() == 1) return SubgroupKind::Trivial;
  if (!h.is_abelian()) return SubgroupKind::Nonabelian;
  auto sg = subgroup_as_group(h);
  auto st = abelian_structure(sg.group);
  if (st.factors.size() <= 1) return SubgroupKind::Cyclic;
  if (st.factors.size() == 2) return SubgroupKind::Bicyclic;
  return SubgroupKind::AbelianHigherRank;
}

const char* subgroup_kind_name(SubgroupKind k) {
  switch (k) {
    case SubgroupKind::Trivial: return "trivial";
    case SubgroupKind::Cyclic: return "cyclic";
    case SubgroupKind::Bicyclic: return "bicyclic";
    case SubgroupKind::AbelianHigherRank: return "abelian-higher-rank";
    case SubgroupKind::Nonabelian: return "nonabelian";
  }
  return "?";
}

std::vector<std::vector<Elt>> automorphisms(const GroupPtr& g, size_t limit) {
  int n = g->order();
  const auto& gens = g->generators();
  int k = int(gens.size());
  std::vector<std::vector<Elt>> out;
  if (n == 1) {
    out.push_back({0});
    return out;
  }
  // profile of an element: (order, order census of powers) to prune images
  std::vector<int> eorder(n);
  for (Elt a = 0; a < n; a++) eorder[a] = g->element_order(a);
  // candidates per generator: elements of equal order
  std::vector<std::vector<Elt>> cand(k);
  for (int i = 0; i < k; i++)
    for (Elt a = 0; a < n; a++)
      if (eorder[a] == eorder[gens[i]]) cand[i].push_back(a);

  std::vector<Elt> pick(k, 0);
  std::vector<int> ci(k, 0);
  // depth-first over generator images with full verification at the leaves
  std::vector<Elt> img(n);
  auto try_build = [&]() -> bool {
    // propagate over the BFS tree of g
    const auto& T = g->bfs_tree();
    std::vector<char> done(n, 0);
    img[0] = 0;
    done[0] = 1;
    // generators first
    for (int i = 0; i < k; i++) {
      img[gens[i]] = pick[i];
      done[gens[i]] = 1;
    }
    // BFS order: parent is always shorter
    std::vector<Elt> order;
    order.reserve(n);
    {
      std::vector<Elt> queue{0};
      std::vector<char> seen(n, 0);
      seen[0] = 1;
      for (size_t head = 0; head < queue.size(); head++) {
        Elt w = queue[head];
        for (int si = 0; si < k; si++) {
          Elt e = g->mult(gens[si], w);
          if (!seen[e]) {
            seen[e] = 1;
            queue.push_back(e);
          }
        }
      }
      order = queue;
    }
    for (Elt e : order) {
      if (done[e]) continue;
      img[e] = g->mult(img[gens[T.parent_gen[e]]], img[T.parent_elt[e]]);
      done[e] = 1;
    }
    std::vector<char> hit(n, 0);
    for (Elt a = 0; a < n; a++) {
      if (hit[img[a]]) return false;
      hit[img[a]] = 1;
    }
    // checking pairs (s, b) with s a generator suffices: the map was built by
    // img[s*w] = img[s]*img[w], and the general case follows by induction on
    // word length of the first argument
    for (int i = 0; i < k; i++)
      for (Elt b = 0; b < n; b++)
        if (img[g->mult(gens[i], b)] != g->mult(img[gens[i]], img[b])) return false;
    return true;
  };
  size_t tried = 0;
  for (;;) {
    if (++tried > limit) fail(Err::OrderLimitExceeded, "automorphism search limit");
    for (int i = 0; i < k; i++) pick[i] = cand[i][ci[i]];
    if (try_build()) out.push_back(img);
    int c = 0;
    while (c < k) {
      if (++ci[c] < int(cand[c].size())) break;
      ci[c] = 0;
      c++;
    }
    if (c == k) break;
  }
  return out;
}

}  // namespace brnr
