#include "gerb.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace brnr {

uint64_t Gerb::hash() const {
  Fnv f;
  f.u64(E->hash());
  f.vec(F.members);
  f.u64(Gamma->hash());
  f.vec(pi.images);
  f.u64(section ? 1 : 0);
  if (section) f.vec(section->images);
  f.u64(essentially_real ? 1 : 0);
  return f.h;
}

Gerb gerb_from_split(const GroupPtr& f, const GroupPtr& gamma,
                     const std::vector<std::vector<Elt>>& action, bool essentially_real) {
  auto sd = semidirect_product(f, gamma, action);
  Gerb g;
  g.E = sd.group;
  g.F.parent = sd.group;
  g.F.members = sd.embed_f.images;
  std::sort(g.F.members.begin(), g.F.members.end());
  g.Gamma = gamma;
  g.pi = sd.projection;
  g.section = sd.section;
  g.essentially_real = essentially_real;
  return g;
}

namespace {

// search all homomorphic sections of pi by assigning generator images inside
// the fibers and propagating over a spanning tree, checking all relations
std::vector<GroupHom> section_search(const GroupPtr& e, const GroupPtr& gamma,
                                     const GroupHom& pi, i64 cap, bool first_only) {
  std::vector<GroupHom> out;
  int ng = gamma->order();
  if (ng == 1) {
    GroupHom s;
    s.source = gamma;
    s.target = e;
    s.images = {0};
    out.push_back(std::move(s));
    return out;
  }
  const auto& S = gamma->generators();
  int k = int(S.size());
  // fibers over the generators
  std::vector<std::vector<Elt>> fiber(k);
  for (int i = 0; i < k; i++)
    for (Elt x = 0; x < e->order(); x++)
      if (pi(x) == S[i]) fiber[i].push_back(x);
  i64 total = 1;
  for (int i = 0; i < k; i++) {
    total = ck_mul(total, i64(fiber[i].size()));
    if (total > cap) fail(Err::OrderLimitExceeded, "section search beyond cap");
  }
  const auto& T = gamma->bfs_tree();
  std::vector<Elt> order;
  {
    std::vector<char> seen(ng, 0);
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
  std::vector<int> gen_index(ng, -1);
  for (int i = 0; i < k; i++) gen_index[S[i]] = i;
  std::vector<size_t> pick(k, 0);
  std::vector<Elt> img(ng);
  for (;;) {
    img[0] = 0;
    for (int i = 0; i < k; i++) img[S[i]] = fiber[i][pick[i]];
    for (Elt g : order) {
      if (g == 0 || gen_index[g] >= 0) continue;
      img[g] = e->mult(img[S[T.parent_gen[g]]], img[T.parent_elt[g]]);
    }
    bool ok = true;
    for (Elt a = 0; a < ng && ok; a++)
      for (Elt b = 0; b < ng; b++)
        if (img[gamma->mult(a, b)] != e->mult(img[a], img[b])) {
          ok = false;
          break;
        }
    if (ok) {
      GroupHom s;
      s.source = gamma;
      s.target = e;
      s.images = img;
      out.push_back(std::move(s));
      if (first_only) return out;
    }
    int c = 0;
    while (c < k) {
      if (++pick[c] < fiber[c].size()) break;
      pick[c] = 0;
      c++;
    }
    if (c == k) break;
  }
  return out;
}

}  // namespace

Gerb gerb_from_explicit(const GroupPtr& e, const Subgroup& f, const GroupHom& pi,
                        bool essentially_real, int section_search_cap) {
  if (f.parent->hash() != e->hash()) fail(Err::SchemaViolation, "F is not a subgroup of E");
  if (pi.source->hash() != e->hash()) fail(Err::SchemaViolation, "pi is not defined on E");
  pi.validate();
  if (!pi.is_surjective()) fail(Err::NotSurjective, "pi is not onto Gamma");
  auto ker = pi.kernel();
  if (ker != f.members) fail(Err::NotExact, "kernel of pi differs from F");
  if (!f.is_normal()) fail(Err::NotExact, "F is not normal in E");
  Gerb g;
  g.E = e;
  g.F = f;
  g.Gamma = pi.target;
  g.pi = pi;
  g.essentially_real = essentially_real;
  auto secs = section_search(e, g.Gamma, pi, section_search_cap, /*first_only=*/true);
  if (!secs.empty()) g.section = secs[0];
  return g;
}

std::vector<GroupHom> enumerate_sections(const Gerb& g, i64 cap) {
  if (!g.split()) fail(Err::NoSection, "section enumeration needs a split gerb");
  return section_search(g.E, g.Gamma, g.pi, cap, /*first_only=*/false);
}

GerbCoeff make_coeff(const Gerb& g, const GModule& on_gamma) {
  if (on_gamma.group()->hash() != g.Gamma->hash())
    fail(Err::TargetMismatch, "coefficient module is not over Gamma");
  GerbCoeff c{on_gamma, pull_back_module(on_gamma, g.pi)};
  return c;
}

GerbCoeff make_mu_coeff(const Gerb& g, i64 n, const std::vector<i64>& character_on_gamma) {
  return make_coeff(g, mu_module(n, g.Gamma, character_on_gamma));
}

const char* intersect_kind_name(IntersectKind x) {
  switch (x) {
    case IntersectKind::Ab: return "ab";
    case IntersectKind::Bic: return "bic";
    case IntersectKind::Cyc: return "cyc";
  }
  return "?";
}
const char* image_kind_name(ImageKind y) {
  return y == ImageKind::Scyc ? "scyc" : "0";
}

namespace {

bool kind_allowed(IntersectKind x, SubgroupKind k) {
  switch (x) {
    case IntersectKind::Ab:
      return k != SubgroupKind::Nonabelian;
    case IntersectKind::Bic:
      return k == SubgroupKind::Trivial || k == SubgroupKind::Cyclic ||
             k == SubgroupKind::Bicyclic;
    case IntersectKind::Cyc:
      return k == SubgroupKind::Trivial || k == SubgroupKind::Cyclic;
  }
  return false;
}

}  // namespace

Family enumerate_family(const Gerb& g, IntersectKind x, ImageKind y, const Config& cfg) {
  if (g.E->order() > cfg.group_order_cap)
    fail(Err::OrderLimitExceeded, "gerb order beyond configured cap");
  Family fam;
  fam.x = x;
  fam.y = y;
  // subgroups of F of the requested kind, up to E-conjugacy
  auto fgrp = subgroup_as_group(g.F);
  auto subs_f = all_subgroups(fgrp.group, cfg.group_order_cap);
  std::set<std::vector<Elt>> seen;
  std::vector<Subgroup> reps;
  for (auto& hf : subs_f) {
    Subgroup h;
    h.parent = g.E;
    for (Elt m : hf.members) h.members.push_back(fgrp.embed(m));
    std::sort(h.members.begin(), h.members.end());
    if (seen.count(h.members)) continue;
    if (!kind_allowed(x, classify_subgroup(h))) continue;
    // E-conjugacy orbit; keep the lexicographically smallest as representative
    std::set<std::vector<Elt>> orbit;
    for (Elt c = 0; c < g.E->order(); c++) orbit.insert(conjugate_subgroup(h, c).members);
    for (auto& m : orbit) seen.insert(m);
    Subgroup rep;
    rep.parent = g.E;
    rep.members = *orbit.begin();
    reps.push_back(std::move(rep));
  }
  std::sort(reps.begin(), reps.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
    return a.members < b.members;
  });
  if (y == ImageKind::Zero) {
    fam.subgroups = std::move(reps);
    return fam;
  }
  // pairs (A, e): e runs over N_E(A) up to N_E(A)-conjugacy, no reduction mod A
  for (auto& a : reps) {
    Subgroup nrm = normalizer(a);
    std::vector<char> used(g.E->order(), 0);
    for (Elt e : nrm.members) {
      if (used[e]) continue;
      Elt best = e;
      for (Elt c : nrm.members) {
        Elt conj = g.E->conj(c, e);
        used[conj] = 1;
        if (conj < best) best = conj;
      }
      ProcyclicPair p;
      p.A = a;
      p.e = best;
      fam.pairs.push_back(std::move(p));
    }
  }
  std::sort(fam.pairs.begin(), fam.pairs.end(),
            [](const ProcyclicPair& p, const ProcyclicPair& q) {
              if (p.A.members.size() != q.A.members.size())
                return p.A.members.size() < q.A.members.size();
              if (p.A.members != q.A.members) return p.A.members < q.A.members;
              return p.e < q.e;
            });
  return fam;
}

}  // namespace brnr
