#include "sections.hpp"

#include <algorithm>
#include <set>

namespace brnr {

std::vector<SectionClass> h1_orbits(const Gerb& g, const std::vector<GroupHom>& sections) {
  std::vector<SectionClass> out;
  std::set<std::vector<Elt>> seen;
  for (auto& s : sections) {
    if (seen.count(s.images)) continue;
    SectionClass cls;
    std::set<std::vector<Elt>> orbit;
    for (Elt f : g.F.members) {
      std::vector<Elt> img(s.images.size());
      for (size_t c = 0; c < s.images.size(); c++) img[c] = g.E->conj(f, s.images[c]);
      orbit.insert(std::move(img));
    }
    for (auto& img : orbit) {
      seen.insert(img);
      GroupHom h;
      h.source = g.Gamma;
      h.target = g.E;
      h.images = img;
      cls.orbit.push_back(std::move(h));
    }
    cls.representative = 0;  // std::set iterates in lexicographic order
    out.push_back(std::move(cls));
  }
  std::sort(out.begin(), out.end(), [](const SectionClass& a, const SectionClass& b) {
    return a.orbit[a.representative].images < b.orbit[b.representative].images;
  });
  return out;
}

CohomologyClass evaluate_class(const Gerb& g, const GerbCoeff& coeff,
                               const CohomologyClass& alpha, const GroupHom& s,
                               const Config& cfg) {
  if (alpha.parent->module.hash() != coeff.on_e.hash())
    fail(Err::ModuleMismatch, "class module is not the gerb coefficient module");
  auto h2g = cohomology_group(g.Gamma, coeff.on_gamma, 2, cfg);
  Cochain pulled = pullback_cochain(alpha.rep, s);
  return h2g->cls_of(pulled);
}

LocalGaloisModel tame_local_model(i64 p, i64 q, i64 a, i64 b, i64 n) {
  if (p < 2 || q < 2 || a < 1 || b < 1 || n < 2)
    fail(Err::InconsistentParameters, "tame model parameters out of range");
  bool prime = true;
  for (i64 d = 2; d * d <= p; d++)
    if (p % d == 0) prime = false;
  if (!prime) fail(Err::InconsistentParameters, "p must be prime");
  i64 qq = q;
  while (qq % p == 0) qq /= p;
  if (qq != 1) fail(Err::InconsistentParameters, "q must be a power of p");
  if (mod_pow(q, a, b) != 1 % b)
    fail(Err::InconsistentParameters, "b must divide q^a - 1");
  if (gcd_i64(n, p) != 1) fail(Err::InconsistentParameters, "n must be prime to p");
  if (mod_pow(q, a, n) != 1 % n)
    fail(Err::InconsistentParameters, "character undefined: q^a != 1 mod n");
  LocalGaloisModel m;
  m.kind = LocalGaloisModel::Kind::Tame;
  m.p = p;
  m.q = q;
  m.a = a;
  m.b = b;
  m.n = n;
  auto zb = FiniteGroup::cyclic(int(b));
  auto za = FiniteGroup::cyclic(int(a));
  std::vector<std::vector<Elt>> action(a);
  for (i64 i = 0; i < a; i++) {
    action[i].resize(b);
    i64 qi = mod_pow(q, i, b);
    for (i64 t = 0; t < b; t++) action[i][t] = Elt(t * qi % b);
  }
  auto sd = semidirect_product(zb, za, action);
  m.gamma = sd.group;
  m.tau = b > 1 ? sd.embed_f(1) : 0;
  m.sigma = a > 1 ? sd.section(1) : 0;
  m.character.resize(m.gamma->order());
  for (Elt t = 0; t < b; t++)
    for (Elt c = 0; c < a; c++)
      m.character[sd.group->mult(sd.embed_f(t), sd.section(c))] = mod_pow(q, c, n);
  // element coding is (t, c) = t*a + c, covered exactly once above
  return m;
}

LocalGaloisModel real_model(i64 n) {
  if (n < 2) fail(Err::InconsistentParameters, "real model needs n >= 2");
  LocalGaloisModel m;
  m.kind = LocalGaloisModel::Kind::Real;
  m.n = n;
  m.gamma = FiniteGroup::cyclic(2);
  m.sigma = 1;
  m.tau = 0;
  m.character = {1, mod_floor(n - 1, n)};
  return m;
}

EvaluationReport constancy_check(const Gerb& g, const GerbCoeff& coeff,
                                 const LocalGaloisModel& model, const SubgroupLat& s,
                                 const Config& cfg, bool bypass_hypotheses) {
  if (!g.split()) fail(Err::NoSection, "constancy check needs a split gerb");
  if (g.Gamma->hash() != model.gamma->hash())
    fail(Err::InconsistentParameters, "gerb is not over the local model group");
  if (model.kind == LocalGaloisModel::Kind::Tame && !bypass_hypotheses) {
    if (gcd_i64(g.F.order(), model.p) != 1)
      fail(Err::HypothesesViolated, "|F| is not prime to the residue characteristic");
    // action must factor through <sigma>: tau acts trivially on F
    Elt t0 = (*g.section)(model.tau);
    for (Elt f : g.F.members)
      if (g.E->conj(t0, f) != f)
        fail(Err::HypothesesViolated, "inertia acts nontrivially on F (ramified action)");
  }
  auto sections = enumerate_sections(g);
  auto orbits = h1_orbits(g, sections);
  auto h2g = cohomology_group(g.Gamma, coeff.on_gamma, 2, cfg);
  auto h2e = cohomology_group(g.E, coeff.on_e, 2, cfg);
  EvaluationReport rep;
  rep.section_classes = int(orbits.size());
  auto st = s.structure();
  for (auto& gen : st.gens) {
    auto cls = h2e->cls(gen);
    rep.classes.push_back(gen);
    std::vector<std::vector<i64>> row;
    std::vector<i64> first;
    bool have_first = false;
    for (auto& orb : orbits) {
      // evaluation is constant on the orbit; evaluate every member to verify
      std::vector<i64> val;
      bool have_val = false;
      for (auto& sec : orb.orbit) {
        auto v = evaluate_class(g, coeff, cls, sec, cfg).coords;
        if (!have_val) {
          val = v;
          have_val = true;
        } else if (val != v) {
          fail(Err::Internal, "evaluation differs within a section class");
        }
      }
      for (i64 x : val)
        if (x != 0) rep.all_zero = false;
      if (!have_first) {
        first = val;
        have_first = true;
      } else if (val != first) {
        rep.constant = false;
      }
      row.push_back(std::move(val));
    }
    rep.values.push_back(std::move(row));
  }
  return rep;
}

bool shapiro_check(const Gerb& g, const GerbCoeff& coeff, const Config& cfg) {
  if (!g.split()) fail(Err::NoSection, "shapiro check needs a split gerb");
  // section image as a subgroup
  Subgroup simg;
  simg.parent = g.E;
  simg.members = g.section->images;
  std::sort(simg.members.begin(), simg.members.end());
  auto sg = subgroup_as_group(simg);
  GModule m_on_s = restrict_module(coeff.on_e, sg);
  GModule ind = induced_module(m_on_s, sg.embed);
  auto h2_ind = cohomology_group(g.E, ind, 2, cfg);
  auto h2_gamma = cohomology_group(g.Gamma, coeff.on_gamma, 2, cfg);
  if (h2_ind->factors != h2_gamma->factors) return false;

  // Shapiro comparison: restrict to s(Gamma), project to the identity-coset
  // block, transport along the section isomorphism Gamma -> s(Gamma)
  int t = g.E->order() / sg.group->order();
  int r = coeff.on_e.rank();
  // identity coset block: coordinates k*t + 0 in the induced layout
  auto project = [&](const Cochain& c_on_s) {
    Cochain out = Cochain::zero(sg.group, r, 2);
    for (Elt x = 1; x < sg.group->order(); x++)
      for (Elt y = 1; y < sg.group->order(); y++)
        for (int k = 0; k < r; k++) out.at2(x, y)[k] = c_on_s.at2(x, y)[size_t(k) * t];
    return out;
  };
  // transport to Gamma: s: Gamma -> s(Gamma) isomorphism of groups
  std::vector<Elt> to_sub(g.E->order(), -1);
  for (Elt x = 0; x < sg.group->order(); x++) to_sub[sg.embed(x)] = x;
  GroupHom gamma_to_sg;
  gamma_to_sg.source = g.Gamma;
  gamma_to_sg.target = sg.group;
  gamma_to_sg.images.resize(g.Gamma->order());
  for (Elt c = 0; c < g.Gamma->order(); c++) gamma_to_sg.images[c] = to_sub[(*g.section)(c)];
  gamma_to_sg.validate();
  auto shapiro_map = [&](const CohomologyClass& a) {
    Cochain res = restrict_cochain(a.rep, sg);
    Cochain proj = project(res);
    Cochain on_gamma = pullback_cochain(proj, gamma_to_sg);
    return h2_gamma->class_coords(on_gamma);
  };
  // the map must be an isomorphism: images of the basis generate with trivial
  // kernel
  std::vector<std::vector<i64>> images;
  for (size_t i = 0; i < h2_ind->basis.size(); i++) {
    std::vector<i64> coords(h2_ind->factors.size(), 0);
    coords[i] = 1;
    images.push_back(shapiro_map(h2_ind->cls(coords)));
  }
  if (!h2_ind->factors.empty()) {
    i64 nstar = 1;
    for (i64 f : h2_ind->factors) nstar = lcm_i64(nstar, f);
    for (i64 f : h2_gamma->factors) nstar = lcm_i64(nstar, f);
    std::vector<std::vector<i64>> rows;
    for (size_t i = 0; i < h2_gamma->factors.size(); i++) {
      std::vector<i64> row(images.size());
      for (size_t j = 0; j < images.size(); j++)
        row[j] = mod_floor(images[j][i] * (nstar / h2_gamma->factors[i]), nstar);
      rows.push_back(std::move(row));
    }
    Mat K = kernel_mod(rows, nstar, h2_ind->factors);
    std::vector<std::vector<i64>> gens;
    for (int j = 0; j < K.c; j++) {
      std::vector<i64> col(K.r);
      for (int i = 0; i < K.r; i++) col[i] = K.at(i, j);
      gens.push_back(col);
    }
    if (SubgroupLat(h2_ind->factors, gens).structure().order != 1) return false;
  }
  // diagonal route recovers the section evaluation on H2(E, M)
  auto h2e = cohomology_group(g.E, coeff.on_e, 2, cfg);
  std::vector<int> coset_of(g.E->order(), -1);
  std::vector<Elt> reps;
  for (Elt e = 0; e < g.E->order(); e++) {
    if (coset_of[e] >= 0) continue;
    int id = int(reps.size());
    reps.push_back(e);
    for (Elt x = 0; x < sg.group->order(); x++) coset_of[g.E->mult(e, sg.embed(x))] = id;
  }
  for (auto& b : h2e->basis) {
    // diagonal map m -> sum_i t_i (x) t_i^{-1} m on cochain values
    Cochain diag = Cochain::zero(g.E, ind.rank(), 2);
    for (Elt x = 1; x < g.E->order(); x++)
      for (Elt y = 1; y < g.E->order(); y++) {
        auto val = b.value2(x, y);
        for (int i = 0; i < t; i++) {
          auto moved = coeff.on_e.apply(g.E->inv(reps[i]), val);
          for (int k = 0; k < r; k++) diag.at2(x, y)[size_t(k) * t + i] = moved[k];
        }
      }
    auto via = h2_gamma->cls(shapiro_map(h2_ind->cls_of(diag)));
    auto direct = evaluate_class(g, coeff, h2e->cls_of(b), *g.section, cfg);
    if (via.coords != direct.coords) return false;
  }
  return true;
}

}  // namespace brnr
