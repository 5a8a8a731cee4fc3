#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "catalog.hpp"
#include "sha.hpp"

using namespace brnr;

namespace {

std::vector<std::vector<Elt>> trivial_action(const GroupPtr& f, const GroupPtr& gamma) {
  std::vector<std::vector<Elt>> act(gamma->order());
  for (auto& a : act) {
    a.resize(f->order());
    for (Elt x = 0; x < f->order(); x++) a[x] = x;
  }
  return act;
}

Gerb z4_over_z2() {
  auto z4 = FiniteGroup::cyclic(4);
  GroupHom p;
  p.source = z4;
  p.target = FiniteGroup::cyclic(2);
  p.images = {0, 1, 0, 1};
  p.validate();
  return gerb_from_explicit(z4, generated_subgroup(z4, {2}), p);
}

GroupPtr q8() {
  std::vector<Elt> ra = {1, 2, 3, 0, 7, 4, 5, 6};
  std::vector<Elt> rb = {4, 5, 6, 7, 2, 3, 0, 1};
  return FiniteGroup::from_permutations(8, {ra, rb});
}

std::vector<i64> ones(const GroupPtr& g) { return std::vector<i64>(g->order(), 1); }

}  // namespace

TEST_CASE("split gerbs") {
  auto z2 = FiniteGroup::cyclic(2);
  auto triv = FiniteGroup::trivial();
  auto g1 = gerb_from_split(z2, triv, trivial_action(z2, triv));
  CHECK(g1.E->order() == 2);
  CHECK(g1.split());

  auto z3 = FiniteGroup::cyclic(3);
  auto g2 = gerb_from_split(z3, z2, {{0, 1, 2}, {0, 2, 1}});
  CHECK(g2.E->order() == 6);
  CHECK(!g2.E->is_abelian());
  CHECK(g2.split());
  for (Elt c = 0; c < 2; c++) CHECK(g2.pi((*g2.section)(c)) == c);

  auto s3 = FiniteGroup::from_permutations(3, {{1, 0, 2}, {1, 2, 0}});
  auto g3 = gerb_from_split(s3, z2, trivial_action(s3, z2));
  CHECK(g3.E->order() == 12);
}

TEST_CASE("explicit gerbs and the section search") {
  auto g = z4_over_z2();
  CHECK(!g.split());

  auto v4 = FiniteGroup::abelian({2, 2});
  GroupHom p2;
  p2.source = v4;
  p2.target = FiniteGroup::cyclic(2);
  // coordinates of abelian({2,2}): element = a*2 + b with factors (2,2)
  p2.images = {0, 1, 0, 1};
  p2.validate();
  auto g2 = gerb_from_explicit(v4, p2.kernel().size() == 2
                                       ? Subgroup{v4, p2.kernel()}
                                       : Subgroup{v4, {0}},
                               p2);
  CHECK(g2.split());

  // Q8 over V4: the center is the kernel; all lifts of involutions have order 4
  auto q = q8();
  auto z = center(q);
  CHECK(z.order() == 2);
  auto quo = quotient_by_normal(q, z);
  CHECK(quo.group->order() == 4);
  auto g3 = gerb_from_explicit(q, z, quo.projection);
  CHECK(!g3.split());

  // kernel mismatch is rejected
  bool caught = false;
  try {
    auto z4 = FiniteGroup::cyclic(4);
    GroupHom p;
    p.source = z4;
    p.target = FiniteGroup::cyclic(2);
    p.images = {0, 1, 0, 1};
    (void)gerb_from_explicit(z4, trivial_subgroup(z4), p);
  } catch (const Error& e) {
    caught = e.code() == Err::NotExact;
  }
  CHECK(caught);
}

TEST_CASE("family enumeration counts") {
  // Gamma trivial, F = S3, x = ab, y = 0: classes {1}, Z/2, Z/3
  auto s3 = FiniteGroup::from_permutations(3, {{1, 0, 2}, {1, 2, 0}});
  auto triv = FiniteGroup::trivial();
  auto g = gerb_from_split(s3, triv, trivial_action(s3, triv));
  Config cfg;
  auto fam = enumerate_family(g, IntersectKind::Ab, ImageKind::Zero, cfg);
  REQUIRE(fam.subgroups.size() == 3);
  CHECK(fam.subgroups[0].order() == 1);
  CHECK(fam.subgroups[1].order() == 2);
  CHECK(fam.subgroups[2].order() == 3);

  // F = Z/2, Gamma = Z/2 trivial action: x = cyc, y = scyc has 8 pairs
  auto z2 = FiniteGroup::cyclic(2);
  auto gv = gerb_from_split(z2, z2, trivial_action(z2, z2));
  auto famv = enumerate_family(gv, IntersectKind::Cyc, ImageKind::Scyc, cfg);
  CHECK(famv.pairs.size() == 8);

  // scyc contains each y=0 member as the pair (A, identity)
  auto fam0 = enumerate_family(gv, IntersectKind::Cyc, ImageKind::Zero, cfg);
  for (auto& a : fam0.subgroups) {
    bool found = false;
    for (auto& p : famv.pairs)
      if (p.A.members == a.members && p.e == 0) found = true;
    CHECK(found);
  }
}

TEST_CASE("procyclic restriction basics") {
  Config cfg;
  // Z/4 over Z/2 with mu_2: the nontrivial class is obstructed on (F, t)
  auto g = z4_over_z2();
  auto coeff = make_mu_coeff(g, 2, ones(g.Gamma));
  auto H2 = cohomology_group(g.E, coeff.on_e, 2, cfg);
  REQUIRE(H2->factors == std::vector<i64>{2});
  auto alpha = H2->cls({1});
  ProcyclicPair p;
  p.A = g.F;
  p.e = 1;  // an order-4 element mapping onto the generator
  CHECK(g.E->element_order(1) == 4);
  auto ob = procyclic_restriction(g, coeff.on_e, alpha, p, cfg);
  CHECK(!ob.vanishes);
  bool primary_zero = true;
  for (i64 v : ob.primary)
    if (v != 0) primary_zero = false;
  CHECK(!primary_zero);

  // the zero class vanishes on every pair
  auto zero = H2->zero_class();
  for (auto& pr : enumerate_family(g, IntersectKind::Ab, ImageKind::Scyc, cfg).pairs)
    CHECK(procyclic_restriction(g, coeff.on_e, zero, pr, cfg).vanishes);

  // inflated classes vanish on pairs with e in F (trivial image side)
  auto z2 = FiniteGroup::cyclic(2);
  auto gv = gerb_from_split(z2, z2, trivial_action(z2, z2));
  auto cv = make_mu_coeff(gv, 2, ones(gv.Gamma));
  auto H2v = cohomology_group(gv.E, cv.on_e, 2, cfg);
  auto H2g = cohomology_group(gv.Gamma, cv.on_gamma, 2, cfg);
  REQUIRE(H2g->factors == std::vector<i64>{2});
  auto inf = inflate_class(H2g->cls({1}), gv.pi, H2v);
  for (auto& pr : enumerate_family(gv, IntersectKind::Ab, ImageKind::Scyc, cfg).pairs) {
    auto ob2 = procyclic_restriction(gv, cv.on_e, inf, pr, cfg);
    CHECK(ob2.vanishes);  // constants vanish on every scyc pair
  }
}

TEST_CASE("well-definedness of the secondary obstruction") {
  Config cfg;
  auto z2 = FiniteGroup::cyclic(2);
  auto gv = gerb_from_split(z2, z2, trivial_action(z2, z2));
  auto cv = make_mu_coeff(gv, 2, ones(gv.Gamma));
  auto H2v = cohomology_group(gv.E, cv.on_e, 2, cfg);
  auto fam = enumerate_family(gv, IntersectKind::Ab, ImageKind::Scyc, cfg);
  // sweep all classes and pairs; whenever the primary part vanishes, recompute
  // the secondary with the trivializer offset by every 1-cocycle on A
  std::vector<i64> coords(H2v->factors.size(), 0);
  int checked = 0;
  for (;;) {
    auto alpha = H2v->cls(coords);
    for (auto& p : fam.pairs) {
      if (p.A.order() == 1) continue;
      PairContext ctx = pair_context(gv, cv.on_e, p.A, cfg);
      Cochain resA = restrict_cochain(alpha.rep, ctx.sub);
      auto prim = ctx.h2a->class_coords(resA);
      bool zero = true;
      for (size_t i = 0; i < prim.size(); i++)
        if (mod_floor(prim[i], ctx.h2a->factors[i]) != 0) zero = false;
      if (!zero) continue;
      auto base = procyclic_restriction(gv, cv.on_e, alpha, p, cfg);
      auto u0 = ctx.h2a->coboundary_witness(resA);
      REQUIRE(u0.has_value());
      // enumerate Z^1(A, M): brute force over 1-cochain values
      int slots = (ctx.sub.group->order() - 1) * cv.on_e.rank();
      std::vector<i64> uv(slots, 0);
      for (;;) {
        Cochain z = Cochain::zero(ctx.sub.group, cv.on_e.rank(), 1);
        z.v.assign(uv.begin(), uv.end());
        if (ctx.h1a->is_cocycle(z)) {
          Cochain u2 = cochain_add(ctx.m_res, *u0, z);
          Cochain xi = wang_xi(gv, cv.on_e, ctx, alpha.rep, u2, p.e);
          // compare coinvariant class with the base secondary
          auto gam = ctx.h1a->class_coords(xi);
          Mat phi = phi_action_on_h1(gv, cv.on_e, ctx, p.e);
          int d = int(ctx.h1a->factors.size());
          std::vector<std::vector<i64>> imgens;
          for (int j = 0; j < d; j++) {
            std::vector<i64> col(d);
            for (int i = 0; i < d; i++)
              col[i] = mod_floor(phi.at(i, j) - (i == j ? 1 : 0), ctx.h1a->factors[i]);
            imgens.push_back(col);
          }
          SubgroupLat im(ctx.h1a->factors, imgens);
          i64 h1star = 1;
          for (i64 f : ctx.h1a->factors) h1star = lcm_i64(h1star, f);
          LatticeSnf q = snf_lattice(im.basis(), h1star);
          std::vector<i64> sec;
          for (int i = 0; i < d; i++) {
            if (q.factors[i] == 1) continue;
            i64 acc = 0;
            for (int t = 0; t < d; t++) acc += q.U.at(i, t) * gam[t];
            sec.push_back(mod_floor(acc, q.factors[i]));
          }
          CHECK(sec == base.secondary);
          checked++;
        }
        int cpos = 0;
        while (cpos < slots) {
          if (++uv[cpos] < cv.on_e.factors()[cpos % cv.on_e.rank()]) break;
          uv[cpos] = 0;
          cpos++;
        }
        if (cpos == slots) break;
      }
    }
    size_t t = 0;
    while (t < coords.size()) {
      if (++coords[t] < H2v->factors[t]) break;
      coords[t] = 0;
      t++;
    }
    if (t == coords.size()) break;
  }
  CHECK(checked > 0);
}

TEST_CASE("wang oracle agreement and monotonicity on small gerbs") {
  Config cfg;
  std::vector<std::pair<Gerb, GerbCoeff>> cases;
  {
    auto g = z4_over_z2();
    cases.emplace_back(g, make_mu_coeff(g, 2, ones(g.Gamma)));
  }
  {
    auto z2 = FiniteGroup::cyclic(2);
    auto g = gerb_from_split(z2, z2, trivial_action(z2, z2));
    cases.emplace_back(g, make_mu_coeff(g, 2, ones(g.Gamma)));
  }
  {
    auto z3 = FiniteGroup::cyclic(3);
    auto z2 = FiniteGroup::cyclic(2);
    auto g = gerb_from_split(z3, z2, {{0, 1, 2}, {0, 2, 1}});
    cases.emplace_back(g, make_mu_coeff(g, 3, {1, 2}));
  }
  for (auto& [g, coeff] : cases) {
    auto H2 = cohomology_group(g.E, coeff.on_e, 2, cfg);
    i64 n = coeff.on_e.exponent();
    auto fam = enumerate_family(g, IntersectKind::Ab, ImageKind::Scyc, cfg);
    std::vector<i64> coords(H2->factors.size(), 0);
    for (;;) {
      auto alpha = H2->cls(coords);
      for (auto& p : fam.pairs) {
        bool wang = procyclic_restriction(g, coeff.on_e, alpha, p, cfg).vanishes;
        bool t1 = pair_vanishes_via_tower(g, coeff.on_e, alpha, p, 1, cfg);
        bool tn = pair_vanishes_via_tower(g, coeff.on_e, alpha, p, n, cfg);
        bool tn2 = pair_vanishes_via_tower(g, coeff.on_e, alpha, p, n * n, cfg);
        CHECK(wang == tn);
        if (t1) CHECK(tn);
        if (tn) CHECK(tn2);
      }
      size_t t = 0;
      while (t < coords.size()) {
        if (++coords[t] < H2->factors[t]) break;
        coords[t] = 0;
        t++;
      }
      if (t == coords.size()) break;
    }
  }
}

TEST_CASE("sha2 basics and nesting") {
  Config cfg;
  // F abelian, Gamma trivial: restriction to F itself kills everything
  auto v4 = FiniteGroup::abelian({2, 2});
  auto triv = FiniteGroup::trivial();
  auto g = gerb_from_split(v4, triv, trivial_action(v4, triv));
  auto coeff = make_mu_coeff(g, 2, {1});
  auto rep = sha2(g, coeff.on_e, IntersectKind::Ab, ImageKind::Zero, cfg);
  CHECK(rep.kernel.is_zero());

  // S3, Gamma trivial, mu_6: all kernels are zero
  auto s3 = FiniteGroup::from_permutations(3, {{1, 0, 2}, {1, 2, 0}});
  auto gs = gerb_from_split(s3, triv, trivial_action(s3, triv));
  auto cs = make_mu_coeff(gs, 6, {1});
  auto rs = sha2(gs, cs.on_e, IntersectKind::Ab, ImageKind::Zero, cfg);
  CHECK(rs.kernel.is_zero());

  // nesting on the Q8-over-V4 gerb with mu_2
  auto q = q8();
  auto z = center(q);
  auto quo = quotient_by_normal(q, z);
  auto gq = gerb_from_explicit(q, z, quo.projection);
  auto cq = make_mu_coeff(gq, 2, ones(gq.Gamma));
  std::map<std::pair<IntersectKind, ImageKind>, SubgroupLat> K;
  for (auto x : {IntersectKind::Ab, IntersectKind::Bic, IntersectKind::Cyc})
    for (auto y : {ImageKind::Scyc, ImageKind::Zero})
      K.emplace(std::make_pair(x, y), sha2(gq, cq.on_e, x, y, cfg).kernel);
  for (auto y : {ImageKind::Scyc, ImageKind::Zero}) {
    CHECK(K.at({IntersectKind::Bic, y})
              .contains_subgroup(K.at({IntersectKind::Ab, y})));
    CHECK(K.at({IntersectKind::Cyc, y})
              .contains_subgroup(K.at({IntersectKind::Bic, y})));
  }
  for (auto x : {IntersectKind::Ab, IntersectKind::Bic, IntersectKind::Cyc})
    CHECK(K.at({x, ImageKind::Zero}).contains_subgroup(K.at({x, ImageKind::Scyc})));
}

TEST_CASE("unramified_brauer coincidence on small catalog gerbs") {
  Config cfg;
  auto triv = FiniteGroup::trivial();
  std::vector<std::pair<Gerb, GerbCoeff>> cases;
  {
    auto s3 = FiniteGroup::from_permutations(3, {{1, 0, 2}, {1, 2, 0}});
    auto g = gerb_from_split(s3, triv, trivial_action(s3, triv));
    cases.emplace_back(g, make_mu_coeff(g, 6, {1}));
  }
  {
    auto g = z4_over_z2();
    cases.emplace_back(g, make_mu_coeff(g, 2, ones(g.Gamma)));
  }
  {
    auto z3 = FiniteGroup::cyclic(3);
    auto z2 = FiniteGroup::cyclic(2);
    auto g = gerb_from_split(z3, z2, {{0, 1, 2}, {0, 2, 1}});
    cases.emplace_back(g, make_mu_coeff(g, 3, {1, 2}));
  }
  {
    auto q = q8();
    auto z = center(q);
    auto quo = quotient_by_normal(q, z);
    auto g = gerb_from_explicit(q, z, quo.projection);
    cases.emplace_back(g, make_mu_coeff(g, 2, ones(g.Gamma)));
  }
  for (auto& [g, coeff] : cases) {
    auto rep = unramified_brauer(g, coeff.on_e, cfg);
    CHECK(rep.agree);
  }
  // zero ambient H2: all four kernels are zero and agree
  auto z3 = FiniteGroup::cyclic(3);
  auto gz = gerb_from_split(z3, triv, trivial_action(z3, triv));
  auto cz = make_mu_coeff(gz, 2, {1});  // H2(Z/3, Z/2) = 0
  auto rz = unramified_brauer(gz, cz.on_e, cfg);
  CHECK(rz.agree);
  CHECK(rz.kernel.is_zero());
  CHECK(rz.ambient->factors.empty());
}

TEST_CASE("constant classes and normalized subgroup") {
  Config cfg;
  auto triv = FiniteGroup::trivial();
  // Gamma trivial: no constants
  auto s3 = FiniteGroup::from_permutations(3, {{1, 0, 2}, {1, 2, 0}});
  auto gs = gerb_from_split(s3, triv, trivial_action(s3, triv));
  auto cs = make_mu_coeff(gs, 6, {1});
  CHECK(constant_classes(gs, cs, cfg).is_zero());

  // split V4 gerb: H2 = constants (+) normalized kernel, internal direct sum
  auto z2 = FiniteGroup::cyclic(2);
  auto gv = gerb_from_split(z2, z2, trivial_action(z2, z2));
  auto cv = make_mu_coeff(gv, 2, ones(gv.Gamma));
  auto H2 = cohomology_group(gv.E, cv.on_e, 2, cfg);
  auto consts = constant_classes(gv, cv, cfg);
  auto full = SubgroupLat::full(H2->factors);
  auto norm_all = normalized_subgroup(gv, cv, full, cfg);
  CHECK(consts.intersect(norm_all).is_zero());
  CHECK(ck_mul(consts.structure().order, norm_all.structure().order) ==
        full.structure().order);
  // constants retract isomorphically: normalized part of constants is 0
  CHECK(normalized_subgroup(gv, cv, consts, cfg).is_zero());

  // non-split Z/4 over Z/2 with mu_2: inflation on H2 is the zero map here
  auto g4 = z4_over_z2();
  auto c4 = make_mu_coeff(g4, 2, ones(g4.Gamma));
  CHECK(constant_classes(g4, c4, cfg).is_zero());

  // the S3-gerb over Z/2 with mu_3: normalized unramified kernel is zero
  auto z3 = FiniteGroup::cyclic(3);
  auto g3 = gerb_from_split(z3, z2, {{0, 1, 2}, {0, 2, 1}});
  auto c3 = make_mu_coeff(g3, 3, {1, 2});
  auto rep = unramified_brauer(g3, c3.on_e, cfg);
  CHECK(normalized_subgroup(g3, c3, rep.kernel, cfg).is_zero());
}

TEST_CASE("abelian triviality checker") {
  Config cfg;
  auto triv = FiniteGroup::trivial();
  auto z2 = FiniteGroup::cyclic(2);
  // F = Z/2, Gamma trivial
  auto g1 = gerb_from_split(z2, triv, trivial_action(z2, triv));
  auto c1 = make_mu_coeff(g1, 2, {1});
  auto r1 = abelian_triviality_check(g1, c1, cfg);
  CHECK(r1.hypotheses_hold);
  CHECK(r1.conclusion_holds);

  // F = Z/3 with inversion, mu_3 cyclotomic: hypotheses hold, conclusion holds
  auto z3 = FiniteGroup::cyclic(3);
  auto g2 = gerb_from_split(z3, z2, {{0, 1, 2}, {0, 2, 1}});
  auto c2 = make_mu_coeff(g2, 3, {1, 2});
  auto r2 = abelian_triviality_check(g2, c2, cfg);
  CHECK(r2.hypotheses_hold);
  CHECK(r2.conclusion_holds);

  // F = V4, Gamma = V4 acting trivially, trivial character, with the trivial
  // subgroup designated as the splitting model: the Klein quotient is not
  // cyclic, so the hypotheses fail and the checker makes no claim
  auto v4 = FiniteGroup::abelian({2, 2});
  auto g3 = gerb_from_split(v4, v4, trivial_action(v4, v4));
  auto c3 = make_mu_coeff(g3, 2, ones(v4));
  auto r3 = abelian_triviality_check(g3, c3, cfg, trivial_subgroup(g3.Gamma));
  CHECK(!r3.hypotheses_hold);
  // with the default (maximal) splitting model the hypotheses hold here and
  // the conclusion is verified
  auto r3b = abelian_triviality_check(g3, c3, cfg);
  CHECK(r3b.hypotheses_hold);
  CHECK(r3b.conclusion_holds);

  // nonabelian F rejected
  auto s3 = FiniteGroup::from_permutations(3, {{1, 0, 2}, {1, 2, 0}});
  auto g4 = gerb_from_split(s3, triv, trivial_action(s3, triv));
  auto c4 = make_mu_coeff(g4, 6, {1});
  bool caught = false;
  try {
    (void)abelian_triviality_check(g4, c4, cfg);
  } catch (const Error& e) {
    caught = e.code() == Err::NotAbelian;
  }
  CHECK(caught);
}

TEST_CASE("descend_class recovers inflated classes and rejects others") {
  Config cfg;
  auto z4 = FiniteGroup::cyclic(4);
  auto z2 = FiniteGroup::cyclic(2);
  GroupHom p;
  p.source = z4;
  p.target = z2;
  p.images = {0, 1, 0, 1};
  p.validate();
  auto mq = mu_module(2, z2, {1, 1});
  auto mg = pull_back_module(mq, p);
  auto HQ = cohomology_group(z2, mq, 2, cfg);
  auto HG = cohomology_group(z4, mg, 2, cfg);
  // alpha = 0 descends to 0
  auto d0 = descend_class(HG->zero_class(), p, HQ);
  REQUIRE(d0.has_value());
  CHECK(d0->is_zero());
  // alpha = inflate(beta) recovers some preimage
  auto beta = HQ->cls({1});
  auto alpha = inflate_class(beta, p, HG);
  auto back = descend_class(alpha, p, HQ);
  REQUIRE(back.has_value());
  auto again = inflate_class(*back, p, HG);
  CHECK(again.coords == alpha.coords);
  // the Z/8-extension class on Z/4 does not descend (inflation is zero here)
  auto top = HG->cls({1});
  CHECK(!descend_class(top, p, HQ).has_value());
}

TEST_CASE("sha1_cyc examples") {
  Config cfg;
  auto z4 = FiniteGroup::cyclic(4);
  CHECK(sha1_cyc(z4, mu_module(4, z4, {1, 1, 1, 1}), cfg).is_zero());
  auto v4 = FiniteGroup::abelian({2, 2});
  CHECK(sha1_cyc(v4, mu_module(2, v4, {1, 1, 1, 1}), cfg).is_zero());
}

TEST_CASE("truncated coefficients can break the four-way coincidence at order 64") {
  // F = Z/4 x Z/4 over Gamma = Z/4 (a specific order-4 action) with mu_2:
  // the coefficient exponent is below exp(F) = 4, and the four kernels
  // genuinely differ -- a class survives every plain abelian restriction and
  // every cyclic pair, but a Wang secondary obstruction on a pair with
  // A = F kills it. The independent tower oracle confirms the obstruction
  // at every level, so this is a property of the truncation: the same gerb
  // with mu_4 (and mu_16) coefficients has all four kernels equal.
  Config cfg;
  auto f = FiniteGroup::abelian({4, 4});
  auto z4 = FiniteGroup::cyclic(4);
  auto actions = enumerate_actions(f, z4, 1000);
  REQUIRE(actions.size() >= 3);
  Gerb g = gerb_from_split(f, z4, actions[2]);
  auto c2 = make_mu_coeff(g, 2, {1, 1, 1, 1});
  auto rep2 = unramified_brauer(g, c2.on_e, cfg);
  CHECK(!rep2.agree);
  auto k_ab = rep2.per_formula.at("ab,scyc");
  auto k_mix = rep2.per_formula.at("cyc,scyc^ab,0");
  CHECK(k_mix.contains_subgroup(k_ab));
  CHECK(!k_ab.contains_subgroup(k_mix));
  // locate a witness and one killer pair; cross-check with the tower oracle
  std::vector<i64> wit;
  for (auto& gen : k_mix.structure().gens)
    if (!k_ab.contains(gen)) wit = gen;
  REQUIRE(!wit.empty());
  auto alpha = rep2.ambient->cls(wit);
  auto fam = enumerate_family(g, IntersectKind::Ab, ImageKind::Scyc, cfg);
  bool found_killer = false;
  for (auto& p : fam.pairs) {
    if (p.A.order() != 16) continue;
    auto ob = procyclic_restriction(g, c2.on_e, alpha, p, cfg);
    if (ob.vanishes) continue;
    found_killer = true;
    bool prim0 = true;
    for (auto v : ob.primary)
      if (v) prim0 = false;
    CHECK(prim0);  // the kill comes from the secondary obstruction
    CHECK(!pair_vanishes_via_tower(g, c2.on_e, alpha, p, 2, cfg));
    CHECK(!pair_vanishes_via_tower(g, c2.on_e, alpha, p, 4, cfg));
    break;
  }
  CHECK(found_killer);
  // at the faithful coefficient level the coincidence holds
  auto c4 = make_mu_coeff(g, 4, {1, 1, 1, 1});
  auto rep4 = unramified_brauer(g, c4.on_e, cfg);
  CHECK(rep4.agree);
}

TEST_CASE("sylow localization: p-part of the kernel injects into the subgerb") {
  Config cfg;
  // S3 gerb over Z/2 with mu_6: subgerb over the Sylow-2 of Gamma
  auto z3 = FiniteGroup::cyclic(3);
  auto z2 = FiniteGroup::cyclic(2);
  auto g = gerb_from_split(z3, z2, {{0, 1, 2}, {0, 2, 1}});
  auto coeff = make_mu_coeff(g, 6, {1, 5});
  auto H2 = cohomology_group(g.E, coeff.on_e, 2, cfg);
  for (i64 pr : {2, 3}) {
    // subgroup of E covering the Sylow-p of Gamma: preimage of that Sylow
    std::vector<Elt> mem;
    for (Elt e = 0; e < g.E->order(); e++) {
      Elt c = g.pi(e);
      int o = g.Gamma->element_order(c);
      bool inp = (pr == 2) ? (o == 1 || o == 2) : (o == 1 || o == 3);
      if (inp) mem.push_back(e);
    }
    Subgroup sub;
    sub.parent = g.E;
    sub.members = mem;
    if (!generated_subgroup(g.E, mem).members.size()) continue;
    if (generated_subgroup(g.E, mem).members != mem) continue;  // not a subgroup
    auto sg = subgroup_as_group(sub);
    auto mres = restrict_module(coeff.on_e, sg);
    auto H2s = cohomology_group(sg.group, mres, 2, cfg);
    // p-part of H2(E) must inject under restriction
    for (size_t i = 0; i < H2->factors.size(); i++) {
      i64 f = H2->factors[i];
      i64 ppart = 1;
      while (f % pr == 0) {
        ppart *= pr;
        f /= pr;
      }
      if (ppart == 1) continue;
      std::vector<i64> coords(H2->factors.size(), 0);
      coords[i] = H2->factors[i] / ppart;  // generator of the p-part
      auto cls = H2->cls(coords);
      auto r = restrict_class(cls, sg, H2s);
      CHECK(!r.is_zero());
    }
  }
}
