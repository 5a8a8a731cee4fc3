#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gmodule.hpp"

using namespace brnr;

TEST_CASE("mu module over trivial and Z/2") {
  auto t = FiniteGroup::trivial();
  auto m5 = mu_module(5, t, {1});
  CHECK(m5.rank() == 1);
  CHECK(m5.factors() == std::vector<i64>{5});

  auto z2 = FiniteGroup::cyclic(2);
  auto m4 = mu_module(4, z2, {1, 3});  // complex conjugation on mu_4
  CHECK(m4.apply(1, {1}) == std::vector<i64>{3});
  CHECK(m4.apply(1, {3}) == std::vector<i64>{1});

  // tame model: Frobenius with q = 2 on mu_3
  auto m3 = mu_module(3, z2, {1, 2});
  CHECK(m3.apply(1, {1}) == std::vector<i64>{2});
}

TEST_CASE("mu module rejects bad characters") {
  auto z2 = FiniteGroup::cyclic(2);
  bool nonunit = false, nonmult = false;
  try {
    (void)mu_module(4, z2, {1, 2});
  } catch (const Error& e) {
    nonunit = e.code() == Err::NonUnitValue;
  }
  CHECK(nonunit);
  auto z4 = FiniteGroup::cyclic(4);
  try {
    (void)mu_module(5, z4, {1, 2, 1, 2});  // 2*2 = 4 != chi(2) = 1
  } catch (const Error& e) {
    nonmult = e.code() == Err::CharacterNotMultiplicative;
  }
  CHECK(nonmult);
}

TEST_CASE("pull back along projection") {
  auto z3 = FiniteGroup::cyclic(3);
  auto z2 = FiniteGroup::cyclic(2);
  auto sd = semidirect_product(z3, z2, {{0, 1, 2}, {0, 2, 1}});  // S3
  auto m = mu_module(6, z2, {1, 5});
  auto pulled = pull_back_module(m, sd.projection);
  CHECK(pulled.group()->order() == 6);
  // kernel of the projection acts trivially
  for (Elt x = 0; x < 3; x++) {
    Elt e = sd.embed_f(x);
    CHECK(pulled.apply(e, {1}) == std::vector<i64>{1});
  }
  // identity pullback is the module itself
  auto same = pull_back_module(m, identity_hom(z2));
  CHECK(same.hash() == m.hash());
}

TEST_CASE("pull back Z/4 -> Z/2 with inversion") {
  auto z4 = FiniteGroup::cyclic(4);
  auto z2 = FiniteGroup::cyclic(2);
  GroupHom p;
  p.source = z4;
  p.target = z2;
  p.images = {0, 1, 0, 1};
  p.validate();
  auto m = mu_module(4, z2, {1, 3});
  auto pulled = pull_back_module(m, p);
  CHECK(pulled.apply(1, {1}) == std::vector<i64>{3});
  CHECK(pulled.apply(2, {1}) == std::vector<i64>{1});
}

TEST_CASE("restriction to character kernel is trivial") {
  auto z4 = FiniteGroup::cyclic(4);
  auto m = mu_module(4, z4, {1, 3, 1, 3});
  Subgroup ker = generated_subgroup(z4, {2});
  auto sg = subgroup_as_group(ker);
  auto res = restrict_module(m, sg);
  for (Elt e = 0; e < res.group()->order(); e++) CHECK(res.apply(e, {1}) == std::vector<i64>{1});
}

TEST_CASE("induced module from the trivial subgroup is the regular module") {
  auto z2 = FiniteGroup::cyclic(2);
  auto triv = subgroup_as_group(trivial_subgroup(z2));
  auto m = trivial_module(triv.group, {2});
  auto ind = induced_module(m, triv.embed);
  CHECK(ind.rank() == 2);
  CHECK(ind.factors() == std::vector<i64>({2, 2}));
  // the nontrivial element swaps the two coordinates
  CHECK(ind.apply(1, {1, 0}) == std::vector<i64>{0, 1});
  CHECK(ind.apply(1, {0, 1}) == std::vector<i64>{1, 0});
}

TEST_CASE("induced module from the whole group is the module itself") {
  auto z4 = FiniteGroup::cyclic(4);
  auto whole = subgroup_as_group(whole_group(z4));
  auto m = mu_module(4, whole.group, {1, 3, 1, 3});
  auto ind = induced_module(m, whole.embed);
  CHECK(ind.rank() == 1);
  CHECK(ind.factors() == m.factors());
}

TEST_CASE("dual module examples") {
  auto z2 = FiniteGroup::cyclic(2);
  auto t = FiniteGroup::trivial();
  // A = Z/2, n = 2, trivial everything
  auto d1 = dual_module(FiniteGroup::cyclic(2), 2, t, {{0, 1}}, {1});
  CHECK(d1.factors() == std::vector<i64>{2});

  // A = Z/3 with inversion by sigma, n = 3, trivial character: sigma inverts
  auto d2 = dual_module(FiniteGroup::cyclic(3), 3, z2, {{0, 1, 2}, {0, 2, 1}}, {1, 1});
  CHECK(d2.apply(1, {1}) == std::vector<i64>{2});

  // A = Z/2 x Z/2 trivial action, n = 2: rank-2 trivial module
  auto v4 = FiniteGroup::abelian({2, 2});
  std::vector<Elt> idmap = {0, 1, 2, 3};
  auto d3 = dual_module(v4, 2, t, {idmap}, {1});
  CHECK(d3.rank() == 2);
  CHECK(d3.act(0) == Mat::identity(2));

  // exponent mismatch
  bool caught = false;
  try {
    (void)dual_module(FiniteGroup::cyclic(4), 2, t, {{0, 1, 2, 3}}, {1});
  } catch (const Error& e) {
    caught = e.code() == Err::ExponentMismatch;
  }
  CHECK(caught);
}

TEST_CASE("double duality returns an equivariantly isomorphic module") {
  // A = Z/3 with inversion; dual twice and compare with the coordinate module
  auto z2 = FiniteGroup::cyclic(2);
  auto a = FiniteGroup::cyclic(3);
  std::vector<std::vector<Elt>> act = {{0, 1, 2}, {0, 2, 1}};
  auto dd = dual_module(a, 3, z2, act, {1, 1});
  // build the "dual of the dual" by hand: dual group of Z/3 is Z/3 again with
  // the action matrix of dd; realize it as a group and dualize
  auto coord = coordinate_module(a, z2, act);
  // evaluation map a -> dd-dual is the identity on coordinates here: compare
  // that dd has inverted action and coord has inverted action (self-dual case)
  CHECK(dd.factors() == coord.factors());
  CHECK(dd.act(1).at(0, 0) == coord.act(1).at(0, 0));
}

TEST_CASE("module validation catches non-homomorphic actions") {
  auto z2 = FiniteGroup::cyclic(2);
  std::vector<Mat> act(2, Mat::identity(1));
  act[1].at(0, 0) = 2;  // 2 is not invertible mod 4
  bool caught = false;
  try {
    GModule bad(z2, {4}, act);
  } catch (const Error&) {
    caught = true;
  }
  CHECK(caught);
}
