#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "group.hpp"

using namespace brnr;

namespace {

GroupPtr s3() {
  // degree 3 permutations (0 1) and (0 1 2)
  return FiniteGroup::from_permutations(3, {{1, 0, 2}, {1, 2, 0}});
}

GroupPtr d4() {  // dihedral of order 8
  return FiniteGroup::from_permutations(4, {{1, 2, 3, 0}, {3, 2, 1, 0}});
}

GroupPtr q8() {  // quaternion group as permutations on 8 points (regular rep)
  // i = (0 1 2 3)(4 5 6 7) acting on {1,i,-1,-i,j,ij,-j,-ij}? use standard:
  // generators from the regular representation of <a,b | a4, a2=b2, bab-1=a-1>
  // a: x -> x*a, b: x -> x*b on the 8 element labels below
  // labels: 0:1 1:a 2:a2 3:a3 4:b 5:ab 6:a2b 7:a3b
  // right multiplication by a: 0->1->2->3->0, 4->7? b*a = a^{-1} b = a3 b: 4->7, 5->4? (ab)a = a(ba)= a a3 b = b: 5->4, 6->5, 7->6
  std::vector<Elt> ra = {1, 2, 3, 0, 7, 4, 5, 6};
  // right multiplication by b: 0->4, 1->5, 2->6, 3->7, b*b=a2: 4->2, (ab)b=a b2=a3? a*b*b = a*a2 = a3: 5->3, 6->0? a2b b = a2a2=1: wait a2*b*b = a2*a2 = a4 = 1? No: b2 = a2, so a2 b b = a2 a2 = 1 -> 6->0, a3bb = a3a2 = a: 7->1
  std::vector<Elt> rb = {4, 5, 6, 7, 2, 3, 0, 1};
  return FiniteGroup::from_permutations(8, {ra, rb});
}

// brute-force subgroup count: all subsets containing 0, closed
long long brute_subgroup_count(const GroupPtr& g) {
  int n = g->order();
  long long count = 0;
  std::vector<int> idx;
  for (int m = 1; m <= n; m++) {
    if (n % m) continue;
    // iterate subsets of {1..n-1} of size m-1
    std::vector<int> comb(m - 1);
    for (int i = 0; i < m - 1; i++) comb[i] = i + 1;
    for (;;) {
      std::vector<Elt> mem{0};
      for (int v : comb) mem.push_back(v);
      bool closed = true;
      for (Elt a : mem) {
        for (Elt b : mem) {
          if (!std::binary_search(mem.begin(), mem.end(), g->mult(a, b))) {
            closed = false;
            break;
          }
        }
        if (!closed) break;
      }
      if (closed) count++;
      if (m == 1) break;
      int i = m - 2;
      while (i >= 0 && comb[i] == n - (m - 1 - i)) i--;
      if (i < 0) break;
      comb[i]++;
      for (int j = i + 1; j < m - 1; j++) comb[j] = comb[j - 1] + 1;
    }
  }
  return count;
}

}  // namespace

TEST_CASE("trivial and Z/2 from tables") {
  auto t = FiniteGroup::from_table({{0}});
  CHECK(t->order() == 1);
  auto z2 = FiniteGroup::from_table({{0, 1}, {1, 0}});
  CHECK(z2->order() == 2);
  CHECK(z2->is_abelian());
}

TEST_CASE("table with relocated identity") {
  // Z/2 written with identity at index 1
  auto g = FiniteGroup::from_table({{1, 0}, {0, 1}});
  CHECK(g->order() == 2);
  CHECK(g->mult(0, 0) == 0);
  CHECK(g->mult(1, 1) == 0);
}

TEST_CASE("invalid tables are rejected with witnesses") {
  CHECK_THROWS_AS((void)FiniteGroup::from_table({{0, 1}, {1, 1}}), Error);
  // left-identity only
  bool caught = false;
  try {
    (void)FiniteGroup::from_table({{0, 1, 2}, {1, 2, 0}, {2, 1, 0}});
  } catch (const Error& e) {
    caught = true;
  }
  CHECK(caught);
}

TEST_CASE("S3 from permutations") {
  auto g = s3();
  CHECK(g->order() == 6);
  CHECK(!g->is_abelian());
  CHECK(g->exponent() == 6);
  g->validate();
}

TEST_CASE("cyclic and dihedral closures") {
  auto z3 = FiniteGroup::from_permutations(3, {{1, 2, 0}});
  CHECK(z3->order() == 3);
  auto d4g = d4();
  CHECK(d4g->order() == 8);
  CHECK(!d4g->is_abelian());
  auto q = q8();
  CHECK(q->order() == 8);
  CHECK(!q->is_abelian());
  // Q8 has a unique element of order 2
  int order2 = 0;
  for (Elt a = 0; a < 8; a++)
    if (q->element_order(a) == 2) order2++;
  CHECK(order2 == 1);
}

TEST_CASE("closure cap raises OrderLimitExceeded") {
  bool caught = false;
  try {
    (void)FiniteGroup::from_permutations(5, {{1, 2, 3, 4, 0}, {1, 0, 2, 3, 4}}, 30);
  } catch (const Error& e) {
    caught = e.code() == Err::OrderLimitExceeded;
  }
  CHECK(caught);
}

TEST_CASE("subgroups of Z/4 and S3 up to conjugacy") {
  auto z4 = FiniteGroup::cyclic(4);
  auto cls = subgroups_up_to_conjugacy(z4, 512);
  CHECK(cls.size() == 3);

  auto cls3 = subgroups_up_to_conjugacy(s3(), 512);
  CHECK(cls3.size() == 4);
  std::multiset<int> sizes;
  for (auto& c : cls3) sizes.insert(c.class_size);
  CHECK(sizes == std::multiset<int>{1, 1, 1, 3});

  auto clst = subgroups_up_to_conjugacy(FiniteGroup::trivial(), 512);
  CHECK(clst.size() == 1);
}

TEST_CASE("subgroup class sizes add up to brute-force subgroup count") {
  for (auto g : {s3(), d4(), q8(), FiniteGroup::cyclic(12), FiniteGroup::abelian({2, 2, 2})}) {
    auto cls = subgroups_up_to_conjugacy(g, 512);
    long long total = 0;
    for (auto& c : cls) total += c.class_size;
    CHECK(total == brute_subgroup_count(g));
    CHECK(total == (long long)all_subgroups(g, 512).size());
  }
}

TEST_CASE("classification of abelian subgroups") {
  auto z6 = FiniteGroup::cyclic(6);
  CHECK(classify_subgroup(whole_group(z6)) == SubgroupKind::Cyclic);
  auto v4 = FiniteGroup::abelian({2, 2});
  CHECK(classify_subgroup(whole_group(v4)) == SubgroupKind::Bicyclic);
  auto e8 = FiniteGroup::abelian({2, 2, 2});
  CHECK(classify_subgroup(whole_group(e8)) == SubgroupKind::AbelianHigherRank);
  CHECK(classify_subgroup(trivial_subgroup(z6)) == SubgroupKind::Trivial);
  CHECK(classify_subgroup(whole_group(s3())) == SubgroupKind::Nonabelian);
  // Z/4 x Z/2 is bicyclic
  CHECK(classify_subgroup(whole_group(FiniteGroup::abelian({4, 2}))) == SubgroupKind::Bicyclic);
}

TEST_CASE("semidirect product Z/3 by Z/2 inversion is S3") {
  auto z3 = FiniteGroup::cyclic(3);
  auto z2 = FiniteGroup::cyclic(2);
  auto sd = semidirect_product(z3, z2, {{0, 1, 2}, {0, 2, 1}});
  CHECK(sd.group->order() == 6);
  CHECK(!sd.group->is_abelian());
  // projection . section = id
  for (Elt c = 0; c < 2; c++) CHECK(sd.projection(sd.section(c)) == c);
}

TEST_CASE("semidirect with trivial action equals direct product") {
  auto z2 = FiniteGroup::cyclic(2);
  auto sd = semidirect_product(z2, z2, {{0, 1}, {0, 1}});
  CHECK(sd.group->order() == 4);
  CHECK(sd.group->is_abelian());
  CHECK(sd.group->exponent() == 2);
  auto dp = direct_product(z2, z2);
  CHECK(sd.group->hash() == dp.group->hash());
}

TEST_CASE("semidirect rejects a non-homomorphic action") {
  auto z4 = FiniteGroup::cyclic(4);
  auto z2 = FiniteGroup::cyclic(2);
  // sigma -> multiplication by 3 is fine; assigning a non-automorphism fails
  bool caught = false;
  try {
    (void)semidirect_product(z4, z2, {{0, 1, 2, 3}, {0, 2, 1, 3}});
  } catch (const Error& e) {
    caught = e.code() == Err::ActionNotHomomorphic;
  }
  CHECK(caught);
}

TEST_CASE("quotients") {
  auto z4 = FiniteGroup::cyclic(4);
  auto n = generated_subgroup(z4, {2});
  auto q = quotient_by_normal(z4, n);
  CHECK(q.group->order() == 2);
  CHECK(q.projection.kernel() == n.members);

  auto g3 = s3();
  auto z3sub = generated_subgroup(g3, {g3->generators()[0] == 1 ? 1 : 1});
  // find the order-3 subgroup
  Subgroup h;
  for (auto& c : subgroups_up_to_conjugacy(g3, 512))
    if (c.representative.order() == 3) h = c.representative;
  auto q2 = quotient_by_normal(g3, h);
  CHECK(q2.group->order() == 2);

  auto qid = quotient_by_normal(g3, trivial_subgroup(g3));
  CHECK(qid.group->order() == 6);

  // non-normal subgroup rejected
  Subgroup z2sub;
  for (auto& c : subgroups_up_to_conjugacy(g3, 512))
    if (c.representative.order() == 2) z2sub = c.representative;
  bool caught = false;
  try {
    (void)quotient_by_normal(g3, z2sub);
  } catch (const Error& e) {
    caught = e.code() == Err::NotNormal;
  }
  CHECK(caught);
}

TEST_CASE("normalizers in S3") {
  auto g = s3();
  Subgroup z2sub, z3sub;
  for (auto& c : subgroups_up_to_conjugacy(g, 512)) {
    if (c.representative.order() == 2) z2sub = c.representative;
    if (c.representative.order() == 3) z3sub = c.representative;
  }
  CHECK(normalizer(z2sub).order() == 2);
  CHECK(normalizer(z3sub).order() == 6);
  CHECK(normalizer(whole_group(g)).order() == 6);
}

TEST_CASE("abelian structure") {
  auto a = FiniteGroup::abelian({2, 6});
  auto st = abelian_structure(a);
  CHECK(st.factors == std::vector<i64>{2, 6});
  auto b = FiniteGroup::abelian({4, 2});
  auto stb = abelian_structure(b);
  CHECK(stb.factors == std::vector<i64>{2, 4});
  auto c = FiniteGroup::cyclic(12);
  CHECK(abelian_structure(c).factors == std::vector<i64>{12});
  // Z/2 x Z/3 = Z/6
  auto d = FiniteGroup::abelian({2, 3});
  CHECK(abelian_structure(d).factors == std::vector<i64>{6});
}

TEST_CASE("central product D4 o D4 has order 32") {
  auto d = d4();
  Elt z = -1;
  auto c = center(d);
  for (Elt x : c.members)
    if (x != 0) z = x;
  REQUIRE(z >= 0);
  auto cp = central_product(d, z, d, z);
  CHECK(cp->order() == 32);
}

TEST_CASE("automorphisms of small groups") {
  CHECK(automorphisms(FiniteGroup::cyclic(4)).size() == 2);
  CHECK(automorphisms(FiniteGroup::cyclic(5)).size() == 4);
  CHECK(automorphisms(FiniteGroup::abelian({2, 2})).size() == 6);  // GL(2,2)
  CHECK(automorphisms(s3()).size() == 6);                          // Inn(S3)
  CHECK(automorphisms(q8()).size() == 24);
}

TEST_CASE("subgroup_as_group roundtrip") {
  auto g = d4();
  for (auto& c : subgroups_up_to_conjugacy(g, 512)) {
    auto sg = subgroup_as_group(c.representative);
    CHECK(sg.group->order() == c.representative.order());
    sg.embed.validate();
  }
}
