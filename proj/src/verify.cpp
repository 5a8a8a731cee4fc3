#include "verify.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>

namespace brnr {

namespace {

// deterministic parallel map: results land in input order regardless of the
// number of workers
template <class T, class F>
std::vector<json> parallel_entries(const std::vector<T>& items, int jobs, F&& compute) {
  std::vector<json> out(items.size());
  if (jobs < 2 || items.size() < 2) {
    for (size_t i = 0; i < items.size(); i++) out[i] = compute(items[i]);
    return out;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; t++)
    pool.emplace_back([&] {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= items.size()) return;
        out[i] = compute(items[i]);
      }
    });
  for (auto& th : pool) th.join();
  return out;
}

CatalogSpec acceptance_catalog(const std::string& size) {
  CatalogSpec spec;
  if (size == "small") {
    spec.max_e = 24;
    spec.abelian_max = 8;
    spec.dihedral_max = 16;
    spec.gammas = {"1", "Z2"};
    spec.mu_ns = {2, 3};
    spec.mu_f_order = false;
    spec.central_products = false;
  } else {
    spec.max_e = 96;
    spec.abelian_max = 16;
    spec.dihedral_max = 32;
    spec.mu_ns = {2, 3, 4, 6};
  }
  return spec;
}

std::string gerb_key(const CatalogGerb& cg) {
  return hex_u64(cg.gerb.hash()) + "-" + hex_u64(cg.coeff.on_e.hash());
}

// per-entry memo so warm reruns are file reads
template <class F>
json cached_entry(const FileCache& cache, const std::string& key, F&& compute) {
  if (auto hit = cache.get(key)) return *hit;
  json value = compute();
  cache.put(key, value);
  return value;
}

SuiteResult suite_main_theorem(const SuiteOptions& opt) {
  SuiteResult res;
  res.name = "main-theorem";
  FileCache cache(opt.cache_dir);
  CatalogSpec spec = acceptance_catalog(opt.catalog);
  auto gerbs = catalog_gerbs(spec, opt.cfg);
  res.details["gerbs"] = gerbs.size();
  auto entries = parallel_entries(gerbs, opt.cfg.jobs, [&](const CatalogGerb& cg) {
    return cached_entry(cache, "mainthm-" + gerb_key(cg), [&] {
      ShaReport rep = unramified_brauer(cg.gerb, cg.coeff.on_e, opt.cfg);
      json e;
      e["agree"] = rep.agree;
      e["kernel"] = subgroup_lat_to_json(rep.kernel);
      e["ambientFactors"] = rep.ambient->factors;
      return e;
    });
  });
  for (size_t i = 0; i < gerbs.size(); i++) {
    res.checks++;
    if (!entries[i].at("agree").get<bool>()) {
      res.pass = false;
      res.counterexamples.push_back(gerbs[i].name + ": the four Sha^2 subgroups differ");
    }
  }
  return res;
}

SuiteResult suite_prop_abelian(const SuiteOptions& opt) {
  SuiteResult res;
  res.name = "prop-abelian";
  FileCache cache(opt.cache_dir);
  CatalogSpec spec = acceptance_catalog(opt.catalog);
  spec.dihedral_max = 0;
  spec.quaternion = false;
  spec.symmetric = false;
  spec.extraspecial = false;
  spec.central_products = false;
  auto gerbs = catalog_gerbs(spec, opt.cfg);
  long long validated = 0;
  for (auto& cg : gerbs) {
    if (!cg.gerb.F.is_abelian()) continue;
    // the check needs mu_n with exp(F) | n
    auto fgrp = subgroup_as_group(cg.gerb.F);
    i64 expf = fgrp.group->exponent();
    if (expf > 1 && cg.coeff.on_gamma.factors()[0] % expf != 0) continue;
    json entry = cached_entry(cache, "propab-" + gerb_key(cg), [&] {
      auto chk = abelian_triviality_check(cg.gerb, cg.coeff, opt.cfg);
      return json{{"hypotheses", chk.hypotheses_hold}, {"conclusion", chk.conclusion_holds}};
    });
    res.checks++;
    if (entry.at("hypotheses").get<bool>()) {
      validated++;
      if (!entry.at("conclusion").get<bool>()) {
        res.pass = false;
        res.counterexamples.push_back(cg.name + ": hypotheses hold but the kernel is nonzero");
      }
    }
  }
  res.details["validated"] = validated;
  return res;
}

SuiteResult suite_bogomolov(const SuiteOptions& opt) {
  SuiteResult res;
  res.name = "bogomolov";
  FileCache cache(opt.cache_dir);
  auto triv = FiniteGroup::trivial();
  std::vector<CatalogGroup> fs;
  int ab_cap = opt.catalog == "small" ? 8 : 16;
  int dih_cap = opt.catalog == "small" ? 16 : 32;
  for (auto& g : family_groups("abelian", ab_cap)) fs.push_back(g);
  for (auto& g : family_groups("dihedral", dih_cap)) fs.push_back(g);
  if (opt.catalog != "small") {
    for (auto& g : family_groups("quaternion", 32)) fs.push_back(g);
    for (auto& g : family_groups("semidihedral", 32)) fs.push_back(g);
    for (auto& g : family_groups("symmetric", 24)) fs.push_back(g);
    for (auto& g : family_groups("alternating", 12)) fs.push_back(g);
    for (auto& g : family_groups("extraspecial", 27)) fs.push_back(g);
  }
  for (auto& fg : fs) {
    if (fg.group->order() >= 64) continue;
    // the statement lives at coefficient levels that capture the stabilizer
    // torsion: mu_n with exp(F) | n (truncated levels genuinely misbehave,
    // see the order-64 regression test for the same phenomenon)
    i64 expf = fg.group->exponent();
    std::vector<i64> ns = {expf};
    if (fg.group->order() >= 2) ns.push_back(fg.group->order());
    for (i64 n : {2, 3, 4, 6})
      if (n % expf == 0) ns.push_back(n);
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    Gerb g = gerb_from_split(fg.group, triv,
                             {[&] {
                               std::vector<Elt> id(fg.group->order());
                               for (Elt x = 0; x < fg.group->order(); x++) id[x] = x;
                               return id;
                             }()});
    for (i64 n : ns) {
      auto coeff = make_mu_coeff(g, n, {1});
      json entry = cached_entry(
          cache, "bogomolov-" + hex_u64(g.hash()) + "-" + hex_u64(coeff.on_e.hash()), [&] {
            ShaReport rep = sha2(g, coeff.on_e, IntersectKind::Ab, ImageKind::Zero, opt.cfg);
            json e;
            e["kernelOrder"] = rep.kernel.structure().order;
            e["ambientFactors"] = rep.ambient->factors;
            // independent route for the ambient group on small inputs
            if (fg.group->order() <= 16)
              e["denseFactors"] = cohomology_group_dense(g.E, coeff.on_e, 2, opt.cfg).factors;
            return e;
          });
      res.checks++;
      if (entry.at("kernelOrder").get<i64>() != 1) {
        res.pass = false;
        res.counterexamples.push_back(fg.name + " mu_" + std::to_string(n) +
                                      ": nonzero Bogomolov-type kernel");
      }
      if (entry.contains("denseFactors") &&
          entry.at("denseFactors") != entry.at("ambientFactors")) {
        res.pass = false;
        res.counterexamples.push_back(fg.name + ": dense route disagrees with the reduced route");
      }
    }
  }
  return res;
}

SuiteResult suite_wang_oracle(const SuiteOptions& opt) {
  SuiteResult res;
  res.name = "wang-oracle";
  FileCache cache(opt.cache_dir);
  CatalogSpec spec = acceptance_catalog(opt.catalog);
  spec.max_e = 48;
  spec.abelian_max = opt.catalog == "small" ? 8 : 12;
  spec.dihedral_max = opt.catalog == "small" ? 12 : 24;
  spec.mu_f_order = false;
  spec.nonsplit = true;
  auto gerbs = catalog_gerbs(spec, opt.cfg);
  res.details["gerbs"] = gerbs.size();
  auto entries = parallel_entries(gerbs, opt.cfg.jobs, [&](const CatalogGerb& cg) {
    return cached_entry(cache, "wang-" + gerb_key(cg), [&] {
      auto H2 = cohomology_group(cg.gerb.E, cg.coeff.on_e, 2, opt.cfg);
      i64 n = cg.coeff.on_e.exponent();
      auto fam = enumerate_family(cg.gerb, IntersectKind::Ab, ImageKind::Scyc, opt.cfg);
      long long checks = 0;
      std::string bad;
      // sweep classes: all of them when the group is small, basis otherwise
      std::vector<std::vector<i64>> classes;
      i64 total = 1;
      for (i64 f : H2->factors) total = ck_mul(total, f);
      if (total <= 16) {
        std::vector<i64> c(H2->factors.size(), 0);
        for (;;) {
          classes.push_back(c);
          size_t t = 0;
          while (t < c.size()) {
            if (++c[t] < H2->factors[t]) break;
            c[t] = 0;
            t++;
          }
          if (t == c.size()) break;
          if (c.empty()) break;
        }
        if (classes.empty()) classes.push_back({});
      } else {
        classes.push_back(std::vector<i64>(H2->factors.size(), 0));
        for (size_t i = 0; i < H2->factors.size(); i++) {
          std::vector<i64> c(H2->factors.size(), 0);
          c[i] = 1;
          classes.push_back(c);
          c[i] = H2->factors[i] - 1;
          classes.push_back(c);
        }
      }
      for (auto& coords : classes) {
        auto alpha = H2->cls(coords);
        for (auto& p : fam.pairs) {
          checks++;
          bool wang = procyclic_restriction(cg.gerb, cg.coeff.on_e, alpha, p, opt.cfg).vanishes;
          bool t1 = pair_vanishes_via_tower(cg.gerb, cg.coeff.on_e, alpha, p, 1, opt.cfg);
          bool tn = pair_vanishes_via_tower(cg.gerb, cg.coeff.on_e, alpha, p, n, opt.cfg);
          bool tn2 = pair_vanishes_via_tower(cg.gerb, cg.coeff.on_e, alpha, p, n * n, opt.cfg);
          if (wang != tn) {
            bad = "wang/tower disagreement";
            break;
          }
          if ((t1 && !tn) || (tn && !tn2)) {
            bad = "tower vanishing not monotone";
            break;
          }
        }
        if (!bad.empty()) break;
      }
      return json{{"checks", checks}, {"bad", bad}};
    });
  });
  for (size_t i = 0; i < gerbs.size(); i++) {
    res.checks += entries[i].at("checks").get<long long>();
    std::string bad = entries[i].at("bad").get<std::string>();
    if (!bad.empty()) {
      res.pass = false;
      res.counterexamples.push_back(gerbs[i].name + ": " + bad);
    }
  }
  return res;
}

SuiteResult suite_res_cores(const SuiteOptions& opt) {
  SuiteResult res;
  res.name = "res-cores";
  std::vector<GroupPtr> groups;
  for (auto& g : family_groups("dihedral", opt.catalog == "small" ? 12 : 24))
    groups.push_back(g.group);
  for (auto& g : family_groups("quaternion", 16)) groups.push_back(g.group);
  for (auto& g : family_groups("abelian", opt.catalog == "small" ? 8 : 12))
    groups.push_back(g.group);
  groups.push_back(family_groups("symmetric", 24).back().group);  // S4 or S3
  for (auto& G : groups) {
    for (i64 n : {2, 6}) {
      auto m = mu_module(n, G, std::vector<i64>(G->order(), 1));
      auto HG1 = cohomology_group(G, m, 1, opt.cfg);
      auto HG2 = cohomology_group(G, m, 2, opt.cfg);
      auto classes = subgroups_up_to_conjugacy(G, opt.cfg.group_order_cap);
      for (auto& cls : classes) {
        if (cls.representative.order() == 1 ||
            cls.representative.order() == G->order())
          continue;
        auto sub = subgroup_as_group(cls.representative);
        auto msub = restrict_module(m, sub);
        auto HS2 = cohomology_group(sub.group, msub, 2, opt.cfg);
        i64 index = G->order() / cls.representative.order();
        // cores . res = index on H2 basis classes
        for (size_t i = 0; i < HG2->factors.size(); i++) {
          std::vector<i64> c(HG2->factors.size(), 0);
          c[i] = 1;
          auto a = HG2->cls(c);
          auto back = corestrict_class(restrict_class(a, sub, HS2), sub, HG2);
          std::vector<i64> expect(c.size(), 0);
          expect[i] = mod_floor(index, HG2->factors[i]);
          res.checks++;
          if (back.coords != expect) {
            res.pass = false;
            res.counterexamples.push_back("cores.res failed on a group of order " +
                                          std::to_string(G->order()));
          }
        }
        // res functoriality via a subgroup of the subgroup
        auto inner = subgroups_up_to_conjugacy(sub.group, opt.cfg.group_order_cap);
        for (auto& icls : inner) {
          if (icls.representative.order() == 1 ||
              icls.representative.order() == sub.group->order())
            continue;
          auto isub = subgroup_as_group(icls.representative);
          // the same subgroup seen inside G
          Subgroup inG;
          inG.parent = G;
          for (Elt x : icls.representative.members) inG.members.push_back(sub.embed(x));
          std::sort(inG.members.begin(), inG.members.end());
          auto gsub = subgroup_as_group(inG);
          auto mi = restrict_module(msub, isub);
          auto mg = restrict_module(m, gsub);
          auto HI = cohomology_group(isub.group, mi, 2, opt.cfg);
          auto HGsub = cohomology_group(gsub.group, mg, 2, opt.cfg);
          for (size_t i = 0; i < HG2->factors.size(); i++) {
            std::vector<i64> c(HG2->factors.size(), 0);
            c[i] = 1;
            auto a = HG2->cls(c);
            auto via = restrict_class(restrict_class(a, sub, HS2), isub, HI);
            auto direct = restrict_class(a, gsub, HGsub);
            // compare through the relabeling isomorphism between isub and gsub
            GroupHom relabel;
            relabel.source = isub.group;
            relabel.target = gsub.group;
            relabel.images.resize(isub.group->order());
            std::vector<int> pos(G->order(), -1);
            for (Elt x = 0; x < gsub.group->order(); x++) pos[gsub.embed(x)] = x;
            for (Elt x = 0; x < isub.group->order(); x++)
              relabel.images[x] = pos[sub.embed(isub.embed(x))];
            relabel.validate();
            auto transported = HI->cls_of(pullback_cochain(direct.rep, relabel));
            res.checks++;
            if (via.coords != transported.coords) {
              res.pass = false;
              res.counterexamples.push_back("restriction functoriality failed");
            }
          }
          break;  // one inner subgroup per subgroup keeps the sweep bounded
        }
      }
      // inflation injectivity on H1 through every proper normal subgroup
      for (auto& cls : classes) {
        const Subgroup& nsub = cls.representative;
        if (nsub.order() == 1 || nsub.order() == G->order()) continue;
        if (!nsub.is_normal()) continue;
        auto quo = quotient_by_normal(G, nsub);
        auto mq_try = [&]() -> std::optional<GModule> {
          // mu_n on the quotient pulls back to m only if the character is
          // trivial, which it is here
          return mu_module(n, quo.group, std::vector<i64>(quo.group->order(), 1));
        }();
        auto HQ1 = cohomology_group(quo.group, *mq_try, 1, opt.cfg);
        std::vector<i64> c(HQ1->factors.size(), 0);
        for (;;) {
          auto cls_q = HQ1->cls(c);
          auto inf = inflate_class(cls_q, quo.projection, HG1);
          res.checks++;
          if (inf.is_zero() != cls_q.is_zero()) {
            res.pass = false;
            res.counterexamples.push_back("inflation not injective on H1");
          }
          size_t t = 0;
          while (t < c.size()) {
            if (++c[t] < HQ1->factors[t]) break;
            c[t] = 0;
            t++;
          }
          if (t == c.size()) break;
          if (c.empty()) break;
        }
      }
    }
  }
  return res;
}

SuiteResult suite_shapiro(const SuiteOptions& opt) {
  SuiteResult res;
  res.name = "shapiro";
  CatalogSpec spec = acceptance_catalog(opt.catalog);
  spec.max_e = opt.catalog == "small" ? 16 : 36;
  spec.abelian_max = 9;
  spec.dihedral_max = 12;
  spec.quaternion = false;
  spec.central_products = false;
  spec.mu_ns = {2, 3, 4};
  spec.mu_f_order = false;
  spec.nonsplit = false;
  auto gerbs = catalog_gerbs(spec, opt.cfg);
  for (auto& cg : gerbs) {
    if (!cg.gerb.split()) continue;
    res.checks++;
    if (!shapiro_check(cg.gerb, cg.coeff, opt.cfg)) {
      res.pass = false;
      res.counterexamples.push_back(cg.name + ": shapiro comparison failed");
    }
  }
  return res;
}

SuiteResult suite_evaluation(const SuiteOptions& opt) {
  SuiteResult res;
  res.name = "evaluation";
  CatalogSpec spec = acceptance_catalog(opt.catalog);
  spec.nonsplit = false;
  spec.mu_f_order = false;
  auto gerbs = catalog_gerbs(spec, opt.cfg);
  for (auto& cg : gerbs) {
    if (!cg.gerb.split()) continue;
    if (cg.gerb.Gamma->order() == 1) continue;
    auto h2e = cohomology_group(cg.gerb.E, cg.coeff.on_e, 2, opt.cfg);
    auto h2g = cohomology_group(cg.gerb.Gamma, cg.coeff.on_gamma, 2, opt.cfg);
    auto sections = enumerate_sections(cg.gerb);
    auto orbits = h1_orbits(cg.gerb, sections);
    // constant on orbits, for the basis classes
    for (auto& b : h2e->basis) {
      auto alpha = h2e->cls_of(b);
      for (auto& orb : orbits) {
        auto v0 = evaluate_class(cg.gerb, cg.coeff, alpha, orb.orbit[0], opt.cfg).coords;
        for (size_t i = 1; i < orb.orbit.size(); i++) {
          res.checks++;
          if (evaluate_class(cg.gerb, cg.coeff, alpha, orb.orbit[i], opt.cfg).coords != v0) {
            res.pass = false;
            res.counterexamples.push_back(cg.name + ": evaluation not constant on a class");
          }
        }
      }
    }
    // retraction: inflated classes evaluate to themselves at every section
    for (size_t i = 0; i < h2g->factors.size(); i++) {
      std::vector<i64> c(h2g->factors.size(), 0);
      c[i] = 1;
      auto beta = h2g->cls(c);
      auto alpha = inflate_class(beta, cg.gerb.pi, h2e);
      for (auto& s : sections) {
        res.checks++;
        if (evaluate_class(cg.gerb, cg.coeff, alpha, s, opt.cfg).coords != beta.coords) {
          res.pass = false;
          res.counterexamples.push_back(cg.name + ": retraction law failed");
        }
      }
    }
  }
  return res;
}

SuiteResult suite_ev_constancy(const SuiteOptions& opt) {
  SuiteResult res;
  res.name = "ev-constancy";
  FileCache cache(opt.cache_dir);
  // tame models with q in {2,3}, a <= 2, b <= 8, b | q^a - 1
  std::vector<LocalGaloisModel> models;
  for (i64 q : {2, 3})
    for (i64 a = 1; a <= 2; a++)
      for (i64 b = 1; b <= 8; b++) {
        if (mod_pow(q, a, b) != 1 % b) continue;
        // n compatible with the character: q^a = 1 mod n, gcd(n, q) = 1
        for (i64 n : {2, 3, 4, 6}) {
          if (gcd_i64(n, q) != 1) continue;
          if (mod_pow(q, a, n) != 1 % n) continue;
          models.push_back(tame_local_model(q, q, a, b, n));
        }
      }
  std::vector<CatalogGroup> fs;
  fs.push_back({"Z2", FiniteGroup::cyclic(2)});
  fs.push_back({"Z3", FiniteGroup::cyclic(3)});
  fs.push_back({"Z4", FiniteGroup::cyclic(4)});
  fs.push_back({"S3", FiniteGroup::from_permutations(3, {{1, 0, 2}, {1, 2, 0}})});
  fs.push_back({"Z3xZ3", FiniteGroup::abelian({3, 3})});
  long long negative_controls = 0;
  for (auto& model : models) {
    for (auto& fg : fs) {
      if (gcd_i64(fg.group->order(), model.p) != 1) continue;
      if (fg.group->order() * model.gamma->order() > 96) continue;
      auto actions = enumerate_actions(fg.group, model.gamma, 1000);
      for (size_t ai = 0; ai < actions.size(); ai++) {
        Gerb g = gerb_from_split(fg.group, model.gamma, actions[ai]);
        auto coeff = make_coeff(g, mu_module(model.n, model.gamma, model.character));
        // unramified = tau acts trivially
        bool unramified = true;
        Elt t0 = (*g.section)(model.tau);
        for (Elt f : g.F.members)
          if (g.E->conj(t0, f) != f) unramified = false;
        std::string key = "evtame-" + gerb_key({fg.name, g, coeff}) + (unramified ? "-u" : "-r");
        json entry = cached_entry(cache, key, [&] {
          json e;
          if (unramified) {
            ShaReport rep = unramified_brauer(g, coeff.on_e, opt.cfg);
            auto norm = normalized_subgroup(g, coeff, rep.kernel, opt.cfg);
            auto ev = constancy_check(g, coeff, model, norm, opt.cfg);
            e["allZero"] = ev.all_zero;
            e["constant"] = ev.constant;
            e["kernelOrder"] = norm.structure().order;
          } else {
            // negative control: sweep all of H2(E) for a non-constant value
            auto h2e = cohomology_group(g.E, coeff.on_e, 2, opt.cfg);
            auto full = SubgroupLat::full(h2e->factors);
            auto ev = constancy_check(g, coeff, model, full, opt.cfg, true);
            e["nonconstant"] = !ev.constant;
          }
          return e;
        });
        res.checks++;
        if (unramified) {
          if (!entry.at("allZero").get<bool>()) {
            res.pass = false;
            res.counterexamples.push_back(fg.name + ": normalized kernel class with nonzero value");
          }
        } else if (entry.at("nonconstant").get<bool>()) {
          negative_controls++;
        }
      }
    }
  }
  res.details["negativeControls"] = negative_controls;
  if (negative_controls == 0) {
    res.pass = false;
    res.counterexamples.push_back("no ramified configuration exhibited non-constant evaluation");
  }
  return res;
}

SuiteResult suite_ev_reals(const SuiteOptions& opt) {
  SuiteResult res;
  res.name = "ev-reals";
  std::vector<CatalogGroup> fs;
  fs.push_back({"Z2", FiniteGroup::cyclic(2)});
  fs.push_back({"Z3", FiniteGroup::cyclic(3)});
  fs.push_back({"Z4", FiniteGroup::cyclic(4)});
  fs.push_back({"V4", FiniteGroup::abelian({2, 2})});
  fs.push_back({"S3", FiniteGroup::from_permutations(3, {{1, 0, 2}, {1, 2, 0}})});
  for (i64 n : {2, 3, 4}) {
    auto model = real_model(n);
    for (auto& fg : fs) {
      auto actions = enumerate_actions(fg.group, model.gamma, 1000);
      for (auto& action : actions) {
        Gerb g = gerb_from_split(fg.group, model.gamma, action, /*essentially_real=*/true);
        auto coeff = make_coeff(g, mu_module(n, model.gamma, model.character));
        auto kernel = real_mode_kernel(g, coeff, opt.cfg);
        auto ev = constancy_check(g, coeff, model, kernel, opt.cfg);
        res.checks++;
        if (!ev.all_zero) {
          res.pass = false;
          res.counterexamples.push_back(fg.name + " mu_" + std::to_string(n) +
                                        ": real-mode kernel class with nonzero evaluation");
        }
      }
    }
  }
  return res;
}

SuiteResult suite_determinism(const SuiteOptions& opt) {
  SuiteResult res;
  res.name = "determinism";
  // a representative computation serialized twice, cold and warm
  auto z3 = FiniteGroup::cyclic(3);
  auto z2 = FiniteGroup::cyclic(2);
  auto g = gerb_from_split(z3, z2, {{0, 1, 2}, {0, 2, 1}});
  auto coeff = make_mu_coeff(g, 3, {1, 2});
  auto run_once = [&] {
    clear_cohomology_cache();
    ShaReport rep = unramified_brauer(g, coeff.on_e, opt.cfg);
    json out = sha_report_to_json(rep);
    out["sections"] = int(enumerate_sections(g).size());
    return canonical_dump(out);
  };
  std::string a = run_once();
  std::string b = run_once();
  res.checks += 1;
  if (a != b) {
    res.pass = false;
    res.counterexamples.push_back("re-run produced different bytes");
  }
  // cold vs warm file cache
  if (!opt.cache_dir.empty()) {
    FileCache cache(opt.cache_dir);
    std::string key = "determinism-probe";
    json cold = json{{"v", a}};
    cache.put(key, cold);
    auto warm = cache.get(key);
    res.checks += 1;
    if (!warm || canonical_dump(*warm) != canonical_dump(cold)) {
      res.pass = false;
      res.counterexamples.push_back("cache round trip changed bytes");
    }
  }
  return res;
}

}  // namespace

json central64_scan(const SuiteOptions& opt) {
  json out = json::array();
  auto triv = FiniteGroup::trivial();
  for (auto& cg : family_groups("central64", 64)) {
    std::vector<Elt> id(cg.group->order());
    for (Elt x = 0; x < cg.group->order(); x++) id[x] = x;
    Gerb g = gerb_from_split(cg.group, triv, {id});
    auto coeff = make_mu_coeff(g, 2, {1});
    ShaReport rep = sha2(g, coeff.on_e, IntersectKind::Ab, ImageKind::Zero, opt.cfg);
    json e;
    e["group"] = cg.name;
    e["ambientFactors"] = rep.ambient->factors;
    e["kernel"] = subgroup_lat_to_json(rep.kernel);
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<std::string> suite_names() {
  return {"main-theorem", "prop-abelian", "bogomolov",    "shapiro",    "res-cores",
          "wang-oracle",  "ev-constancy", "evaluation",   "ev-reals",   "determinism"};
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& opt) {
  if (name == "main-theorem") return suite_main_theorem(opt);
  if (name == "prop-abelian") return suite_prop_abelian(opt);
  if (name == "bogomolov") return suite_bogomolov(opt);
  if (name == "wang-oracle") return suite_wang_oracle(opt);
  if (name == "res-cores") return suite_res_cores(opt);
  if (name == "shapiro") return suite_shapiro(opt);
  if (name == "evaluation") return suite_evaluation(opt);
  if (name == "ev-constancy") return suite_ev_constancy(opt);
  if (name == "ev-reals") return suite_ev_reals(opt);
  if (name == "determinism") return suite_determinism(opt);
  fail(Err::UnknownCommand, "unknown verify suite '" + name + "'");
}

}  // namespace brnr
