#include "jsonio.hpp"

#include <algorithm>

namespace brnr {

void schema_fail(const std::string& pointer, const std::string& what) {
  fail(Err::SchemaViolation, what + " at " + (pointer.empty() ? "/" : pointer));
}

namespace {

const json& need(const json& j, const char* key, const std::string& ptr) {
  if (!j.is_object() || !j.contains(key)) schema_fail(ptr + "/" + key, "missing field");
  return j.at(key);
}

i64 need_int(const json& j, const char* key, const std::string& ptr) {
  const json& v = need(j, key, ptr);
  if (!v.is_number_integer()) schema_fail(ptr + "/" + key, "expected an integer");
  return v.get<i64>();
}

}  // namespace

GroupPtr group_from_json(const json& j, const std::string& ptr) {
  if (!j.is_object()) schema_fail(ptr, "group must be an object");
  std::string type = need(j, "type", ptr).is_string()
                         ? need(j, "type", ptr).get<std::string>()
                         : (schema_fail(ptr + "/type", "expected a string"), "");
  if (type == "table") {
    const json& t = need(j, "table", ptr);
    if (!t.is_array()) schema_fail(ptr + "/table", "expected an array");
    std::vector<std::vector<Elt>> table;
    for (size_t i = 0; i < t.size(); i++) {
      if (!t[i].is_array()) schema_fail(ptr + "/table/" + std::to_string(i), "expected a row");
      std::vector<Elt> row;
      for (size_t k = 0; k < t[i].size(); k++) {
        if (!t[i][k].is_number_integer())
          schema_fail(ptr + "/table/" + std::to_string(i) + "/" + std::to_string(k),
                      "expected an integer");
        row.push_back(t[i][k].get<Elt>());
      }
      table.push_back(std::move(row));
    }
    return FiniteGroup::from_table(table);
  }
  if (type == "perm") {
    i64 degree = need_int(j, "degree", ptr);
    const json& g = need(j, "generators", ptr);
    if (!g.is_array()) schema_fail(ptr + "/generators", "expected an array");
    std::vector<std::vector<Elt>> gens;
    for (size_t i = 0; i < g.size(); i++) {
      if (!g[i].is_array())
        schema_fail(ptr + "/generators/" + std::to_string(i), "expected a permutation");
      std::vector<Elt> p;
      for (auto& v : g[i]) p.push_back(v.get<Elt>());
      gens.push_back(std::move(p));
    }
    return FiniteGroup::from_permutations(int(degree), gens);
  }
  schema_fail(ptr + "/type", "unknown group type '" + type + "'");
}

json group_to_json(const GroupPtr& g) {
  json t = json::array();
  for (Elt a = 0; a < g->order(); a++) {
    json row = json::array();
    for (Elt b = 0; b < g->order(); b++) row.push_back(g->mult(a, b));
    t.push_back(std::move(row));
  }
  return json{{"type", "table"}, {"table", std::move(t)}};
}

namespace {

std::vector<i64> character_from_json(const json& j, const GroupPtr& gamma, i64 n,
                                     const std::string& ptr) {
  std::vector<i64> chi(gamma->order(), 1);
  if (!j.is_object()) schema_fail(ptr, "character must be an object {elementIndex: unit}");
  for (auto it = j.begin(); it != j.end(); ++it) {
    int idx = -1;
    try {
      idx = std::stoi(it.key());
    } catch (...) {
      schema_fail(ptr + "/" + it.key(), "element index expected");
    }
    if (idx < 0 || idx >= gamma->order())
      schema_fail(ptr + "/" + it.key(), "element index out of range");
    if (!it.value().is_number_integer())
      schema_fail(ptr + "/" + it.key(), "unit value expected");
    chi[idx] = mod_floor(it.value().get<i64>(), n);
  }
  return chi;
}

}  // namespace

GModule module_from_json(const json& j, const GroupPtr& g, const std::string& ptr) {
  if (!j.is_object()) schema_fail(ptr, "module must be an object");
  if (j.contains("mu")) {
    i64 n = need_int(j, "mu", ptr);
    std::vector<i64> chi(g->order(), 1);
    if (j.contains("character")) chi = character_from_json(j.at("character"), g, n, ptr + "/character");
    return mu_module(n, g, chi);
  }
  const json& f = need(j, "factors", ptr);
  if (!f.is_array()) schema_fail(ptr + "/factors", "expected an array");
  std::vector<i64> factors;
  for (auto& v : f) factors.push_back(v.get<i64>());
  int r = int(factors.size());
  std::vector<Mat> act(g->order(), Mat::identity(r));
  if (j.contains("action")) {
    const json& a = j.at("action");
    if (!a.is_object()) schema_fail(ptr + "/action", "expected an object {elementIndex: matrix}");
    for (auto it = a.begin(); it != a.end(); ++it) {
      int idx = -1;
      try {
        idx = std::stoi(it.key());
      } catch (...) {
        schema_fail(ptr + "/action/" + it.key(), "element index expected");
      }
      if (idx < 0 || idx >= g->order())
        schema_fail(ptr + "/action/" + it.key(), "element index out of range");
      const json& m = it.value();
      if (!m.is_array() || int(m.size()) != r)
        schema_fail(ptr + "/action/" + it.key(), "matrix with one row per factor expected");
      Mat mat(r, r);
      for (int i = 0; i < r; i++) {
        if (!m[i].is_array() || int(m[i].size()) != r)
          schema_fail(ptr + "/action/" + it.key() + "/" + std::to_string(i), "matrix row expected");
        for (int k = 0; k < r; k++) mat.at(i, k) = m[i][k].get<i64>();
      }
      act[idx] = std::move(mat);
    }
  }
  return GModule(g, factors, std::move(act));
}

json module_to_json(const GModule& m) {
  json act = json::object();
  for (Elt g = 0; g < m.group()->order(); g++) {
    json mat = json::array();
    for (int i = 0; i < m.rank(); i++) {
      json row = json::array();
      for (int k = 0; k < m.rank(); k++) row.push_back(m.act(g).at(i, k));
      mat.push_back(std::move(row));
    }
    act[std::to_string(g)] = std::move(mat);
  }
  return json{{"factors", m.factors()}, {"action", std::move(act)}};
}

GerbInput gerb_from_json(const json& j, const std::string& ptr) {
  if (!j.is_object()) schema_fail(ptr, "gerb must be an object");
  GerbInput out;
  bool esr = j.contains("essentiallyReal") && j.at("essentiallyReal").is_boolean() &&
             j.at("essentiallyReal").get<bool>();
  if (j.contains("E")) {
    GroupPtr e = group_from_json(need(j, "E", ptr), ptr + "/E");
    const json& fm = need(j, "F", ptr);
    if (!fm.is_array()) schema_fail(ptr + "/F", "expected the member list of F");
    Subgroup f;
    f.parent = e;
    for (auto& v : fm) f.members.push_back(v.get<Elt>());
    std::sort(f.members.begin(), f.members.end());
    const json& pj = need(j, "pi", ptr);
    if (!pj.is_array()) schema_fail(ptr + "/pi", "expected the image list of pi");
    std::vector<Elt> images;
    for (auto& v : pj) images.push_back(v.get<Elt>());
    // Gamma is realized as the quotient by F; the user-supplied pi only has
    // to induce the same fibers
    auto quo = quotient_by_normal(e, f);
    // user-specified pi must induce the same fibers
    if (int(images.size()) != e->order()) schema_fail(ptr + "/pi", "length must equal |E|");
    for (Elt a = 0; a < e->order(); a++)
      for (Elt b = 0; b < e->order(); b++)
        if ((images[a] == images[b]) != (quo.projection(a) == quo.projection(b)))
          schema_fail(ptr + "/pi", "pi is not the quotient by F");
    out.gerb = gerb_from_explicit(e, f, quo.projection, esr);
  } else {
    GroupPtr f = group_from_json(need(j, "F", ptr), ptr + "/F");
    GroupPtr gamma = group_from_json(need(j, "Gamma", ptr), ptr + "/Gamma");
    const json& aj = need(j, "action", ptr);
    if (!aj.is_array() || int(aj.size()) != gamma->order())
      schema_fail(ptr + "/action", "one automorphism per element of Gamma expected");
    std::vector<std::vector<Elt>> action;
    for (size_t i = 0; i < aj.size(); i++) {
      if (!aj[i].is_array() || int(aj[i].size()) != f->order())
        schema_fail(ptr + "/action/" + std::to_string(i), "image map on F expected");
      std::vector<Elt> m;
      for (auto& v : aj[i]) m.push_back(v.get<Elt>());
      action.push_back(std::move(m));
    }
    out.gerb = gerb_from_split(f, gamma, action, esr);
  }
  if (j.contains("mu")) {
    i64 n = need_int(j, "mu", ptr);
    std::vector<i64> chi(out.gerb.Gamma->order(), 1);
    if (j.contains("character"))
      chi = character_from_json(j.at("character"), out.gerb.Gamma, n, ptr + "/character");
    out.coeff = make_mu_coeff(out.gerb, n, chi);
  }
  return out;
}

json gerb_to_json(const Gerb& g) {
  json out;
  out["E"] = group_to_json(g.E);
  out["F"] = g.F.members;
  json pi = json::array();
  for (Elt e = 0; e < g.E->order(); e++) pi.push_back(g.pi(e));
  out["pi"] = std::move(pi);
  out["split"] = g.split();
  if (g.essentially_real) out["essentiallyReal"] = true;
  return out;
}

LocalGaloisModel model_from_json(const json& j, const std::string& ptr) {
  std::string kind = need(j, "kind", ptr).get<std::string>();
  if (kind == "real") return real_model(need_int(j, "n", ptr));
  if (kind == "tame")
    return tame_local_model(need_int(j, "p", ptr), need_int(j, "q", ptr),
                            need_int(j, "a", ptr), need_int(j, "b", ptr),
                            need_int(j, "n", ptr));
  schema_fail(ptr + "/kind", "unknown local model kind");
}

json model_to_json(const LocalGaloisModel& m) {
  if (m.kind == LocalGaloisModel::Kind::Real) return json{{"kind", "real"}, {"n", m.n}};
  return json{{"kind", "tame"}, {"p", m.p}, {"q", m.q}, {"a", m.a}, {"b", m.b}, {"n", m.n}};
}

json cochain_to_json(const Cochain& c) {
  json out = json::object();
  int n = c.group->order();
  if (c.degree == 0) {
    out["()"] = std::vector<i64>(c.v.begin(), c.v.end());
    return out;
  }
  if (c.degree == 1) {
    for (Elt g = 1; g < n; g++) {
      bool nz = false;
      for (int i = 0; i < c.rank; i++) nz = nz || c.at1(g)[i] != 0;
      if (nz)
        out["(" + std::to_string(g) + ")"] =
            std::vector<i64>(c.at1(g), c.at1(g) + c.rank);
    }
    return out;
  }
  for (Elt g = 1; g < n; g++)
    for (Elt h = 1; h < n; h++) {
      bool nz = false;
      for (int i = 0; i < c.rank; i++) nz = nz || c.at2(g, h)[i] != 0;
      if (nz)
        out["(" + std::to_string(g) + "," + std::to_string(h) + ")"] =
            std::vector<i64>(c.at2(g, h), c.at2(g, h) + c.rank);
    }
  return out;
}

json cohomology_to_json(const CohomologyGroup& h) {
  json out;
  out["degree"] = h.degree;
  out["groupOrder"] = h.group->order();
  out["invariantFactors"] = h.factors;
  json basis = json::array();
  for (auto& b : h.basis) basis.push_back(cochain_to_json(b));
  out["basis"] = std::move(basis);
  return out;
}

json subgroup_lat_to_json(const SubgroupLat& s) {
  auto st = s.structure();
  json out;
  out["order"] = st.order;
  out["invariantFactors"] = st.factors;
  json gens = json::array();
  for (auto& g : st.gens) gens.push_back(g);
  out["generators"] = std::move(gens);
  return out;
}

json sha_report_to_json(const ShaReport& r) {
  json out;
  out["family"] = std::string(intersect_kind_name(r.x)) + "," + image_kind_name(r.y);
  out["ambient"] = json{{"invariantFactors", r.ambient->factors}};
  out["kernel"] = subgroup_lat_to_json(r.kernel);
  if (!r.per_formula.empty()) {
    json pf = json::object();
    for (auto& [k, v] : r.per_formula) pf[k] = subgroup_lat_to_json(v);
    out["perFormula"] = std::move(pf);
    out["agree"] = r.agree;
  }
  if (r.odd_part_only) out["oddPartOnly"] = true;
  return out;
}

json evaluation_report_to_json(const EvaluationReport& r) {
  json out;
  out["sectionClasses"] = r.section_classes;
  out["classes"] = r.classes;
  out["values"] = r.values;
  out["constant"] = r.constant;
  out["allZero"] = r.all_zero;
  return out;
}

std::string canonical_dump(const json& j) { return j.dump(2); }

uint64_t json_content_hash(const json& j) {
  std::string s = j.dump();
  Fnv f;
  f.bytes(s.data(), s.size());
  return f.h;
}

}  // namespace brnr
