#include "brnr/brnr.h"

#include <cstring>
#include <string>

#include "verify.hpp"

using namespace brnr;

struct brnr_session {
  Config cfg;
  std::string cache_dir;
  std::string last_error;
};

struct brnr_group {
  GroupPtr g;
};

struct brnr_gerb {
  Gerb g;
  std::optional<GerbCoeff> coeff;
};

namespace {

const char* kVersion = "0.1.0";

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

brnr_status status_of(const Error& e) {
  switch (e.code()) {
    case Err::SchemaViolation:
    case Err::UnknownCommand:
    case Err::FileNotFound:
      return BRNR_E_SCHEMA;
    case Err::OrderLimitExceeded:
    case Err::SizeLimitExceeded:
    case Err::Overflow:
      return BRNR_E_LIMIT;
    case Err::EssentiallyRealUnsupported:
      return BRNR_E_UNSUPPORTED;
    case Err::Internal:
    case Err::CacheCorrupt:
      return BRNR_E_INTERNAL;
    default:
      return BRNR_E_VALIDATION;
  }
}

template <class F>
brnr_status guarded(brnr_session* s, F&& fn) {
  try {
    fn();
    return BRNR_OK;
  } catch (const json::exception& e) {
    if (s) s->last_error = std::string("json: ") + e.what();
    return BRNR_E_PARSE;
  } catch (const Error& e) {
    if (s) s->last_error = e.what();
    return status_of(e);
  } catch (const std::exception& e) {
    if (s) s->last_error = e.what();
    return BRNR_E_INTERNAL;
  }
}

json report_envelope(const std::string& command, const json& inputs, json result) {
  json out;
  out["schema"] = "brnr-report/1";
  out["toolVersion"] = kVersion;
  out["command"] = command;
  out["inputs"] = inputs;
  out["result"] = std::move(result);
  return out;
}

GerbInput parse_gerb_field(const json& job) {
  if (!job.contains("gerb")) schema_fail("/gerb", "missing field");
  return gerb_from_json(job.at("gerb"), "/gerb");
}

GerbCoeff coeff_of(const json& job, const GerbInput& gi) {
  if (gi.coeff) return *gi.coeff;
  if (job.contains("mu")) {
    i64 n = job.at("mu").get<i64>();
    std::vector<i64> chi(gi.gerb.Gamma->order(), 1);
    return make_mu_coeff(gi.gerb, n, chi);
  }
  schema_fail("/mu", "no coefficient module: provide \"mu\" (and optionally \"character\")");
}

json run_job_impl(brnr_session* s, const json& job) {
  if (!job.is_object() || !job.contains("command") || !job.at("command").is_string())
    schema_fail("/command", "missing command");
  std::string cmd = job.at("command").get<std::string>();
  Config cfg = s->cfg;
  std::string cache_dir = s->cache_dir;
  bool odd = false;
  if (job.contains("options") && job.at("options").is_object()) {
    const json& o = job.at("options");
    if (o.contains("orderCap")) cfg.group_order_cap = o.at("orderCap").get<int>();
    if (o.contains("cacheDir")) cache_dir = o.at("cacheDir").get<std::string>();
    if (o.contains("oddPart")) odd = o.at("oddPart").get<bool>();
  }
  if (job.contains("oddPart")) odd = job.at("oddPart").get<bool>();

  if (cmd == "cohomology") {
    GroupPtr g = group_from_json(job.contains("group")
                                     ? job.at("group")
                                     : (schema_fail("/group", "missing field"), json()),
                                 "/group");
    if (!job.contains("module")) schema_fail("/module", "missing field");
    GModule m = module_from_json(job.at("module"), g, "/module");
    int degree = job.contains("degree") ? job.at("degree").get<int>() : 2;
    auto H = cohomology_group(g, m, degree, cfg);
    json inputs{{"group", hex_u64(g->hash())}, {"module", hex_u64(m.hash())}};
    return report_envelope(cmd, inputs, cohomology_to_json(*H));
  }
  if (cmd == "sha") {
    GerbInput gi = parse_gerb_field(job);
    GerbCoeff coeff = coeff_of(job, gi);
    std::string xs = job.contains("x") ? job.at("x").get<std::string>() : "ab";
    std::string ys = job.contains("y") ? job.at("y").get<std::string>() : "scyc";
    IntersectKind x = xs == "ab"    ? IntersectKind::Ab
                      : xs == "bic" ? IntersectKind::Bic
                      : xs == "cyc" ? IntersectKind::Cyc
                                    : (schema_fail("/x", "ab|bic|cyc expected"), IntersectKind::Ab);
    ImageKind y = ys == "scyc" ? ImageKind::Scyc
                  : ys == "0"  ? ImageKind::Zero
                               : (schema_fail("/y", "scyc|0 expected"), ImageKind::Zero);
    ShaReport rep = sha2(gi.gerb, coeff.on_e, x, y, cfg);
    json inputs{{"gerb", hex_u64(gi.gerb.hash())}, {"module", hex_u64(coeff.on_e.hash())}};
    return report_envelope(cmd, inputs, sha_report_to_json(rep));
  }
  if (cmd == "brnr") {
    GerbInput gi = parse_gerb_field(job);
    GerbCoeff coeff = coeff_of(job, gi);
    ShaReport rep = unramified_brauer(gi.gerb, coeff.on_e, cfg, odd);
    json result = sha_report_to_json(rep);
    if (gi.gerb.split()) {
      auto norm = normalized_subgroup(gi.gerb, coeff, rep.kernel, cfg);
      result["normalizedKernel"] = subgroup_lat_to_json(norm);
    }
    result["constantClasses"] = subgroup_lat_to_json(constant_classes(gi.gerb, coeff, cfg));
    json inputs{{"gerb", hex_u64(gi.gerb.hash())}, {"module", hex_u64(coeff.on_e.hash())}};
    return report_envelope(cmd, inputs, result);
  }
  if (cmd == "sections") {
    GerbInput gi = parse_gerb_field(job);
    auto sections = enumerate_sections(gi.gerb);
    auto orbits = h1_orbits(gi.gerb, sections);
    json result;
    result["sections"] = sections.size();
    json cl = json::array();
    for (auto& orb : orbits) {
      json o;
      o["size"] = orb.orbit.size();
      o["representative"] = orb.orbit[orb.representative].images;
      cl.push_back(std::move(o));
    }
    result["classes"] = std::move(cl);
    json inputs{{"gerb", hex_u64(gi.gerb.hash())}};
    return report_envelope(cmd, inputs, result);
  }
  if (cmd == "evaluate") {
    GerbInput gi = parse_gerb_field(job);
    GerbCoeff coeff = coeff_of(job, gi);
    std::string set = job.contains("set") ? job.at("set").get<std::string>() : "basis";
    auto h2e = cohomology_group(gi.gerb.E, coeff.on_e, 2, cfg);
    SubgroupLat cls = SubgroupLat::full(h2e->factors);
    if (set == "unramified") {
      ShaReport rep = unramified_brauer(gi.gerb, coeff.on_e, cfg, odd);
      cls = gi.gerb.split() ? normalized_subgroup(gi.gerb, coeff, rep.kernel, cfg) : rep.kernel;
    } else if (set == "constant") {
      cls = constant_classes(gi.gerb, coeff, cfg);
    } else if (set != "basis") {
      schema_fail("/set", "basis|unramified|constant expected");
    }
    EvaluationReport ev;
    if (job.contains("model")) {
      LocalGaloisModel model = model_from_json(job.at("model"), "/model");
      bool bypass = job.contains("bypass") && job.at("bypass").get<bool>();
      ev = constancy_check(gi.gerb, coeff, model, cls, cfg, bypass);
    } else {
      // plain sweep over section classes without local hypotheses
      auto sections = enumerate_sections(gi.gerb);
      auto orbits = h1_orbits(gi.gerb, sections);
      ev.section_classes = int(orbits.size());
      for (auto& gen : cls.structure().gens) {
        auto alpha = h2e->cls(gen);
        ev.classes.push_back(gen);
        std::vector<std::vector<i64>> row;
        std::vector<i64> first;
        bool have = false;
        for (auto& orb : orbits) {
          auto v = evaluate_class(gi.gerb, coeff, alpha, orb.orbit[orb.representative], cfg)
                       .coords;
          for (i64 t : v)
            if (t != 0) ev.all_zero = false;
          if (!have) {
            first = v;
            have = true;
          } else if (v != first)
            ev.constant = false;
          row.push_back(std::move(v));
        }
        ev.values.push_back(std::move(row));
      }
    }
    json inputs{{"gerb", hex_u64(gi.gerb.hash())}, {"module", hex_u64(coeff.on_e.hash())}};
    return report_envelope(cmd, inputs, evaluation_report_to_json(ev));
  }
  if (cmd == "verify") {
    if (!job.contains("suite")) schema_fail("/suite", "missing field");
    std::string suite = job.at("suite").get<std::string>();
    SuiteOptions opt;
    opt.cfg = cfg;
    opt.cache_dir = cache_dir;
    opt.catalog = job.contains("catalog") ? job.at("catalog").get<std::string>() : "default";
    SuiteResult r = run_suite(suite, opt);
    json result;
    result["suite"] = r.name;
    result["pass"] = r.pass;
    result["checks"] = r.checks;
    result["counterexamples"] = r.counterexamples;
    result["details"] = r.details;
    json inputs{{"catalog", opt.catalog}};
    json env = report_envelope(cmd, inputs, result);
    if (!r.pass) env["verificationFailed"] = true;
    return env;
  }
  if (cmd == "catalog") {
    if (!job.contains("family")) schema_fail("/family", "missing field");
    std::string family = job.at("family").get<std::string>();
    int max_order = job.contains("maxOrder") ? job.at("maxOrder").get<int>() : 16;
    std::string run = job.contains("run") ? job.at("run").get<std::string>() : "brnr";
    FileCache cache(cache_dir);
    json entries = json::array();
    if (family == "central64") {
      SuiteOptions opt;
      opt.cfg = cfg;
      opt.cache_dir = cache_dir;
      entries = central64_scan(opt);
    } else {
      auto groups = family_groups(family, max_order);
      auto triv = FiniteGroup::trivial();
      for (auto& cg : groups) {
        std::vector<Elt> id(cg.group->order());
        for (Elt x = 0; x < cg.group->order(); x++) id[x] = x;
        Gerb g = gerb_from_split(cg.group, triv, {id});
        i64 n = job.contains("mu") ? job.at("mu").get<i64>() : cg.group->order();
        if (n < 2) n = 2;
        auto coeff = make_mu_coeff(g, n, {1});
        std::string key = "catalog-" + run + "-" + hex_u64(g.hash()) + "-" +
                          hex_u64(coeff.on_e.hash());
        json entry;
        if (auto hit = cache.get(key)) {
          entry = *hit;
        } else {
          entry["group"] = cg.name;
          entry["order"] = cg.group->order();
          if (run == "brnr") {
            ShaReport rep = unramified_brauer(g, coeff.on_e, cfg, odd);
            entry["report"] = sha_report_to_json(rep);
          } else if (run == "sha") {
            ShaReport rep = sha2(g, coeff.on_e, IntersectKind::Ab, ImageKind::Zero, cfg);
            entry["report"] = sha_report_to_json(rep);
          } else if (run == "cohomology") {
            auto H = cohomology_group(g.E, coeff.on_e, 2, cfg);
            entry["report"] = cohomology_to_json(*H);
          } else {
            schema_fail("/run", "brnr|sha|cohomology expected");
          }
          cache.put(key, entry);
        }
        entries.push_back(std::move(entry));
      }
    }
    json inputs{{"family", family}, {"maxOrder", max_order}};
    return report_envelope(cmd, inputs, json{{"entries", std::move(entries)}});
  }
  fail(Err::UnknownCommand, "unknown command '" + cmd + "'");
}

}  // namespace

extern "C" {

const char* brnr_version(void) { return kVersion; }

brnr_session* brnr_session_new(void) { return new brnr_session(); }
void brnr_session_free(brnr_session* s) { delete s; }

brnr_status brnr_session_set_option(brnr_session* s, const char* key, const char* value) {
  if (!s || !key || !value) return BRNR_E_SCHEMA;
  return guarded(s, [&] {
    std::string k = key;
    if (k == "cache_dir")
      s->cache_dir = value;
    else if (k == "order_cap")
      s->cfg.group_order_cap = std::stoi(value);
    else if (k == "jobs")
      s->cfg.jobs = std::stoi(value);
    else
      fail(Err::SchemaViolation, "unknown option '" + k + "'");
  });
}

const char* brnr_last_error(const brnr_session* s) {
  return s ? s->last_error.c_str() : "";
}

brnr_group* brnr_group_from_json(brnr_session* s, const char* jsontext) {
  brnr_group* out = nullptr;
  brnr_status st = guarded(s, [&] {
    json j = json::parse(jsontext);
    out = new brnr_group{group_from_json(j)};
  });
  (void)st;
  return out;
}

void brnr_group_free(brnr_group* g) { delete g; }

int brnr_group_order(const brnr_group* g) { return g ? g->g->order() : 0; }
int brnr_group_is_abelian(const brnr_group* g) { return g && g->g->is_abelian() ? 1 : 0; }

brnr_status brnr_group_hash(brnr_session* s, const brnr_group* g, char** hex_out) {
  if (!g || !hex_out) return BRNR_E_SCHEMA;
  return guarded(s, [&] { *hex_out = dup_string(hex_u64(g->g->hash())); });
}

brnr_status brnr_group_to_json(brnr_session* s, const brnr_group* g, char** json_out) {
  if (!g || !json_out) return BRNR_E_SCHEMA;
  return guarded(s, [&] { *json_out = dup_string(canonical_dump(group_to_json(g->g))); });
}

brnr_gerb* brnr_gerb_from_json(brnr_session* s, const char* jsontext) {
  brnr_gerb* out = nullptr;
  guarded(s, [&] {
    json j = json::parse(jsontext);
    GerbInput gi = gerb_from_json(j);
    out = new brnr_gerb{gi.gerb, gi.coeff};
  });
  return out;
}

void brnr_gerb_free(brnr_gerb* g) { delete g; }
int brnr_gerb_is_split(const brnr_gerb* g) { return g && g->g.split() ? 1 : 0; }
int brnr_gerb_order(const brnr_gerb* g) { return g ? g->g.E->order() : 0; }

brnr_status brnr_run_job(brnr_session* s, const char* job_json, char** report_out) {
  if (!s || !job_json || !report_out) return BRNR_E_SCHEMA;
  *report_out = nullptr;
  bool counterexample = false;
  brnr_status st = guarded(s, [&] {
    json job = json::parse(job_json);
    json report = run_job_impl(s, job);
    if (report.contains("verificationFailed")) counterexample = true;
    *report_out = dup_string(canonical_dump(report));
  });
  if (st == BRNR_OK && counterexample) return BRNR_E_COUNTEREXAMPLE;
  return st;
}

void brnr_string_free(char* p) { std::free(p); }

}  // extern "C"
