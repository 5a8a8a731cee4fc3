// brnr command line driver. Links only the public C API; everything it does
// goes through JSON job specs.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "brnr/brnr.h"

using nlohmann::json;

namespace {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "FileNotFound: cannot open " << path << "\n";
    std::exit(1);
  }
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    std::cerr << "SchemaViolation: " << path << ": " << e.what() << "\n";
    std::exit(1);
  }
  return j;
}

struct Session {
  brnr_session* s;
  Session() : s(brnr_session_new()) {}
  ~Session() { brnr_session_free(s); }
};

int run_and_print(Session& ses, const json& job, const std::string& out_path, bool quiet) {
  char* report = nullptr;
  brnr_status st = brnr_run_job(ses.s, job.dump().c_str(), &report);
  if (st != BRNR_OK && st != BRNR_E_COUNTEREXAMPLE) {
    std::cerr << "error: " << brnr_last_error(ses.s) << "\n";
    if (report) brnr_string_free(report);
    return 1;
  }
  std::string text = report ? report : "{}";
  brnr_string_free(report);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    out << text << "\n";
  }
  if (!quiet) {
    // human-readable digest on stdout; the JSON is authoritative
    json r = json::parse(text);
    const json& result = r.at("result");
    std::cout << "command: " << r.at("command").get<std::string>() << "\n";
    if (result.contains("invariantFactors"))
      std::cout << "invariant factors: " << result.at("invariantFactors").dump() << "\n";
    if (result.contains("kernel"))
      std::cout << "kernel: order " << result.at("kernel").at("order")
                << " factors " << result.at("kernel").at("invariantFactors").dump() << "\n";
    if (result.contains("perFormula")) {
      std::cout << "four formulas agree: " << (result.at("agree").get<bool>() ? "yes" : "NO")
                << "\n";
      for (auto& [k, v] : result.at("perFormula").items())
        std::cout << "  Sha2[" << k << "]: order " << v.at("order") << "\n";
    }
    if (result.contains("normalizedKernel"))
      std::cout << "normalized kernel: order " << result.at("normalizedKernel").at("order")
                << "\n";
    if (result.contains("sections")) std::cout << "sections: " << result.at("sections") << "\n";
    if (result.contains("classes") && result.contains("constant"))
      std::cout << "constant: " << (result.at("constant").get<bool>() ? "yes" : "NO")
                << ", all zero: " << (result.at("allZero").get<bool>() ? "yes" : "NO") << "\n";
    if (result.contains("pass"))
      std::cout << "suite " << result.at("suite").get<std::string>() << ": "
                << (result.at("pass").get<bool>() ? "PASS" : "FAIL") << " ("
                << result.at("checks") << " checks)\n";
    if (result.contains("counterexamples"))
      for (auto& c : result.at("counterexamples"))
        std::cout << "  counterexample: " << c.get<std::string>() << "\n";
    if (result.contains("entries"))
      std::cout << "catalog entries: " << result.at("entries").size() << "\n";
    if (out_path.empty()) std::cout << text << "\n";
  }
  return st == BRNR_E_COUNTEREXAMPLE ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"unramified Brauer groups of homogeneous spaces via finite gerbs"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string cache_dir, out_path;
  int order_cap = 0;
  bool quiet = false;
  app.add_option("--cache-dir", cache_dir, "persistent cache directory (env BRNR_CACHE_DIR)");
  app.add_option("--order-cap", order_cap, "group order cap for enumerations");
  app.add_option("-o,--out", out_path, "write the JSON report to this file");
  app.add_flag("-q,--quiet", quiet, "suppress the human-readable digest");

  // cohomology
  auto* c_coh = app.add_subcommand("cohomology", "H^i(G, M) with representatives");
  std::string coh_group, coh_module;
  int coh_degree = 2;
  c_coh->add_option("--group", coh_group, "group JSON file")->required();
  c_coh->add_option("--module", coh_module, "module JSON file")->required();
  c_coh->add_option("--degree", coh_degree, "0, 1 or 2");

  // sha
  auto* c_sha = app.add_subcommand("sha", "single-family Sha^2 kernel");
  std::string sha_gerb, sha_x = "ab", sha_y = "scyc";
  long long sha_mu = 0;
  c_sha->add_option("--gerb", sha_gerb, "gerb JSON file")->required();
  c_sha->add_option("--mu", sha_mu, "coefficient mu_n when absent from the gerb file");
  c_sha->add_option("--x", sha_x, "ab|bic|cyc");
  c_sha->add_option("--y", sha_y, "scyc|0");

  // brnr
  auto* c_brnr = app.add_subcommand("brnr", "the four Sha^2 formulas and their coincidence");
  std::string brnr_gerb;
  long long brnr_mu = 0;
  bool odd_part = false;
  c_brnr->add_option("--gerb", brnr_gerb, "gerb JSON file")->required();
  c_brnr->add_option("--mu", brnr_mu, "coefficient mu_n when absent from the gerb file");
  c_brnr->add_flag("--odd-part", odd_part, "odd-torsion computation (essentially real models)");

  // sections
  auto* c_sec = app.add_subcommand("sections", "homomorphic sections and H^1 orbits");
  std::string sec_gerb;
  c_sec->add_option("--gerb", sec_gerb, "gerb JSON file")->required();

  // evaluate
  auto* c_eval = app.add_subcommand("evaluate", "Brauer-Manin evaluation sweep");
  std::string ev_gerb, ev_model, ev_set = "basis";
  long long ev_mu = 0;
  bool ev_bypass = false;
  c_eval->add_option("--gerb", ev_gerb, "gerb JSON file")->required();
  c_eval->add_option("--mu", ev_mu, "coefficient mu_n when absent from the gerb file");
  c_eval->add_option("--model", ev_model, "local Galois model JSON file");
  c_eval->add_option("--set", ev_set, "basis|unramified|constant");
  c_eval->add_flag("--bypass-hypotheses", ev_bypass, "negative-control mode");

  // verify
  auto* c_ver = app.add_subcommand("verify", "named verification suites");
  std::string ver_suite, ver_catalog = "default";
  c_ver->add_option("suite", ver_suite,
                    "main-theorem|prop-abelian|shapiro|res-cores|wang-oracle|ev-constancy")
      ->required();
  c_ver->add_option("--catalog", ver_catalog, "small|default");

  // catalog
  auto* c_cat = app.add_subcommand("catalog", "batch scan over a built-in family");
  std::string cat_family, cat_run = "brnr";
  int cat_max = 16;
  long long cat_mu = 0;
  c_cat->add_option("family", cat_family,
                    "abelian|dihedral|quaternion|semidihedral|symmetric|alternating|"
                    "extraspecial|central-products|central64")
      ->required();
  c_cat->add_option("--max-order", cat_max, "family order bound");
  c_cat->add_option("--run", cat_run, "brnr|sha|cohomology");
  c_cat->add_option("--mu", cat_mu, "coefficient mu_n (default |F|)");

  CLI11_PARSE(app, argc, argv);

  Session ses;
  if (const char* env = std::getenv("BRNR_CACHE_DIR"); env && cache_dir.empty()) cache_dir = env;
  if (!cache_dir.empty()) brnr_session_set_option(ses.s, "cache_dir", cache_dir.c_str());
  if (order_cap > 0)
    brnr_session_set_option(ses.s, "order_cap", std::to_string(order_cap).c_str());

  json job;
  if (*c_coh) {
    job["command"] = "cohomology";
    job["group"] = read_json_file(coh_group);
    job["module"] = read_json_file(coh_module);
    job["degree"] = coh_degree;
  } else if (*c_sha) {
    job["command"] = "sha";
    job["gerb"] = read_json_file(sha_gerb);
    if (sha_mu) job["mu"] = sha_mu;
    job["x"] = sha_x;
    job["y"] = sha_y;
  } else if (*c_brnr) {
    job["command"] = "brnr";
    job["gerb"] = read_json_file(brnr_gerb);
    if (brnr_mu) job["mu"] = brnr_mu;
    if (odd_part) job["oddPart"] = true;
  } else if (*c_sec) {
    job["command"] = "sections";
    job["gerb"] = read_json_file(sec_gerb);
  } else if (*c_eval) {
    job["command"] = "evaluate";
    job["gerb"] = read_json_file(ev_gerb);
    if (ev_mu) job["mu"] = ev_mu;
    job["set"] = ev_set;
    if (!ev_model.empty()) job["model"] = read_json_file(ev_model);
    if (ev_bypass) job["bypass"] = true;
  } else if (*c_ver) {
    job["command"] = "verify";
    job["suite"] = ver_suite;
    job["catalog"] = ver_catalog;
  } else if (*c_cat) {
    job["command"] = "catalog";
    job["family"] = cat_family;
    job["maxOrder"] = cat_max;
    job["run"] = cat_run;
    if (cat_mu) job["mu"] = cat_mu;
  }
  return run_and_print(ses, job, out_path, quiet);
}
