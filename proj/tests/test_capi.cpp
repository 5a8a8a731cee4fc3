#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstring>
#include <string>

#include "brnr/brnr.h"

using nlohmann::json;

namespace {

struct Sess {
  brnr_session* s = brnr_session_new();
  ~Sess() { brnr_session_free(s); }
};

std::string take(char* p) {
  std::string s = p ? p : "";
  brnr_string_free(p);
  return s;
}

}  // namespace

TEST_CASE("version and session options") {
  CHECK(std::string(brnr_version()) == "0.1.0");
  Sess ses;
  CHECK(brnr_session_set_option(ses.s, "order_cap", "256") == BRNR_OK);
  CHECK(brnr_session_set_option(ses.s, "bogus", "1") != BRNR_OK);
  CHECK(std::string(brnr_last_error(ses.s)).find("bogus") != std::string::npos);
}

TEST_CASE("group handles") {
  Sess ses;
  brnr_group* g = brnr_group_from_json(ses.s, R"({"type":"table","table":[[0,1],[1,0]]})");
  REQUIRE(g != nullptr);
  CHECK(brnr_group_order(g) == 2);
  CHECK(brnr_group_is_abelian(g) == 1);
  char* hex = nullptr;
  CHECK(brnr_group_hash(ses.s, g, &hex) == BRNR_OK);
  CHECK(take(hex).size() == 16);
  char* js = nullptr;
  CHECK(brnr_group_to_json(ses.s, g, &js) == BRNR_OK);
  CHECK(json::parse(take(js)).at("type") == "table");
  brnr_group_free(g);

  brnr_group* bad = brnr_group_from_json(ses.s, R"({"type":"table","table":[[0,0],[1,0]]})");
  CHECK(bad == nullptr);
  CHECK(std::strlen(brnr_last_error(ses.s)) > 0);
}

TEST_CASE("gerb handles and the brnr job") {
  Sess ses;
  const char* gerb = R"({
    "F": {"type": "perm", "degree": 3, "generators": [[1, 2, 0]]},
    "Gamma": {"type": "table", "table": [[0, 1], [1, 0]]},
    "action": [[0, 1, 2], [0, 2, 1]],
    "mu": 3,
    "character": {"1": 2}
  })";
  brnr_gerb* g = brnr_gerb_from_json(ses.s, gerb);
  REQUIRE(g != nullptr);
  CHECK(brnr_gerb_order(g) == 6);
  CHECK(brnr_gerb_is_split(g) == 1);
  brnr_gerb_free(g);

  json job = {{"command", "brnr"}, {"gerb", json::parse(gerb)}};
  char* report = nullptr;
  CHECK(brnr_run_job(ses.s, job.dump().c_str(), &report) == BRNR_OK);
  json r = json::parse(take(report));
  CHECK(r.at("result").at("agree") == true);
  CHECK(r.at("result").at("kernel").at("order") == 1);
  CHECK(r.at("result").at("normalizedKernel").at("order") == 1);

  // determinism: identical job, identical bytes
  char* again = nullptr;
  CHECK(brnr_run_job(ses.s, job.dump().c_str(), &again) == BRNR_OK);
  char* report2 = nullptr;
  CHECK(brnr_run_job(ses.s, job.dump().c_str(), &report2) == BRNR_OK);
  CHECK(take(again) == take(report2));
}

TEST_CASE("non-split refusal path maps to the right status") {
  Sess ses;
  // essentially real without odd part
  json gerb = {{"F", {{"type", "table"}, {"table", {{0, 1}, {1, 0}}}}},
               {"Gamma", {{"type", "table"}, {"table", {{0}}}}},
               {"action", {{0, 1}}},
               {"mu", 2},
               {"essentiallyReal", true}};
  json job = {{"command", "brnr"}, {"gerb", gerb}};
  char* report = nullptr;
  CHECK(brnr_run_job(ses.s, job.dump().c_str(), &report) == BRNR_E_UNSUPPORTED);
  CHECK(report == nullptr);
  job["oddPart"] = true;
  CHECK(brnr_run_job(ses.s, job.dump().c_str(), &report) == BRNR_OK);
  json r = json::parse(take(report));
  CHECK(r.at("result").at("oddPartOnly") == true);
}

TEST_CASE("schema and parse failures") {
  Sess ses;
  char* out = nullptr;
  CHECK(brnr_run_job(ses.s, "{nope", &out) == BRNR_E_PARSE);
  CHECK(brnr_run_job(ses.s, R"({"command":"warp"})", &out) == BRNR_E_SCHEMA);
  CHECK(brnr_run_job(ses.s, R"({"command":"sha"})", &out) == BRNR_E_SCHEMA);
  CHECK(std::string(brnr_last_error(ses.s)).find("/gerb") != std::string::npos);
}

TEST_CASE("cohomology and evaluate jobs") {
  Sess ses;
  json job = {{"command", "cohomology"},
              {"group", {{"type", "perm"}, {"degree", 4}, {"generators", {{1, 2, 3, 0}, {3, 2, 1, 0}}}}},
              {"module", {{"mu", 2}}},
              {"degree", 2}};
  char* report = nullptr;
  REQUIRE(brnr_run_job(ses.s, job.dump().c_str(), &report) == BRNR_OK);
  json r = json::parse(take(report));
  // H^2(D4, Z/2) has order 8
  auto fac = r.at("result").at("invariantFactors").get<std::vector<long long>>();
  long long order = 1;
  for (auto f : fac) order *= f;
  CHECK(order == 8);

  json ev = {{"command", "evaluate"},
             {"gerb", {{"F", {{"type", "perm"}, {"degree", 3}, {"generators", {{1, 2, 0}}}}},
                       {"Gamma", {{"type", "table"}, {"table", {{0, 1}, {1, 0}}}}},
                       {"action", {{0, 1, 2}, {0, 2, 1}}},
                       {"mu", 3},
                       {"character", {{"1", 2}}}}},
             {"set", "constant"}};
  REQUIRE(brnr_run_job(ses.s, ev.dump().c_str(), &report) == BRNR_OK);
  json r2 = json::parse(take(report));
  CHECK(r2.at("result").at("constant") == true);
}
