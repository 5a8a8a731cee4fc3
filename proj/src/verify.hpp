#ifndef BRNR_VERIFY_HPP
#define BRNR_VERIFY_HPP

#include "catalog.hpp"

namespace brnr {

struct SuiteResult {
  std::string name;
  bool pass = true;
  long long checks = 0;
  std::vector<std::string> counterexamples;
  json details = json::object();
};

struct SuiteOptions {
  std::string catalog = "default";  // "small" or "default"
  Config cfg;
  std::string cache_dir;
};

std::vector<std::string> suite_names();
SuiteResult run_suite(const std::string& name, const SuiteOptions& opt);

// exploratory scan over the order-64 central extensions; returns a report
// (outcome is informational, not an acceptance gate)
json central64_scan(const SuiteOptions& opt);

}  // namespace brnr

#endif
