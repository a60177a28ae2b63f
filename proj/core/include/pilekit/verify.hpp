#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pilekit/json_io.hpp"

namespace pilekit {

struct CheckRecord {
  std::string name;
  std::string status;  // pass | fail | skip
  json witness;        // enough data to re-run the failing instance
};

struct Report {
  std::string suite;
  std::uint64_t seed = 0;
  std::string catalog;
  int prime = 2;
  std::vector<CheckRecord> checks;
  int passed = 0;
  int failed = 0;
  int skipped = 0;
  std::optional<double> wall_ms;

  void record(std::string name, bool ok, json witness = json());
  void skip(std::string name, json note = json());
  bool all_passed() const { return failed == 0; }
  json to_json() const;
};

struct SuiteOptions {
  std::uint64_t seed = 0;
  int count = 100;     // battery size, where applicable
  int max_group = 8;   // sweep group order bound
  int max_space = 5;   // sweep space size bound
  std::string catalog = "p3";
  int prime = 2;
  bool timestamp = true;
};

inline const char* const kSuiteNames[] = {
    "stab",        "g-partition", "cartesian-rigid",     "completion",
    "basic-ep",    "with-section", "hnn-kernel",         "mod-l",
    "section",     "pile-hnn-structure", "zeta-injective"};

/// Runs a named verification battery.  Throws UnknownSuite.
Report run_suite(const std::string& name, const SuiteOptions& opts);

/// Runs one suite check on a user-supplied pile and rho instead of the
/// random battery (with-section, hnn-kernel, mod-l, zeta-injective).
Report run_single_instance(const std::string& name, const Pile& pile,
                           const GroupHom& rho, const SuiteOptions& opts);

/// Solver audit: brute-force pile EP results re-verified by an independent
/// checker; unsolvable verdicts re-confirmed by an independently coded
/// enumeration.
Report run_ep_audit(const SuiteOptions& opts);

}  // namespace pilekit
