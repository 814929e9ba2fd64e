#pragma once

#include <string>
#include <vector>

#include "grouplog/descent.hpp"

namespace grouplog {

inline constexpr const char* kVersion = "grouplog 0.1.0";

struct SuiteConfig {
  u64 p = 2;
  std::string group = "C4";
  std::string ring = "Zp";
  unsigned prec = 6;
  unsigned samples = 100;
  u64 seed = 42;
  std::string suite = "all";
  unsigned ext_f = 0;  // 0 = per-suite default (descent suites use 2)
};

struct Failure {
  unsigned sample = 0;
  std::string input;
  std::string lhs;
  std::string rhs;
};

struct SuiteResult {
  std::string id;
  bool pass = true;
  unsigned samples_run = 0;
  std::vector<Failure> failures;
  std::string note;       // e.g. "skipped: no valid central non-commutator"
  long long elapsed_ms = 0;  // human output only, never in the JSON report
};

struct Report {
  SuiteConfig config;
  std::vector<SuiteResult> suites;
  bool pass = true;
};

// known suite ids, in canonical order (excluding "all")
const std::vector<std::string>& suite_ids();

void validate_config(const SuiteConfig& cfg);  // throws InvalidArgument

Report run_config(const SuiteConfig& cfg);

// canonical JSON: UTF-8, LF, two-space indent, keys sorted, no timings
std::string report_json(const Report& r);
std::string report_text(const Report& r);  // human readable, with timings

// 0 all pass, 1 suite failure (bug-signal errors are thrown, CLI maps to 3)
int report_exit_code(const Report& r);

}  // namespace grouplog
