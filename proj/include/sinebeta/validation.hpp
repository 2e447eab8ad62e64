#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sinebeta/curve_table.hpp"

namespace sinebeta {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct SuiteOptions {
  bool quick = true;
  std::uint64_t seed = 7;
  int threads = 0;
};

struct SuiteResult {
  std::vector<CriterionResult> criteria;
  CurveTable table;  // every curve computed along the way; no timings

  bool all_passed() const {
    for (const auto& c : criteria)
      if (!c.passed) return false;
    return true;
  }
};

SuiteResult run_suite(const SuiteOptions& opts);

// one entry per suite criterion, in order; each appends rows to the table
std::vector<int> suite_criteria();
CriterionResult run_criterion(int id, const SuiteOptions& opts, CurveTable& table);

}  // namespace sinebeta
