#pragma once

#include "sepdeg/io.hpp"

namespace sepdeg {

/// One suite line: a named descriptor, its field and the targets to verify.
struct SuiteEntry {
  std::string name;
  ModuleDescriptor desc;
  FieldSpec field;
  std::vector<TargetSpec> targets;
};

/// The built-in verification matrix: cyclic modules, the mixed-support and
/// terminal-divisibility checks, the scaled cyclic modules with their gamma
/// values, the eleven-module Klein table, the D8 regular module bound, and
/// the order-pm trichotomy cases.
std::vector<SuiteEntry> paper_suite();

/// Runs the entries (optionally across `jobs` worker threads; entry order in
/// the report is by name regardless of completion order).
SuiteReport run_suite(const std::vector<SuiteEntry>& entries, const EngineLimits& limits,
                      int jobs = 1, const std::shared_ptr<DimMemo>& memo = nullptr);

}  // namespace sepdeg
