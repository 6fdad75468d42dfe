#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "sepdeg/oracle.hpp"

namespace sepdeg {

using json = nlohmann::json;

/// {"p": 2, "k": 2, "modulus": [1,1,1]} — coefficients constant term first.
json field_to_json(const FieldSpec& spec);
FieldSpec field_from_json(const json& j);

/// Tagged descriptor schema, e.g. {"type":"jordan","p":2,"r":2,"n":3} or
/// {"type":"w","p":2,"r":1,"m":3,"n":2,"lambda":[0,1]}; lambda is a
/// coordinate sequence in the field's power basis.
json descriptor_to_json(const ModuleDescriptor& desc);
ModuleDescriptor descriptor_from_json(const json& j);

/// Smallest built-in field matching the descriptor's characteristic and
/// containing every scalar it mentions. Permutation modules carry no
/// characteristic and need an explicit field.
FieldPtr default_field_for(const ModuleDescriptor& desc);

/// Point syntax: a JSON array with one entry per coordinate, each an integer
/// (prime subfield) or a coordinate array.
std::vector<std::vector<int>> point_from_json(const json& j);

/// Target syntax: "delta", "gamma", "epsilon@[0,0,1]", "lemma_divide@4",
/// "klein_absence", each optionally suffixed "=N" to pin an expected value.
TargetSpec target_from_string(const std::string& text);

/// Report of a full verification run (one entry per descriptor).
struct SuiteReport {
  std::string version;
  EngineLimits limits;
  std::vector<VerificationReport> entries;
  bool pass = true;
  std::int64_t millis = 0;
};

bool equal_ignoring_millis(const SuiteReport& a, const SuiteReport& b);

/// JSON serialisation is byte-deterministic: keys are sorted and wall-clock
/// timings are left out (they appear in the CSV and markdown forms only).
json report_to_json(const VerificationReport& report);
VerificationReport report_from_json(const json& j);
json suite_report_to_json(const SuiteReport& report);
SuiteReport suite_report_from_json(const json& j);

/// CSV columns: descriptor,field,quantity,predicted,computed,verdict,millis.
std::string suite_report_to_csv(const SuiteReport& report);
std::string suite_report_to_markdown(const SuiteReport& report);

}  // namespace sepdeg
