#pragma once

// Machine-checkable run artifacts. A certificate records which named claim
// was checked, with what parameters and budgets, the verdict, and a list of
// independently re-checkable witnesses. Runs are deterministic given
// (scenario, params, budgets, seed), so replay re-runs the scenario and
// compares everything except timings byte for byte.

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace osc {

struct CertWitness {
  std::string claim;    // what this witness establishes
  std::string element;  // printable canonical key
  std::vector<std::string> factorization;  // printable factor keys, may be empty

  friend bool operator==(const CertWitness&, const CertWitness&) = default;
};

struct Certificate {
  std::string schema_version = "1";
  std::string scenario;
  std::map<std::string, std::string> params;   // sorted keys: deterministic output
  std::map<std::string, std::string> budgets;
  long long seed = 0;
  std::string verdict;  // Verified | RefutedWithWitness | InconclusiveAtBound
  std::vector<CertWitness> witnesses;
  // Extension over the base schema: free-form findings (orientation results,
  // flagged inconsistencies). Compared on replay like everything else.
  std::vector<std::string> notes;
  std::map<std::string, double> timings_ms;
  std::string tool_version;

  /// Timings are emitted only when include_timings is true; the rest of the
  /// output is a pure function of the run configuration.
  nlohmann::json to_json(bool include_timings = true) const;
  static Certificate from_json(const nlohmann::json& j);

  std::string to_string(bool include_timings = true) const;  // indented JSON
  std::string text_report() const;                           // human-readable table

  /// Everything except timings matches.
  bool same_content(const Certificate& other) const;
};

}  // namespace osc
