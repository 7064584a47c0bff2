#pragma once

#include "mlab/dense.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace mlab {

enum class Verdict { pass, fail, measured };

std::string_view to_string(Verdict v);

/// One measured quantity compared against a declared tolerance.
///
/// upper: holds iff residual < tolerance
/// lower: holds iff residual > tolerance
/// implication: holds iff the antecedent failed (vacuous) or residual < tolerance
///
/// Only asserting checks feed the report's overall verdict.
struct Check {
  enum class Bound { upper, lower, implication };

  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  Bound bound = Bound::upper;
  bool asserting = true;
  bool holds = true;
  std::string note;

  static Check upper(std::string name, double residual, double tolerance, bool asserting = true);
  static Check lower(std::string name, double residual, double tolerance, bool asserting = true);
  static Check implication(std::string name, bool antecedent, double conclusion_residual, double tolerance,
                           std::string note = {});

  Verdict verdict() const;
};

struct SampleRecord {
  int index = 0;
  Vector point;
  std::string name;
  double value = 0.0;
};

struct TheoremReport {
  std::string suite;
  nlohmann::json spec;
  nlohmann::json plan;
  std::vector<Check> checks;
  std::vector<std::string> flags;   // hypothesis bookkeeping
  std::string classification;       // e.g. "flat" / "not flat"; empty if none
  std::vector<std::string> errors;  // per-point failures
  std::vector<SampleRecord> samples;
  int samples_used = 0;
  int failed_points = 0;

  Check& add(Check c) { return checks.emplace_back(std::move(c)); }
  const Check* find(std::string_view name) const;
  /// Throws std::out_of_range for a missing check.
  const Check& at(std::string_view name) const;
  bool passed() const;
};

nlohmann::json to_json(const TheoremReport& report);

/// Serialises with every floating-point number printed at 17 significant
/// digits; non-finite numbers become null.
std::string dump_json(const nlohmann::json& value, int indent = 2);

/// sample_index, point components, residual name, value
std::string to_csv(const std::vector<TheoremReport>& reports);
std::string to_text(const TheoremReport& report);

}  // namespace mlab
