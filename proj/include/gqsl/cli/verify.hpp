#pragma once

// Self-verification: the ten acceptance checks, each against independent
// closed forms or structural inequalities.

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace gqsl::cli {

enum class VerifyLevel { Quick, Full };

struct VerifyOptions {
  VerifyLevel level{VerifyLevel::Quick};
  /// Replaces named tolerances (see default_tolerances). A negative value
  /// on an error bound makes the corresponding check unsatisfiable.
  std::map<std::string, double> tolerance_overrides;
  /// Criterion ids to run (1..10); empty runs all.
  std::set<int> only;
  /// Worker threads for grid checks.
  int threads{1};
};

struct CriterionResult {
  int id{0};
  std::string name;
  bool passed{false};
  std::string detail;
  double seconds{0};
};

const std::map<std::string, double>& default_tolerances();

using VerifyProgress = std::function<void(const CriterionResult&)>;

std::vector<CriterionResult> run_verify(const VerifyOptions& options, const VerifyProgress& progress = {});

/// JSON document listing each criterion and the failed ids.
std::string verify_summary_json(const std::vector<CriterionResult>& results, VerifyLevel level);

/// The contour configuration used by the determinism check.
const char* determinism_config_json();

}  // namespace gqsl::cli
