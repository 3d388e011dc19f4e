#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gschw {

// Named tolerances understood by the verification suites, with defaults.
const std::map<std::string, double>& default_tolerances();

struct VerifyConfig {
  std::uint64_t seed = 42;
  // Overrides of default_tolerances(); unknown names are rejected by validate().
  std::map<std::string, double> tolerances;
  // When set, every randomized check uses this many cases.
  std::optional<int> cases;
  int holonomy_steps = 4096;

  void validate() const;
  double tolerance(const std::string& name) const;
};

struct CheckResult {
  std::string name;
  std::string tolerance_name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  int cases = 0;
  // Parameters of the worst case, for replay.
  std::vector<std::pair<std::string, double>> worst_case;
  std::string note;
};

struct Report {
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool passed() const;
};

CheckResult check_identity_suite(const VerifyConfig& cfg);
CheckResult check_schwarzian_trace(const VerifyConfig& cfg);
CheckResult check_global_invariance(const VerifyConfig& cfg);
CheckResult check_gauge_invariance(const VerifyConfig& cfg);
CheckResult check_pure_gauge_collapse(const VerifyConfig& cfg);
CheckResult check_constant_gauge(const VerifyConfig& cfg);
// Per-case ratios are recorded in worst_case as ratio_<i>.
CheckResult check_expansion_order(const VerifyConfig& cfg);
CheckResult check_winding_rotation(const VerifyConfig& cfg);
CheckResult check_winding_literal(const VerifyConfig& cfg);

// identity, trace, global, gauge, expansion and winding checks.
Report run_verify(const VerifyConfig& cfg);
// gauge invariance, pure-gauge collapse and constant-gauge agreement.
Report run_gauge_check(const VerifyConfig& cfg);
Report run_expand(const VerifyConfig& cfg);

std::string to_json(const Report& report);

// Relative difference normalized by max(1, |x|, |y|).
double relative_difference(double x, double y);

}  // namespace gschw
