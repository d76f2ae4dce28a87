#pragma once

#include "anosov/exponents.hpp"
#include "anosov/limit_set.hpp"
#include "anosov/scenario.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace anosov {

struct VerifyOptions {
  int max_len = 12;
  int word_len = 16;
  int count = 2000;
  double bin = kDefaultBin;
  int scales = kDefaultScales;
  std::uint64_t budget = kDefaultBudget;

  /// Reads max_len, word_len, count, bin, scales, budget (dashes accepted in
  /// place of underscores). Throws InputError for out-of-range values.
  static VerifyOptions from_params(const Params& p);
};

struct InequalityCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;     // positive when the relation holds with room
  double allowance = 0.0;  // pass iff margin >= -allowance
  bool pass = false;
};

struct VerificationReport {
  std::string scenario;
  std::map<std::string, std::string> params;
  std::uint64_t seed = 0;
  int ambient_n = 0;
  bool convex_cocompact = false;
  VerifyOptions options;

  ExponentEstimate delta12;
  ExponentEstimate delta1n;
  ExponentEstimate delta1;
  ExponentEstimate h12;
  ExponentEstimate h1n;
  DimensionEstimate boxdim_sym;
  DimensionEstimate boxdim_line;
  DimensionEstimate boxdim_dual;

  std::size_t limit_points = 0;
  std::size_t discarded_low_quality = 0;
  std::size_t rejected = 0;
  std::vector<std::string> diagnostics;
  /// Scenario-specific measurements, e.g. the largest |x_n| of a sampled line
  /// when the generators preserve the hyperplane x_n = 0.
  std::map<std::string, double> extras;

  std::vector<InequalityCheck> checks;
  double runtime_s = 0.0;
  std::map<std::string, std::string> versions;

  bool passed() const;
};

/// Runs ball enumeration (alpha_12 at bin b, alpha_1n at 2b, eps_1 at b),
/// conjugacy classes (entropies at the same bins), limit sampling and the
/// three box dimensions, then the checks: lower bound (2 delta_1n or
/// delta_1n), upper bound, h <= delta for both forms, and the scenario's
/// expected relations. Stage failures are rethrown with the stage name.
VerificationReport run_verify(const Scenario& scenario, const VerifyOptions& options);

/// build_scenario(name, overrides) followed by the run above. The override
/// expect_ratio=r (tolerance expect_tolerance, default 1e-6) adds the relation
/// delta_1n / delta_12 == r to the scenario's own.
VerificationReport run_verify(const std::string& scenario_name, const Params& overrides);

/// Library and toolchain versions recorded in reports.
std::map<std::string, std::string> version_info();

}  // namespace anosov
