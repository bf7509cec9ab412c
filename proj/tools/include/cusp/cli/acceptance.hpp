#pragma once

// Acceptance suite run by `cusp verify` and by the test binaries.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cusp/distortion.hpp"
#include "cusp/radial_profile.hpp"

namespace cusp::cli {

struct Artifact {
  std::string name;     // file name, e.g. "jacobian.csv"
  std::string content;  // bytes as written
};

struct CriterionInfo {
  int id = 0;
  std::string key;
  std::string group;
  std::string title;
  double time_limit = 0.0;  // seconds, 0 = none
};

struct CriterionResult {
  CriterionInfo info;
  bool pass = false;
  bool within_time = true;
  double seconds = 0.0;
  std::string detail;
  std::vector<Artifact> artifacts;
};

using JacobianFn = std::function<Jacobian2(const PolarPoint&, const ProfileParams&)>;

struct AcceptanceOptions {
  ProfileParams params{};
  std::uint64_t seed = 0;
  /// Criterion ids, keys or groups; empty runs everything.
  std::vector<std::string> only;
  /// Differential under test in the finite-difference criterion.
  JacobianFn jacobian = jacobian_f2_analytic;
  int theorem1_resolution = 256;
};

const std::vector<CriterionInfo>& criteria();

bool selected(const CriterionInfo& c, const std::vector<std::string>& only);

/// Runs one criterion (1..9). The determinism criterion needs the others, see
/// run_acceptance.
CriterionResult run_criterion(int id, const AcceptanceOptions& opts);

/// Runs the selected criteria in id order. Determinism re-runs criteria 1..9
/// (or the selected subset) and compares every artifact byte for byte.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts);

/// "PASS  3 distortion-bound  <detail>  (0.12 s)"
std::string summary_line(const CriterionResult& r);

}  // namespace cusp::cli
