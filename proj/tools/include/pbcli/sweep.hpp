#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pbratio/parameters.hpp"
#include "pbratio/tolerance.hpp"

namespace pbcli {

enum class Check {
  Moments,
  Normalization,
  Oracle,           // DP pmf against brute force, n <= 12
  Theorem1,
  Theorem2,         // lambda <= 1 only
  Prop1,            // argmax window
  Prop2,            // strict ultra-log-concavity
  ArgmaxBracket,
  Fancy,
  TailRatio,
  TvChain,          // Barbour-Hall and the rho-based TV chain
  Representations,  // subset ratio forms, n <= 10
  Ray,              // L_x derivative forms, concavity and window along t p
  Conjecture,       // measured only, never fails a run
};

std::string_view check_name(Check c);
const std::vector<Check>& all_checks();
/// "all" or a comma list of check names.
std::vector<Check> parse_checks(std::string_view text);

/// Randomised certification run. Parameter vectors are drawn per trial:
/// n uniform on [n_min, n_max], p_i i.i.d. uniform on [0, p_max], with
/// whole-draw rejection when lambda exceeds lambda_cap.
struct SweepConfig {
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t n_min = 1;
  std::size_t n_max = 1;
  double p_max = 0.5;
  std::optional<double> lambda_cap;
  std::vector<Check> checks = all_checks();
  double tol = pbratio::kDefaultTol;
  unsigned workers = 0;  // 0: hardware concurrency

  /// Throws UsageError on an invalid configuration.
  void validate() const;
};

/// Deterministic in (config.seed, trial) and independent of worker count.
std::vector<double> sample_parameters(const SweepConfig& config, std::uint64_t trial);

enum class Status { Skipped, Pass, Fail };

struct CheckResult {
  Status status = Status::Skipped;
  double margin = 0.0;        // worst margin over the check's inequalities
  std::string failed_item;    // first failing inequality, if any
};

struct TrialOutcome {
  std::vector<CheckResult> results;  // parallel to config.checks
  std::optional<double> conjecture_gap;
};

TrialOutcome evaluate_trial(const pbratio::ParameterVector& pv, const std::vector<Check>& checks,
                            double tol = pbratio::kDefaultTol);

struct CheckTally {
  Check check{};
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;
  double min_margin = 0.0;  // over evaluated trials; +inf if none
};

struct FailureRecord {
  std::uint64_t trial = 0;
  Check check{};
  std::string item;
  double margin = 0.0;
  std::vector<double> p;
};

struct ConjectureScan {
  std::size_t measured = 0;
  std::size_t counterexamples = 0;
  double min_gap = 0.0;
  std::uint64_t min_trial = 0;
  std::vector<double> min_p;
};

struct SweepSummary {
  SweepConfig config;
  std::vector<CheckTally> tallies;
  std::optional<FailureRecord> first_failure;
  std::optional<ConjectureScan> conjecture;

  bool passed() const { return !first_failure.has_value(); }
};

SweepSummary run_sweep(const SweepConfig& config);

void print_summary(std::ostream& out, const SweepSummary& summary);
std::string summary_json(const SweepSummary& summary);

}  // namespace pbcli
