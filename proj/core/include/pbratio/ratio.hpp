#pragma once

#include <cstddef>
#include <vector>

#include "pbratio/parameters.hpp"
#include "pbratio/pmf.hpp"
#include "pbratio/tolerance.hpp"
#include "pbratio/verdict.hpp"

namespace pbratio {

/// Density ratio r(x) = b(x) / pi_lambda(x) for x = 0..n.
struct RatioProfile {
  double lambda = 0.0;
  std::vector<double> log_r;  // -inf outside the support
  std::vector<double> r;
  double rho = 0.0;
  double log_rho = 0.0;
  /// Every x whose log ratio is within `kArgmaxTieTol` of log_rho, ascending.
  std::vector<std::size_t> argmax_set;
  /// Largest log r over the window 1..ceil(lambda); equals log_rho when the
  /// window contains a maximiser.
  double window_log_rho = 0.0;
  /// r(x+1)/r(x) = (x+1) b(x+1) / (lambda b(x)) for every x with b(x+1) > 0.
  std::vector<double> scores;
  /// (x+1) b(x+1) / b(x) for every x with b(x) > 0 (last entry is 0).
  std::vector<double> forward_ratios;
};

inline constexpr double kArgmaxTieTol = 1e-12;

RatioProfile ratio_profile(const ParameterVector& pv);
RatioProfile ratio_profile(const ParameterVector& pv, const PmfVector& b);

/// ceil(lambda) as an index, never below 1.
std::size_t argmax_window_end(double lambda);

/// Scores recomputed as exp(log_r(x+1) - log_r(x)); used to cross-check the
/// ratio identity.
std::vector<double> scores_from_logs(const RatioProfile& profile);

struct StructureReport {
  std::vector<Verdict> verdicts;
  /// Smallest (d(x) - d(x+1)) / d(x) over the support, where
  /// d(x) = (x+1) b(x+1) / b(x).
  double min_relative_decrease = 0.0;
};

/// Numeric certificates of the structural facts about b and r:
///  - b0_lower, b0_upper: 1 - lambda <= b(0) < exp(-lambda)
///  - argmax_window: every maximiser lies in [1, ceil(lambda)]
///  - window_rho: the windowed maximum equals the full scan
///  - argmax_bracket: (x+1) b(x+1)/b(x) <= lambda <= x b(x)/b(x-1) at each maximiser
///  - ultra_log_concave: (x+1) b(x+1)/b(x) strictly decreasing over the support
///  - fancy: (x+1) b(x+1)/b(x) >= lambda - p*/(1-p*) whenever x b(x)/b(x-1) >= lambda
///  - tail_ratio: b(x)/((x+1) b(x+1)) > 1/lambda for integers x >= lambda with b(x+1) > 0
StructureReport certify_structure(const ParameterVector& pv, double tol = kDefaultTol);
StructureReport certify_structure(const ParameterVector& pv, const PmfVector& b,
                                  const RatioProfile& profile, double tol = kDefaultTol);

}  // namespace pbratio
