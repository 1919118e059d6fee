#pragma once

// Brute-force evaluations by subset enumeration. Exponential in n; used to
// cross-check the fast paths at small n and never called by them.

#include <cstddef>
#include <optional>
#include <vector>

#include "pbratio/parameters.hpp"
#include "pbratio/pmf.hpp"

namespace pbratio::oracle {

inline constexpr std::size_t kMaxBruteN = 20;
inline constexpr double kMaxSubsets = 1e7;
inline constexpr double kRepresentationTol = 1e-10;

struct BrutePmf {
  PmfVector by_outcomes;  // sum over all 2^n binary outcome vectors
  PmfVector by_weights;   // b(0) * sum_{#J = x} W(J)
};

/// Both enumeration routes; throws Error{OracleInconsistency} when they
/// differ by more than 1e-12 anywhere and Error{TooLarge} for n > 20.
BrutePmf brute_pmf_both(const ParameterVector& pv);
PmfVector brute_pmf(const ParameterVector& pv);

struct Subset {
  std::vector<std::size_t> members;  // ascending indices into p
  double weight = 0.0;               // W(J) = prod q_i
  double normalized_weight = 0.0;    // W(J) / sum over all J of size x, 0/0 := 0
  double p_sum = 0.0;                // s(J)
  double q_sum = 0.0;                // S(J)
  double q_sum_complement = 0.0;     // S(J^c)
  double p_sum_complement = 0.0;     // s(J^c)
};

struct SubsetStatistics {
  std::size_t x = 0;
  double total_weight = 0.0;  // sum of W(J) over #J = x
  double q_total = 0.0;       // S(N)
  std::vector<Subset> subsets;
};

/// Every subset of size x, in lexicographic order. Throws Error{TooLarge} for
/// n > 20 or more than 10^7 subsets.
SubsetStatistics subset_statistics(const ParameterVector& pv, std::size_t x);

struct RepresentationCheck {
  double from_pmf = 0.0;
  double from_subsets = 0.0;
  double relative_error = 0.0;
  bool pass = false;
};

struct RatioRepresentationReport {
  std::size_t x = 0;
  // (x+1) b(x+1) / b(x) against sum W̄(J) S(J^c).
  RepresentationCheck forward;
  // b(x) / ((x+1) b(x+1)) against the odds-based and the p-based subset
  // forms. Absent when b(x+1) = 0.
  std::optional<RepresentationCheck> inverse_odds;
  std::optional<RepresentationCheck> inverse_probabilities;
  // Largest pairwise relative discrepancy between the two inverse forms.
  double inverse_pairwise_error = 0.0;
  bool pass = false;
};

/// Throws Error{UndefinedRatio} when b(x) = 0.
RatioRepresentationReport verify_ratio_representations(const ParameterVector& pv,
                                                       std::size_t x,
                                                       double tol = kRepresentationTol);

/// Largest |W(J) p_k - W(J + k)(1 - p_k)| relative to its terms, over all
/// subsets of size x and k outside them.
double max_weight_shift_error(const ParameterVector& pv, std::size_t x);

/// L_x(t) through the explicit subset form
///   t lambda + sum log(1 - t p_k) + log(lambda^-x x! sum_J prod_{i in J} p_i / (1 - t p_i)).
double explicit_log_ratio(const ParameterVector& pv, std::size_t x, double t);

}  // namespace pbratio::oracle
