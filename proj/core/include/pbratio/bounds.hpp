#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "pbratio/parameters.hpp"
#include "pbratio/pmf.hpp"
#include "pbratio/ratio.hpp"
#include "pbratio/tolerance.hpp"
#include "pbratio/verdict.hpp"

namespace pbratio {

/// Exact quantities for Q = PoissonBinomial(p) against Poiss(lambda), the
/// published upper/lower bounds on them, and one verdict per inequality.
/// The lambda <= 1 bounds are absent (not errors) when lambda > 1.
struct BoundReport {
  double rho = 0.0;
  double log_rho = 0.0;
  double theorem1_bound = 0.0;                // 1 / (1 - p*)
  std::optional<double> theorem2_lower;       // Delta (1 - Delta/2 - lambda / (2 (1 - p*)))
  std::optional<double> theorem2_upper;       // Delta
  double tv_exact = 0.0;
  double barbour_hall = 0.0;                  // (1 - e^-lambda) Delta
  double remark1_primary = 0.0;               // min(1, lambda) (1 - 1/rho)
  double remark1_pstar = 0.0;                 // min(1, lambda) p*
  std::optional<std::pair<double, double>> remark1_delta_chain;  // (lambda (1 - e^-Delta), lambda Delta)
  double conjecture_bound = 0.0;              // 1 / (1 - Delta)
  double conjecture_gap = 0.0;                // conjecture_bound - rho; negative is a counterexample
  std::vector<Verdict> verdicts;
};

BoundReport bound_report(const ParameterVector& pv, double tol = kDefaultTol);
BoundReport bound_report(const ParameterVector& pv, const PmfVector& b,
                         const RatioProfile& profile, double tol = kDefaultTol);

/// Total variation distance to Poiss(lambda), including the Poisson mass
/// beyond n.
double tv_exact(const ParameterVector& pv);
double tv_exact(const PmfVector& b);

/// 1/(1 - Delta) - rho. Measured, never asserted.
double conjecture_gap(const ParameterVector& pv);

}  // namespace pbratio
