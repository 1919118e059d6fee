#pragma once

// The scaled family t*p, t in (0, 1], and the log ratios along it:
//   L_x(t) = log r_{tp}(x),  f(t) = max_{1 <= x <= ceil(lambda)} L_x(t).

#include <cstddef>
#include <span>
#include <vector>

#include "pbratio/parameters.hpp"

namespace pbratio {

/// Throws Error{ScaleOutOfRange} for t outside (0, 1] and
/// Error{UnsupportedPoint} when b_{tp}(x) = 0.
double eval_L(const ParameterVector& pv, std::size_t x, double t);

struct LPrimeForms {
  double via_ratio = 0.0;  // lambda - (x+1) b_tp(x+1) / (t b_tp(x))
  double via_logs = 0.0;   // lambda (1 - exp(L_{x+1}(t) - L_x(t)))
};

inline constexpr double kLPrimeFormTol = 1e-10;

LPrimeForms eval_L_prime_forms(const ParameterVector& pv, std::size_t x, double t);

/// L_x'(t). Throws Error{OracleInconsistency} if the two closed forms differ
/// by more than 1e-10 relative to max(lambda, |forms|).
double eval_L_prime(const ParameterVector& pv, std::size_t x, double t);

struct RayProfile {
  std::vector<double> t_grid;
  std::size_t x_max = 0;  // ceil(lambda); rows are x = 1..x_max
  std::vector<std::vector<double>> L;        // L[x-1][k]
  std::vector<std::vector<double>> L_prime;  // L_prime[x-1][k]
  std::vector<double> f;
  std::vector<std::vector<std::size_t>> envelope_argmax;  // N(t), ascending
  /// max over the whole support of L_x(t); equal to f when the window holds.
  std::vector<double> full_scan_f;
};

/// Throws Error{EmptyGrid} for an empty grid and Error{ScaleOutOfRange} for
/// points outside (0, 1] or a grid that is not ascending.
RayProfile envelope(const ParameterVector& pv, std::span<const double> t_grid);

/// `count` uniform points on [lo, hi]; count = 1 gives {hi}.
std::vector<double> uniform_grid(double lo, double hi, std::size_t count);
/// 101 uniform points on [1e-4, 1].
std::vector<double> default_ray_grid();

/// True when f never decreases along the grid (reported, not asserted).
bool envelope_non_decreasing(const RayProfile& profile, double tol = 0.0);

}  // namespace pbratio
