#pragma once

#include <cstddef>
#include <vector>

#include "pbratio/parameters.hpp"

namespace pbratio {

/// Probability masses on 0..size()-1 with their logs (-inf where the mass is
/// zero). `lambda` is the mean of the distribution the masses came from.
struct PmfVector {
  std::vector<double> masses;
  std::vector<double> log_masses;
  double lambda = 0.0;

  std::size_t size() const noexcept { return masses.size(); }
  double operator[](std::size_t x) const noexcept { return masses[x]; }
  /// Mass at x, zero outside the stored range (so b(-1) and b(n+1) read as 0).
  double at_or_zero(long long x) const noexcept {
    return (x < 0 || static_cast<std::size_t>(x) >= masses.size()) ? 0.0 : masses[x];
  }
};

/// Poisson binomial masses b(0..n) by iterative Bernoulli convolution.
PmfVector pmf(const ParameterVector& pv);

/// Poisson masses pi(0..x_max), evaluated in log space. Throws
/// Error{InvalidLambda} unless lambda > 0.
PmfVector poisson_pmf(double lambda, std::size_t x_max);

/// log pi_lambda(x) = -lambda + x log(lambda) - log(x!).
double poisson_log_pmf(double lambda, std::size_t x);

/// P(Poiss(lambda) > x_max), summed upward from x_max + 1 until the increment
/// drops below 1e-18 of the running total.
double poisson_upper_tail(double lambda, std::size_t x_max);

/// log(x!) from a compensated cumulative log-sum for x <= 10^4 and a Stirling
/// series above that.
double log_factorial(std::size_t x);

}  // namespace pbratio
