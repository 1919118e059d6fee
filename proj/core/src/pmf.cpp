#include "pbratio/pmf.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "pbratio/error.hpp"

namespace pbratio {
namespace {

constexpr std::size_t kLogFactorialTable = 10000;

std::vector<double> build_log_factorials() {
  std::vector<double> table(kLogFactorialTable + 1);
  // Neumaier summation keeps the cumulative error at a few ulps.
  double sum = 0.0;
  double comp = 0.0;
  table[0] = 0.0;
  for (std::size_t k = 1; k <= kLogFactorialTable; ++k) {
    const double term = std::log(static_cast<double>(k));
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      comp += (sum - t) + term;
    } else {
      comp += (term - t) + sum;
    }
    sum = t;
    table[k] = sum + comp;
  }
  return table;
}

double stirling_log_factorial(double x) {
  // log Gamma(x + 1) = (x + 1/2) log x - x + log(2 pi)/2 + 1/(12x) - 1/(360x^3) + ...
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  const double series = inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0)));
  return (x + 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) + series;
}

std::vector<double> logs_of(const std::vector<double>& masses) {
  std::vector<double> out(masses.size());
  for (std::size_t i = 0; i < masses.size(); ++i) {
    out[i] = masses[i] > 0.0 ? std::log(masses[i]) : -std::numeric_limits<double>::infinity();
  }
  return out;
}

}  // namespace

double log_factorial(std::size_t x) {
  static const std::vector<double> table = build_log_factorials();
  if (x <= kLogFactorialTable) return table[x];
  return stirling_log_factorial(static_cast<double>(x));
}

PmfVector pmf(const ParameterVector& pv) {
  const auto& p = pv.p();
  std::vector<double> b(p.size() + 1, 0.0);
  b[0] = 1.0;
  std::size_t filled = 0;
  for (const double pi : p) {
    const double keep = 1.0 - pi;
    // Run downward so b[x - 1] is still the previous stage's value.
    for (std::size_t x = filled + 1; x > 0; --x) {
      b[x] = b[x] * keep + b[x - 1] * pi;
    }
    b[0] *= keep;
    ++filled;
  }
  PmfVector out;
  out.log_masses = logs_of(b);
  out.masses = std::move(b);
  out.lambda = pv.lambda();
  return out;
}

double poisson_log_pmf(double lambda, std::size_t x) {
  const double xd = static_cast<double>(x);
  const double xlog = x == 0 ? 0.0 : xd * std::log(lambda);
  return -lambda + xlog - log_factorial(x);
}

PmfVector poisson_pmf(double lambda, std::size_t x_max) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::InvalidLambda, "Poisson mean must be positive and finite");
  }
  PmfVector out;
  out.lambda = lambda;
  out.log_masses.resize(x_max + 1);
  out.masses.resize(x_max + 1);
  for (std::size_t x = 0; x <= x_max; ++x) {
    out.log_masses[x] = poisson_log_pmf(lambda, x);
    out.masses[x] = std::exp(out.log_masses[x]);
  }
  return out;
}

double poisson_upper_tail(double lambda, std::size_t x_max) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::InvalidLambda, "Poisson mean must be positive and finite");
  }
  double total = 0.0;
  for (std::size_t x = x_max + 1;; ++x) {
    const double term = std::exp(poisson_log_pmf(lambda, x));
    total += term;
    // Terms past the mode shrink geometrically, so a small increment there
    // means the rest of the tail is negligible.
    const bool past_mode = static_cast<double>(x) > lambda;
    if (past_mode && (term == 0.0 || term < 1e-18 * total)) break;
  }
  return total;
}

}  // namespace pbratio
