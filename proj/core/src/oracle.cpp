#include "pbratio/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <sstream>

#include "pbratio/error.hpp"

namespace pbratio::oracle {
namespace {

void require_small(const ParameterVector& pv) {
  if (pv.size() > kMaxBruteN) {
    std::ostringstream msg;
    msg << "n = " << pv.size() << " exceeds the enumeration limit " << kMaxBruteN;
    throw Error(ErrorCode::TooLarge, msg.str());
  }
}

double binomial_count(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return c;
}

// Advances `idx` to the next k-combination of {0..n-1}; false after the last.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

template <typename Fn>
void for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  do {
    fn(idx);
  } while (k > 0 && next_combination(idx, n));
}

PmfVector finish(std::vector<double> masses, double lambda) {
  PmfVector out;
  out.log_masses.resize(masses.size());
  for (std::size_t i = 0; i < masses.size(); ++i) {
    out.log_masses[i] =
        masses[i] > 0.0 ? std::log(masses[i]) : -std::numeric_limits<double>::infinity();
  }
  out.masses = std::move(masses);
  out.lambda = lambda;
  return out;
}

double relative_gap(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace

BrutePmf brute_pmf_both(const ParameterVector& pv) {
  require_small(pv);
  const auto& p = pv.p();
  const auto& q = pv.q();
  const std::size_t n = p.size();
  const std::uint64_t outcomes = std::uint64_t{1} << n;

  std::vector<double> direct(n + 1, 0.0);
  std::vector<double> weights(n + 1, 0.0);
  double b0 = 1.0;
  for (const double pi : p) b0 *= 1.0 - pi;

  for (std::uint64_t bits = 0; bits < outcomes; ++bits) {
    double prob = 1.0;
    double w = 1.0;
    std::size_t ones = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (bits >> i & 1U) {
        prob *= p[i];
        w *= q[i];
        ++ones;
      } else {
        prob *= 1.0 - p[i];
      }
    }
    direct[ones] += prob;
    weights[ones] += w;
  }
  for (double& w : weights) w *= b0;

  for (std::size_t x = 0; x <= n; ++x) {
    if (std::abs(direct[x] - weights[x]) > 1e-12) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "enumeration routes disagree at x = " << x << ": " << direct[x] << " vs "
          << weights[x];
      throw Error(ErrorCode::OracleInconsistency, msg.str());
    }
  }
  return BrutePmf{finish(std::move(direct), pv.lambda()), finish(std::move(weights), pv.lambda())};
}

PmfVector brute_pmf(const ParameterVector& pv) { return brute_pmf_both(pv).by_outcomes; }

SubsetStatistics subset_statistics(const ParameterVector& pv, std::size_t x) {
  require_small(pv);
  const std::size_t n = pv.size();
  if (x > n) {
    throw Error(ErrorCode::ValueOutOfRange, "subset size exceeds n");
  }
  if (binomial_count(n, x) > kMaxSubsets) {
    throw Error(ErrorCode::TooLarge, "more than 10^7 subsets");
  }
  const auto& p = pv.p();
  const auto& q = pv.q();
  const double q_total = std::accumulate(q.begin(), q.end(), 0.0);

  SubsetStatistics stats;
  stats.x = x;
  stats.q_total = q_total;
  stats.subsets.reserve(static_cast<std::size_t>(binomial_count(n, x)));

  std::vector<char> in_set(n);
  for_each_combination(n, x, [&](const std::vector<std::size_t>& idx) {
    Subset s;
    s.members = idx;
    s.weight = 1.0;
    std::fill(in_set.begin(), in_set.end(), 0);
    for (const std::size_t i : idx) {
      s.weight *= q[i];
      s.p_sum += p[i];
      s.q_sum += q[i];
      in_set[i] = 1;
    }
    // Complement sums accumulated directly rather than as total - S(J), which
    // would cancel badly for small complements.
    for (std::size_t k = 0; k < n; ++k) {
      if (!in_set[k]) {
        s.q_sum_complement += q[k];
        s.p_sum_complement += p[k];
      }
    }
    stats.total_weight += s.weight;
    stats.subsets.push_back(std::move(s));
  });
  for (auto& s : stats.subsets) {
    s.normalized_weight = stats.total_weight > 0.0 ? s.weight / stats.total_weight : 0.0;
  }
  return stats;
}

RatioRepresentationReport verify_ratio_representations(const ParameterVector& pv,
                                                       std::size_t x, double tol) {
  require_small(pv);
  const PmfVector b = pmf(pv);
  const long long xi = static_cast<long long>(x);
  const double bx = b.at_or_zero(xi);
  const double bx1 = b.at_or_zero(xi + 1);
  if (!(bx > 0.0)) {
    throw Error(ErrorCode::UndefinedRatio, "b(x) = 0, ratio undefined");
  }
  const double xp1 = static_cast<double>(x + 1);
  const auto& p = pv.p();
  const auto& q = pv.q();

  RatioRepresentationReport report;
  report.x = x;

  const SubsetStatistics at_x = subset_statistics(pv, x);
  double forward = 0.0;
  for (const auto& s : at_x.subsets) forward += s.normalized_weight * s.q_sum_complement;
  report.forward.from_pmf = xp1 * bx1 / bx;
  report.forward.from_subsets = forward;
  report.forward.relative_error = relative_gap(report.forward.from_pmf, forward);
  // x = n gives 0 on both sides.
  report.forward.pass = report.forward.relative_error <= tol;
  report.pass = report.forward.pass;

  if (bx1 > 0.0) {
    const SubsetStatistics at_x1 = subset_statistics(pv, x + 1);
    double by_odds = 0.0;
    double by_probs = 0.0;
    for (const auto& s : at_x1.subsets) {
      // W(L) = 0 subsets carry no weight and may have 0/0 inner terms.
      if (s.normalized_weight == 0.0) continue;
      double inner_odds = 0.0;
      double inner_probs = 0.0;
      for (const std::size_t k : s.members) {
        inner_odds += 1.0 / (q[k] + s.q_sum_complement);
        inner_probs += (1.0 - p[k]) / (p[k] + s.p_sum_complement);
      }
      by_odds += s.normalized_weight * inner_odds / xp1;
      by_probs += s.normalized_weight * inner_probs / xp1;
    }
    const double from_pmf = bx / (xp1 * bx1);
    RepresentationCheck odds_check{from_pmf, by_odds, relative_gap(from_pmf, by_odds), false};
    odds_check.pass = odds_check.relative_error <= tol;
    RepresentationCheck prob_check{from_pmf, by_probs, relative_gap(from_pmf, by_probs), false};
    prob_check.pass = prob_check.relative_error <= tol;
    report.inverse_pairwise_error = relative_gap(by_odds, by_probs);
    report.pass = report.pass && odds_check.pass && prob_check.pass &&
                  report.inverse_pairwise_error <= tol;
    report.inverse_odds = odds_check;
    report.inverse_probabilities = prob_check;
  }
  return report;
}

double max_weight_shift_error(const ParameterVector& pv, std::size_t x) {
  const SubsetStatistics stats = subset_statistics(pv, x);
  const auto& p = pv.p();
  const auto& q = pv.q();
  const std::size_t n = pv.size();
  double worst = 0.0;
  for (const auto& s : stats.subsets) {
    for (std::size_t k = 0; k < n; ++k) {
      if (std::binary_search(s.members.begin(), s.members.end(), k)) continue;
      const double lhs = s.weight * p[k];
      const double rhs = s.weight * q[k] * (1.0 - p[k]);
      worst = std::max(worst, relative_gap(lhs, rhs));
    }
  }
  return worst;
}

double explicit_log_ratio(const ParameterVector& pv, std::size_t x, double t) {
  require_small(pv);
  const auto& p = pv.p();
  const std::size_t n = p.size();
  const double lambda = pv.lambda();

  double log_b0 = 0.0;
  for (const double pk : p) log_b0 += std::log1p(-t * pk);

  double elementary = 0.0;
  for_each_combination(n, x, [&](const std::vector<std::size_t>& idx) {
    double prod = 1.0;
    for (const std::size_t i : idx) prod *= p[i] / (1.0 - t * p[i]);
    elementary += prod;
  });
  const double xd = static_cast<double>(x);
  return t * lambda + log_b0 - xd * std::log(lambda) + log_factorial(x) + std::log(elementary);
}

}  // namespace pbratio::oracle
