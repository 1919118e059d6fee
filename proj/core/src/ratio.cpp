#include "pbratio/ratio.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pbratio {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace

std::size_t argmax_window_end(double lambda) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(lambda)));
}

RatioProfile ratio_profile(const ParameterVector& pv) { return ratio_profile(pv, pmf(pv)); }

RatioProfile ratio_profile(const ParameterVector& pv, const PmfVector& b) {
  const double lambda = pv.lambda();
  const std::size_t n = b.size() - 1;

  RatioProfile out;
  out.lambda = lambda;
  out.log_r.resize(n + 1);
  out.r.resize(n + 1);
  for (std::size_t x = 0; x <= n; ++x) {
    out.log_r[x] = b.masses[x] > 0.0 ? b.log_masses[x] - poisson_log_pmf(lambda, x) : kNegInf;
    out.r[x] = std::exp(out.log_r[x]);
  }

  // Full scan; the window is checked afterwards, not assumed.
  out.log_rho = *std::max_element(out.log_r.begin(), out.log_r.end());
  out.rho = std::exp(out.log_rho);
  for (std::size_t x = 0; x <= n; ++x) {
    if (out.log_r[x] >= out.log_rho - kArgmaxTieTol) out.argmax_set.push_back(x);
  }

  const std::size_t window_end = std::min(argmax_window_end(lambda), n);
  out.window_log_rho = kNegInf;
  for (std::size_t x = 1; x <= window_end; ++x) {
    out.window_log_rho = std::max(out.window_log_rho, out.log_r[x]);
  }

  for (std::size_t x = 0; x <= n && b.masses[x] > 0.0; ++x) {
    const double next = b.at_or_zero(static_cast<long long>(x) + 1);
    const double d = static_cast<double>(x + 1) * next / b.masses[x];
    out.forward_ratios.push_back(d);
    if (next > 0.0) out.scores.push_back(d / lambda);
  }
  return out;
}

std::vector<double> scores_from_logs(const RatioProfile& profile) {
  std::vector<double> out;
  for (std::size_t x = 0; x + 1 < profile.log_r.size(); ++x) {
    if (profile.log_r[x + 1] == kNegInf) break;
    out.push_back(std::exp(profile.log_r[x + 1] - profile.log_r[x]));
  }
  return out;
}

StructureReport certify_structure(const ParameterVector& pv, double tol) {
  const PmfVector b = pmf(pv);
  return certify_structure(pv, b, ratio_profile(pv, b), tol);
}

StructureReport certify_structure(const ParameterVector& pv, const PmfVector& b,
                                  const RatioProfile& profile, double tol) {
  const double lambda = pv.lambda();
  const double p_star = pv.p_star();
  const auto& d = profile.forward_ratios;
  auto mass = [&b](long long x) { return b.at_or_zero(x); };

  StructureReport report;
  auto& v = report.verdicts;

  v.push_back(make_verdict("b0_lower", b.masses[0] - (1.0 - lambda), tol));
  v.push_back(make_verdict("b0_upper", std::exp(-lambda) - b.masses[0], tol));

  {
    const double hi = static_cast<double>(argmax_window_end(lambda));
    VerdictBuilder window("argmax_window");
    for (const std::size_t xo : profile.argmax_set) {
      const double x = static_cast<double>(xo);
      window.observe(std::min(x - 1.0, hi - x));
    }
    // Integer-valued margins: any violation is at least 1.
    v.push_back(window.finish(0.0));
  }
  v.push_back(make_verdict("window_rho", 0.0 - std::abs(profile.window_log_rho - profile.log_rho), kArgmaxTieTol));

  {
    VerdictBuilder bracket("argmax_bracket");
    for (const std::size_t xo : profile.argmax_set) {
      const long long x = static_cast<long long>(xo);
      const double upper_side = lambda - static_cast<double>(x + 1) * mass(x + 1) / mass(x);
      const double prev = mass(x - 1);
      const double lower_side = prev > 0.0
                                    ? static_cast<double>(x) * mass(x) / prev - lambda
                                    : std::numeric_limits<double>::infinity();
      bracket.observe(std::min(upper_side, lower_side));
    }
    v.push_back(bracket.finish(tol));
  }

  {
    VerdictBuilder ulc("ultra_log_concave");
    report.min_relative_decrease = std::numeric_limits<double>::infinity();
    for (std::size_t x = 0; x + 1 < d.size(); ++x) {
      ulc.observe(d[x] - d[x + 1]);
      report.min_relative_decrease =
          std::min(report.min_relative_decrease, (d[x] - d[x + 1]) / d[x]);
    }
    // Strict inequality: equality fails.
    Verdict verdict = ulc.finish(tol);
    verdict.pass = verdict.cases == 0 || verdict.margin > 0.0;
    v.push_back(verdict);
  }

  {
    VerdictBuilder fancy("fancy");
    const double floor = lambda - p_star / (1.0 - p_star);
    for (std::size_t x = 0; x < d.size(); ++x) {
      const long long xi = static_cast<long long>(x);
      const bool premise =
          x == 0 || static_cast<double>(x) * mass(xi) / mass(xi - 1) >= lambda;
      if (premise) fancy.observe(d[x] - floor);
    }
    v.push_back(fancy.finish(tol));
  }

  {
    VerdictBuilder tail("tail_ratio");
    for (std::size_t x = static_cast<std::size_t>(std::ceil(lambda)); x + 1 < d.size(); ++x) {
      tail.observe(1.0 / d[x] - 1.0 / lambda);
    }
    v.push_back(tail.finish(tol));
  }
  return report;
}

}  // namespace pbratio
