#include "pbratio/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace pbratio {

double tv_exact(const PmfVector& b) {
  const std::size_t n = b.size() - 1;
  const PmfVector pi = poisson_pmf(b.lambda, n);
  double l1 = 0.0;
  for (std::size_t x = 0; x <= n; ++x) l1 += std::abs(b.masses[x] - pi.masses[x]);
  return 0.5 * l1 + 0.5 * poisson_upper_tail(b.lambda, n);
}

double tv_exact(const ParameterVector& pv) { return tv_exact(pmf(pv)); }

double conjecture_gap(const ParameterVector& pv) {
  return 1.0 / (1.0 - pv.delta()) - ratio_profile(pv).rho;
}

BoundReport bound_report(const ParameterVector& pv, double tol) {
  const PmfVector b = pmf(pv);
  return bound_report(pv, b, ratio_profile(pv, b), tol);
}

BoundReport bound_report(const ParameterVector& pv, const PmfVector& b,
                         const RatioProfile& profile, double tol) {
  const double lambda = pv.lambda();
  const double delta = pv.delta();
  const double p_star = pv.p_star();
  const double small_lambda = std::min(1.0, lambda);

  BoundReport rep;
  rep.rho = profile.rho;
  rep.log_rho = profile.log_rho;
  rep.theorem1_bound = 1.0 / (1.0 - p_star);
  rep.tv_exact = tv_exact(b);
  rep.barbour_hall = -std::expm1(-lambda) * delta;
  rep.remark1_primary = small_lambda * (1.0 - 1.0 / rep.rho);
  rep.remark1_pstar = small_lambda * p_star;
  rep.conjecture_bound = 1.0 / (1.0 - delta);
  rep.conjecture_gap = rep.conjecture_bound - rep.rho;

  auto& v = rep.verdicts;
  v.push_back(make_verdict("theorem1", rep.theorem1_bound - rep.rho, tol));

  if (lambda <= 1.0) {
    rep.theorem2_lower = delta * (1.0 - delta / 2.0 - lambda / (2.0 * (1.0 - p_star)));
    rep.theorem2_upper = delta;
    rep.remark1_delta_chain = std::make_pair(-lambda * std::expm1(-delta), lambda * delta);

    v.push_back(make_verdict("theorem2_lower", rep.log_rho - *rep.theorem2_lower, tol));
    v.push_back(make_verdict("theorem2_upper", *rep.theorem2_upper - rep.log_rho, tol));
    v.push_back(make_verdict("rho_exp_delta", std::exp(delta) - rep.rho, tol));
    v.push_back(make_verdict("exp_delta_conjecture_form", rep.conjecture_bound - std::exp(delta), tol));
  }

  v.push_back(make_verdict("barbour_hall", rep.barbour_hall - rep.tv_exact, tol));
  v.push_back(make_verdict("remark1_primary", rep.remark1_primary - rep.tv_exact, tol));
  v.push_back(make_verdict("remark1_pstar", rep.remark1_pstar - rep.remark1_primary, tol));
  if (rep.remark1_delta_chain) {
    const auto [exp_form, linear_form] = *rep.remark1_delta_chain;
    v.push_back(make_verdict("remark1_exp_delta", exp_form - rep.remark1_primary, tol));
    v.push_back(make_verdict("remark1_delta", linear_form - exp_form, tol));
  }
  return rep;
}

}  // namespace pbratio
