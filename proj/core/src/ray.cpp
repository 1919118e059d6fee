#include "pbratio/ray.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pbratio/error.hpp"
#include "pbratio/pmf.hpp"
#include "pbratio/ratio.hpp"

namespace pbratio {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_scale(double t) {
  if (!(t > 0.0 && t <= 1.0)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "t = " << t << " is outside (0, 1]";
    throw Error(ErrorCode::ScaleOutOfRange, msg.str());
  }
}

// Everything along the ray at one t comes from a single scaled PMF.
struct ScaledPoint {
  double t;
  double lambda;     // unscaled lambda
  PmfVector b;       // masses of Q_{tp}

  double log_ratio(std::size_t x) const {
    if (x >= b.size() || !(b.masses[x] > 0.0)) return kNegInf;
    return b.log_masses[x] - poisson_log_pmf(t * lambda, x);
  }

  LPrimeForms derivative(std::size_t x) const {
    const double bx = b.masses[x];
    const double bx1 = b.at_or_zero(static_cast<long long>(x) + 1);
    LPrimeForms out;
    out.via_ratio = lambda - static_cast<double>(x + 1) * bx1 / (t * bx);
    out.via_logs = lambda * (1.0 - std::exp(log_ratio(x + 1) - log_ratio(x)));
    return out;
  }
};

ScaledPoint scaled_point(const ParameterVector& pv, double t) {
  check_scale(t);
  return ScaledPoint{t, pv.lambda(), pmf(pv.scaled(t))};
}

void require_supported(const ScaledPoint& pt, std::size_t x) {
  if (x >= pt.b.size() || !(pt.b.masses[x] > 0.0)) {
    std::ostringstream msg;
    msg << "b_tp(" << x << ") = 0";
    throw Error(ErrorCode::UnsupportedPoint, msg.str());
  }
}

bool forms_agree(const LPrimeForms& f, double lambda) {
  const double scale = std::max({lambda, std::abs(f.via_ratio), std::abs(f.via_logs)});
  return std::abs(f.via_ratio - f.via_logs) <= kLPrimeFormTol * scale;
}

}  // namespace

double eval_L(const ParameterVector& pv, std::size_t x, double t) {
  const ScaledPoint pt = scaled_point(pv, t);
  require_supported(pt, x);
  return pt.log_ratio(x);
}

LPrimeForms eval_L_prime_forms(const ParameterVector& pv, std::size_t x, double t) {
  const ScaledPoint pt = scaled_point(pv, t);
  require_supported(pt, x);
  return pt.derivative(x);
}

double eval_L_prime(const ParameterVector& pv, std::size_t x, double t) {
  const LPrimeForms forms = eval_L_prime_forms(pv, x, t);
  if (!forms_agree(forms, pv.lambda())) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "L_" << x << "'(" << t << ") forms disagree: " << forms.via_ratio << " vs "
        << forms.via_logs;
    throw Error(ErrorCode::OracleInconsistency, msg.str());
  }
  return forms.via_ratio;
}

RayProfile envelope(const ParameterVector& pv, std::span<const double> t_grid) {
  if (t_grid.empty()) throw Error(ErrorCode::EmptyGrid, "t grid is empty");
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    check_scale(t_grid[k]);
    if (k > 0 && !(t_grid[k] > t_grid[k - 1])) {
      throw Error(ErrorCode::ScaleOutOfRange, "t grid must be strictly ascending");
    }
  }

  RayProfile out;
  out.t_grid.assign(t_grid.begin(), t_grid.end());
  out.x_max = argmax_window_end(pv.lambda());
  const std::size_t cols = t_grid.size();
  out.L.assign(out.x_max, std::vector<double>(cols));
  out.L_prime.assign(out.x_max, std::vector<double>(cols));
  out.f.resize(cols);
  out.full_scan_f.resize(cols);
  out.envelope_argmax.resize(cols);

  for (std::size_t k = 0; k < cols; ++k) {
    const ScaledPoint pt = scaled_point(pv, t_grid[k]);
    double best = kNegInf;
    for (std::size_t x = 1; x <= out.x_max; ++x) {
      // x <= ceil(lambda) <= support size, so b_tp(x) > 0 unless it underflowed.
      const double value = pt.log_ratio(x);
      out.L[x - 1][k] = value;
      out.L_prime[x - 1][k] =
          pt.b.masses[x] > 0.0 ? pt.derivative(x).via_ratio : std::numeric_limits<double>::quiet_NaN();
      best = std::max(best, value);
    }
    out.f[k] = best;
    for (std::size_t x = 1; x <= out.x_max; ++x) {
      if (out.L[x - 1][k] >= best - kArgmaxTieTol) out.envelope_argmax[k].push_back(x);
    }
    double full = kNegInf;
    for (std::size_t x = 0; x < pt.b.size(); ++x) full = std::max(full, pt.log_ratio(x));
    out.full_scan_f[k] = full;
  }
  return out;
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t count) {
  std::vector<double> grid(count);
  if (count == 1) {
    grid[0] = hi;
    return grid;
  }
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t k = 0; k < count; ++k) grid[k] = lo + step * static_cast<double>(k);
  if (count > 0) grid.back() = hi;
  return grid;
}

std::vector<double> default_ray_grid() { return uniform_grid(1e-4, 1.0, 101); }

bool envelope_non_decreasing(const RayProfile& profile, double tol) {
  for (std::size_t k = 1; k < profile.f.size(); ++k) {
    if (profile.f[k] < profile.f[k - 1] - tol) return false;
  }
  return true;
}

}  // namespace pbratio
