#include "pbratio/parameters.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pbratio/error.hpp"

namespace pbratio {

ParameterVector ParameterVector::make(std::span<const double> values) {
  if (values.empty()) {
    throw Error(ErrorCode::DegenerateLambda, "parameter list is empty");
  }
  ParameterVector pv;
  pv.p_.assign(values.begin(), values.end());
  pv.q_.reserve(values.size());

  double sum = 0.0;
  double sum_sq = 0.0;
  double var = 0.0;
  for (std::size_t i = 0; i < pv.p_.size(); ++i) {
    const double pi = pv.p_[i];
    // Written so that NaN also fails.
    if (!(pi >= 0.0 && pi < 1.0)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "p[" << i << "] = " << pi << " is outside [0, 1)";
      throw Error(ErrorCode::ValueOutOfRange, msg.str());
    }
    sum += pi;
    sum_sq += pi * pi;
    var += pi * (1.0 - pi);
    pv.p_star_ = std::max(pv.p_star_, pi);
    if (pi > 0.0) ++pv.support_size_;
    pv.q_.push_back(pi / (1.0 - pi));
  }
  if (sum == 0.0) {
    throw Error(ErrorCode::DegenerateLambda, "all parameters are zero");
  }
  pv.lambda_ = sum;
  pv.delta_ = sum_sq / sum;
  pv.variance_ = var;
  return pv;
}

ParameterVector ParameterVector::scaled(double t) const {
  std::vector<double> tp(p_.size());
  std::transform(p_.begin(), p_.end(), tp.begin(), [t](double v) { return t * v; });
  return make(tp);
}

std::vector<double> odds(const ParameterVector& pv) { return pv.q(); }

}  // namespace pbratio
