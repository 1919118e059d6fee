#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pbratio {

/// Validated Bernoulli parameters p_1..p_n together with the moments every
/// other module needs. Immutable once built.
///
/// Zero entries are kept so that indices line up with the caller's input;
/// they contribute a factor 1 to the convolution and 0 to every moment.
class ParameterVector {
 public:
  /// Throws Error{ValueOutOfRange} unless every value lies in [0, 1), and
  /// Error{DegenerateLambda} when the list is empty or all zero.
  static ParameterVector make(std::span<const double> values);
  static ParameterVector make(std::initializer_list<double> values) {
    return make(std::span<const double>(values.begin(), values.size()));
  }

  const std::vector<double>& p() const noexcept { return p_; }
  std::size_t size() const noexcept { return p_.size(); }

  double lambda() const noexcept { return lambda_; }          // sum p_i
  double delta() const noexcept { return delta_; }            // sum p_i^2 / lambda
  double p_star() const noexcept { return p_star_; }          // max p_i
  double variance() const noexcept { return variance_; }      // sum p_i (1 - p_i)
  const std::vector<double>& q() const noexcept { return q_; }  // odds
  std::size_t support_size() const noexcept { return support_size_; }

  /// Parameters t*p for t in (0, 1]. Range checking of t is the caller's job.
  ParameterVector scaled(double t) const;

 private:
  ParameterVector() = default;

  std::vector<double> p_;
  std::vector<double> q_;
  double lambda_ = 0.0;
  double delta_ = 0.0;
  double p_star_ = 0.0;
  double variance_ = 0.0;
  std::size_t support_size_ = 0;
};

/// Elementwise odds p_i / (1 - p_i).
std::vector<double> odds(const ParameterVector& pv);

}  // namespace pbratio
