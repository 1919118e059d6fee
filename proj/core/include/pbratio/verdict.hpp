#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "pbratio/tolerance.hpp"

namespace pbratio {

/// Outcome of checking one inequality. `margin` is oriented so that positive
/// means the inequality holds (bound minus quantity); it is the worst case
/// when the inequality is checked at several points. `cases` counts the points
/// checked; with zero cases the inequality is vacuous and margin is +inf.
struct Verdict {
  std::string name;
  double margin = std::numeric_limits<double>::infinity();
  std::size_t cases = 0;
  bool pass = true;
};

inline Verdict make_verdict(std::string name, double margin, double tol = kDefaultTol,
                            std::size_t cases = 1) {
  return Verdict{std::move(name), margin, cases, margin >= -tol};
}

/// Accumulates the minimum margin over many points.
class VerdictBuilder {
 public:
  explicit VerdictBuilder(std::string name) : name_(std::move(name)) {}

  void observe(double margin) {
    ++cases_;
    if (margin < margin_) margin_ = margin;
  }

  Verdict finish(double tol = kDefaultTol) const {
    return Verdict{name_, margin_, cases_, cases_ == 0 || margin_ >= -tol};
  }

 private:
  std::string name_;
  double margin_ = std::numeric_limits<double>::infinity();
  std::size_t cases_ = 0;
};

inline bool all_pass(const std::vector<Verdict>& verdicts) {
  for (const auto& v : verdicts) {
    if (!v.pass) return false;
  }
  return true;
}

}  // namespace pbratio
