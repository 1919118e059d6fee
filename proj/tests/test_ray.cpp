#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "pbratio/bounds.hpp"
#include "pbratio/error.hpp"
#include "pbratio/oracle.hpp"
#include "pbratio/ratio.hpp"
#include "pbratio/ray.hpp"
#include "support/generators.hpp"

using pbratio::ParameterVector;

namespace {

pbratio::ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const pbratio::Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return pbratio::ErrorCode::TooLarge;
}

}  // namespace

TEST_CASE("L_x(1) is log r(x)") {
  const auto pv = ParameterVector::make({0.1, 0.2, 0.3});
  const auto prof = pbratio::ratio_profile(pv);
  for (std::size_t x = 0; x <= 3; ++x) CHECK(pbratio::eval_L(pv, x, 1.0) == prof.log_r[x]);
  CHECK(pbratio::eval_L(pv, 1, 1.0) == doctest::Approx(0.18952235006829133).epsilon(1e-13));
}

TEST_CASE("L_x against the explicit subset form") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const auto pv = ParameterVector::make(pbtest::random_params(rng, 1, 12, 0.95));
    for (const double t : {1e-3, 0.25, 0.6, 1.0}) {
      for (std::size_t x = 0; x <= pv.support_size(); ++x) {
        const double fast = pbratio::eval_L(pv, x, t);
        const double slow = pbratio::oracle::explicit_log_ratio(pv, x, t);
        CHECK(std::abs(fast - slow) <= 1e-10 * std::max(1.0, std::abs(slow)));
      }
    }
  }
}

TEST_CASE("slope of L_1 at the origin is Delta") {
  const auto pv = ParameterVector::make({0.1, 0.2, 0.3, 0.05});
  const double t = 1e-6;
  const double slope = pbratio::eval_L(pv, 1, t) / t;
  CHECK(slope >= 0.9 * pv.delta());
  CHECK(slope <= 1.1 * pv.delta());
}

TEST_CASE("domain errors") {
  const auto pv = ParameterVector::make({0.3, 0.0});
  CHECK(code_of([&] { (void)pbratio::eval_L(pv, 1, 0.0); }) == pbratio::ErrorCode::ScaleOutOfRange);
  CHECK(code_of([&] { (void)pbratio::eval_L(pv, 1, 1.0 + 1e-12); }) ==
        pbratio::ErrorCode::ScaleOutOfRange);
  CHECK(code_of([&] { (void)pbratio::eval_L(pv, 2, 0.5); }) == pbratio::ErrorCode::UnsupportedPoint);
  CHECK(code_of([&] { (void)pbratio::eval_L_prime(pv, 2, 0.5); }) ==
        pbratio::ErrorCode::UnsupportedPoint);
  CHECK(code_of([&] { (void)pbratio::envelope(pv, std::vector<double>{}); }) ==
        pbratio::ErrorCode::EmptyGrid);
  CHECK(code_of([&] { (void)pbratio::envelope(pv, std::vector<double>{0.5, 0.4}); }) ==
        pbratio::ErrorCode::ScaleOutOfRange);
}

TEST_CASE("n = 1 has constant derivative lambda and linear L_1") {
  const auto pv = ParameterVector::make({0.5});
  for (const double t : {0.01, 0.5, 1.0}) {
    CHECK(pbratio::eval_L_prime(pv, 1, t) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::abs(pbratio::eval_L(pv, 1, t) - 0.5 * t) <= 1e-12);
  }
}

TEST_CASE("derivative: closed forms agree and match central differences") {
  std::mt19937_64 rng(29);
  const double h = 1e-5;
  for (int trial = 0; trial < 30; ++trial) {
    const auto pv = ParameterVector::make(pbtest::random_params(rng, 1, 30, 0.95));
    const std::size_t x_max = pbratio::argmax_window_end(pv.lambda());
    for (int k = 1; k <= 9; ++k) {
      const double t = k / 10.0;
      for (std::size_t x = 1; x <= x_max; ++x) {
        const auto forms = pbratio::eval_L_prime_forms(pv, x, t);
        CHECK(std::abs(forms.via_ratio - forms.via_logs) <=
              1e-10 * std::max({pv.lambda(), std::abs(forms.via_ratio), std::abs(forms.via_logs)}));
        const double fd =
            (pbratio::eval_L(pv, x, t + h) - pbratio::eval_L(pv, x, t - h)) / (2 * h);
        CHECK(std::abs(fd - forms.via_ratio) <= 1e-6 * std::max(1.0, std::abs(forms.via_ratio)));
      }
    }
  }
}

TEST_CASE("envelope properties") {
  std::mt19937_64 rng(37);
  const auto grid = pbratio::default_ray_grid();
  REQUIRE(grid.size() == 101);
  CHECK(grid.front() == 1e-4);
  CHECK(grid.back() == 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const auto pv = ParameterVector::make(pbtest::random_params_capped(rng, 1, 25, 0.95, 10.0));
    const auto prof = pbratio::envelope(pv, grid);
    CHECK(prof.f.front() < 1e-3);
    CHECK(prof.f.back() == doctest::Approx(pbratio::ratio_profile(pv).log_rho).epsilon(1e-14));
    for (std::size_t k = 0; k < grid.size(); ++k) CHECK(prof.f[k] == prof.full_scan_f[k]);
    for (std::size_t row = 0; row < prof.x_max; ++row) {
      const auto& L = prof.L[row];
      for (std::size_t k = 1; k + 1 < L.size(); ++k) CHECK(L[k - 1] - 2 * L[k] + L[k + 1] <= 1e-10);
    }
    // Sign of L_x' tracks the order of L_x and L_{x+1}.
    for (std::size_t row = 0; row + 1 < prof.x_max; ++row) {
      for (std::size_t k = 0; k < grid.size(); ++k) {
        const double slope = prof.L_prime[row][k];
        const double diff = prof.L[row][k] - prof.L[row + 1][k];
        if (std::abs(slope) > 1e-10 * pv.lambda() && std::abs(diff) > 1e-12) {
          CHECK((slope > 0) == (diff > 0));
        }
      }
    }
    for (std::size_t k = 0; k < grid.size(); ++k) {
      REQUIRE_FALSE(prof.envelope_argmax[k].empty());
      CHECK(prof.L[prof.envelope_argmax[k].front() - 1][k] == prof.f[k]);
    }
  }
}

TEST_CASE("small-lambda envelope is L_1 and monotonicity is reportable") {
  const auto pv = ParameterVector::make({0.2, 0.3, 0.1});
  const auto prof = pbratio::envelope(pv, pbratio::default_ray_grid());
  REQUIRE(prof.x_max == 1);
  for (std::size_t k = 0; k < prof.f.size(); ++k) CHECK(prof.envelope_argmax[k].front() == 1);
  // L_1'(1) >= 0 here, so f is non-decreasing on the grid.
  CHECK(pbratio::eval_L_prime(pv, 1, 1.0) >= 0.0);
  CHECK(pbratio::envelope_non_decreasing(prof));
}

TEST_CASE("uniform grid") {
  const auto g = pbratio::uniform_grid(0.2, 1.0, 5);
  REQUIRE(g.size() == 5);
  CHECK(g[2] == doctest::Approx(0.6));
  CHECK(pbratio::uniform_grid(0.3, 0.7, 1) == std::vector<double>{0.7});
}
