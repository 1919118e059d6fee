#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "pbratio/error.hpp"
#include "pbratio/oracle.hpp"
#include "pbratio/pmf.hpp"
#include "support/generators.hpp"

using pbratio::ParameterVector;

TEST_CASE("pmf fixtures") {
  SUBCASE("fair coin") {
    const auto b = pbratio::pmf(ParameterVector::make({0.5}));
    CHECK(b.masses == std::vector<double>{0.5, 0.5});
  }
  SUBCASE("[0.1, 0.2, 0.3] from 2^3 enumeration") {
    const auto b = pbratio::pmf(ParameterVector::make({0.1, 0.2, 0.3}));
    const double expected[] = {0.504, 0.398, 0.092, 0.006};
    REQUIRE(b.size() == 4);
    for (std::size_t x = 0; x < 4; ++x) CHECK(std::abs(b[x] - expected[x]) <= 1e-15);
    CHECK(b.lambda == doctest::Approx(0.6));
  }
  SUBCASE("zero parameter truncates the support") {
    const auto b = pbratio::pmf(ParameterVector::make({0.3, 0.0}));
    CHECK(b[0] == doctest::Approx(0.7));
    CHECK(b[1] == doctest::Approx(0.3));
    CHECK(b[2] == 0.0);
    CHECK(std::isinf(b.log_masses[2]));
    CHECK(b.log_masses[2] < 0);
  }
}

TEST_CASE("poisson masses") {
  SUBCASE("lambda = 1 gives equal first two masses") {
    const auto pi = pbratio::poisson_pmf(1.0, 1);
    CHECK(pi[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(pi[1] == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  }
  SUBCASE("lambda = 0.6") {
    const auto pi = pbratio::poisson_pmf(0.6, 3);
    // e^{-0.6} 0.6^x / x!, evaluated at 40 digits.
    const double expected[] = {0.54881163609402643, 0.32928698165641586, 0.098786094496924758,
                               0.019757218899384952};
    for (std::size_t x = 0; x < 4; ++x) CHECK(pi[x] == doctest::Approx(expected[x]).epsilon(1e-14));
    CHECK(std::accumulate(pi.masses.begin(), pi.masses.end(), 0.0) < 1.0);
  }
  SUBCASE("consecutive ratio is lambda/(x+1)") {
    for (const double lambda : {0.01, 0.6, 3.5, 40.0}) {
      const auto pi = pbratio::poisson_pmf(lambda, 80);
      for (std::size_t x = 0; x < 80; ++x) {
        if (pi[x] < 1e-300) break;
        CHECK(pbtest::relative_diff(pi[x + 1] / pi[x], lambda / (x + 1.0)) <= 1e-12);
      }
    }
  }
  SUBCASE("invalid lambda") {
    CHECK_THROWS_AS(pbratio::poisson_pmf(0.0, 3), pbratio::Error);
    CHECK_THROWS_AS(pbratio::poisson_pmf(-1.0, 3), pbratio::Error);
    try {
      (void)pbratio::poisson_pmf(0.0, 3);
    } catch (const pbratio::Error& e) {
      CHECK(e.code() == pbratio::ErrorCode::InvalidLambda);
    }
  }
}

TEST_CASE("poisson tail") {
  // P(Poiss(0.6) > 3) and P(Poiss(0.5) > 1), 40-digit references.
  CHECK(pbratio::poisson_upper_tail(0.6, 3) == doctest::Approx(0.0033580688532479985).epsilon(1e-13));
  CHECK(pbratio::poisson_upper_tail(0.5, 1) == doctest::Approx(0.090204010431049865).epsilon(1e-13));
  for (const double lambda : {0.2, 2.0, 15.0}) {
    for (const std::size_t n : {0u, 3u, 10u, 30u}) {
      const auto pi = pbratio::poisson_pmf(lambda, n);
      const double head = std::accumulate(pi.masses.begin(), pi.masses.end(), 0.0);
      CHECK(std::abs(head + pbratio::poisson_upper_tail(lambda, n) - 1.0) <= 1e-14);
    }
  }
}

TEST_CASE("log factorial against lgamma") {
  for (std::size_t x = 0; x <= 20000; x += (x < 200 ? 1 : 97)) {
    const double ref = std::lgamma(static_cast<double>(x) + 1.0);
    CHECK(std::abs(pbratio::log_factorial(x) - ref) <= 1e-14 * std::max(1.0, ref));
  }
}

TEST_CASE("oracle equivalence for n <= 12") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const auto pv = ParameterVector::make(pbtest::random_params(rng, 1, 12, 0.95));
    const auto b = pbratio::pmf(pv);
    const auto brute = pbratio::oracle::brute_pmf(pv);
    for (std::size_t x = 0; x < b.size(); ++x) CHECK(std::abs(b[x] - brute[x]) <= 1e-12);
  }
}

TEST_CASE("permutation invariance") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    auto p = pbtest::random_params(rng, 2, 40, 0.99);
    const auto base = pbratio::pmf(ParameterVector::make(p));
    std::shuffle(p.begin(), p.end(), rng);
    const auto shuffled = pbratio::pmf(ParameterVector::make(p));
    for (std::size_t x = 0; x < base.size(); ++x) {
      CHECK(std::abs(base[x] - shuffled[x]) <= 1e-14);
    }
  }
}

TEST_CASE("normalization up to n = 10^4") {
  std::mt19937_64 rng(5);
  for (const std::size_t n : {1u, 10u, 100u, 1000u, 10000u}) {
    const auto pv = ParameterVector::make(pbtest::random_params(rng, n, n, 0.99));
    const auto b = pbratio::pmf(pv);
    const double total = std::accumulate(b.masses.begin(), b.masses.end(), 0.0);
    CHECK(std::abs(total - 1.0) <= 1e-12);
  }
}

TEST_CASE("equal parameters reduce to the binomial closed form") {
  for (const std::size_t n : {1u, 5u, 20u, 60u}) {
    for (const double p : {0.01, 0.3, 0.5, 0.9}) {
      const auto b = pbratio::pmf(ParameterVector::make(std::vector<double>(n, p)));
      const auto ref = pbtest::binomial_masses(n, p);
      for (std::size_t x = 0; x <= n; ++x) CHECK(std::abs(b[x] - ref[x]) <= 1e-12);
    }
  }
}

TEST_CASE("b(0) bracket and support") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    auto p = pbtest::random_params(rng, 1, 30, 0.99);
    // Sprinkle exact zeros to exercise the support boundary.
    if (trial % 3 == 0) p[trial % p.size()] = 0.0;
    double sum = 0.0;
    for (const double v : p) sum += v;
    if (sum == 0.0) continue;
    const auto pv = ParameterVector::make(p);
    const auto b = pbratio::pmf(pv);
    CHECK(b[0] < std::exp(-pv.lambda()));
    if (pv.lambda() < 1.0) CHECK(1.0 - pv.lambda() <= b[0]);
    for (std::size_t x = 0; x < b.size(); ++x) {
      CHECK((b[x] > 0.0) == (x <= pv.support_size()));
    }
  }
}
